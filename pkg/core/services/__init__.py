#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
服务模块 - 作用、导数、微分演算、联络、Podleś 与套件执行服务
"""
