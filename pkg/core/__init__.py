#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""核心功能模块"""
