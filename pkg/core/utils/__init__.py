#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""工具函数模块：日志、文件、输入解析与报告导出"""
