#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""数据模型模块，包含标量、代数、作用、联络与报告的数据结构定义"""

# 导入错误模型
from core.models.error_model import (
    ErrorInfo, ErrorCategory, ErrorPriority,
    QSphereError, ScalarDivisionError, ValidationError, ParsingError, ConstructionError, FileAccessError,
)

# 导入报告模型
from core.models.report_model import Verdict, CheckResult, SuiteReport, RunReport

# 导入配置模型
from core.models.config import SuiteConfig, SuiteName, OutputFormat, RandomSamples

# 导出所有模型
__all__ = [
    'ErrorInfo', 'ErrorCategory', 'ErrorPriority',
    'QSphereError', 'ScalarDivisionError', 'ValidationError', 'ParsingError', 'ConstructionError',
    'FileAccessError',
    'Verdict', 'CheckResult', 'SuiteReport', 'RunReport',
    'SuiteConfig', 'SuiteName', 'OutputFormat', 'RandomSamples',
]
