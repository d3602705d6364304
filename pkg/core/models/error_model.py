#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""错误相关数据模型、枚举和异常类型"""

from datetime import datetime
from typing import Dict, Any, Optional
from dataclasses import dataclass, field
from enum import Enum, auto


class ErrorCategory(Enum):
    """错误类别枚举"""
    GENERAL = auto()  # 通用错误
    ARITHMETIC = auto()  # 标量运算错误
    ALGEBRA = auto()  # S³_q 代数错误
    ACTION = auto()  # U_q 作用错误
    CONNECTION = auto()  # 联络构造错误
    PODLES = auto()  # Podleś 球面与丛错误
    CONFIGURATION = auto()  # 配置错误
    FILE_IO = auto()  # 文件I/O错误
    VALIDATION = auto()  # 验证错误
    PARSING = auto()  # 解析错误
    VERIFICATION = auto()  # 校验套件内部错误


class ErrorPriority(Enum):
    """错误优先级枚举"""
    CRITICAL = auto()  # 严重错误，需要立即处理
    HIGH = auto()      # 高优先级错误，影响主要功能
    MEDIUM = auto()    # 中等优先级错误，影响部分功能
    LOW = auto()       # 低优先级错误，不影响主要功能
    DEBUG = auto()     # 调试级别错误，主要用于开发


@dataclass
class ErrorInfo:
    """错误信息数据类"""
    message: str
    category: ErrorCategory = ErrorCategory.GENERAL
    priority: ErrorPriority = ErrorPriority.MEDIUM
    code: str = "ERROR"
    details: Dict[str, Any] = field(default_factory=dict)
    timestamp: datetime = field(default_factory=datetime.now)
    source: Optional[str] = None
    stack_trace: Optional[str] = None
    handled: bool = False


class QSphereError(Exception):
    """所有领域错误的基类"""
    category: ErrorCategory = ErrorCategory.GENERAL

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ScalarDivisionError(QSphereError):
    """除以零标量"""
    category = ErrorCategory.ARITHMETIC


class ValidationError(QSphereError):
    """输入不满足前置条件，例如非厄米度量、非幂等投影或违反实性条件"""
    category = ErrorCategory.VALIDATION


class ParsingError(QSphereError):
    """输入编码格式错误；location 指出出错位置"""
    category = ErrorCategory.PARSING

    def __init__(self, message: str, location: str = "", details: Optional[Dict[str, Any]] = None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message, details)
        self.location = location


class ConstructionError(QSphereError):
    """构造过程遇到无法化为无根式形式的表达式等内部问题"""
    category = ErrorCategory.CONNECTION


class FileAccessError(QSphereError):
    """文件不存在或无法读写"""
    category = ErrorCategory.FILE_IO

    def __init__(self, message: str, path: str = ""):
        super().__init__(message, {"path": str(path)})
        self.path = str(path)
