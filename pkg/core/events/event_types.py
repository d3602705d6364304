#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
事件类型定义 - 校验运行中的事件数据模型
"""

import time
from dataclasses import dataclass, field
from typing import Any, Dict, List

from core.models.error_model import ErrorInfo


@dataclass
class BaseEvent:
    """所有事件的基类"""
    timestamp: float = field(default_factory=time.time, init=False)


@dataclass
class SuiteStartedEvent(BaseEvent):
    """套件开始执行"""
    suite: str
    position: int = 0  # 在本次运行中的序号
    total: int = 0


@dataclass
class CheckCompletedEvent(BaseEvent):
    """单项检查完成"""
    suite: str
    check: str
    verdict: str
    passed: int = 0
    failed: int = 0


@dataclass
class SuiteCompletedEvent(BaseEvent):
    """套件执行完成"""
    suite: str
    ok: bool
    counts: Dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0  # 秒；只用于日志


@dataclass
class RunCompletedEvent(BaseEvent):
    """整个运行完成"""
    ok: bool
    suites: List[str] = field(default_factory=list)
    totals: Dict[str, int] = field(default_factory=dict)


@dataclass
class ErrorEvent(BaseEvent):
    """错误事件"""
    error_info: ErrorInfo = None


@dataclass
class ConfigChangedEvent(BaseEvent):
    """配置变更事件"""
    key: str = ""  # 设置键名
    value: Any = None  # 新的设置值
    source: str = ""  # 变更来源


# 定义事件类型的常量
class EventTypes:
    """事件类型常量，用于统一事件名称"""

    # 校验事件
    SUITE_STARTED = "suite_started"
    CHECK_COMPLETED = "check_completed"
    SUITE_COMPLETED = "suite_completed"
    RUN_COMPLETED = "run_completed"

    # 系统事件
    ERROR_OCCURRED = "error_occurred"
    CONFIG_CHANGED = "config_changed"
