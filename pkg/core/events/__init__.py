#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
事件系统包 - 校验运行中的发布-订阅机制
"""

from core.events.event_bus import EventBus
from core.events.event_types import (
    BaseEvent,
    SuiteStartedEvent,
    CheckCompletedEvent,
    SuiteCompletedEvent,
    RunCompletedEvent,
    ErrorEvent,
    ConfigChangedEvent,
    EventTypes,
)

# 创建全局事件总线实例
event_bus = EventBus()

__all__ = [
    'event_bus',
    'EventBus',
    'BaseEvent',
    'SuiteStartedEvent',
    'CheckCompletedEvent',
    'SuiteCompletedEvent',
    'RunCompletedEvent',
    'ErrorEvent',
    'ConfigChangedEvent',
    'EventTypes',
]
