#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
事件总线 - 校验过程中的发布-订阅机制
处理函数在发布线程中同步调用
"""

import threading
import time
import traceback
from typing import Any, Callable, Dict, List

from loguru import logger


class EventBus:
    """应用程序事件总线，实现单例模式"""

    _instance = None

    def __new__(cls):
        """确保事件总线是单例"""
        if cls._instance is None:
            cls._instance = super(EventBus, cls).__new__(cls)
        return cls._instance

    def __init__(self):
        """初始化事件总线"""
        # 避免重复初始化
        if hasattr(self, '_initialized'):
            return

        # 存储事件订阅者
        self._subscribers: Dict[str, List[Callable]] = {}
        # 存储事件历史（调试用）
        self._event_history: List[Dict] = []
        # 历史记录大小限制
        self._max_history_size = 100
        self._debug = False
        self._lock = threading.RLock()

        self._initialized = True
        logger.debug("事件总线初始化完成")

    def set_debug(self, debug: bool):
        """设置调试模式；调试模式下记录事件历史"""
        self._debug = debug

    def publish(self, event_name: str, event_data: Any = None):
        """发布事件

        Args:
            event_name: 事件名称，用于标识事件类型
            event_data: 事件数据
        """
        if event_data is None:
            event_data = {}

        if self._debug:
            self._record_event(event_name, event_data)
            logger.debug(f"发布事件: {event_name}, 数据: {event_data}")

        self._dispatch_event(event_name, event_data)

    def subscribe(self, event_name: str, handler: Callable) -> Callable:
        """订阅事件

        Args:
            event_name: 要订阅的事件名称
            handler: 事件处理函数，接受事件数据作为参数

        Returns:
            handler: 返回处理函数，便于后续取消订阅
        """
        with self._lock:
            handlers = self._subscribers.setdefault(event_name, [])
            if handler not in handlers:
                handlers.append(handler)
        return handler

    def unsubscribe(self, event_name: str, handler: Callable) -> bool:
        """取消事件订阅

        Returns:
            bool: 是否成功取消订阅
        """
        with self._lock:
            handlers = self._subscribers.get(event_name, [])
            if handler in handlers:
                handlers.remove(handler)
                return True
        return False

    def get_event_history(self) -> List[Dict]:
        with self._lock:
            return self._event_history.copy()

    def clear_event_history(self):
        with self._lock:
            self._event_history.clear()

    def _dispatch_event(self, event_name: str, event_data: Any):
        """分发事件到订阅者；单个处理函数出错不影响其他订阅者"""
        with self._lock:
            handlers = list(self._subscribers.get(event_name, []))
        for handler in handlers:
            try:
                handler(event_data)
            except Exception as e:
                logger.error(f"事件处理错误: {event_name}, 错误: {str(e)}")
                if self._debug:
                    logger.error(f"详细错误: {traceback.format_exc()}")

    def _record_event(self, event_name: str, event_data: Any):
        with self._lock:
            self._event_history.append({
                "timestamp": time.time(),
                "name": event_name,
                "data": event_data,
            })
            # 限制历史记录大小
            if len(self._event_history) > self._max_history_size:
                self._event_history.pop(0)
