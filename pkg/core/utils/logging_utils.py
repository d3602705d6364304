#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
日志工具 - 提供日志记录功能和统一日志格式
"""

import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, Union

from loguru import logger

from core.models.config import APP_LOGS_DIR

CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{line} - {message}"


def setup_logger(
    console_level: str = "INFO",
    file_level: str = "DEBUG",
    log_dir: Optional[Union[str, Path]] = None,
    log_filename: str = "qsphere.log",
    rotation: str = "10 MB",
    retention: str = "1 week",
    compression: str = "zip",
    log_to_file: bool = True,
) -> None:
    """配置日志系统

    报告写到 stdout，日志只写 stderr 和日志文件。

    Args:
        console_level: 控制台日志级别
        file_level: 文件日志级别
        log_dir: 日志目录，如果为None则使用默认目录
        log_filename: 日志文件名
        rotation: 日志轮转策略，如"1 day"、"10 MB"等
        retention: 日志保留策略，如"7 days"、"10 files"等
        compression: 日志压缩格式，如"zip"、"gz"等
        log_to_file: 是否添加文件处理器
    """
    # 移除默认的处理器
    logger.remove()

    if sys.stderr:
        logger.add(sys.stderr, level=console_level, format=CONSOLE_FORMAT)

    if not log_to_file:
        logger.debug("日志系统初始化完成（未启用日志文件）")
        return

    log_dir = APP_LOGS_DIR if log_dir is None else Path(log_dir)
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        logger.warning(f"无法创建日志目录 {log_dir}，仅输出到控制台: {e}")
        return

    logger.add(
        log_dir / log_filename,
        level=file_level,
        format=FILE_FORMAT,
        rotation=rotation,
        retention=retention,
        compression=compression,
        encoding="utf-8",
    )
    logger.debug(f"日志系统初始化完成，日志文件: {log_dir / log_filename}")


def log_exception(e: Exception, context: Optional[Dict[str, Any]] = None) -> None:
    """记录异常信息及堆栈

    Args:
        e: 异常对象
        context: 上下文信息，可选
    """
    if context:
        logger.exception(f"异常: {str(e)}, 上下文: {context}")
    else:
        logger.exception(f"异常: {str(e)}")


def log_performance(operation: str, elapsed_time: float) -> None:
    """记录性能信息

    Args:
        operation: 操作名称
        elapsed_time: 耗时（秒）
    """
    logger.debug(f"性能: {operation} 耗时 {elapsed_time:.4f} 秒")


@contextmanager
def timed(operation: str) -> Iterator[Dict[str, float]]:
    """计时上下文；结束时通过 log_performance 记录，耗时存入 yield 的字典"""
    record = {"elapsed": 0.0}
    start = time.perf_counter()
    try:
        yield record
    finally:
        record["elapsed"] = time.perf_counter() - start
        log_performance(operation, record["elapsed"])


__all__ = ['setup_logger', 'log_exception', 'log_performance', 'timed', 'logger']
