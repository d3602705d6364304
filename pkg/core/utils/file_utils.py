#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
文件工具类 - 资源路径、JSON/YAML 读取与报告写出
"""

import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, Union

import yaml
from loguru import logger

from core.models.error_model import FileAccessError, ParsingError


def get_resource_path(relative_path: str) -> str:
    """获取资源的绝对路径，兼容开发环境和打包后的环境。"""
    try:
        # PyInstaller 创建的临时文件夹 _MEIPASS
        base_path = sys._MEIPASS
    except AttributeError:
        # 此工具函数位于 core/utils/file_utils.py，项目根目录是其上两级
        base_path = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
    return os.path.join(base_path, relative_path)


def _read_text(file_path: Union[str, Path]) -> str:
    path = Path(file_path)
    if not path.is_file():
        raise FileAccessError(f"文件不存在: {path}", path)
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise FileAccessError(f"无法读取文件 {path}: {e}", path)


def read_json_file(file_path: Union[str, Path]) -> Any:
    """读取 JSON 文件

    Raises:
        FileAccessError: 文件不存在或不可读
        ParsingError: JSON 语法错误，location 为 "文件:行:列"
    """
    text = _read_text(file_path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParsingError(e.msg, f"{file_path}:{e.lineno}:{e.colno}")


def read_yaml_file(file_path: Union[str, Path]) -> Dict[str, Any]:
    """读取 YAML 配置文件；空文件返回空字典

    Raises:
        FileAccessError: 文件不存在或不可读
        ParsingError: YAML 语法错误或顶层不是映射
    """
    text = _read_text(file_path)
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        location = f"{file_path}:{mark.line + 1}:{mark.column + 1}" if mark else str(file_path)
        raise ParsingError(str(getattr(e, "problem", e)), location)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ParsingError("配置文件顶层必须是映射", str(file_path))
    return data


def ensure_dir_exists(dir_path: Union[str, Path]) -> bool:
    """确保目录存在

    Returns:
        bool: 目录是否存在或创建成功
    """
    try:
        Path(dir_path).mkdir(parents=True, exist_ok=True)
        return True
    except OSError as e:
        logger.error(f"创建目录失败: {dir_path}, 错误: {str(e)}")
        return False


def write_text_file(file_path: Union[str, Path], content: str) -> None:
    """写出文本文件，必要时创建父目录

    Raises:
        FileAccessError: 写入失败
    """
    path = Path(file_path)
    if path.parent and not ensure_dir_exists(path.parent):
        raise FileAccessError(f"无法创建目录 {path.parent}", path)
    try:
        path.write_text(content, encoding="utf-8")
    except OSError as e:
        raise FileAccessError(f"无法写入文件 {path}: {e}", path)
    logger.info(f"已写出文件: {path}")
