#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
配置服务 - 负责校验运行的配置管理
"""

import copy
from typing import Any, Dict, List, Mapping, Optional, Tuple

from loguru import logger

from core.events import event_bus, EventTypes, ConfigChangedEvent
from core.models.config import (
    DEFAULT_CONFIG, OutputFormat, RandomSamples, SuiteConfig, SuiteName,
)
from core.models.error_model import ValidationError
from core.models.uq_model import ActionSide

ALL_SUITES = "all"


def _merge(base: Dict[str, Any], override: Mapping[str, Any]) -> Dict[str, Any]:
    """递归合并两层配置字典，override 优先"""
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class ConfigService:
    """配置服务类，负责校验运行的配置管理"""

    def __init__(self, config: Optional[Mapping[str, Any]] = None):
        """初始化配置服务

        Args:
            config: 配置字典（容器中 Configuration 提供者的值），缺项使用 DEFAULT_CONFIG
        """
        self.config = _merge(DEFAULT_CONFIG, config or {})

    def _publish_config_change_event(self, key: str, value: Any) -> None:
        """发布配置变更事件的辅助方法"""
        try:
            event_bus.publish(
                EventTypes.CONFIG_CHANGED,
                ConfigChangedEvent(key=key, value=value, source="config_service")
            )
            logger.debug(f"已发布配置变更事件: key={key}, value={value}")
        except Exception as e:
            logger.error(f"发布配置变更事件失败 ({key}): {str(e)}")

    def _get(self, section: str, key: str) -> Any:
        return self.config.get(section, {}).get(key, DEFAULT_CONFIG[section][key])

    def _set(self, section: str, key: str, value: Any) -> None:
        self.config.setdefault(section, {})[key] = value
        logger.info(f"配置已更新: {section}.{key} = {value}")
        self._publish_config_change_event(f"{section}.{key}", value)

    # 校验设置

    def get_suites(self) -> Tuple[SuiteName, ...]:
        """获取要运行的套件，"all" 展开为全部套件

        Raises:
            ValidationError: 含有未知的套件名
        """
        return self.parse_suites(self._get("verification", "suites"))

    @staticmethod
    def parse_suites(names: Any) -> Tuple[SuiteName, ...]:
        if isinstance(names, str):
            names = [names]
        if not names or ALL_SUITES in names:
            return tuple(SuiteName)
        unknown = [name for name in names if name not in SuiteName.values()]
        if unknown:
            raise ValidationError(f"未知的套件: {', '.join(map(str, unknown))}",
                                  {"known": SuiteName.values()})
        selected = set(names)
        # 按固定的套件顺序输出
        return tuple(suite for suite in SuiteName if suite.value in selected)

    def get_max_degree(self) -> int:
        """获取扫描的最大单项式长度"""
        return self._non_negative("max_degree")

    def set_max_degree(self, value: int) -> None:
        self._set("verification", "max_degree", int(value))

    def get_bundle_range(self) -> int:
        """获取线丛检查的 |n| 上限"""
        return self._non_negative("bundle_range")

    def get_seed(self) -> int:
        return int(self._get("verification", "seed"))

    def get_max_counterexamples(self) -> int:
        return self._non_negative("max_counterexamples")

    def get_known_discrepancies(self) -> Tuple[str, ...]:
        """已知与书面公式不一致的检查名"""
        return tuple(self._get("verification", "known_discrepancies") or ())

    def get_random_samples(self) -> RandomSamples:
        """获取各随机性质检查的样本数"""
        return RandomSamples(
            associativity=self._non_negative("associativity_samples"),
            metric_connections=self._non_negative("metric_connection_samples"),
            perturbations=self._non_negative("perturbation_samples"),
            levi_civita=self._non_negative("levi_civita_samples"),
            kernel=self._non_negative("kernel_samples"),
        )

    def _non_negative(self, key: str) -> int:
        value = self._get("verification", key)
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ValidationError(f"verification.{key} 必须是非负整数，得到 {value!r}")
        return value

    # 联络与输出

    def get_connection_side(self) -> ActionSide:
        """获取联络层使用的作用方向

        Raises:
            ValidationError: 不是 left 或 right
        """
        value = self._get("connections", "side")
        if value not in ActionSide.values():
            raise ValidationError(f"connections.side 必须是 {ActionSide.values()} 之一，得到 {value!r}")
        return ActionSide(value)

    def get_output_format(self) -> OutputFormat:
        value = self._get("output", "format")
        if value not in OutputFormat.values():
            raise ValidationError(f"output.format 必须是 {OutputFormat.values()} 之一，得到 {value!r}")
        return OutputFormat(value)

    def get_log_settings(self) -> Dict[str, Any]:
        """获取 setup_logger 的关键字参数"""
        return {key: self._get("logging", key) for key in DEFAULT_CONFIG["logging"]}

    # 汇总

    def resolve(self, overrides: Optional[Mapping[str, Any]] = None) -> SuiteConfig:
        """用命令行参数覆盖配置，得到不可变的运行配置

        Args:
            overrides: 值为 None 的项被忽略；可含 suites、max_degree、bundle_range、seed、
                side、output_format、metric_file、params_file

        Raises:
            ValidationError: 取值非法
        """
        overrides = {key: value for key, value in (overrides or {}).items() if value is not None}
        suites = self.parse_suites(overrides["suites"]) if "suites" in overrides else self.get_suites()
        side = ActionSide(overrides["side"]) if "side" in overrides else self.get_connection_side()
        output_format = (OutputFormat(overrides["output_format"]) if "output_format" in overrides
                         else self.get_output_format())
        max_degree = overrides.get("max_degree", self.get_max_degree())
        bundle_range = overrides.get("bundle_range", self.get_bundle_range())
        for name, value in (("max_degree", max_degree), ("bundle_range", bundle_range)):
            if value < 0:
                raise ValidationError(f"{name} 必须是非负整数，得到 {value}")

        suite_config = SuiteConfig(
            suites=suites,
            max_degree=max_degree,
            bundle_range=bundle_range,
            seed=overrides.get("seed", self.get_seed()),
            side=side,
            output_format=output_format,
            metric_file=overrides.get("metric_file"),
            params_file=overrides.get("params_file"),
            known_discrepancies=self.get_known_discrepancies(),
            max_counterexamples=self.get_max_counterexamples(),
            samples=self.get_random_samples(),
        )
        logger.debug(f"运行配置: {suite_config.to_dict()}")
        return suite_config
