#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
应用程序配置模型和常量定义
"""

import platform
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from core.models.uq_model import ActionSide

# 应用程序名称
APP_NAME = "QSphere"

# 根据操作系统确定应用程序根目录
system = platform.system()
if system == "Windows":
    APP_ROOT_DIR = Path.home() / "AppData" / "Local" / APP_NAME
elif system == "Darwin":  # macOS
    APP_ROOT_DIR = Path.home() / "Library" / "Application Support" / APP_NAME
else:  # Linux 和其他系统
    APP_ROOT_DIR = Path.home() / ".config" / APP_NAME

# 定义子目录
APP_CONFIG_DIR = APP_ROOT_DIR
APP_LOGS_DIR = APP_ROOT_DIR / "logs"

# 随包提供的默认配置文件（相对于项目根目录）
DEFAULT_CONFIG_FILE = "config/config.yaml"

# 默认日志级别
DEFAULT_LOG_LEVEL = "INFO"

# 退出状态
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE_ERROR = 2


class SuiteName(Enum):
    """校验套件，按报告中的顺序排列"""
    ALGEBRA = "algebra"
    UQ_TABLES = "uq-tables"
    PAIRING = "pairing"
    LEIBNIZ = "leibniz"
    COMMUTATION = "commutation"
    STAR_RELATIONS = "star-relations"
    CALCULUS = "calculus"
    METRIC_CONNECTIONS = "metric-connections"
    LEVI_CIVITA = "levi-civita"
    TORSION = "torsion"
    PODLES_RVF = "podles-rvf"
    PODLES_EXD = "podles-exd"
    PROJECTORS = "projectors"
    BUNDLE_CONNECTIONS = "bundle-connections"

    @staticmethod
    def values() -> List[str]:
        return [s.value for s in SuiteName]


class OutputFormat(Enum):
    """报告输出格式"""
    JSON = "json"
    TEXT = "text"

    @staticmethod
    def values() -> List[str]:
        return [f.value for f in OutputFormat]


# 代码内的默认配置，config.yaml 缺失或缺项时使用
DEFAULT_CONFIG: Dict[str, Any] = {
    "verification": {
        "suites": ["all"],
        "max_degree": 4,
        "bundle_range": 4,
        "seed": 20240229,
        "associativity_samples": 1000,
        "metric_connection_samples": 20,
        "perturbation_samples": 5,
        "levi_civita_samples": 5,
        "kernel_samples": 3,
        "max_counterexamples": 3,
        "known_discrepancies": ["podles-rvf.relation", "podles-exd.lemma"],
    },
    "connections": {
        "side": ActionSide.RIGHT.value,
    },
    "output": {
        "format": OutputFormat.TEXT.value,
    },
    "logging": {
        "console_level": DEFAULT_LOG_LEVEL,
        "file_level": "DEBUG",
        "log_filename": "qsphere.log",
        "rotation": "10 MB",
        "retention": "1 week",
        "compression": "zip",
    },
}


@dataclass(frozen=True)
class RandomSamples:
    """随机性质检查的样本数"""
    associativity: int = 1000
    metric_connections: int = 20
    perturbations: int = 5
    levi_civita: int = 5
    kernel: int = 3


@dataclass(frozen=True)
class SuiteConfig:
    """命令行参数覆盖配置文件之后的最终运行配置"""
    suites: Tuple[SuiteName, ...] = tuple(SuiteName)
    max_degree: int = 4
    bundle_range: int = 4
    seed: int = 20240229
    side: ActionSide = ActionSide.RIGHT
    output_format: OutputFormat = OutputFormat.TEXT
    metric_file: Optional[str] = None
    params_file: Optional[str] = None
    known_discrepancies: Tuple[str, ...] = ()
    max_counterexamples: int = 3
    samples: RandomSamples = field(default_factory=RandomSamples)

    def to_dict(self) -> Dict[str, Any]:
        """报告中记录的设置；不含时间等非确定性信息"""
        return {
            "suites": [suite.value for suite in self.suites],
            "max_degree": self.max_degree,
            "bundle_range": self.bundle_range,
            "seed": self.seed,
            "side": self.side.value,
            "metric_file": self.metric_file,
            "params_file": self.params_file,
            "known_discrepancies": list(self.known_discrepancies),
            "samples": asdict(self.samples),
        }
