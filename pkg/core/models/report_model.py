#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""校验结果数据模型"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class Verdict(Enum):
    """单项检查结论"""
    PASS = "pass"
    FAIL = "fail"
    DISCREPANCY = "discrepancy"  # 已知不一致，且确实失败
    RESOLVED = "resolved"  # 已知不一致，但实际通过
    ERROR = "error"  # 检查本身抛出异常

    @staticmethod
    def values() -> List[str]:
        return [verdict.value for verdict in Verdict]


def encode_value(value: Any) -> Any:
    """将代数对象编码为 JSON 兼容的值"""
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [encode_value(item) for item in value]
    if isinstance(value, dict):
        return {str(key): encode_value(item) for key, item in value.items()}
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return str(value)


@dataclass
class CheckResult:
    """一项检查（可能包含多个实例）的汇总结果"""
    name: str
    passed: int = 0
    failed: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    message: str = ""
    experimental: bool = False
    max_counterexamples: int = 3
    verdict_override: Optional[Verdict] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.verdict_override != Verdict.ERROR

    @property
    def instances(self) -> int:
        return self.passed + self.failed

    @property
    def verdict(self) -> Verdict:
        if self.verdict_override is not None:
            return self.verdict_override
        return Verdict.PASS if self.failed == 0 else Verdict.FAIL

    def record(self, ok: bool, inputs: Optional[Dict[str, Any]] = None,
               lhs: Any = None, rhs: Any = None) -> bool:
        """记录一个实例；失败时保存有限数量的反例"""
        if ok:
            self.passed += 1
            return True
        self.failed += 1
        if len(self.counterexamples) < self.max_counterexamples:
            example: Dict[str, Any] = {"inputs": encode_value(inputs or {})}
            if lhs is not None or rhs is not None:
                example["lhs"] = encode_value(lhs)
                example["rhs"] = encode_value(rhs)
            self.counterexamples.append(example)
        return False

    def compare(self, lhs: Any, rhs: Any, inputs: Optional[Dict[str, Any]] = None) -> bool:
        return self.record(lhs == rhs, inputs, lhs, rhs)

    def merge(self, other: "CheckResult") -> "CheckResult":
        self.passed += other.passed
        self.failed += other.failed
        room = self.max_counterexamples - len(self.counterexamples)
        if room > 0:
            self.counterexamples.extend(other.counterexamples[:room])
        return self

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "name": self.name,
            "verdict": self.verdict.value,
            "instances": self.instances,
            "passed": self.passed,
            "failed": self.failed,
        }
        if self.experimental:
            data["experimental"] = True
        if self.message:
            data["message"] = self.message
        if self.counterexamples:
            data["counterexamples"] = self.counterexamples
        return data


@dataclass
class SuiteReport:
    """一个校验套件的报告"""
    suite: str
    checks: List[CheckResult] = field(default_factory=list)
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.error and all(check.verdict not in (Verdict.FAIL, Verdict.ERROR) for check in self.checks)

    def counts(self) -> Dict[str, int]:
        counts = {verdict.value: 0 for verdict in Verdict}
        for check in self.checks:
            counts[check.verdict.value] += 1
        return counts

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "suite": self.suite,
            "ok": self.ok,
            "counts": self.counts(),
            "checks": [check.to_dict() for check in self.checks],
        }
        if self.error:
            data["error"] = self.error
        return data


@dataclass
class RunReport:
    """一次完整运行的报告"""
    settings: Dict[str, Any] = field(default_factory=dict)
    suites: List[SuiteReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(suite.ok for suite in self.suites)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def totals(self) -> Dict[str, int]:
        totals = {verdict.value: 0 for verdict in Verdict}
        for suite in self.suites:
            for key, value in suite.counts().items():
                totals[key] += value
        return totals

    def to_dict(self) -> Dict[str, Any]:
        return {
            "settings": self.settings,
            "ok": self.ok,
            "totals": self.totals(),
            "suites": [suite.to_dict() for suite in self.suites],
        }
