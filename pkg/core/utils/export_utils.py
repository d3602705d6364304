#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""报告与结果导出工具函数

JSON 输出的键顺序固定（套件顺序，其次单项式字典序），同一配置与种子得到相同字节。
"""

import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

from loguru import logger

from core.models.connection_model import Connection
from core.models.podles_model import BundleProjector
from core.models.report_model import RunReport, SuiteReport, Verdict
from core.models.vector_field_model import INDICES
from core.utils.file_utils import write_text_file

_VERDICT_MARK = {
    Verdict.PASS: "PASS",
    Verdict.FAIL: "FAIL",
    Verdict.DISCREPANCY: "KNOWN",
    Verdict.RESOLVED: "RESOLVED",
    Verdict.ERROR: "ERROR",
}


def to_json_text(data: Any) -> str:
    """统一的 JSON 序列化：两格缩进、保留非 ASCII 字符、末尾换行"""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def render_report_json(report: Optional[RunReport]) -> str:
    """空报告输出 "{}" 形式的合法文档"""
    if report is None or not report.suites:
        return to_json_text({})
    return to_json_text(report.to_dict())


def _render_suite_text(suite: SuiteReport) -> List[str]:
    lines = [f"[{'OK' if suite.ok else 'FAILED'}] {suite.suite}"]
    if suite.error:
        lines.append(f"    error: {suite.error}")
    for check in suite.checks:
        flag = " (experimental)" if check.experimental else ""
        lines.append(f"    {_VERDICT_MARK[check.verdict]:<8} {check.name}: "
                     f"{check.passed}/{check.instances}{flag}")
        if check.message:
            lines.append(f"             {check.message}")
        for example in check.counterexamples:
            lines.append(f"             counterexample: {json.dumps(example, ensure_ascii=False)}")
    return lines


def render_report_text(report: Optional[RunReport]) -> str:
    if report is None or not report.suites:
        return "no suites run\n"
    lines: List[str] = []
    for suite in report.suites:
        lines.extend(_render_suite_text(suite))
    totals = report.totals()
    summary = ", ".join(f"{key}={totals[key]}" for key in Verdict.values())
    lines.append(f"totals: {summary}")
    lines.append("result: " + ("all checks passed" if report.ok else "verification failed"))
    return "\n".join(lines) + "\n"


_REPORT_RENDERERS: Dict[str, Callable[[Optional[RunReport]], str]] = {
    "json": render_report_json,
    "text": render_report_text,
}


def render_report(report: Optional[RunReport], format_type: str = "text") -> str:
    """按格式渲染运行报告

    Raises:
        ValueError: 不支持的格式
    """
    renderer = _REPORT_RENDERERS.get(format_type.lower())
    if renderer is None:
        raise ValueError(f"不支持的报告格式: {format_type}")
    return renderer(report)


def export_report(report: RunReport, output_path: Union[str, Path], format_type: str = "json") -> bool:
    """导出运行报告到文件

    Returns:
        bool: 是否成功导出
    """
    try:
        write_text_file(output_path, render_report(report, format_type))
        return True
    except Exception as e:
        logger.error(f"导出报告失败: {str(e)}")
        return False


def render_connection(connection: Connection, format_type: str = "json") -> str:
    """输出 Γ̃ 表；文本格式每行一个符号"""
    if format_type == "json":
        return to_json_text(connection.to_json())
    lines = [
        f"Γ̃_{connection.symbol_label(index, i, j)} = {connection.tilde(index, i, j)}"
        for index in INDICES for i in range(connection.rank) for j in range(connection.rank)
    ]
    return "\n".join(lines) + "\n"


def render_projector(projector: BundleProjector, format_type: str = "json") -> str:
    """输出投影矩阵；文本格式写出 p_μν = √(radicand)·M_μν"""
    if format_type == "json":
        return to_json_text(projector.to_json())
    lines = [f"p_{projector.n}: rank {projector.rank}"]
    for mu in range(projector.rank):
        for nu in range(projector.rank):
            lines.append(f"  p[{mu}][{nu}] = sqrt({projector.radicand(mu, nu)}) * ({projector.matrix[mu][nu]})")
    return "\n".join(lines) + "\n"


def render_mapping(data: Dict[str, Any], format_type: str = "json") -> str:
    """act 等小型结果的输出"""
    if format_type == "json":
        return to_json_text(data)
    return "\n".join(f"{key}: {value}" for key, value in data.items()) + "\n"
