#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
QSphere 命令行入口

    qsphere verify       运行校验套件
    qsphere levi-civita  输出 Levi-Civita 联络的 27 个 Γ̃ 符号
    qsphere act          计算 U_q 元素对 S³_q 元素的作用
    qsphere projector    输出线丛投影 p_n
"""

import argparse
import os
import sys
from typing import Callable, Dict, List, Optional

from core.containers import AppContainer, create_container
from core.events import event_bus, EventTypes
from core.models.config import (
    APP_NAME, EXIT_OK, EXIT_USAGE_ERROR, EXIT_VERIFICATION_FAILED, OutputFormat, SuiteName,
)
from core.models.error_model import FileAccessError, ParsingError, ValidationError
from core.models.report_model import CheckResult
from core.models.uq_model import ActionSide, parse_uq_word
from core.utils.export_utils import (
    render_connection, render_mapping, render_projector, render_report, to_json_text,
)
from core.utils.file_utils import write_text_file
from core.utils.logging_utils import logger, setup_logger
from core.utils.parser_utils import load_element, load_metric, load_params

USAGE_ERRORS = (ParsingError, ValidationError, FileAccessError)


def build_parser() -> argparse.ArgumentParser:
    """构造命令行解析器"""
    parser = argparse.ArgumentParser(prog="qsphere", description=f"{APP_NAME}: S³_q 上 q 仿射联络的精确符号校验")
    parser.add_argument("--config", help="YAML 配置文件，缺省为 config/config.yaml")
    parser.add_argument("--log-level", default=None, help="控制台日志级别，如 DEBUG、INFO、WARNING")
    parser.add_argument("--no-log-file", action="store_true", help="不写日志文件")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="运行校验套件")
    verify.add_argument("--suite", nargs="+", metavar="NAME",
                        choices=SuiteName.values() + ["all"], help="套件名，或 all")
    verify.add_argument("--max-degree", type=int, help="扫描的最大单项式长度")
    verify.add_argument("--bundle-range", type=int, help="线丛检查的 |n| 上限")
    verify.add_argument("--metric", help="JSON 度量文件")
    verify.add_argument("--params", help="JSON Levi-Civita 参数文件")
    verify.add_argument("--format", choices=OutputFormat.values(), help="报告格式")
    verify.add_argument("--seed", type=int, help="随机样本的种子")
    verify.add_argument("--side", choices=ActionSide.values(), help="联络层使用的作用方向")
    verify.add_argument("--output", help="报告写入文件而不是标准输出")

    levi_civita = commands.add_parser("levi-civita", help="输出 Levi-Civita 联络")
    levi_civita.add_argument("--metric", required=True, help="JSON 度量文件（3×3，K 不变）")
    levi_civita.add_argument("--params", help="JSON 参数文件，缺省全为零")
    levi_civita.add_argument("--verify", action="store_true", help="同时检查无挠与度量相容")
    levi_civita.add_argument("--format", choices=OutputFormat.values(), default=OutputFormat.JSON.value)

    act = commands.add_parser("act", help="计算 U_q 作用")
    act.add_argument("--op", required=True, help='U_q 的词，例如 "E K" 或 "F K^-1"')
    act.add_argument("--side", choices=ActionSide.values(), default=ActionSide.LEFT.value)
    act.add_argument("--element", required=True, help="JSON 元素文件或表达式，例如 \"a c*\"")
    act.add_argument("--format", choices=OutputFormat.values(), default=OutputFormat.TEXT.value)

    projector = commands.add_parser("projector", help="输出线丛投影 p_n")
    projector.add_argument("--n", type=int, required=True, help="线丛次数")
    projector.add_argument("--format", choices=OutputFormat.values(), default=OutputFormat.JSON.value)
    return parser


def _emit(content: str, output: Optional[str] = None) -> None:
    if output:
        write_text_file(output, content)
    else:
        sys.stdout.write(content)
        sys.stdout.flush()


def _log_suite_started(event) -> None:
    logger.info(f"[{event.position}/{event.total}] 开始套件 {event.suite}")


def _log_suite_completed(event) -> None:
    logger.info(f"套件 {event.suite}: {'通过' if event.ok else '失败'} {event.counts}")


def _subscribe_progress() -> None:
    """把套件进度写入日志；重复订阅只登记一次"""
    event_bus.subscribe(EventTypes.SUITE_STARTED, _log_suite_started)
    event_bus.subscribe(EventTypes.SUITE_COMPLETED, _log_suite_completed)


def run_verify(container: AppContainer, args: argparse.Namespace) -> int:
    config_service = container.config_service()
    suite_config = config_service.resolve({
        "suites": args.suite,
        "max_degree": args.max_degree,
        "bundle_range": args.bundle_range,
        "seed": args.seed,
        "side": args.side,
        "output_format": args.format,
        "metric_file": args.metric,
        "params_file": args.params,
    })
    _subscribe_progress()
    report = container.suite_service().run(suite_config)
    _emit(render_report(report, suite_config.output_format.value), args.output)
    return EXIT_OK if report.ok else EXIT_VERIFICATION_FAILED


def run_levi_civita(container: AppContainer, args: argparse.Namespace) -> int:
    service = container.connection_service()
    metric = load_metric(args.metric)
    params = load_params(args.params) if args.params else None
    connection = service.levi_civita(metric, params)
    checks: List[CheckResult] = []
    if args.verify:
        checks.append(service.check_torsion_free(connection))
        checks.append(service.check_metric_compatibility(connection, "gamma-tilde"))
        if connection.metric.invertible:
            checks.append(service.check_metric_compatibility(connection, "module"))
    ok = all(check.ok for check in checks)
    if args.format == OutputFormat.JSON.value:
        data = connection.to_json()
        if args.verify:
            data["checks"] = [check.to_dict() for check in checks]
            data["ok"] = ok
        _emit(to_json_text(data))
    else:
        lines = [render_connection(connection, "text")]
        lines.extend(f"{check.verdict.value:<6} {check.name}: {check.passed}/{check.instances}\n" for check in checks)
        _emit("".join(lines))
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


def run_act(container: AppContainer, args: argparse.Namespace) -> int:
    operator = parse_uq_word(args.op)
    element = load_element(args.element)
    side = ActionSide(args.side)
    result = container.action_service().act(operator, element, side)
    if args.format == OutputFormat.JSON.value:
        data = {"op": str(operator), "side": side.value, "element": element.to_json(), "result": result.to_json()}
    else:
        data = {"op": str(operator), "side": side.value, "element": str(element), "result": str(result)}
    _emit(render_mapping(data, args.format))
    return EXIT_OK


def run_projector(container: AppContainer, args: argparse.Namespace) -> int:
    projector = container.podles_service().build_projector(args.n)
    _emit(render_projector(projector, args.format))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[AppContainer, argparse.Namespace], int]] = {
    "verify": run_verify,
    "levi-civita": run_levi_civita,
    "act": run_act,
    "projector": run_projector,
}


def main(argv: Optional[List[str]] = None) -> int:
    """应用程序主入口

    Returns:
        int: 退出状态，0 全部通过，1 校验失败，2 用法或输入错误
    """
    args = build_parser().parse_args(argv)
    try:
        container = create_container(args.config)
        log_settings = container.config_service().get_log_settings()
        if args.log_level:
            log_settings["console_level"] = args.log_level.upper()
        setup_logger(log_to_file=not args.no_log_file, **log_settings)
        # 配置事件总线，在开发环境中启用调试模式
        event_bus.set_debug(os.environ.get('DEBUG_EVENT_BUS', '').lower() == 'true')
        return COMMANDS[args.command](container, args)
    except USAGE_ERRORS as e:
        # container 可能尚未创建，直接使用独立的错误处理服务实例
        AppContainer.error_handling_service().handle_exception(e, source=args.command)
        sys.stderr.write(f"qsphere: error: {e.message}\n")
        return EXIT_USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
