#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
套件服务 - 按配置执行校验套件并汇总报告
"""

from typing import Optional

from loguru import logger

from core.events import (
    event_bus, EventTypes,
    SuiteStartedEvent, CheckCompletedEvent, SuiteCompletedEvent, RunCompletedEvent,
)
from core.models.config import SuiteConfig
from core.models.connection_model import HermitianMetric, LCParams
from core.models.error_model import ErrorCategory, ErrorInfo, ErrorPriority
from core.models.report_model import RunReport, SuiteReport, Verdict
from core.services.action_service import ActionService
from core.services.calculus_service import CalculusService
from core.services.connection_service import ConnectionService
from core.services.derivation_service import DerivationService
from core.services.error_handling_service import ErrorHandlingService
from core.services.podles_service import PodlesService
from core.suite_manager import SuiteContext, create_suite
from core.utils.logging_utils import timed
from core.utils.parser_utils import load_metric, load_params


class SuiteService:
    """套件服务 - 执行校验套件

    功能：
    1. 读取 --metric / --params 文件
    2. 按固定顺序执行所选套件
    3. 对已知不一致的检查改写结论
    4. 通过事件总线发布进度
    """

    def __init__(self, action_service: ActionService, derivation_service: DerivationService,
                 calculus_service: CalculusService, connection_service: ConnectionService,
                 podles_service: PodlesService, error_service: Optional[ErrorHandlingService] = None):
        """初始化套件服务

        Args:
            action_service: U_q 作用服务
            derivation_service: 导数服务
            calculus_service: 微分演算服务
            connection_service: 联络服务
            podles_service: Podleś 服务
            error_service: 错误处理服务
        """
        self.action_service = action_service
        self.derivation_service = derivation_service
        self.calculus_service = calculus_service
        self.connection_service = connection_service
        self.podles_service = podles_service
        self.error_service = error_service

    def create_context(self, config: SuiteConfig) -> SuiteContext:
        """构造套件上下文；度量或参数文件无法解析时抛出异常

        Raises:
            ParsingError: 文件格式错误
            ValidationError: 度量不是厄米的
            FileAccessError: 文件不存在
        """
        metric: Optional[HermitianMetric] = load_metric(config.metric_file) if config.metric_file else None
        params: Optional[LCParams] = load_params(config.params_file) if config.params_file else None
        return SuiteContext(
            config=config,
            action_service=self.action_service,
            derivation_service=self.derivation_service,
            calculus_service=self.calculus_service,
            connection_service=self._connection_service_for(config),
            podles_service=self.podles_service,
            user_metric=metric,
            user_params=params,
        )

    def _connection_service_for(self, config: SuiteConfig) -> ConnectionService:
        if config.side == self.connection_service.side:
            return self.connection_service
        logger.info(f"联络层使用 {config.side.value} 作用")
        return ConnectionService(self.derivation_service, config.side)

    def run(self, config: SuiteConfig) -> RunReport:
        """执行所选套件

        Args:
            config: 运行配置

        Returns:
            RunReport: 运行报告，exit_code 为 0 当且仅当没有失败
        """
        context = self.create_context(config)
        report = RunReport(settings=config.to_dict())
        total = len(config.suites)
        logger.info(f"开始校验: {total} 个套件, max_degree={config.max_degree}, seed={config.seed}")

        for position, suite_name in enumerate(config.suites, start=1):
            event_bus.publish(EventTypes.SUITE_STARTED,
                              SuiteStartedEvent(suite=suite_name.value, position=position, total=total))
            with timed(f"套件 {suite_name.value}") as timing:
                suite_report = create_suite(suite_name).execute(context)
            self._finalize(suite_report, config)
            report.suites.append(suite_report)
            event_bus.publish(EventTypes.SUITE_COMPLETED, SuiteCompletedEvent(
                suite=suite_report.suite, ok=suite_report.ok, counts=suite_report.counts(),
                elapsed=timing["elapsed"]))

        event_bus.publish(EventTypes.RUN_COMPLETED, RunCompletedEvent(
            ok=report.ok, suites=[suite.suite for suite in report.suites], totals=report.totals()))
        logger.info(f"校验完成: {'全部通过' if report.ok else '存在失败'}, 统计: {report.totals()}")
        return report

    def _finalize(self, suite_report: SuiteReport, config: SuiteConfig) -> None:
        """截断反例、应用已知不一致并发布逐项结果"""
        if suite_report.error:
            self._report_suite_error(suite_report)
        known = set(config.known_discrepancies)
        for check in suite_report.checks:
            # 失败的检查至少保留一个反例
            limit = max(1, config.max_counterexamples)
            check.max_counterexamples = limit
            del check.counterexamples[limit:]
            if check.name in known and check.verdict_override is None:
                check.verdict_override = Verdict.DISCREPANCY if check.failed else Verdict.RESOLVED
                if check.verdict == Verdict.RESOLVED:
                    logger.warning(f"已知不一致的检查 {check.name} 实际通过")
            event_bus.publish(EventTypes.CHECK_COMPLETED, CheckCompletedEvent(
                suite=suite_report.suite, check=check.name, verdict=check.verdict.value,
                passed=check.passed, failed=check.failed))

    def _report_suite_error(self, suite_report: SuiteReport) -> None:
        if self.error_service is None:
            return
        self.error_service.handle_error(ErrorInfo(
            message=suite_report.error,
            category=ErrorCategory.VERIFICATION,
            priority=ErrorPriority.HIGH,
            code="SUITE_ERROR",
            source=suite_report.suite,
        ))
