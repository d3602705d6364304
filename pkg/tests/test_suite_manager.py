import sys
import os

# 动态添加项目根目录到sys.path，确保可以导入core模块
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import json

import pytest

from core.events import EventTypes, event_bus
from core.models.config import SuiteName
from core.models.error_model import ValidationError
from core.models.report_model import CheckResult, SuiteReport, Verdict
from core.models.uq_model import ActionSide
from core.services.error_handling_service import ErrorHandlingService
from core.services.suite_service import SuiteService
from core.suite_manager import SUITE_REGISTRY, SuiteContext, VerificationSuite, create_suite
from core.utils.export_utils import render_report_json


def check_names(suite_report):
    return [check.name for check in suite_report.checks]


def test_registry_covers_every_suite():
    """每个套件名都有对应的策略"""
    assert set(SUITE_REGISTRY) == set(SuiteName)
    for name in SuiteName:
        assert create_suite(name).name == name


def test_run_selected_suites_in_order(suite_service, make_config):
    """按固定顺序执行所选套件，全部通过时退出状态为 0"""
    report = suite_service.run(make_config([SuiteName.ALGEBRA, SuiteName.PAIRING]))
    assert [suite.suite for suite in report.suites] == ["algebra", "pairing"]
    assert report.ok, render_report_json(report)
    assert report.exit_code == 0
    assert check_names(report.suites[0]) == [
        "algebra.associativity", "algebra.star", "algebra.degree", "algebra.relations", "algebra.q-integer",
    ]
    assert report.suites[0].checks[0].instances == 10


@pytest.mark.parametrize("suite", [
    SuiteName.LEIBNIZ, SuiteName.COMMUTATION, SuiteName.STAR_RELATIONS, SuiteName.CALCULUS,
    SuiteName.METRIC_CONNECTIONS, SuiteName.LEVI_CIVITA, SuiteName.TORSION, SuiteName.PROJECTORS,
    SuiteName.BUNDLE_CONNECTIONS,
])
def test_suites_pass_at_small_degree(suite_service, make_config, suite):
    report = suite_service.run(make_config([suite]))
    assert report.ok, render_report_json(report)


def test_torsion_suite_marks_general_check(suite_service, make_config):
    """一般形式的无挠检查在报告中标记为实验性"""
    report = suite_service.run(make_config([SuiteName.TORSION]))
    general = report.suites[0].checks[1]
    assert general.name == "torsion.general"
    assert general.to_dict()["experimental"] is True


@pytest.mark.parametrize("suite, check", [
    (SuiteName.PODLES_RVF, "podles-rvf.relation"),
    (SuiteName.PODLES_EXD, "podles-exd.lemma"),
])
def test_known_discrepancies_do_not_fail_the_run(suite_service, make_config, suite, check):
    """已知不一致的检查记为 discrepancy 或 resolved，不影响退出状态"""
    report = suite_service.run(make_config([suite]))
    verdicts = {c.name: c.verdict for c in report.suites[0].checks}
    assert verdicts[check] in (Verdict.DISCREPANCY, Verdict.RESOLVED)
    assert report.exit_code == 0


def test_counterexamples_are_capped(suite_service, make_config):
    """反例数被截断，但失败的检查至少保留一个"""
    check = CheckResult("demo.check", max_counterexamples=10)
    for value in range(5):
        check.record(False, {"value": value})
    suite_report = SuiteReport("demo", [check])
    suite_service._finalize(suite_report, make_config([], max_counterexamples=0))
    assert len(check.counterexamples) == 1
    assert check.verdict == Verdict.FAIL
    assert check.failed == 5


class _BrokenSuite(VerificationSuite):
    name = SuiteName.ALGEBRA

    def __init__(self, error):
        self.error = error

    def _execute_internal(self, context):
        raise self.error


@pytest.mark.parametrize("error, prefix", [
    (ValidationError("度量不是厄米的"), "ValidationError: "),
    (ZeroDivisionError("division by zero"), "ZeroDivisionError: "),
])
def test_suite_errors_are_captured(suite_service, make_config, error, prefix):
    """套件内部异常记录在报告中，而不是向外抛出"""
    context = suite_service.create_context(make_config([SuiteName.ALGEBRA]))
    report = _BrokenSuite(error).execute(context)
    assert report.error.startswith(prefix)
    assert not report.ok
    assert report.to_dict()["error"] == report.error


def test_suite_error_reaches_error_service(action_service, derivation_service, calculus_service,
                                           connection_service, podles_service, make_config):
    errors = ErrorHandlingService()
    service = SuiteService(action_service, derivation_service, calculus_service, connection_service,
                           podles_service, errors)
    report = SuiteReport("algebra", error="ValidationError: 测试")
    service._finalize(report, make_config([]))
    assert errors.get_error_history()[-1].code == "SUITE_ERROR"
    assert errors.get_error_history()[-1].source == "algebra"


def test_left_side_context(suite_service, make_config):
    """配置为左作用时联络层改用左作用，缺省沿用注入的右作用服务"""
    context = suite_service.create_context(make_config([SuiteName.TORSION], side=ActionSide.LEFT))
    assert context.connection_service.side == ActionSide.LEFT
    assert suite_service.create_context(make_config([])).connection_service is suite_service.connection_service


@pytest.mark.parametrize("side", [ActionSide.LEFT, ActionSide.RIGHT])
def test_reality_rejection_reports_residual(suite_service, make_config, side):
    """拒绝非实度量的检查要求错误中给出残差 H"""
    report = suite_service.run(make_config([SuiteName.LEVI_CIVITA], side=side))
    rejection = next(check for check in report.suites[0].checks if check.name == "levi-civita.reality-rejection")
    assert rejection.ok, rejection.counterexamples
    assert rejection.instances == 1
    assert "H* = H" in rejection.message


def test_random_streams_are_per_suite(suite_service, make_config):
    """每个套件的随机源只由种子和套件名决定"""
    context = suite_service.create_context(make_config([], seed=5))
    first = context.rng_for(SuiteName.PROJECTORS).random()
    assert context.rng_for(SuiteName.PROJECTORS).random() == first
    assert context.rng_for(SuiteName.ALGEBRA).random() != first


def test_json_report_is_deterministic(suite_service, make_config):
    """同样的配置得到逐字节相同的 JSON 报告"""
    config = make_config([SuiteName.ALGEBRA, SuiteName.PROJECTORS], seed=11)
    first = render_report_json(suite_service.run(config))
    second = render_report_json(suite_service.run(config))
    assert first == second
    data = json.loads(first)
    assert data["settings"]["seed"] == 11
    assert data["totals"]["fail"] == 0


def test_user_metric_is_checked(suite_service, make_config, tmp_path):
    """--metric 提供的度量进入 Levi-Civita 套件"""
    metric_file = tmp_path / "metric.json"
    metric_file.write_text(json.dumps({"h": [["2", "0", "0"], ["0", "2", "0"], ["0", "0", "1"]]}),
                           encoding="utf-8")
    report = suite_service.run(make_config([SuiteName.LEVI_CIVITA], metric_file=str(metric_file)))
    assert "levi-civita.user-metric" in check_names(report.suites[0])
    assert report.ok, render_report_json(report)


def test_progress_events(suite_service, make_config):
    """运行过程中发布套件与运行完成事件"""
    completed, finished = [], []
    event_bus.subscribe(EventTypes.SUITE_COMPLETED, completed.append)
    event_bus.subscribe(EventTypes.RUN_COMPLETED, finished.append)
    try:
        suite_service.run(make_config([SuiteName.PAIRING]))
    finally:
        event_bus.unsubscribe(EventTypes.SUITE_COMPLETED, completed.append)
        event_bus.unsubscribe(EventTypes.RUN_COMPLETED, finished.append)
    assert [event.suite for event in completed] == ["pairing"]
    assert finished[-1].ok
    assert finished[-1].suites == ["pairing"]


def test_context_exposes_degree(suite_service, make_config):
    context = suite_service.create_context(make_config([], max_degree=2))
    assert isinstance(context, SuiteContext)
    assert context.max_degree == 2


@pytest.mark.parametrize("side", [ActionSide.LEFT, ActionSide.RIGHT])
@pytest.mark.parametrize("suite", [SuiteName.METRIC_CONNECTIONS, SuiteName.LEVI_CIVITA, SuiteName.TORSION])
def test_connection_suites_pass_on_both_sides(suite_service, make_config, suite, side):
    report = suite_service.run(make_config([suite], side=side))
    assert report.ok, render_report_json(report)


def test_bundle_suite_covers_second_degree(suite_service, make_config):
    """bundle_range = 2 时 M_1 与 M_2 都参与检查"""
    first = suite_service.run(make_config([SuiteName.BUNDLE_CONNECTIONS], bundle_range=1))
    second = suite_service.run(make_config([SuiteName.BUNDLE_CONNECTIONS], bundle_range=2))
    assert second.ok, render_report_json(second)
    assert second.suites[0].checks[0].instances > first.suites[0].checks[0].instances


@pytest.mark.parametrize("side, included", [(ActionSide.LEFT, True), (ActionSide.RIGHT, False)])
def test_metric_suite_skips_non_invariant_user_metric_on_the_right(suite_service, make_config, tmp_path,
                                                                    side, included):
    metric_file = tmp_path / "metric.json"
    metric_file.write_text(json.dumps({"h": [["1 + c + c*", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}),
                           encoding="utf-8")
    config = make_config([SuiteName.METRIC_CONNECTIONS], side=side, metric_file=str(metric_file))
    context = suite_service.create_context(config)
    labels = SUITE_REGISTRY[SuiteName.METRIC_CONNECTIONS]()._metrics(context)
    assert ("user" in labels) is included
    report = suite_service.run(config)
    assert report.ok, render_report_json(report)
