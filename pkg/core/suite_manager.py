#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
校验套件管理器 - 每个套件是一个策略，由 SuiteService 按固定顺序调度
套件只产生 CheckResult；已知不一致的判定与事件发布由 SuiteService 负责
"""

import random
from abc import ABC, abstractmethod
from dataclasses import replace
from typing import Dict, List, Optional, Type

from loguru import logger

from core.models.algebra_model import (
    AlgebraElement, A, C, C_STAR, ONE_ELEMENT, ZERO_ELEMENT,
    basis_elements, defining_relations, enumerate_basis, monomial_pairs,
)
from core.models.config import SuiteConfig, SuiteName
from core.models.connection_model import (
    Connection, HermitianMetric, LCParams, diagonal_matrix, to_matrix, unit_vector,
)
from core.models.error_model import QSphereError, ValidationError
from core.models.form_model import OMEGA_MINUS, OMEGA_PLUS, OMEGA_Z
from core.models.podles_model import B_MINUS, B_PLUS, B_ZERO, podles_indices
from core.models.report_model import CheckResult, SuiteReport
from core.models.scalar_model import I_UNIT, ONE, Q, Q_INV, Scalar, q_integer
from core.models.uq_model import ActionSide, E, F, K, K_INV
from core.models.vector_field_model import INDICES
from core.services.action_service import ActionService
from core.services.calculus_service import CalculusService
from core.services.connection_service import ConnectionService
from core.services.derivation_service import DerivationService
from core.services.podles_service import PodlesService
from core.utils.logging_utils import log_exception

SIDES = (ActionSide.LEFT, ActionSide.RIGHT)


class SuiteContext:
    """套件上下文类 - 封装套件共享的服务、运行配置与随机源"""

    def __init__(self, config: SuiteConfig, action_service: ActionService,
                 derivation_service: DerivationService, calculus_service: CalculusService,
                 connection_service: ConnectionService, podles_service: PodlesService,
                 user_metric: Optional[HermitianMetric] = None, user_params: Optional[LCParams] = None):
        """初始化套件上下文

        Args:
            config: 运行配置
            action_service: U_q 作用服务
            derivation_service: 导数服务
            calculus_service: 微分演算服务
            connection_service: 联络服务
            podles_service: Podleś 服务
            user_metric: --metric 提供的度量
            user_params: --params 提供的 Levi-Civita 参数
        """
        self.config = config
        self.action_service = action_service
        self.derivation_service = derivation_service
        self.calculus_service = calculus_service
        self.connection_service = connection_service
        self.podles_service = podles_service
        self.user_metric = user_metric
        self.user_params = user_params

    @property
    def max_degree(self) -> int:
        return self.config.max_degree

    def rng_for(self, suite: SuiteName) -> random.Random:
        """每个套件独立的随机源，结果与所选套件的组合无关"""
        return random.Random(f"{self.config.seed}:{suite.value}")


class VerificationSuite(ABC):
    """校验套件抽象基类"""

    name: SuiteName

    def execute(self, context: SuiteContext) -> SuiteReport:
        """执行套件 - 模板方法

        Args:
            context: 套件上下文

        Returns:
            SuiteReport: 套件报告；内部异常记录在 error 字段
        """
        report = SuiteReport(self.name.value)
        try:
            report.checks = self._execute_internal(context)
        except QSphereError as e:
            logger.error(f"{self._get_strategy_name()}失败: {e.message}")
            report.error = f"{e.__class__.__name__}: {e.message}"
        except Exception as e:
            log_exception(e, {"suite": self.name.value})
            report.error = f"{e.__class__.__name__}: {str(e)}"
        return report

    @abstractmethod
    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        """实际执行检查的内部方法 - 由子类实现"""

    def _get_strategy_name(self) -> str:
        return self.__class__.__name__


# 代数与作用

class AlgebraSuite(VerificationSuite):
    """S³_q 引擎自检：结合律、星运算、q 整数、定义关系与次数可加性"""

    name = SuiteName.ALGEBRA
    TRIPLE_LENGTH = 3
    Q_INTEGER_RANGE = 20

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        rng = context.rng_for(self.name)
        basis = enumerate_basis(min(self.TRIPLE_LENGTH, context.max_degree))

        associativity = CheckResult("algebra.associativity")
        for _ in range(context.config.samples.associativity):
            f, g, h = (AlgebraElement.from_monomial(rng.choice(basis)) for _ in range(3))
            associativity.compare((f * g) * h, f * (g * h), {"f": f, "g": g, "h": h})

        star = CheckResult("algebra.star")
        degree = CheckResult("algebra.degree")
        for f, g in monomial_pairs(context.max_degree):
            star.compare((f * g).star(), g.star() * f.star(), {"f": f, "g": g, "law": "(fg)* = g*f*"})
            product = f * g
            if not product.is_zero:
                degree.record(product.u1_degree() == f.u1_degree() + g.u1_degree(), {"f": f, "g": g},
                              product.u1_degree(), f.u1_degree() + g.u1_degree())
        for element in basis_elements(context.max_degree):
            star.compare(element.star().star(), element, {"f": element, "law": "f** = f"})

        relations = CheckResult("algebra.relations")
        for name, residual in defining_relations().items():
            relations.record(residual.is_zero, {"relation": name}, residual, ZERO_ELEMENT)

        q_integers = CheckResult("algebra.q-integer")
        q_plus_inv = Q + Q_INV
        q_integers.compare(q_integer(0), Scalar(0), {"n": 0})
        q_integers.compare(q_integer(1), ONE, {"n": 1})
        for n in range(-self.Q_INTEGER_RANGE + 1, self.Q_INTEGER_RANGE):
            q_integers.compare(q_integer(n + 1), q_plus_inv * q_integer(n) - q_integer(n - 1),
                               {"n": n, "law": "[n+1] = (q+q⁻¹)[n] - [n-1]"})
        for n in range(1, self.Q_INTEGER_RANGE + 1):
            q_integers.compare(q_integer(-n), -q_integer(n), {"n": n, "law": "[-n] = -[n]"})
        return [associativity, star, degree, relations, q_integers]


class UqTablesSuite(VerificationSuite):
    """闭式作用表、Hopf 结构、U_q 关系与模代数性质"""

    name = SuiteName.UQ_TABLES
    MAX_POWER = 5

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        service = context.action_service
        results = [service.check_power_tables(self.MAX_POWER), service.check_hopf_examples()]
        pairs = monomial_pairs(min(context.max_degree, 3))
        for side in SIDES:
            results.append(service.check_relations(context.max_degree, side))
            results.append(service.check_coproduct_rule((E, F, K, K_INV, E * F), pairs, side))
        results.append(service.check_actions_commute(context.max_degree))
        return results


class PairingSuite(VerificationSuite):
    name = SuiteName.PAIRING

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        return [context.action_service.check_pairing_table()]


class LeibnizSuite(VerificationSuite):
    """扭曲 Leibniz 规则与 σ 的同态性质，两侧作用"""

    name = SuiteName.LEIBNIZ

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        service = context.derivation_service
        pairs = monomial_pairs(context.max_degree)
        results = []
        for side in SIDES:
            for index in INDICES:
                results.append(service.check_twisted_leibniz(index, pairs, side))
            results.append(service.check_sigma_laws(min(context.max_degree, 3), side))
        return results


class CommutationSuite(VerificationSuite):
    name = SuiteName.COMMUTATION

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        service = context.derivation_service
        results = []
        for side in SIDES:
            results.append(service.check_commutation_relations(context.max_degree, side))
            results.append(service.check_xz_properties(context.max_degree, side))
        return results


class StarRelationsSuite(VerificationSuite):
    """U_q 作用与星运算的相容性，以及 X* = *∘X∘*"""

    name = SuiteName.STAR_RELATIONS

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        operators = (E, F, K, K_INV, E * K, F * E)
        elements = basis_elements(context.max_degree)
        results = []
        for side in SIDES:
            results.append(context.action_service.check_star_compatibility(operators, elements, side))
            results.append(context.derivation_service.check_star_fields(context.max_degree, side))
        return results


class CalculusSuite(VerificationSuite):
    name = SuiteName.CALCULUS

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        service = context.calculus_service
        results = service.check_form_identities(context.max_degree)
        results.append(service.check_bimodule(min(context.max_degree, 3)))
        forms = (OMEGA_PLUS, OMEGA_MINUS, OMEGA_Z, service.differential(A), service.differential(C_STAR))
        results.append(service.check_dagger(forms, basis_elements(min(context.max_degree, 2))))
        return results


# 联络

def constant_metric() -> HermitianMetric:
    """常数厄米度量 [[2, i, 0], [-i, 2, 1], [0, 1, 1]] 及其逆"""
    i = ONE_ELEMENT.scale(I_UNIT)
    n = ONE_ELEMENT
    zero = ZERO_ELEMENT
    h = to_matrix([[n.scale(2), i, zero], [-i, n.scale(2), n], [zero, n, n]])
    h_inv = to_matrix([[n, -i, i], [i, n.scale(2), n.scale(-2)], [-i, n.scale(-2), n.scale(3)]])
    return HermitianMetric(h, h_inv, True)


def perturb(connection: Connection, rng: random.Random) -> Connection:
    """在一个 Γ̃_{+i,j} 上加非零随机项，并丢弃 Γ 表"""
    rank = connection.rank
    key = (INDICES[0], rng.randrange(rank), rng.randrange(rank))
    noise = ZERO_ELEMENT
    while noise.is_zero:
        noise = ConnectionService.random_element(rng)
    tilde = dict(connection.gamma_tilde)
    tilde[key] = connection.tilde(*key) + noise
    return replace(connection, gamma_tilde=tilde, gamma=None)


class MetricConnectionsSuite(VerificationSuite):
    """参数化度量相容联络：生成、两层相容性、扰动检出与差的张量性"""

    name = SuiteName.METRIC_CONNECTIONS

    def _metrics(self, context: SuiteContext) -> Dict[str, HermitianMetric]:
        metrics = {"delta": HermitianMetric.identity(3), "constant": constant_metric()}
        user = context.user_metric
        if user is not None:
            service = context.connection_service
            try:
                if service.side == ActionSide.RIGHT:
                    service.validate_metric(HermitianMetric(user.h, user.h_inv, True))
                metrics["user"] = user
            except ValidationError as e:
                logger.warning(f"右作用下跳过用户度量: {e.message}")
        return metrics

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        rng = context.rng_for(self.name)
        service = context.connection_service
        samples = context.config.samples
        gamma_level = CheckResult("metric-connections.gamma-tilde")
        module_level = CheckResult("metric-connections.module")
        perturbations = CheckResult("metric-connections.perturbation-detected")
        difference = CheckResult("metric-connections.difference")
        metrics = list(self._metrics(context).items())

        for sample in range(samples.metric_connections):
            label, metric = metrics[sample % len(metrics)]
            rank = metric.rank
            connection = service.metric_connection_from_params(
                metric, *(service.random_hermitian_matrix(rng, rank) for _ in range(3)))
            service.check_metric_compatibility(connection, "gamma-tilde", gamma_level)
            if metric.invertible:
                service.check_metric_compatibility(connection, "module", module_level)

            if sample < samples.perturbations:
                perturbed = perturb(connection, rng)
                residual = service.check_metric_compatibility(perturbed, "gamma-tilde")
                perturbations.record(not residual.ok, {"sample": sample, "metric": label},
                                     residual.failed, "> 0")

            if metric.invertible and sample < 2:
                other = service.metric_connection_from_params(
                    metric, *(service.random_hermitian_matrix(rng, rank) for _ in range(3)))
                vectors = [unit_vector(rank, i) for i in range(rank)]
                service.check_connection_difference(connection, other, vectors, basis_elements(1), difference)
        return [gamma_level, module_level, perturbations, difference]


def non_real_metric(side: ActionSide = ActionSide.RIGHT) -> HermitianMetric:
    """实性条件不成立的 K 不变度量

    左作用下 B± 是 K 不变的，取 hz₊ = B₊、h₊z = B₋；右作用下只有 B₀ 的多项式不变，取 h₊z = hz₊ = B₀。
    """
    n, zero = ONE_ELEMENT, ZERO_ELEMENT
    if side == ActionSide.LEFT:
        upper, lower = B_MINUS, B_PLUS
    else:
        upper = lower = B_ZERO
    return HermitianMetric(to_matrix([[n, zero, upper], [zero, n, zero], [lower, zero, n]]), None, True)


class LeviCivitaSuite(VerificationSuite):
    """Levi-Civita 联络：与显式表一致、无挠、相容，并拒绝不满足实性条件的度量"""

    name = SuiteName.LEVI_CIVITA

    def _check_connection(self, context: SuiteContext, connection: Connection,
                          torsion: CheckResult, compatibility: CheckResult) -> None:
        service = context.connection_service
        service.check_torsion_free(connection, torsion)
        service.check_metric_compatibility(connection, "gamma-tilde", compatibility)
        if connection.metric.invertible:
            service.check_metric_compatibility(connection, "module", compatibility)

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        rng = context.rng_for(self.name)
        service = context.connection_service
        table = CheckResult("levi-civita.explicit-table")
        torsion = CheckResult("levi-civita.torsion")
        compatibility = CheckResult("levi-civita.compatibility")
        rejection = CheckResult("levi-civita.reality-rejection")

        delta = service.levi_civita(HermitianMetric.identity(3))
        explicit = service.diagonal_connection(ONE_ELEMENT)
        for index in INDICES:
            for i in range(3):
                for j in range(3):
                    table.compare(delta.tilde(index, i, j), explicit.tilde(index, i, j),
                                  {"symbol": delta.symbol_label(index, i, j)})
        self._check_connection(context, delta, torsion, compatibility)

        deformed = HermitianMetric(diagonal_matrix([ONE_ELEMENT + C * C_STAR, ONE_ELEMENT, ONE_ELEMENT]), None, True)
        self._check_connection(context, service.levi_civita(deformed), torsion, compatibility)

        for _ in range(context.config.samples.levi_civita):
            h = service.random_hermitian_matrix(rng, 3, max_len=0)
            metric = HermitianMetric(h, None, True)
            self._check_connection(context, service.levi_civita(metric, service.random_lc_params(rng)),
                                   torsion, compatibility)

        results = [table, torsion, compatibility, rejection]
        if context.user_metric is not None:
            user_check = CheckResult("levi-civita.user-metric")
            try:
                user = service.levi_civita(context.user_metric, context.user_params)
                service.check_torsion_free(user, user_check)
                service.check_metric_compatibility(user, "gamma-tilde", user_check)
            except ValidationError as e:
                user_check.record(False, {"metric": context.user_metric}, e.message, None)
            results.append(user_check)

        metric = non_real_metric(service.side)
        residual = service.reality_residual(metric)
        try:
            service.levi_civita(metric)
            rejection.record(False, {"metric": metric}, "accepted", "ValidationError")
        except ValidationError as e:
            reported = e.details.get("H")
            named = reported is not None and AlgebraElement.from_json(reported) == residual
            rejection.record(named and residual.star() != residual,
                             {"metric": metric, "side": service.side.value}, reported, residual)
            rejection.message = e.message
        return results


class TorsionSuite(VerificationSuite):
    """K 不变无挠方程、一般形式（实验性）与平凡联络的反例"""

    name = SuiteName.TORSION

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        service = context.connection_service
        delta_metric = HermitianMetric.identity(3)
        connections = [service.levi_civita(delta_metric), service.diagonal_connection(ONE_ELEMENT)]
        invariant = CheckResult("torsion.k-invariant")
        general = CheckResult("torsion.general", experimental=True)
        for connection in connections:
            service.check_torsion_free(connection, invariant)
        service.check_torsion_general(connections[0], general)

        trivial = CheckResult("torsion.trivial-detected")
        residual = service.check_torsion_free(service.trivial_connection(delta_metric))
        trivial.record(not residual.ok, {"connection": "∇⁰", "metric": "δ"}, residual.failed, "> 0")
        return [invariant, general, trivial]


# Podleś 球面与线丛

class PodlesRvfSuite(VerificationSuite):
    name = SuiteName.PODLES_RVF

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        service = context.podles_service
        return [
            service.check_relations(),
            service.check_y_table(),
            service.check_left_x_table(),
            service.check_negative_control(),
            service.check_rvf_relation(podles_indices(context.max_degree)),
        ]


class PodlesExdSuite(VerificationSuite):
    name = SuiteName.PODLES_EXD

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        service = context.podles_service
        indices = podles_indices(context.max_degree)
        return [
            service.check_omega_inversion(),
            service.check_canonical_inversion(indices),
            service.check_exd_lemma(indices),
        ]


class ProjectorsSuite(VerificationSuite):
    """|n| ≤ bundle_range 的投影：结构、K 本征值、核引理"""

    name = SuiteName.PROJECTORS
    KERNEL_RANGE = 2

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        rng = context.rng_for(self.name)
        service = context.podles_service
        bound = context.config.bundle_range
        structure = CheckResult("projectors.structure")
        eigen = CheckResult("projectors.sigma-eigen")
        kernel = CheckResult("projectors.kernel")
        for n in range(-bound, bound + 1):
            projector = service.build_projector(n)
            service.check_projector(projector, structure)
            service.sigma_eigen_check(n, eigen)
            if 0 < abs(n) <= self.KERNEL_RANGE:
                service.check_kernel_lemma(projector, rng, context.config.samples.kernel, kernel)
        return [structure, eigen, kernel]


class BundleConnectionsSuite(VerificationSuite):
    """M_n（n = 1, 2）上 h = δ 的投影联络：相容性与 Christoffel 符号的次数"""

    name = SuiteName.BUNDLE_CONNECTIONS
    DEGREES = (1, 2)

    def _execute_internal(self, context: SuiteContext) -> List[CheckResult]:
        service = context.podles_service
        compatibility = CheckResult("bundle-connections.compatibility")
        for n in self.DEGREES:
            if n > context.config.bundle_range:
                continue
            bundle = service.bundle_connection(n)
            service.check_bundle_connection(bundle, compatibility)
        return [compatibility]


SUITE_REGISTRY: Dict[SuiteName, Type[VerificationSuite]] = {
    suite.name: suite for suite in (
        AlgebraSuite, UqTablesSuite, PairingSuite, LeibnizSuite, CommutationSuite, StarRelationsSuite,
        CalculusSuite, MetricConnectionsSuite, LeviCivitaSuite, TorsionSuite, PodlesRvfSuite,
        PodlesExdSuite, ProjectorsSuite, BundleConnectionsSuite,
    )
}


def create_suite(name: SuiteName) -> VerificationSuite:
    """按名称创建套件策略"""
    return SUITE_REGISTRY[name]()
