#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Podleś 服务 - S²_q 上的右向量场 Y_a、微分的 dB 展开、线丛投影及其上的联络
"""

import random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from core.models.algebra_model import AlgebraElement, A, A_STAR, C, C_STAR, ZERO_ELEMENT, ONE_ELEMENT
from core.models.connection_model import HermitianMetric, Matrix, diagonal_matrix, to_matrix, vector_times_matrix
from core.models.error_model import ConstructionError, ValidationError
from core.models.form_model import OneForm, OMEGA_PLUS, OMEGA_MINUS
from core.models.podles_model import (
    B_ZERO, B_PLUS, B_MINUS, BundleConnection, BundleProjector, ChristoffelEntry, PodlesIndex,
    bundle_weights, bundle_words, require_degree_zero,
)
from core.models.report_model import CheckResult
from core.models.scalar_model import Scalar, ONE, Q, Q_INV, q_power, s_power
from core.models.uq_model import ActionSide
from core.models.vector_field_model import FieldIndex, INDICES, SigmaMap
from core.services.calculus_service import CalculusService
from core.services.connection_service import ConnectionService
from core.services.derivation_service import DerivationService

PLUS, MINUS, Z = FieldIndex.PLUS, FieldIndex.MINUS, FieldIndex.Z
RIGHT, LEFT = ActionSide.RIGHT, ActionSide.LEFT


class PodlesService:
    """Podleś 球服务"""

    def __init__(self, derivation_service: DerivationService, calculus_service: CalculusService,
                 connection_service: ConnectionService):
        """初始化 Podleś 服务

        Args:
            derivation_service: 导数服务
            calculus_service: 微分学服务
            connection_service: 联络服务；线丛上的联络总是用右作用构造
        """
        self.derivation_service = derivation_service
        self.calculus_service = calculus_service
        if connection_service.side == RIGHT:
            self.bundle_service = connection_service
        else:
            self.bundle_service = ConnectionService(derivation_service, RIGHT)

    # 右向量场

    def y_action(self, element: AlgebraElement, index: FieldIndex) -> AlgebraElement:
        """f ◁ Y_a，Y_a 即右作用下的 X_a

        Raises:
            ValidationError: f 或结果不在 S²_q 中
        """
        require_degree_zero(element)
        result = self.derivation_service.apply_index(index, element, RIGHT)
        return require_degree_zero(result, "Y 作用结果")

    def _y(self, element: AlgebraElement, index: FieldIndex, times: int = 1) -> AlgebraElement:
        for _ in range(times):
            element = self.derivation_service.apply_index(index, element, RIGHT)
        return element

    def _right_k(self, power: int, element: AlgebraElement) -> AlgebraElement:
        return self.derivation_service.k_apply(power, element, RIGHT)

    @staticmethod
    def y_table() -> List[Tuple[AlgebraElement, FieldIndex, AlgebraElement]]:
        q, q_inv = Q, Q_INV
        one_q2 = ONE + q * q
        return [
            (B_ZERO, PLUS, B_MINUS.scale(q_inv)),
            (B_ZERO, MINUS, B_PLUS.scale(-q_inv)),
            (B_ZERO, Z, ZERO_ELEMENT),
            (B_PLUS, PLUS, ONE_ELEMENT.scale(q) - B_ZERO.scale(q * one_q2)),
            (B_PLUS, MINUS, ZERO_ELEMENT),
            (B_PLUS, Z, B_PLUS.scale(-q * q * one_q2)),
            (B_MINUS, PLUS, ZERO_ELEMENT),
            (B_MINUS, MINUS, ONE_ELEMENT.scale(-q_inv) + B_ZERO.scale(q_inv * one_q2)),
            (B_MINUS, Z, B_MINUS.scale(ONE + q_inv * q_inv)),
        ]

    @staticmethod
    def left_x_table() -> List[Tuple[AlgebraElement, FieldIndex, AlgebraElement]]:
        """左作用下 X_a 在 B 上的取值；X₊▷B₋ 取 -q²(c*)²，与 dB₋ 一致"""
        q, q_inv = Q, Q_INV
        return [
            (B_ZERO, PLUS, (A_STAR * C_STAR).scale(q)),
            (B_ZERO, MINUS, (C * A).scale(-q_inv)),
            (B_ZERO, Z, ZERO_ELEMENT),
            (B_PLUS, PLUS, (A_STAR * A_STAR).scale(q)),
            (B_PLUS, MINUS, C * C),
            (B_PLUS, Z, ZERO_ELEMENT),
            (B_MINUS, PLUS, (C_STAR * C_STAR).scale(-q * q)),
            (B_MINUS, MINUS, (A * A).scale(-q_inv)),
            (B_MINUS, Z, ZERO_ELEMENT),
        ]

    def check_y_table(self, result: Optional[CheckResult] = None) -> CheckResult:
        result = result or CheckResult("podles-rvf.y-table")
        for element, index, expected in self.y_table():
            result.compare(self.y_action(element, index), expected, {"f": element, "Y": index.value})
        return result

    def check_left_x_table(self, result: Optional[CheckResult] = None) -> CheckResult:
        result = result or CheckResult("podles-rvf.left-x-table")
        for element, index, expected in self.left_x_table():
            value = self.derivation_service.apply_index(index, element, LEFT)
            result.compare(value, expected, {"f": element, "X": index.value})
        return result

    def check_negative_control(self, result: Optional[CheckResult] = None) -> CheckResult:
        """左作用的 X₊ 不保持 S²_q：X₊▷B₀ 的 U(1) 次数非零"""
        result = result or CheckResult("podles-rvf.left-action-leaves-s2q")
        value = self.derivation_service.apply_index(PLUS, B_ZERO, LEFT)
        result.record(value.u1_degree() != 0, {"f": B_ZERO, "X": PLUS.value}, value, None)
        return result

    def check_relations(self, result: Optional[CheckResult] = None) -> CheckResult:
        """B 之间的交换关系与右 K 作用"""
        result = result or CheckResult("podles-rvf.relations")
        q = Q
        q2 = q * q
        result.compare(B_PLUS * B_MINUS, B_ZERO - B_ZERO * B_ZERO, {"relation": "B+B- = B0(1-B0)"})
        result.compare(B_MINUS * B_PLUS, B_ZERO.scale(q2) - (B_ZERO * B_ZERO).scale(q2 * q2),
                       {"relation": "B-B+ = q²B0(1-q²B0)"})
        result.compare(B_PLUS * B_ZERO, (B_ZERO * B_PLUS).scale(Q_INV * Q_INV), {"relation": "B+B0 = q⁻²B0B+"})
        result.compare(B_MINUS * B_ZERO, (B_ZERO * B_MINUS).scale(q2), {"relation": "B-B0 = q²B0B-"})
        result.compare(B_PLUS.star(), B_MINUS, {"relation": "B+* = B-"})
        for element, factor, label in ((B_ZERO, ONE, "B0◁K"), (B_PLUS, q, "B+◁K"), (B_MINUS, Q_INV, "B-◁K")):
            result.compare(self._right_k(1, element), element.scale(factor), {"relation": label})
        return result

    # 右向量场之间的关系

    def rvf_sides(self, element: AlgebraElement) -> Tuple[AlgebraElement, AlgebraElement]:
        """按原样求值 Y_a 的依赖关系两边

        Returns:
            Tuple[AlgebraElement, AlgebraElement]: (左边, 右边)
        """
        require_degree_zero(element)
        q, q_inv = Q, Q_INV
        q2, q4, q6 = q ** 2, q ** 4, q ** 6
        one_q2, one_q4 = ONE + q2, ONE + q4
        b0_sq = B_ZERO * B_ZERO
        y_plus = self._y(element, PLUS)
        y_minus = self._y(element, MINUS)
        y_z = self._y(element, Z)
        y_zz = self._y(y_z, Z)
        lhs = ((y_plus * B_PLUS).scale(q) + (y_minus * B_MINUS).scale(q_inv)).scale(one_q2)
        lhs = lhs + y_z * (ONE_ELEMENT - B_ZERO.scale(2 * one_q2 / one_q4))
        zz_bracket = B_ZERO.scale((ONE - q2) / one_q4 * (2 * q4 + q2 + 1)) - b0_sq.scale(ONE - q6)
        k4_bracket = B_ZERO.scale(q4 - 1) + b0_sq.scale(ONE - q6)
        rhs = (y_zz * zz_bracket).scale(q_inv ** 2)
        rhs = rhs + (self._right_k(4, element) * k4_bracket).scale(q_inv ** 2 * one_q2)
        return lhs, rhs

    def check_rvf_relation(self, indices: Iterable[PodlesIndex],
                           result: Optional[CheckResult] = None) -> CheckResult:
        result = result or CheckResult("podles-rvf.relation")
        for idx in indices:
            lhs, rhs = self.rvf_sides(idx.element())
            result.compare(lhs, rhs, {"m": idx.m, "n": idx.n})
        return result

    # dB 展开

    def db_forms(self) -> Tuple[OneForm, OneForm, OneForm]:
        """(dB₊, dB₋, dB₀)"""
        d = self.calculus_service.differential
        return d(B_PLUS), d(B_MINUS), d(B_ZERO)

    def expand_db(self, coefficients: Sequence[AlgebraElement]) -> OneForm:
        """C₊dB₊ + C₋dB₋ + C₀dB₀"""
        total = OneForm()
        for coeff, form in zip(coefficients, self.db_forms()):
            total = total + form.left_mul(coeff)
        return total

    def v_differential(self, element: AlgebraElement) -> Tuple[AlgebraElement, AlgebraElement, AlgebraElement]:
        """(f◁V₊, f◁V₋, f◁V₀)，约定 f◁(Y·B·c) = (f◁Y)·B·c

        Raises:
            ValidationError: f 不在 S²_q 中
        """
        require_degree_zero(element)
        q, q_inv = Q, Q_INV
        q2, q4, q6 = q ** 2, q ** 4, q ** 6
        one_q2, one_q4 = ONE + q2, ONE + q4
        y_plus = self._y(element, PLUS)
        y_minus = self._y(element, MINUS)
        y_z = self._y(element, Z)
        y_zz = self._y(y_z, Z)
        first_order = q_inv ** 2 * (ONE + q6) / one_q4
        second_order = (ONE - q2) / (one_q2 * one_q4)
        v_plus = ((y_plus * (ONE_ELEMENT - B_ZERO.scale(q_inv ** 2 * one_q2))).scale(q_inv)
                  - (y_z * B_MINUS).scale(first_order) + (y_zz * B_MINUS).scale(second_order))
        v_minus = (-(y_minus * (ONE_ELEMENT - B_ZERO.scale(q2 * one_q2))).scale(q)
                   + (y_z * B_PLUS).scale(first_order) - (y_zz * B_PLUS).scale(second_order))
        v_zero = (((y_plus * B_PLUS).scale(q_inv) - (y_minus * B_MINUS).scale(q)).scale(one_q2)
                  + (y_z * B_ZERO).scale((ONE - q4) * (ONE + q6) / one_q4)
                  - (y_zz * B_ZERO).scale((ONE - q2) / one_q4))
        return v_plus, v_minus, v_zero

    def check_exd_lemma(self, indices: Iterable[PodlesIndex],
                        result: Optional[CheckResult] = None) -> CheckResult:
        """V 展开写回 ω 坐标后应等于 df"""
        result = result or CheckResult("podles-exd.lemma")
        for idx in indices:
            element = idx.element()
            lhs = self.expand_db(self.v_differential(element))
            result.compare(lhs, self.calculus_service.differential(element), {"m": idx.m, "n": idx.n})
        return result

    def canonical_db_coefficients(self, element: AlgebraElement) -> Tuple[AlgebraElement, AlgebraElement, AlgebraElement]:
        """由 ω₊、ω₋ 的 dB 表达式得到 df 的 dB 系数 (C₊, C₋, C₀)

        Raises:
            ValidationError: f 不在 S²_q 中
        """
        require_degree_zero(element)
        q, q2 = Q, Q * Q
        x_plus = self.derivation_service.apply_index(PLUS, element, LEFT)
        x_minus = self.derivation_service.apply_index(MINUS, element, LEFT)
        c_plus = (x_plus * A * A).scale(Q_INV) + x_minus * C_STAR * C_STAR
        c_minus = -(x_plus * C * C).scale(q2) - (x_minus * A_STAR * A_STAR).scale(q)
        c_zero = (x_plus * A * C - x_minus * C_STAR * A_STAR).scale(ONE + q2)
        return c_plus, c_minus, c_zero

    def check_canonical_inversion(self, indices: Iterable[PodlesIndex],
                                  result: Optional[CheckResult] = None) -> CheckResult:
        """系数属于 S²_q，且写回 ω 坐标后等于 df"""
        result = result or CheckResult("podles-exd.canonical")
        for idx in indices:
            element = idx.element()
            coefficients = self.canonical_db_coefficients(element)
            inputs = {"m": idx.m, "n": idx.n}
            result.record(all(c.u1_degree() == 0 for c in coefficients), {**inputs, "law": "degree 0"},
                          list(coefficients), None)
            result.compare(self.expand_db(coefficients), self.calculus_service.differential(element), inputs)
        return result

    def check_omega_inversion(self, result: Optional[CheckResult] = None) -> CheckResult:
        """ω₊、ω₋ 用 dB₊、dB₋、dB₀ 表示"""
        result = result or CheckResult("podles-exd.omega-inversion")
        q, q2 = Q, Q * Q
        one_q2 = ONE + q2
        omega_plus = self.expand_db(((A * A).scale(Q_INV), (C * C).scale(-q2), (A * C).scale(one_q2)))
        omega_minus = self.expand_db((C_STAR * C_STAR, (A_STAR * A_STAR).scale(-q), (C_STAR * A_STAR).scale(-one_q2)))
        result.compare(omega_plus, OMEGA_PLUS, {"form": "ω+"})
        result.compare(omega_minus, OMEGA_MINUS, {"form": "ω-"})
        return result

    # 线丛投影

    def build_projector(self, n: int) -> BundleProjector:
        """构造 p_n（n < 0 时为 p_{-|n|}）

        Raises:
            ConstructionError: 单位分解或幂等性不成立
        """
        words = bundle_words(n)
        weights = bundle_weights(n)
        rank = len(words)
        matrix = to_matrix([[words[mu] * words[nu].star() for nu in range(rank)] for mu in range(rank)])
        projector = BundleProjector(n, words, weights, matrix)
        if self.partition_of_unity(projector) != ONE_ELEMENT:
            raise ConstructionError(f"p_{n} 的单位分解不成立")
        if not self.is_idempotent(projector):
            raise ConstructionError(f"p_{n} 不是幂等的")
        logger.debug(f"投影 p_{n} 构造完成，阶数 {rank}")
        return projector

    @staticmethod
    def partition_of_unity(projector: BundleProjector) -> AlgebraElement:
        """Σ weight_μ w_μ* w_μ"""
        total = ZERO_ELEMENT
        for word, weight in zip(projector.words, projector.weights):
            total = total + (word.star() * word).scale(weight)
        return total

    @staticmethod
    def is_idempotent(projector: BundleProjector) -> bool:
        """Σ_ν weight_ν M_μν M_νκ = M_μκ"""
        matrix, weights, rank = projector.matrix, projector.weights, projector.rank
        for mu in range(rank):
            for kappa in range(rank):
                total = ZERO_ELEMENT
                for nu in range(rank):
                    total = total + (matrix[mu][nu] * matrix[nu][kappa]).scale(weights[nu])
                if total != matrix[mu][kappa]:
                    return False
        return True

    def check_projector(self, projector: BundleProjector, result: Optional[CheckResult] = None) -> CheckResult:
        """单位分解、幂等、厄米、矩阵元次数为 0"""
        result = result or CheckResult("projectors.structure")
        rank = projector.rank
        inputs = {"n": projector.n}
        result.compare(self.partition_of_unity(projector), ONE_ELEMENT, {**inputs, "law": "partition of unity"})
        result.record(self.is_idempotent(projector), {**inputs, "law": "p² = p"})
        for mu in range(rank):
            for nu in range(rank):
                entry = projector.matrix[mu][nu]
                result.compare(entry.star(), projector.matrix[nu][mu], {**inputs, "mu": mu, "nu": nu, "law": "hermitian"})
                result.record(entry.u1_degree() == 0, {**inputs, "mu": mu, "nu": nu, "law": "degree 0"}, entry, None)
        return result

    def sigma_eigen_check(self, n: int, result: Optional[CheckResult] = None) -> CheckResult:
        """右作用下的 K 本征值，以及 σ̂ 与投影的相容性

        w_μ◁K = q^{(|n|-2μ)/2} w_μ，M_μν◁K = q^{-(μ-ν)} M_μν，
        σ_a(M_μν)·λ_ν = λ_μ·M_μν，其中 λ 为 σ̂⁰_a 的本征值。
        """
        result = result or CheckResult("projectors.sigma-eigen")
        projector = self.build_projector(n)
        module = projector.module
        rank = projector.rank
        sigma_apply = self.derivation_service.sigma_apply
        for mu, word in enumerate(projector.words):
            result.compare(self._right_k(1, word), word.scale(s_power(module.weights[mu])),
                           {"n": n, "mu": mu, "law": "w◁K"})
            for index in INDICES:
                result.compare(sigma_apply(SigmaMap.of(index), word, RIGHT), word.scale(module.sigma_weight(index, mu)),
                               {"n": n, "mu": mu, "sigma": SigmaMap.of(index).label, "law": "σ(φ(ê)) = φ(σ̂(ê))"})
        for mu in range(rank):
            for nu in range(rank):
                entry = projector.matrix[mu][nu]
                inputs = {"n": n, "mu": mu, "nu": nu}
                result.compare(self._right_k(1, entry), entry.scale(q_power(nu - mu)), {**inputs, "law": "p◁K"})
                for index in INDICES:
                    lhs = sigma_apply(SigmaMap.of(index), entry, RIGHT).scale(module.sigma_weight(index, nu))
                    rhs = entry.scale(module.sigma_weight(index, mu))
                    result.compare(lhs, rhs, {**inputs, "sigma": SigmaMap.of(index).label})
        return result

    def check_kernel_lemma(self, projector: BundleProjector, rng: random.Random, samples: int,
                           result: Optional[CheckResult] = None) -> CheckResult:
        """m = v - p(v) 满足 p(m) = 0 与 φ⁰(m) = 0（u 坐标）"""
        result = result or CheckResult("projectors.kernel")
        p_u = projector.u_matrix()
        rank = projector.rank
        for sample in range(samples):
            v = tuple(self.random_s2q_element(rng) for _ in range(rank))
            image = vector_times_matrix(v, p_u)
            m = tuple(a - b for a, b in zip(v, image))
            projected = vector_times_matrix(m, p_u)
            result.record(all(x.is_zero for x in projected), {"n": projector.n, "sample": sample, "law": "p(m) = 0"},
                          list(projected), None)
            phi = ZERO_ELEMENT
            for coord, word in zip(m, projector.words):
                phi = phi + coord * word
            result.compare(phi, ZERO_ELEMENT, {"n": projector.n, "sample": sample, "law": "φ⁰(m) = 0"})
        return result

    @staticmethod
    def random_s2q_element(rng: random.Random, terms: int = 2) -> AlgebraElement:
        element = ZERO_ELEMENT
        for _ in range(terms):
            idx = PodlesIndex(rng.randint(-1, 1), rng.randint(0, 1))
            element = element + idx.element().scale(Scalar(rng.randint(-3, 3), rng.randint(-1, 1)))
        return element

    # 线丛上的联络

    def _u_frame(self, projector: BundleProjector, matrix: Optional[Matrix], name: str) -> Matrix:
        """对角矩阵除以权重得到 u 坐标下的矩阵；None 视为零矩阵"""
        rank = projector.rank
        if matrix is None:
            return diagonal_matrix([ZERO_ELEMENT] * rank)
        if len(matrix) != rank:
            raise ValidationError(f"矩阵 {name} 的阶应为 {rank}")
        for mu in range(rank):
            for nu in range(rank):
                if mu != nu and not matrix[mu][nu].is_zero:
                    raise ValidationError(f"线丛联络只支持对角的 {name}", {"entry": [mu, nu]})
        return diagonal_matrix([matrix[mu][mu].scale(ONE / projector.weights[mu]) for mu in range(rank)])

    @staticmethod
    def _constant_real(element: AlgebraElement) -> Optional[Scalar]:
        if any(monomial.length() for monomial in element.monomials()):
            return None
        value = element.counit()
        return value if value.is_real and not value.is_zero else None

    def bundle_connection(self, n: int, metric: Optional[HermitianMetric] = None, alpha: Optional[Matrix] = None,
                          beta: Optional[Matrix] = None, rho: Optional[Matrix] = None) -> BundleConnection:
        """M_n 上的投影联络 p_n∘∇⁰

        Args:
            n: 线丛次数
            metric: (S²_q)^{|n|+1} 上的对角常数厄米度量，缺省为 δ
            alpha: 对角厄米参数矩阵 α
            beta: 对角厄米参数矩阵 β
            rho: 对角厄米参数矩阵 ρ

        Returns:
            BundleConnection: 联络及其 Christoffel 表

        Raises:
            ValidationError: 度量不是对角常数实矩阵，或投影不是正交的
        """
        projector = self.build_projector(n)
        rank = projector.rank
        metric = metric or HermitianMetric.identity(rank)
        if metric.rank != rank:
            raise ValidationError(f"度量的阶应为 {rank}")
        diagonal: List[Scalar] = []
        for mu in range(rank):
            for nu in range(rank):
                if mu != nu and not metric.h[mu][nu].is_zero:
                    raise ValidationError("线丛联络只支持对角度量", {"entry": [mu, nu]})
            value = self._constant_real(metric.h[mu][mu])
            if value is None:
                raise ValidationError("线丛度量的对角元必须是非零实常数", {"entry": [mu, mu]})
            diagonal.append(value)
        weights = projector.weights
        h_u = diagonal_matrix([ONE_ELEMENT.scale(diagonal[mu] / weights[mu]) for mu in range(rank)])
        h_u_inv = diagonal_matrix([ONE_ELEMENT.scale(weights[mu] / diagonal[mu]) for mu in range(rank)])
        metric_u = HermitianMetric(h_u, h_u_inv, True)
        service = self.bundle_service
        base = service.metric_connection_from_params(
            metric_u, self._u_frame(projector, alpha, "alpha"), self._u_frame(projector, beta, "beta"),
            self._u_frame(projector, rho, "rho"), projector.module)
        connection = service.project_connection(base, projector.u_matrix(), require_orthogonal=True)

        christoffel: Dict[Tuple[FieldIndex, int, int], ChristoffelEntry] = {}
        for index in INDICES:
            for mu, generator in enumerate(connection.generators()):
                image = service.apply_connection(connection, index.field, generator)
                for kappa, value in enumerate(image):
                    require_degree_zero(value, f"Christoffel 符号 Γ_{{{index.value}{mu}}}^{kappa} ")
                    christoffel[(index, mu, kappa)] = ChristoffelEntry(value, weights[mu] / weights[kappa])
        logger.debug(f"线丛 M_{n} 上的投影联络构造完成")
        return BundleConnection(projector, connection, christoffel)

    def check_bundle_connection(self, bundle: BundleConnection, result: Optional[CheckResult] = None) -> CheckResult:
        """正交性、Christoffel 符号属于 S²_q、生成元上的模层相容性以及 h̃ 关系"""
        result = result or CheckResult("bundle-connections.compatibility")
        service = self.bundle_service
        connection = bundle.connection
        result.record(service.is_orthogonal(connection.projector, connection.metric),
                      {"n": bundle.n, "law": "orthogonal projection"})
        for (index, mu, kappa), entry in bundle.christoffel.items():
            result.record(entry.value.u1_degree() == 0,
                          {"n": bundle.n, "a": index.value, "mu": mu, "kappa": kappa, "law": "degree 0"},
                          entry.value.u1_degree(), 0)
        service.check_metric_compatibility(connection, "module", result)
        self.check_h_tilde(bundle, result)
        return result

    def check_h_tilde(self, bundle: BundleConnection, result: Optional[CheckResult] = None) -> CheckResult:
        """h̃_{±μν} = q^{2μ-n} h_μν，h̃_{zμν} = q^{2(2μ-n)} h_μν"""
        result = result or CheckResult("bundle-connections.h-tilde")
        service = self.bundle_service
        connection = bundle.connection
        module = connection.module
        metric = connection.metric
        size = abs(bundle.n)
        rank = connection.rank
        for index in INDICES:
            exponent = 1 if index != Z else 2
            for mu in range(rank):
                twisted = tuple(
                    ONE_ELEMENT.scale(module.sigma_weight(index, mu, starred=True)) if k == mu else ZERO_ELEMENT
                    for k in range(rank)
                )
                for nu in range(rank):
                    unit = tuple(ONE_ELEMENT if k == nu else ZERO_ELEMENT for k in range(rank))
                    lhs = service.hermitian_form(metric, twisted, unit)
                    rhs = metric.h[mu][nu].scale(q_power(exponent * (2 * mu - size)))
                    result.compare(lhs, rhs, {"n": bundle.n, "a": index.value, "mu": mu, "nu": nu})
        return result
