#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
联络服务 - 厄米形式、度量相容联络的参数化、挠率、Levi-Civita 联络与投影联络
"""

import random
from typing import Dict, Iterable, List, Optional, Union

from loguru import logger

from core.models.algebra_model import AlgebraElement, ZERO_ELEMENT, ONE_ELEMENT, enumerate_basis
from core.models.connection_model import (
    Connection, GammaKey, HermitianMetric, LCParams, Matrix, SigmaModule, Vector,
    identity_matrix, is_hermitian, matmul, to_matrix, vector_times_matrix,
)
from core.models.error_model import ValidationError
from core.models.report_model import CheckResult
from core.models.scalar_model import Scalar, ONE, HALF, I_UNIT, Q, Q_INV
from core.models.uq_model import ActionSide
from core.models.vector_field_model import BasisField, FieldIndex, INDICES, SigmaMap, VectorField
from core.services.derivation_service import DerivationService

PLUS, MINUS, Z = FieldIndex.PLUS, FieldIndex.MINUS, FieldIndex.Z
_P, _M, _Z = 0, 1, 2


class ConnectionService:
    """q 仿射联络服务"""

    def __init__(self, derivation_service: DerivationService, side: Union[str, ActionSide] = ActionSide.RIGHT):
        """初始化联络服务

        Args:
            derivation_service: 导数服务
            side: 联络层使用的作用方向
        """
        self.derivation_service = derivation_service
        self.side = ActionSide(side) if not isinstance(side, ActionSide) else side
        logger.debug(f"联络服务使用{self.side.value}作用")

    # 基本运算

    def x(self, index: FieldIndex, element: AlgebraElement, starred: bool = False) -> AlgebraElement:
        return self.derivation_service.apply_index(index, element, self.side, starred)

    def k(self, power: int, element: AlgebraElement) -> AlgebraElement:
        return self.derivation_service.k_apply(power, element, self.side)

    def sigma(self, index: FieldIndex, element: AlgebraElement, starred: bool = False) -> AlgebraElement:
        return self.derivation_service.sigma_apply(SigmaMap.of(index, starred), element, self.side)

    def twist(self, power: int, element: AlgebraElement) -> AlgebraElement:
        """参数上的 K^power 扭曲，右作用下为恒等"""
        if self.side == ActionSide.RIGHT:
            return element
        return self.k(power, element)

    def sigma_hat(self, module: SigmaModule, index: FieldIndex, m: Vector, starred: bool = False) -> Vector:
        """σ̂_a(m^i e_i) = σ_a(m^i) λ_{a,i} e_i"""
        return tuple(self.sigma(index, coord, starred).scale(module.sigma_weight(index, i, starred))
                     for i, coord in enumerate(m))

    def hermitian_form(self, metric: HermitianMetric, m1: Vector, m2: Vector) -> AlgebraElement:
        """h(m₁, m₂) = m₁^i h_ij (m₂^j)*

        Raises:
            ValidationError: 维数不匹配
        """
        rank = metric.rank
        if len(m1) != rank or len(m2) != rank:
            raise ValidationError(f"向量维数与度量秩 {rank} 不符")
        total = ZERO_ELEMENT
        conjugated = [entry.star() for entry in m2]
        for i in range(rank):
            if m1[i].is_zero:
                continue
            for j in range(rank):
                if conjugated[j].is_zero or metric.h[i][j].is_zero:
                    continue
                total = total + m1[i] * metric.h[i][j] * conjugated[j]
        return total

    # 校验

    def validate_metric(self, metric: HermitianMetric) -> None:
        """检查厄米性、逆矩阵与（若声明）K 不变性

        Raises:
            ValidationError: 任一前置条件不成立
        """
        if not is_hermitian(metric.h):
            raise ValidationError("度量不是厄米的: h_ij* ≠ h_ji")
        if metric.h_inv is not None:
            unit = identity_matrix(metric.rank)
            if matmul(metric.h, metric.h_inv) != unit or matmul(metric.h_inv, metric.h) != unit:
                raise ValidationError("提供的逆度量不满足 h·h⁻¹ = h⁻¹·h = 1")
        if metric.k_invariant:
            for i, row in enumerate(metric.h):
                for j, entry in enumerate(row):
                    if self.k(1, entry) != entry:
                        raise ValidationError(f"度量分量 h[{i}][{j}] 不是 K 不变的",
                                              {"entry": entry.to_json(), "side": self.side.value})

    def _require_hermitian(self, name: str, matrix: Matrix) -> None:
        if not is_hermitian(matrix):
            raise ValidationError(f"参数矩阵 {name} 不是厄米的")

    @staticmethod
    def _require_block_diagonal(name: str, matrix: Matrix, module: SigmaModule) -> None:
        """只允许连接同权重基元素的分量"""
        for i, row in enumerate(matrix):
            for j, entry in enumerate(row):
                if module.weights[i] != module.weights[j] and not entry.is_zero:
                    raise ValidationError(f"{name}[{i}][{j}] 连接了 K 权重不同的基元素",
                                          {"entry": [i, j], "weights": [module.weights[i], module.weights[j]]})

    # Γ 与 Γ̃ 的换算

    def gamma_from_tilde(self, gamma_tilde: Dict[GammaKey, AlgebraElement], metric: HermitianMetric,
                         module: SigmaModule) -> Dict[GammaKey, AlgebraElement]:
        """Γ_{aj}^i = Γ̃_{aj,k} σ_a(h^{ki}) λ_i^{p_a}"""
        rank = module.rank
        gamma: Dict[GammaKey, AlgebraElement] = {}
        for index in INDICES:
            sigma_inv = [[self.sigma(index, metric.inverse_entry(k, i)) for i in range(rank)] for k in range(rank)]
            for j in range(rank):
                for i in range(rank):
                    total = ZERO_ELEMENT
                    for k in range(rank):
                        tilde = gamma_tilde.get((index, j, k), ZERO_ELEMENT)
                        if not tilde.is_zero:
                            total = total + tilde * sigma_inv[k][i]
                    gamma[(index, j, i)] = total.scale(module.sigma_weight(index, i))
        return gamma

    def tilde_from_gamma(self, gamma: Dict[GammaKey, AlgebraElement], metric: HermitianMetric,
                         module: SigmaModule) -> Dict[GammaKey, AlgebraElement]:
        """Γ̃_{ai,j} = Γ_{ai}^k σ_a(h_kj) λ_k^{-p_a}"""
        rank = module.rank
        tilde: Dict[GammaKey, AlgebraElement] = {}
        for index in INDICES:
            sigma_h = [[self.sigma(index, metric.h[k][j]) for j in range(rank)] for k in range(rank)]
            for i in range(rank):
                for j in range(rank):
                    total = ZERO_ELEMENT
                    for k in range(rank):
                        symbol = gamma.get((index, i, k), ZERO_ELEMENT)
                        if not symbol.is_zero:
                            total = total + (symbol * sigma_h[k][j]).scale(module.sigma_weight(index, k, starred=True))
                    tilde[(index, i, j)] = total
        return tilde

    def _finish(self, module: SigmaModule, metric: HermitianMetric,
                gamma_tilde: Dict[GammaKey, AlgebraElement]) -> Connection:
        gamma = self.gamma_from_tilde(gamma_tilde, metric, module) if metric.invertible else None
        return Connection(module, metric, gamma_tilde, gamma, side=self.side)

    # 构造

    def trivial_connection(self, metric: HermitianMetric, module: Optional[SigmaModule] = None) -> Connection:
        """∇⁰：所有 Christoffel 符号为零"""
        module = module or SigmaModule.free(metric.rank)
        gamma = {(index, i, j): ZERO_ELEMENT for index in INDICES
                 for i in range(module.rank) for j in range(module.rank)}
        return Connection(module, metric, self.tilde_from_gamma(gamma, metric, module), gamma, side=self.side)

    def connection_from_gamma(self, gamma: Dict[GammaKey, AlgebraElement], metric: HermitianMetric,
                              module: SigmaModule) -> Connection:
        return Connection(module, metric, self.tilde_from_gamma(gamma, metric, module), dict(gamma), side=self.side)

    def metric_connection_from_params(self, metric: HermitianMetric, alpha: Matrix, beta: Matrix, rho: Matrix,
                                      module: Optional[SigmaModule] = None) -> Connection:
        """按参数化公式构造与 h 相容的联络

        左作用：
            Γ̃_{+i,j} = ½X₊(h_ij) + K(α_ij) + iK(β_ij)
            Γ̃_{-i,j} = ½X₋(h_ij) + K(α_ij) - iK(β_ij)
            Γ̃_{zi,j} = ½X_z(h_ij) + K²(ρ_ij)
        右作用下参数不带 K，但 h 必须 K 不变，且 h、α、β、ρ 都不能连接权重不同的基元素。

        Args:
            metric: 厄米度量
            alpha: 厄米参数矩阵 α
            beta: 厄米参数矩阵 β
            rho: 厄米参数矩阵 ρ
            module: σ-模，缺省为权重全为零的自由模

        Returns:
            Connection: 相容联络

        Raises:
            ValidationError: 参数矩阵不是厄米的，或右作用下的前置条件不成立
        """
        for name, matrix in (("alpha", alpha), ("beta", beta), ("rho", rho)):
            self._require_hermitian(name, matrix)
        module = module or SigmaModule.free(metric.rank)
        if self.side == ActionSide.RIGHT:
            self.validate_metric(HermitianMetric(metric.h, metric.h_inv, True))
            for name, matrix in (("h", metric.h), ("alpha", alpha), ("beta", beta), ("rho", rho)):
                self._require_block_diagonal(name, matrix, module)
        rank = module.rank
        tilde: Dict[GammaKey, AlgebraElement] = {}
        for i in range(rank):
            for j in range(rank):
                h_ij = metric.h[i][j]
                k_alpha = self.twist(1, alpha[i][j])
                k_beta = self.twist(1, beta[i][j]).scale(I_UNIT)
                tilde[(PLUS, i, j)] = self.x(PLUS, h_ij).scale(HALF) + k_alpha + k_beta
                tilde[(MINUS, i, j)] = self.x(MINUS, h_ij).scale(HALF) + k_alpha - k_beta
                tilde[(Z, i, j)] = self.x(Z, h_ij).scale(HALF) + self.twist(2, rho[i][j])
        return self._finish(module, metric, tilde)

    def reality_residual(self, metric: HermitianMetric) -> AlgebraElement:
        """H = qX₊(h₋z) - q⁻¹X₋(h₊z)，Levi-Civita 联络存在要求 H* = H"""
        return self.x(PLUS, metric.h[_M][_Z]).scale(Q) - self.x(MINUS, metric.h[_P][_Z]).scale(Q_INV)

    def levi_civita(self, metric: HermitianMetric, params: Optional[LCParams] = None) -> Connection:
        """Ω¹(S³_q) 上无挠且与 K 不变度量相容的联络，共 27 个 Γ̃ 分量

        Args:
            metric: 3×3 K 不变厄米度量
            params: 自由参数 τ₁, τ₄, μ₂, γ₊₋, ρ_zz, f₀

        Returns:
            Connection: Levi-Civita 联络

        Raises:
            ValidationError: 秩不为 3、度量不满足前置条件、实性条件不成立或 f₀/ρ_zz 非厄米
        """
        params = params or LCParams()
        if metric.rank != 3:
            raise ValidationError("Levi-Civita 联络只在 Ω¹(S³_q) 上构造，度量必须为 3×3")
        self.validate_metric(HermitianMetric(metric.h, metric.h_inv, True))
        for name in ("f0", "rho_zz"):
            value = getattr(params, name)
            if value.star() != value:
                raise ValidationError(f"参数 {name} 必须是厄米的")
        residual = self.reality_residual(metric)
        if residual.star() != residual:
            raise ValidationError("度量不满足实性条件 H* = H", {"H": residual.to_json()})

        h = metric.h
        q, q_inv = Q, Q_INV
        one_q2 = ONE + q * q
        # 右作用下 Γ̃_{zZ,±} 中 X∓(h_zz) 的系数多出 q^{±2}，其余分量只差参数上的 K 扭曲
        zz = ONE if self.side == ActionSide.LEFT else q * q

        def hh(a: int, b: int) -> AlgebraElement:
            return h[a][b]

        def xp(a: int, b: int) -> AlgebraElement:
            return self.x(PLUS, h[a][b])

        def xm(a: int, b: int) -> AlgebraElement:
            return self.x(MINUS, h[a][b])

        def kk(power: int, element: AlgebraElement) -> AlgebraElement:
            return self.twist(power, element)

        def c(value: Scalar, element: AlgebraElement) -> AlgebraElement:
            return element.scale(value)

        tau1, tau4, mu2 = params.tau1, params.tau4, params.mu2
        gamma_pm, rho, f0 = params.gamma_pm, params.rho_zz, params.f0
        half = HALF
        table: Dict[GammaKey, AlgebraElement] = {
            (PLUS, _P, _P): xp(_P, _P) - c(half * q ** 2, xm(_P, _M)) + hh(_P, _Z) + c(q ** 2, kk(1, tau1.star())),
            (PLUS, _M, _M): c(half * q_inv ** 2, xm(_P, _M)) - c(q_inv ** 2, hh(_Z, _M)) + c(q_inv ** 2, kk(1, tau1.star())),
            (PLUS, _Z, _Z): c(half, xp(_Z, _Z)) + kk(1, tau4),
            (PLUS, _P, _M): c(half, xp(_P, _M)) + kk(1, gamma_pm),
            (PLUS, _M, _P): c(half, xp(_M, _P)) + kk(1, tau1),
            (PLUS, _Z, _P): (c(half, xp(_Z, _P)) - c(half * q ** 2, xm(_Z, _M)) + c(half, hh(_Z, _Z))
                             + c(q, kk(2, f0))),
            (PLUS, _P, _Z): xp(_P, _Z) - c(q ** 2 * one_q2, hh(_P, _M)) + c(q ** 4, mu2.star()),
            (PLUS, _Z, _M): c(q_inv ** 2 * one_q2, hh(_P, _M)) + c(q_inv ** 4, kk(2, mu2.star())),
            (PLUS, _M, _Z): (c(half, xp(_M, _Z)) + c(half * q_inv ** 2, xm(_P, _Z)) - c(half * q_inv ** 2, hh(_Z, _Z))
                             + c(q_inv, f0)),
            (MINUS, _P, _P): c(half * q ** 2, xp(_M, _P)) + hh(_Z, _P) + c(q ** 2, kk(1, tau1)),
            (MINUS, _M, _M): (xm(_M, _M) - c(half * q_inv ** 2, xp(_M, _P)) - c(q_inv ** 2, hh(_M, _Z))
                              + c(q_inv ** 2, kk(1, tau1))),
            (MINUS, _Z, _Z): c(half, xm(_Z, _Z)) + kk(1, tau4.star()),
            (MINUS, _P, _M): c(half, xm(_P, _M)) + kk(1, tau1.star()),
            (MINUS, _M, _P): c(half, xm(_M, _P)) + kk(1, gamma_pm.star()),
            (MINUS, _P, _Z): c(half, xm(_P, _Z)) + c(half * q ** 2, xp(_M, _Z)) + c(half, hh(_Z, _Z)) + c(q, f0),
            (MINUS, _Z, _P): -c(q ** 2 * one_q2, hh(_M, _P)) + c(q ** 4, kk(2, mu2)),
            (MINUS, _M, _Z): xm(_M, _Z) + c(q_inv ** 2 * one_q2, hh(_M, _P)) + c(q_inv ** 4, mu2),
            (MINUS, _Z, _M): (c(half, xm(_Z, _M)) - c(half * q_inv ** 2, xp(_Z, _P)) - c(half * q_inv ** 2, hh(_Z, _Z))
                              + c(q_inv, kk(2, f0))),
            (Z, _P, _P): (c(half * q ** 4, xp(_Z, _P)) - c(half * q ** 6, xm(_Z, _M)) - c(q ** 2 * one_q2, hh(_P, _P))
                          + c(half * q ** 4, hh(_Z, _Z)) + c(q ** 5, kk(2, f0))),
            (Z, _M, _M): (c(half * q_inv ** 4, xm(_Z, _M)) - c(half * q_inv ** 6, xp(_Z, _P))
                          + c(q_inv ** 2 * one_q2, hh(_M, _M)) - c(half * q_inv ** 6, hh(_Z, _Z))
                          + c(q_inv ** 5, kk(2, f0))),
            (Z, _Z, _Z): kk(2, rho),
            (Z, _P, _M): kk(2, mu2.star()),
            (Z, _M, _P): kk(2, mu2),
            (Z, _P, _Z): c(half * q ** 4, xp(_Z, _Z)) - c(q ** 2 * one_q2, hh(_P, _Z)) + c(q ** 4, kk(1, tau4)),
            (Z, _Z, _P): -c(half * q ** 2 * zz, xm(_Z, _Z)) - c(q ** 2 * one_q2, hh(_Z, _P)) + c(q ** 4, kk(3, tau4.star())),
            (Z, _M, _Z): c(half * q_inv ** 4, xm(_Z, _Z)) + c(q_inv ** 2 * one_q2, hh(_M, _Z)) + c(q_inv ** 4, kk(1, tau4.star())),
            (Z, _Z, _M): -c(half * q_inv ** 2 / zz, xp(_Z, _Z)) + c(q_inv ** 2 * one_q2, hh(_Z, _M)) + c(q_inv ** 4, kk(3, tau4)),
        }
        logger.debug("Levi-Civita 联络构造完成")
        return self._finish(SigmaModule.omega(), HermitianMetric(metric.h, metric.h_inv, True), table)

    def diagonal_connection(self, h: AlgebraElement) -> Connection:
        """度量 h·δ 的显式联络表（Γ̃ 形式），h 为 K 不变元素"""
        q, q_inv = Q, Q_INV
        xp, xm = self.x(PLUS, h), self.x(MINUS, h)
        half = HALF
        zz = ONE if self.side == ActionSide.LEFT else q * q
        table: Dict[GammaKey, AlgebraElement] = {
            (PLUS, _P, _P): xp,
            (PLUS, _M, _Z): h.scale(-half * q_inv ** 2),
            (PLUS, _Z, _P): h.scale(half),
            (PLUS, _Z, _Z): xp.scale(half),
            (MINUS, _P, _Z): h.scale(half),
            (MINUS, _M, _M): xm,
            (MINUS, _Z, _M): h.scale(-half * q_inv ** 2),
            (MINUS, _Z, _Z): xm.scale(half),
            (Z, _P, _P): h.scale(-half * q ** 2 * (2 + q ** 2)),
            (Z, _P, _Z): xp.scale(half * q ** 4),
            (Z, _M, _M): h.scale(half * (2 + 2 * q_inv ** 2 - q_inv ** 6)),
            (Z, _M, _Z): xm.scale(half * q_inv ** 4),
            (Z, _Z, _P): xm.scale(-half * q ** 2 * zz),
            (Z, _Z, _M): xp.scale(-half * q_inv ** 2 / zz),
        }
        metric = HermitianMetric(to_matrix([[h if i == j else ZERO_ELEMENT for j in range(3)] for i in range(3)]),
                                 None, True)
        return Connection(SigmaModule.omega(), metric, table, None, side=self.side)

    def project_connection(self, connection: Connection, projector: Matrix,
                           require_orthogonal: bool = True) -> Connection:
        """投影联络 p∘∇⁰

        Raises:
            ValidationError: p 不是幂等的，或要求正交时 p 不是 h-正交的
        """
        if len(projector) != connection.rank:
            raise ValidationError("投影矩阵的阶与模的秩不符")
        if matmul(projector, projector) != tuple(tuple(row) for row in projector):
            raise ValidationError("投影矩阵不是幂等的: p·p ≠ p")
        if require_orthogonal and not self.is_orthogonal(projector, connection.metric):
            raise ValidationError("投影矩阵关于 h 不正交")
        return Connection(connection.module, connection.metric, connection.gamma_tilde, connection.gamma,
                          tuple(tuple(row) for row in projector), connection.side)

    def is_orthogonal(self, projector: Matrix, metric: HermitianMetric) -> bool:
        """h(p(m₁), m₂) = h(m₁, p(m₂))，在基元素对上检查"""
        rank = len(projector)
        for i in range(rank):
            e_i = tuple(ONE_ELEMENT if k == i else ZERO_ELEMENT for k in range(rank))
            for j in range(rank):
                e_j = tuple(ONE_ELEMENT if k == j else ZERO_ELEMENT for k in range(rank))
                lhs = self.hermitian_form(metric, vector_times_matrix(e_i, projector), e_j)
                rhs = self.hermitian_form(metric, e_i, vector_times_matrix(e_j, projector))
                if lhs != rhs:
                    return False
        return True

    # 作用

    def _nabla_basis_field(self, connection: Connection, field: BasisField, m: Vector) -> Vector:
        """自由模上的 ∇⁰_X(m)，X 为基向量场"""
        rank = connection.rank
        module = connection.module
        index = field.index
        out: List[AlgebraElement] = [ZERO_ELEMENT] * rank
        if not field.is_star:
            for i, coord in enumerate(m):
                if coord.is_zero:
                    continue
                for j in range(rank):
                    symbol = connection.christoffel(index, i, j)
                    if not symbol.is_zero:
                        out[j] = out[j] + coord * symbol
                out[i] = out[i] + self.x(index, coord).scale(module.sigma_weight(index, i))
            return tuple(out)
        partner = index.partner
        if self.side == ActionSide.RIGHT:
            # ∇_{X_a*} = -∇_{X_b}∘σ̂_b*
            for i, coord in enumerate(m):
                if coord.is_zero:
                    continue
                twisted = self.sigma(partner, coord, starred=True).scale(module.sigma_weight(partner, i, starred=True))
                for j in range(rank):
                    symbol = connection.christoffel(partner, i, j)
                    if not symbol.is_zero:
                        out[j] = out[j] - twisted * symbol
                out[i] = out[i] + self.x(index, coord, starred=True)
            return tuple(out)
        # ∇_{X_a*} = -σ̂_b*∘∇_{X_b}，b 为 a 的配对指标
        for i, coord in enumerate(m):
            if coord.is_zero:
                continue
            twisted = self.sigma(index, coord, starred=True)
            for j in range(rank):
                symbol = connection.christoffel(partner, i, j)
                if symbol.is_zero:
                    continue
                starred_symbol = -self.sigma(partner, symbol, starred=True).scale(
                    module.sigma_weight(partner, j, starred=True))
                out[j] = out[j] + twisted * starred_symbol
            out[i] = out[i] + self.x(index, coord, starred=True)
        return tuple(out)

    def apply_connection(self, connection: Connection, field: Union[VectorField, BasisField], m: Vector) -> Vector:
        """∇_X(m)，对 X 线性；投影联络最后乘以 p

        Raises:
            ValidationError: 联络缺少 Γ 表
        """
        if connection.gamma is None:
            raise ValidationError("apply_connection 需要 Γ 表（请提供逆度量）")
        if isinstance(field, BasisField):
            components = [(field, ONE)]
        else:
            components = field.components()
        total: List[AlgebraElement] = [ZERO_ELEMENT] * connection.rank
        for basis_field, coeff in components:
            value = self._nabla_basis_field(connection, basis_field, m)
            total = [t + v.scale(coeff) for t, v in zip(total, value)]
        result = tuple(total)
        if connection.projector is not None:
            result = vector_times_matrix(result, connection.projector)
        return result

    # 检查

    def check_metric_compatibility(self, connection: Connection, level: str = "gamma-tilde",
                                   result: Optional[CheckResult] = None) -> CheckResult:
        """度量相容性检查

        模层方程 X_a(h(u, v)) = σ_a(h(σ̂_a*(∇_{X_a}u), v)) + h(u, ∇_{X_a*}v) 对两种作用方向都成立；
        左作用下第一项即 -σ_a(h(∇_{X_b*}u, v))。Γ̃ 层方程在左作用下为
        Γ̃_{ai,j} = X_a(h_ij) + (σ_b*(Γ̃_{bj,i}))*，右作用下为
        Γ̃_{ai,j} = X_a(h_ij) + (λ_{b,i}/λ_{b,j})(Γ̃_{bj,i})*，b 为 a 的配对指标。

        Args:
            connection: 待检查的联络
            level: "gamma-tilde" 检查 Γ̃ 层方程，"module" 在生成元对上检查模层方程
            result: 累积结果

        Returns:
            CheckResult: 检查结果
        """
        result = result or CheckResult(f"compatibility.{level}")
        metric = connection.metric
        module = connection.module
        if level == "gamma-tilde":
            for i in range(connection.rank):
                for j in range(connection.rank):
                    for index, partner in ((PLUS, MINUS), (Z, Z)):
                        lhs = connection.tilde(index, i, j)
                        if self.side == ActionSide.RIGHT:
                            ratio = module.sigma_weight(partner, i) / module.sigma_weight(partner, j)
                            mirrored = connection.tilde(partner, j, i).star().scale(ratio)
                        else:
                            mirrored = self.sigma(partner, connection.tilde(partner, j, i), starred=True).star()
                        rhs = self.x(index, metric.h[i][j]) + mirrored
                        result.compare(lhs, rhs, {"a": index.value, "i": i, "j": j, "side": self.side.value})
            return result
        if level != "module":
            raise ValidationError(f"未知的相容性检查层级: {level}")
        generators = connection.generators()
        for index in INDICES:
            for u_pos, u in enumerate(generators):
                twisted = self.sigma_hat(module, index, self.apply_connection(connection, index.field, u), starred=True)
                for v_pos, v in enumerate(generators):
                    lhs = self.x(index, self.hermitian_form(metric, u, v))
                    rhs = (self.sigma(index, self.hermitian_form(metric, twisted, v))
                           + self.hermitian_form(metric, u, self.apply_connection(connection, index.star_field, v)))
                    result.compare(lhs, rhs, {"a": index.value, "i": u_pos, "j": v_pos, "side": self.side.value})
        return result

    def check_torsion_free(self, connection: Connection, result: Optional[CheckResult] = None) -> CheckResult:
        """K 不变度量下的无挠方程

        Γ̃_{-+,a} - q²Γ̃_{+-,a} = h_{za}
        q²Γ̃_{z-,a} - q⁻²Γ̃_{-z,a} = (1+q²)h_{-a}
        q²Γ̃_{+z,a} - q⁻²Γ̃_{z+,a} = (1+q²)h_{+a}
        """
        result = result or CheckResult("torsion.k-invariant")
        h = connection.metric.h
        q2, q_2 = Q * Q, Q_INV * Q_INV
        one_q2 = ONE + q2
        t = connection.tilde
        for a in range(3):
            label = INDICES[a].value
            result.compare(t(MINUS, _P, a) - t(PLUS, _M, a).scale(q2), h[_Z][a], {"equation": 1, "a": label})
            result.compare(t(Z, _M, a).scale(q2) - t(MINUS, _Z, a).scale(q_2), h[_M][a].scale(one_q2),
                           {"equation": 2, "a": label})
            result.compare(t(PLUS, _Z, a).scale(q2) - t(Z, _P, a).scale(q_2), h[_P][a].scale(one_q2),
                           {"equation": 3, "a": label})
        return result

    def check_torsion_general(self, connection: Connection, result: Optional[CheckResult] = None) -> CheckResult:
        """一般（非 K 不变）度量下的无挠方程，结果标记为实验性"""
        result = result or CheckResult("torsion.general", experimental=True)
        result.experimental = True
        metric = connection.metric
        h = metric.h
        q2, q_2 = Q * Q, Q_INV * Q_INV
        one_q2 = ONE + q2
        t = connection.tilde

        def contracted(index: FieldIndex, a: int) -> AlgebraElement:
            total = ZERO_ELEMENT
            for b in range(3):
                tilde = t(index, _Z, b)
                if tilde.is_zero:
                    continue
                for c_ in range(3):
                    total = total + tilde * self.sigma(index, metric.inverse_entry(b, c_)) * self.sigma(Z, h[c_][a])
            return total

        for a in range(3):
            label = INDICES[a].value
            first = t(MINUS, _P, a) - t(PLUS, _M, a).scale(q2) - self.k(2, h[_Z][a])
            second = t(Z, _M, a).scale(q2) - contracted(MINUS, a).scale(q_2) - self.k(4, h[_M][a]).scale(one_q2)
            third = t(Z, _P, a).scale(q_2) - contracted(PLUS, a).scale(q2) + self.k(4, h[_P][a]).scale(one_q2)
            for number, residual in ((1, first), (2, second), (3, third)):
                result.record(residual.is_zero, {"equation": number, "a": label}, residual, ZERO_ELEMENT)
        return result

    def check_connection_difference(self, first: Connection, second: Connection, vectors: Iterable[Vector],
                                    elements: Iterable[AlgebraElement],
                                    result: Optional[CheckResult] = None) -> CheckResult:
        """α(X, m) = ∇_X m - ∇'_X m 的张量性

        α(X_a, f·m) = f·α(X_a, m)，α(X_a*, f·m) = σ_a*(f)·α(X_a*, m)
        """
        result = result or CheckResult("metric-connections.difference")
        elements = list(elements)
        for m in vectors:
            for field in BasisField:
                base = self._difference(first, second, field, m)
                for f in elements:
                    scaled = tuple(f * coord for coord in m)
                    lhs = self._difference(first, second, field, scaled)
                    factor = self.sigma(field.index, f, starred=True) if field.is_star else f
                    rhs = tuple(factor * coord for coord in base)
                    result.compare(lhs, rhs, {"field": field.value, "f": f, "m": list(m)})
        return result

    def _difference(self, first: Connection, second: Connection, field: BasisField, m: Vector) -> Vector:
        return tuple(a - b for a, b in zip(self.apply_connection(first, field, m),
                                           self.apply_connection(second, field, m)))

    # 随机参数

    @staticmethod
    def random_element(rng: random.Random, max_len: int = 1, terms: int = 2) -> AlgebraElement:
        """小整数（可能带 i）系数的随机元素"""
        basis = enumerate_basis(max_len)
        element = ZERO_ELEMENT
        for _ in range(terms):
            monomial = basis[rng.randrange(len(basis))]
            coeff = Scalar(rng.randint(-3, 3), rng.randint(-2, 2))
            element = element + AlgebraElement.from_monomial(monomial, coeff)
        return element

    @classmethod
    def random_hermitian_element(cls, rng: random.Random, max_len: int = 1) -> AlgebraElement:
        element = cls.random_element(rng, max_len)
        return element + element.star()

    @classmethod
    def random_hermitian_matrix(cls, rng: random.Random, rank: int, max_len: int = 1) -> Matrix:
        rows: List[List[AlgebraElement]] = [[ZERO_ELEMENT] * rank for _ in range(rank)]
        for i in range(rank):
            rows[i][i] = cls.random_hermitian_element(rng, max_len)
            for j in range(i + 1, rank):
                entry = cls.random_element(rng, max_len)
                rows[i][j] = entry
                rows[j][i] = entry.star()
        return to_matrix(rows)

    @classmethod
    def random_lc_params(cls, rng: random.Random, max_len: int = 1) -> LCParams:
        return LCParams(
            tau1=cls.random_element(rng, max_len),
            tau4=cls.random_element(rng, max_len),
            mu2=cls.random_element(rng, max_len),
            gamma_pm=cls.random_element(rng, max_len),
            rho_zz=cls.random_hermitian_element(rng, max_len),
            f0=cls.random_hermitian_element(rng, max_len),
        )
