#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
导数服务 - q 形变导数 X±、X_z、星对偶与 σ 映射的计算和规律检查
"""

from typing import Dict, Iterable, Optional, Tuple

from loguru import logger

from core.models.algebra_model import AlgebraElement, ZERO_ELEMENT, enumerate_basis
from core.models.report_model import CheckResult
from core.models.scalar_model import ONE, Q, Q_INV
from core.models.uq_model import ActionSide, UqElement
from core.models.vector_field_model import (
    BasisField, FieldIndex, SigmaMap, VectorField, basis_operator, k_power_operator, xz_constant,
)
from core.services.action_service import ActionService


def commutation_residuals() -> Dict[str, UqElement]:
    """三条 q 交换关系写成应当作用为零的元素"""
    xp = basis_operator(BasisField.X_PLUS)
    xm = basis_operator(BasisField.X_MINUS)
    xz = basis_operator(BasisField.X_Z)
    q2, q_2 = Q * Q, Q_INV * Q_INV
    return {
        "X-X+ - q²X+X- = Xz": xm * xp - (xp * xm).scale(q2) - xz,
        "q²XzX- - q⁻²X-Xz = (1+q²)X-": (xz * xm).scale(q2) - (xm * xz).scale(q_2) - xm.scale(ONE + q2),
        "q²X+Xz - q⁻²XzX+ = (1+q²)X+": (xp * xz).scale(q2) - (xz * xp).scale(q_2) - xp.scale(ONE + q2),
    }


class DerivationService:
    """q 形变导数服务"""

    def __init__(self, action_service: ActionService):
        """初始化导数服务

        Args:
            action_service: U_q 作用服务
        """
        self.action_service = action_service

    # 计算

    def apply(self, field: BasisField, element: AlgebraElement,
              side: ActionSide = ActionSide.LEFT) -> AlgebraElement:
        """单个基向量场作用于 element"""
        return self.action_service.act(basis_operator(field), element, side)

    def apply_index(self, index: FieldIndex, element: AlgebraElement,
                    side: ActionSide = ActionSide.LEFT, starred: bool = False) -> AlgebraElement:
        field = index.star_field if starred else index.field
        return self.apply(field, element, side)

    def apply_field(self, field: VectorField, element: AlgebraElement) -> AlgebraElement:
        """向量场 X 在声明的方向上作用于 element

        Args:
            field: 向量场
            element: S³_q 元素

        Returns:
            AlgebraElement: X(element)
        """
        result = ZERO_ELEMENT
        for basis_field, coeff in field.components():
            result = result + self.apply(basis_field, element, field.side).scale(coeff)
        return result

    def sigma_apply(self, sigma: SigmaMap, element: AlgebraElement,
                    side: ActionSide = ActionSide.LEFT) -> AlgebraElement:
        return self.action_service.act(sigma.operator(), element, side)

    def k_apply(self, power: int, element: AlgebraElement,
                side: ActionSide = ActionSide.LEFT) -> AlgebraElement:
        """K^power 作用"""
        return self.action_service.act(k_power_operator(power), element, side)

    def star_field(self, field: VectorField) -> VectorField:
        return field.star()

    # 检查

    def check_twisted_leibniz(self, index: FieldIndex, pairs: Iterable[Tuple[AlgebraElement, AlgebraElement]],
                              side: ActionSide, result: Optional[CheckResult] = None) -> CheckResult:
        """X_a(fg) = f X_a(g) + X_a(f) σ_a(g) 与 X_a*(fg) = σ_a*(f) X_a*(g) + X_a*(f) g

        Args:
            index: 指标 +、-、z
            pairs: (f, g) 对
            side: 作用方向
            result: 累积结果，为空时新建

        Returns:
            CheckResult: 检查结果
        """
        result = result or CheckResult(f"leibniz.{index.value}.{side.value}")
        sigma = SigmaMap.of(index)
        sigma_star = SigmaMap.of(index, starred=True)
        for f, g in pairs:
            product = f * g
            lhs = self.apply(index.field, product, side)
            rhs = f * self.apply(index.field, g, side) + self.apply(index.field, f, side) * self.sigma_apply(sigma, g, side)
            result.compare(lhs, rhs, {"field": index.field.value, "f": f, "g": g, "side": side.value})

            lhs = self.apply(index.star_field, product, side)
            rhs = (self.sigma_apply(sigma_star, f, side) * self.apply(index.star_field, g, side)
                   + self.apply(index.star_field, f, side) * g)
            result.compare(lhs, rhs, {"field": index.star_field.value, "f": f, "g": g, "side": side.value})
        return result

    def check_commutation_relations(self, max_len: int, side: ActionSide,
                                    result: Optional[CheckResult] = None) -> CheckResult:
        """三条交换关系在长度不超过 max_len 的基元素上成立"""
        result = result or CheckResult(f"commutation.relations.{side.value}")
        residuals = commutation_residuals()
        for monomial in enumerate_basis(max_len):
            element = AlgebraElement.from_monomial(monomial)
            for name, residual in residuals.items():
                value = self.action_service.act(residual, element, side)
                result.record(value.is_zero, {"relation": name, "f": element, "side": side.value},
                              value, ZERO_ELEMENT)
        logger.debug(f"交换关系检查({side.value}): 通过 {result.passed}，失败 {result.failed}")
        return result

    def check_star_fields(self, max_len: int, side: ActionSide,
                          result: Optional[CheckResult] = None) -> CheckResult:
        """X*(f) = (X(f*))*，对六个基向量场逐一核对"""
        result = result or CheckResult(f"star-relations.fields.{side.value}")
        for monomial in enumerate_basis(max_len):
            element = AlgebraElement.from_monomial(monomial)
            for field in BasisField:
                lhs = self.apply(field.star, element, side)
                rhs = self.apply(field, element.star(), side).star()
                result.compare(lhs, rhs, {"field": field.value, "f": element, "side": side.value})
        return result

    def check_sigma_laws(self, max_len: int, side: ActionSide,
                         result: Optional[CheckResult] = None) -> CheckResult:
        """σ_a* ∘ σ_a = id，且 σ_a 为代数同态"""
        result = result or CheckResult(f"leibniz.sigma.{side.value}")
        basis = [AlgebraElement.from_monomial(m) for m in enumerate_basis(max_len)]
        for sigma in (SigmaMap.SIGMA_PLUS, SigmaMap.SIGMA_Z, SigmaMap.SIGMA_MINUS_STAR):
            for f in basis:
                round_trip = self.sigma_apply(sigma.inverse, self.sigma_apply(sigma, f, side), side)
                result.compare(round_trip, f, {"sigma": sigma.label, "f": f, "side": side.value})
            for f in basis[:8]:
                for g in basis[-8:]:
                    lhs = self.sigma_apply(sigma, f * g, side)
                    rhs = self.sigma_apply(sigma, f, side) * self.sigma_apply(sigma, g, side)
                    result.compare(lhs, rhs, {"sigma": sigma.label, "f": f, "g": g, "side": side.value})
        return result

    def check_xz_properties(self, max_len: int, side: ActionSide,
                            result: Optional[CheckResult] = None) -> CheckResult:
        """X_z 的标量重排 (1-K⁴)/(1-q⁻²) = q²/(q²-1)·(1-K⁴)，以及 K 不变元素被 X_z 消灭"""
        result = result or CheckResult(f"commutation.xz.{side.value}")
        rearranged = Q * Q / (Q * Q - ONE)
        result.compare(xz_constant(), rearranged, {"identity": "1/(1-q⁻²) = q²/(q²-1)"})
        for monomial in enumerate_basis(max_len):
            element = AlgebraElement.from_monomial(monomial)
            if self.k_apply(1, element, side) != element:
                continue
            value = self.apply(BasisField.X_Z, element, side)
            result.record(value.is_zero, {"f": element, "side": side.value}, value, ZERO_ELEMENT)
        return result
