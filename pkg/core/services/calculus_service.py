#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
微分学服务 - Ω¹(S³_q) 上的外微分、双模结构与 † 运算
"""

from typing import Iterable, List, Optional, Tuple

from loguru import logger

from core.models.algebra_model import (
    AlgebraElement, A, A_STAR, C, C_STAR, GENERATORS, RELATION_WORDS, monomial_pairs,
)
from core.models.form_model import OneForm, ZERO_FORM, OMEGA_PLUS, OMEGA_MINUS, OMEGA_Z
from core.models.report_model import CheckResult
from core.models.scalar_model import Q
from core.models.uq_model import ActionSide
from core.models.vector_field_model import FieldIndex, SigmaMap
from core.services.derivation_service import DerivationService


class CalculusService:
    """左协变微分学服务

    Ω¹(S³_q) 的坐标 df = Σ (X_a▷f)ω_a 与右乘规则都只由左作用给出，
    不随 connections.side 改变；联络层的右作用只影响 Γ̃ 与 ∇ 的构造。
    """

    side = ActionSide.LEFT

    def __init__(self, derivation_service: DerivationService):
        self.derivation_service = derivation_service

    def differential(self, element: AlgebraElement) -> OneForm:
        """df = (X₊▷f)ω₊ + (X₋▷f)ω₋ + (X_z▷f)ω_z"""
        apply = self.derivation_service.apply_index
        return OneForm(
            apply(FieldIndex.PLUS, element, self.side),
            apply(FieldIndex.MINUS, element, self.side),
            apply(FieldIndex.Z, element, self.side),
        )

    def left_mul(self, element: AlgebraElement, form: OneForm) -> OneForm:
        return form.left_mul(element)

    def form_right_mul(self, form: OneForm, element: AlgebraElement) -> OneForm:
        """ω_a·f = σ_a(f)ω_a，结果写回左坐标"""
        sigma = self.derivation_service.sigma_apply
        return OneForm(
            form.wp * sigma(SigmaMap.SIGMA_PLUS, element, self.side),
            form.wm * sigma(SigmaMap.SIGMA_MINUS, element, self.side),
            form.wz * sigma(SigmaMap.SIGMA_Z, element, self.side),
        )

    def form_dagger(self, form: OneForm) -> OneForm:
        """(f₊ω₊ + f₋ω₋ + f_zω_z)† = -ω₋f₊* - ω₊f₋* - ω_zf_z*"""
        sigma = self.derivation_service.sigma_apply
        return OneForm(
            -sigma(SigmaMap.SIGMA_PLUS, form.wm.star(), self.side),
            -sigma(SigmaMap.SIGMA_MINUS, form.wp.star(), self.side),
            -sigma(SigmaMap.SIGMA_Z, form.wz.star(), self.side),
        )

    def differential_of_word(self, letters: Tuple[str, ...]) -> OneForm:
        """逐字母 Leibniz 展开 d(x₁…x_n)，不先化为正规形"""
        total = ZERO_FORM
        for position, letter in enumerate(letters):
            prefix = AlgebraElement.scalar(1)
            for before in letters[:position]:
                prefix = prefix * GENERATORS[before]
            suffix = AlgebraElement.scalar(1)
            for after in letters[position + 1:]:
                suffix = suffix * GENERATORS[after]
            term = self.form_right_mul(self.differential(GENERATORS[letter]).left_mul(prefix), suffix)
            total = total + term
        return total

    # 检查

    def check_form_identities(self, max_len: int, result: Optional[CheckResult] = None) -> List[CheckResult]:
        """ω 的重构、d 的 Leibniz 规则、定义关系的微分为零

        Returns:
            List[CheckResult]: 三项检查结果
        """
        d = self.differential
        reconstruction = CheckResult("calculus.reconstruction")
        q = Q
        reconstruction.compare(d(C).left_mul(A) - d(A).left_mul(C).scale(q), OMEGA_PLUS, {"form": "ω+"})
        reconstruction.compare(d(A_STAR).left_mul(C_STAR) - d(C_STAR).left_mul(A_STAR).scale(q), OMEGA_MINUS,
                               {"form": "ω-"})
        reconstruction.compare(d(A).left_mul(A_STAR) + d(C).left_mul(C_STAR), OMEGA_Z, {"form": "ωz"})

        leibniz = result or CheckResult("calculus.leibniz")
        self.check_leibniz(monomial_pairs(max_len), leibniz)

        relations = CheckResult("calculus.relations")
        for name, words in RELATION_WORDS.items():
            total = ZERO_FORM
            for coeff, letters in words:
                total = total + self.differential_of_word(letters).scale(coeff)
            relations.record(total.is_zero, {"relation": name}, total, ZERO_FORM)
        logger.debug(f"微分形式恒等式: 重构 {reconstruction.verdict.value}，关系 {relations.verdict.value}")
        return [reconstruction, leibniz, relations]

    def check_leibniz(self, pairs: Iterable[Tuple[AlgebraElement, AlgebraElement]],
                      result: Optional[CheckResult] = None) -> CheckResult:
        """d(fg) = f·dg + df·g"""
        result = result or CheckResult("calculus.leibniz")
        for f, g in pairs:
            lhs = self.differential(f * g)
            rhs = self.differential(g).left_mul(f) + self.form_right_mul(self.differential(f), g)
            result.compare(lhs, rhs, {"f": f, "g": g})
        return result

    def check_bimodule(self, max_len: int, result: Optional[CheckResult] = None) -> CheckResult:
        """(ω·f)·g = ω·(fg)，对三个基形式"""
        result = result or CheckResult("calculus.bimodule")
        for f, g in monomial_pairs(max_len):
            for form in (OMEGA_PLUS, OMEGA_MINUS, OMEGA_Z):
                lhs = self.form_right_mul(self.form_right_mul(form, f), g)
                rhs = self.form_right_mul(form, f * g)
                result.compare(lhs, rhs, {"omega": form, "f": f, "g": g})
        return result

    def check_dagger(self, forms: Iterable[OneForm], elements: Iterable[AlgebraElement],
                     result: Optional[CheckResult] = None) -> CheckResult:
        """† 为对合，并且 (fω)† = ω†f*"""
        result = result or CheckResult("calculus.dagger")
        elements = list(elements)
        for form in forms:
            result.compare(self.form_dagger(self.form_dagger(form)), form, {"omega": form, "law": "involution"})
            for element in elements:
                lhs = self.form_dagger(form.left_mul(element))
                rhs = self.form_right_mul(self.form_dagger(form), element.star())
                result.compare(lhs, rhs, {"omega": form, "f": element, "law": "(fω)† = ω†f*"})
        return result

