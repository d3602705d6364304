import sys
import os

# 动态添加项目根目录到sys.path，确保可以导入core模块
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import pytest

from core.models.algebra_model import A, A_STAR, C, C_STAR, ONE_ELEMENT, ZERO_ELEMENT, basis_elements, monomial_pairs
from core.models.error_model import ParsingError
from core.models.form_model import OneForm, OMEGA_MINUS, OMEGA_PLUS, OMEGA_Z
from core.models.scalar_model import Q
from core.models.uq_model import ActionSide
from core.models.vector_field_model import FieldIndex


def test_differential_of_generators(calculus_service):
    """dc = a* ω₊ + c ω_z，d1 = 0"""
    assert calculus_service.differential(C) == OneForm(A_STAR, ZERO_ELEMENT, C)
    assert calculus_service.differential(ONE_ELEMENT).is_zero


def test_omega_reconstruction(calculus_service):
    """ω₊ = a·dc - q c·da，ω_z = a*·da + c*·dc"""
    d = calculus_service.differential
    assert d(C).left_mul(A) - d(A).left_mul(C).scale(Q) == OMEGA_PLUS
    assert d(A).left_mul(A_STAR) + d(C).left_mul(C_STAR) == OMEGA_Z


def test_form_identities(calculus_service):
    """重构、Leibniz 规则、定义关系的微分为零"""
    results = calculus_service.check_form_identities(2)
    assert [r.name for r in results] == ["calculus.reconstruction", "calculus.leibniz", "calculus.relations"]
    for result in results:
        assert result.ok, (result.name, result.counterexamples)


def test_right_multiplication_is_twisted(calculus_service):
    """ω₊·c = σ₊(c) ω₊ = q⁻¹ c ω₊"""
    assert calculus_service.form_right_mul(OMEGA_PLUS, C) == OMEGA_PLUS.left_mul(C).scale(Q ** -1)
    assert calculus_service.form_right_mul(OMEGA_Z, ONE_ELEMENT) == OMEGA_Z


def test_leibniz_rule(calculus_service):
    assert calculus_service.check_leibniz(monomial_pairs(2)).ok


def test_bimodule(calculus_service):
    """(ω·f)·g = ω·(fg)"""
    assert calculus_service.check_bimodule(2).ok


def test_dagger(calculus_service):
    """† 是对合，且 (fω)† = ω†f*"""
    forms = (OMEGA_PLUS, OMEGA_MINUS, OMEGA_Z, calculus_service.differential(A))
    result = calculus_service.check_dagger(forms, basis_elements(1))
    assert result.ok, result.counterexamples


def test_dagger_of_basis_forms(calculus_service):
    """ω₊† = -ω₋，ω_z† = -ω_z"""
    assert calculus_service.form_dagger(OMEGA_PLUS) == -OMEGA_MINUS
    assert calculus_service.form_dagger(OMEGA_Z) == -OMEGA_Z


def test_word_differential_matches_normal_form(calculus_service):
    """逐字母展开与先化为正规形再求微分一致"""
    assert calculus_service.differential_of_word(("c", "a")) == calculus_service.differential(C * A)


def test_form_json_decoding():
    """一阶形式的 JSON 解码"""
    form = OneForm(A, ZERO_ELEMENT, C_STAR)
    assert OneForm.from_json(form.to_json()) == form
    with pytest.raises(ParsingError):
        OneForm.from_json([], "form")


def test_differential_uses_left_action_whatever_the_connection_side(calculus_service, connection_service,
                                                                     derivation_service):
    """联络层缺省为右作用时，Ω¹ 的坐标仍由左作用给出"""
    assert connection_service.side == ActionSide.RIGHT
    assert calculus_service.side == ActionSide.LEFT
    for element in basis_elements(2):
        form = calculus_service.differential(element)
        assert form.wp == derivation_service.apply_index(FieldIndex.PLUS, element, ActionSide.LEFT)
        assert form.wm == derivation_service.apply_index(FieldIndex.MINUS, element, ActionSide.LEFT)
        assert form.wz == derivation_service.apply_index(FieldIndex.Z, element, ActionSide.LEFT)
