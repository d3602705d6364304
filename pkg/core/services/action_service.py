#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
作用服务 - U_q(su(2)) 在 S³_q 上的左/右作用、对偶配对以及相关恒等式检查
"""

from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from loguru import logger

from core.models.algebra_model import (
    AlgebraElement, Monomial, ZERO_ELEMENT, A, A_STAR, C, C_STAR,
    LETTER_A, LETTER_A_STAR, LETTER_C, LETTER_C_STAR, enumerate_basis,
)
from core.models.report_model import CheckResult
from core.models.scalar_model import Scalar, ONE, Q, Q_INV, s_power, q_integer
from core.models.uq_model import (
    ActionSide, UqElement, Word, GEN_E, GEN_F, GEN_K, GEN_K_INV,
    E, F, K, K_INV, IDENTITY, antipode, coproduct, counit, dagger,
)

# 生成元在 S³_q 生成元上的取值；缺省为零
_LEFT_BASE: Dict[Tuple[str, str], AlgebraElement] = {
    (GEN_E, LETTER_A): C_STAR.scale(-Q),
    (GEN_E, LETTER_C): A_STAR,
    (GEN_F, LETTER_A_STAR): C,
    (GEN_F, LETTER_C_STAR): A.scale(-Q_INV),
}
_RIGHT_BASE: Dict[Tuple[str, str], AlgebraElement] = {
    (GEN_F, LETTER_A): C,
    (GEN_F, LETTER_C_STAR): A_STAR.scale(-Q_INV),
    (GEN_E, LETTER_C): A,
    (GEN_E, LETTER_A_STAR): C_STAR.scale(-Q),
}


def _k_weight(side: ActionSide, monomial: Monomial) -> int:
    return monomial.u1_degree() if side == ActionSide.LEFT else monomial.right_weight()


def _split_first_letter(monomial: Monomial) -> Tuple[str, Monomial, Monomial]:
    """将单项式拆成首字母与剩余部分，二者之积即原单项式"""
    alpha, j, k = monomial
    if alpha > 0:
        return LETTER_A, Monomial(1, 0, 0), Monomial(alpha - 1, j, k)
    if alpha < 0:
        return LETTER_A_STAR, Monomial(-1, 0, 0), Monomial(alpha + 1, j, k)
    if j > 0:
        return LETTER_C, Monomial(0, 1, 0), Monomial(0, j - 1, k)
    return LETTER_C_STAR, Monomial(0, 0, 1), Monomial(0, 0, k - 1)


@lru_cache(maxsize=None)
def letter_on_monomial(side: ActionSide, letter: str, monomial: Monomial) -> AlgebraElement:
    """单个 U_q 生成元作用于正规形单项式，按首字母和余乘递归"""
    if letter in (GEN_K, GEN_K_INV):
        weight = _k_weight(side, monomial)
        factor = s_power(weight if letter == GEN_K else -weight)
        return AlgebraElement.from_monomial(monomial, factor)
    if monomial.length() == 0:
        return ZERO_ELEMENT
    first, head, rest = _split_first_letter(monomial)
    table = _LEFT_BASE if side == ActionSide.LEFT else _RIGHT_BASE
    # Δ(g) = g ⊗ K + K⁻¹ ⊗ g，左右作用的分量顺序相同
    result = ZERO_ELEMENT
    base = table.get((letter, first))
    if base is not None:
        result = base * letter_on_monomial(side, GEN_K, rest)
    if rest.length() > 0:
        result = result + letter_on_monomial(side, GEN_K_INV, head) * letter_on_monomial(side, letter, rest)
    return result


def act_letter(side: ActionSide, letter: str, element: AlgebraElement) -> AlgebraElement:
    result = ZERO_ELEMENT
    for monomial, coeff in element:
        result = result + letter_on_monomial(side, letter, monomial).scale(coeff)
    return result


def act_word(side: ActionSide, word: Word, element: AlgebraElement) -> AlgebraElement:
    """左作用 h1 h2 ▷ f = h1 ▷ (h2 ▷ f)；右作用 f ◁ h1 h2 = (f ◁ h1) ◁ h2"""
    letters = reversed(word) if side == ActionSide.LEFT else word
    for letter in letters:
        if element.is_zero:
            break
        element = act_letter(side, letter, element)
    return element


def act(side: ActionSide, operator: UqElement, element: AlgebraElement) -> AlgebraElement:
    result = ZERO_ELEMENT
    for word, coeff in operator.items():
        result = result + act_word(side, word, element).scale(coeff)
    return result


def _power_rows() -> List[Tuple[str, ActionSide, str, Callable[[int], AlgebraElement], Callable[[int], AlgebraElement]]]:
    """生成元在 S³_q 生成元幂上的闭式表：(名称, 方向, U_q 字母, f(n), 期望值(n))"""
    def half(n: int) -> Scalar:
        return s_power(n)

    zero = lambda n: ZERO_ELEMENT  # noqa: E731
    left, right = ActionSide.LEFT, ActionSide.RIGHT
    return [
        # 左作用
        ("K▷a^n", left, GEN_K, lambda n: A ** n, lambda n: (A ** n).scale(half(-n))),
        ("K⁻¹▷a^n", left, GEN_K_INV, lambda n: A ** n, lambda n: (A ** n).scale(half(n))),
        ("K▷c^n", left, GEN_K, lambda n: C ** n, lambda n: (C ** n).scale(half(-n))),
        ("K⁻¹▷c^n", left, GEN_K_INV, lambda n: C ** n, lambda n: (C ** n).scale(half(n))),
        ("K▷a*^n", left, GEN_K, lambda n: A_STAR ** n, lambda n: (A_STAR ** n).scale(half(n))),
        ("K⁻¹▷a*^n", left, GEN_K_INV, lambda n: A_STAR ** n, lambda n: (A_STAR ** n).scale(half(-n))),
        ("K▷c*^n", left, GEN_K, lambda n: C_STAR ** n, lambda n: (C_STAR ** n).scale(half(n))),
        ("K⁻¹▷c*^n", left, GEN_K_INV, lambda n: C_STAR ** n, lambda n: (C_STAR ** n).scale(half(-n))),
        ("E▷a^n", left, GEN_E, lambda n: A ** n,
         lambda n: (A ** (n - 1) * C_STAR).scale(-half(3 - n) * q_integer(n))),
        ("E▷c^n", left, GEN_E, lambda n: C ** n,
         lambda n: (C ** (n - 1) * A_STAR).scale(half(1 - n) * q_integer(n))),
        ("E▷a*^n", left, GEN_E, lambda n: A_STAR ** n, zero),
        ("E▷c*^n", left, GEN_E, lambda n: C_STAR ** n, zero),
        ("F▷a^n", left, GEN_F, lambda n: A ** n, zero),
        ("F▷c^n", left, GEN_F, lambda n: C ** n, zero),
        ("F▷a*^n", left, GEN_F, lambda n: A_STAR ** n,
         lambda n: (C * A_STAR ** (n - 1)).scale(half(1 - n) * q_integer(n))),
        ("F▷c*^n", left, GEN_F, lambda n: C_STAR ** n,
         lambda n: (A * C_STAR ** (n - 1)).scale(-half(-1 - n) * q_integer(n))),
        # 右作用
        ("a^n◁K", right, GEN_K, lambda n: A ** n, lambda n: (A ** n).scale(half(-n))),
        ("a^n◁K⁻¹", right, GEN_K_INV, lambda n: A ** n, lambda n: (A ** n).scale(half(n))),
        ("a*^n◁K", right, GEN_K, lambda n: A_STAR ** n, lambda n: (A_STAR ** n).scale(half(n))),
        ("a*^n◁K⁻¹", right, GEN_K_INV, lambda n: A_STAR ** n, lambda n: (A_STAR ** n).scale(half(-n))),
        ("c^n◁K", right, GEN_K, lambda n: C ** n, lambda n: (C ** n).scale(half(n))),
        ("c^n◁K⁻¹", right, GEN_K_INV, lambda n: C ** n, lambda n: (C ** n).scale(half(-n))),
        ("c*^n◁K", right, GEN_K, lambda n: C_STAR ** n, lambda n: (C_STAR ** n).scale(half(-n))),
        ("c*^n◁K⁻¹", right, GEN_K_INV, lambda n: C_STAR ** n, lambda n: (C_STAR ** n).scale(half(n))),
        ("a^n◁F", right, GEN_F, lambda n: A ** n,
         lambda n: (C * A ** (n - 1)).scale(half(n - 1) * q_integer(n))),
        ("a*^n◁F", right, GEN_F, lambda n: A_STAR ** n, zero),
        ("c^n◁F", right, GEN_F, lambda n: C ** n, zero),
        ("c*^n◁F", right, GEN_F, lambda n: C_STAR ** n,
         lambda n: (A_STAR * C_STAR ** (n - 1)).scale(-half(n - 3) * q_integer(n))),
        ("a^n◁E", right, GEN_E, lambda n: A ** n, zero),
        # 此行的 q 指数为 (3-n)/2
        ("a*^n◁E", right, GEN_E, lambda n: A_STAR ** n,
         lambda n: (C_STAR * A_STAR ** (n - 1)).scale(-half(3 - n) * q_integer(n))),
        ("c^n◁E", right, GEN_E, lambda n: C ** n,
         lambda n: (C ** (n - 1) * A).scale(half(n - 1) * q_integer(n))),
        ("c*^n◁E", right, GEN_E, lambda n: C_STAR ** n, zero),
    ]


def uq_relation_residuals() -> Dict[str, UqElement]:
    """U_q(su(2)) 定义关系写成应当作用为零的元素"""
    q_minus_inv = Q - Q_INV
    return {
        "KE=qEK": K * E - (E * K).scale(Q),
        "KF=q⁻¹FK": K * F - (F * K).scale(Q_INV),
        "[E,F]=(K²-K⁻²)/(q-q⁻¹)": (E * F - F * E) - (K * K - K_INV * K_INV).scale(ONE / q_minus_inv),
        "KK⁻¹=1": K * K_INV - IDENTITY,
    }


class ActionService:
    """U_q(su(2)) 作用服务"""

    def __init__(self):
        logger.debug("初始化作用服务")

    # 作用

    def act(self, operator: UqElement, element: AlgebraElement,
            side: ActionSide = ActionSide.LEFT) -> AlgebraElement:
        """计算 h ▷ f 或 f ◁ h

        Args:
            operator: U_q 元素
            element: S³_q 元素
            side: 作用方向

        Returns:
            AlgebraElement: 作用结果
        """
        return act(side, operator, element)

    def act_word(self, word: Word, element: AlgebraElement,
                 side: ActionSide = ActionSide.LEFT) -> AlgebraElement:
        return act_word(side, word, element)

    def pairing(self, operator: UqElement, element: AlgebraElement) -> Scalar:
        """对偶配对 ⟨h, f⟩ = ε(h ▷ f)"""
        return act(ActionSide.LEFT, operator, element).counit()

    # 检查

    def check_power_tables(self, max_power: int = 5, result: Optional[CheckResult] = None) -> CheckResult:
        """用闭式表核对生成元在 a、a*、c、c* 的幂上的作用"""
        result = result or CheckResult("uq-tables.powers")
        for name, side, letter, source, expected in _power_rows():
            for n in range(1, max_power + 1):
                computed = act_letter(side, letter, source(n))
                result.compare(computed, expected(n), {"row": name, "n": n})
        logger.debug(f"幂作用表检查: 通过 {result.passed}，失败 {result.failed}")
        return result

    def check_pairing_table(self, result: Optional[CheckResult] = None) -> CheckResult:
        """核对生成元之间的配对值"""
        result = result or CheckResult("pairing.generators")
        half = s_power(1)
        half_inv = s_power(-1)
        zero = Scalar(0)
        expected = {
            (GEN_K, LETTER_A): half_inv, (GEN_K, LETTER_A_STAR): half,
            (GEN_K_INV, LETTER_A): half, (GEN_K_INV, LETTER_A_STAR): half_inv,
            (GEN_E, LETTER_C): ONE, (GEN_F, LETTER_C_STAR): -Q_INV,
        }
        generators = {LETTER_A: A, LETTER_A_STAR: A_STAR, LETTER_C: C, LETTER_C_STAR: C_STAR}
        for letter in (GEN_E, GEN_F, GEN_K, GEN_K_INV):
            for name, generator in generators.items():
                value = self.pairing(UqElement.word(letter), generator)
                result.compare(value, expected.get((letter, name), zero), {"h": letter, "f": name})
        return result

    def check_star_compatibility(self, operators: Iterable[UqElement], elements: Iterable[AlgebraElement],
                                 side: ActionSide, result: Optional[CheckResult] = None) -> CheckResult:
        """左: h ▷ f* = (S(h)† ▷ f)*；右: f* ◁ h = (f ◁ S(h)†)*"""
        result = result or CheckResult(f"star-relations.uq-star.{side.value}")
        elements = list(elements)
        for operator in operators:
            twisted = dagger(antipode(operator))
            for element in elements:
                lhs = act(side, operator, element.star())
                rhs = act(side, twisted, element).star()
                result.compare(lhs, rhs, {"h": str(operator), "f": element, "side": side.value})
        return result

    def check_relations(self, max_len: int, side: ActionSide,
                        result: Optional[CheckResult] = None) -> CheckResult:
        """U_q 关系在长度不超过 max_len 的基元素上作用为零"""
        result = result or CheckResult(f"uq-tables.relations.{side.value}")
        residuals = uq_relation_residuals()
        for monomial in enumerate_basis(max_len):
            element = AlgebraElement.from_monomial(monomial)
            for name, residual in residuals.items():
                value = act(side, residual, element)
                result.record(value.is_zero, {"relation": name, "f": element, "side": side.value},
                              value, ZERO_ELEMENT)
        return result

    def check_coproduct_rule(self, operators: Iterable[UqElement], pairs: Iterable[Tuple[AlgebraElement, AlgebraElement]],
                             side: ActionSide, result: Optional[CheckResult] = None) -> CheckResult:
        """h ▷ (fg) = (h₁ ▷ f)(h₂ ▷ g)，右作用同理"""
        result = result or CheckResult(f"uq-tables.coproduct.{side.value}")
        pairs = list(pairs)
        for operator in operators:
            terms = coproduct(operator)
            for f, g in pairs:
                lhs = act(side, operator, f * g)
                rhs = ZERO_ELEMENT
                for term in terms:
                    rhs = rhs + (act_word(side, term.left, f) * act_word(side, term.right, g)).scale(term.coeff)
                result.compare(lhs, rhs, {"h": str(operator), "f": f, "g": g, "side": side.value})
        return result

    def check_actions_commute(self, max_len: int, result: Optional[CheckResult] = None) -> CheckResult:
        """h ▷ (f ◁ g) = (h ▷ f) ◁ g"""
        result = result or CheckResult("uq-tables.left-right-commute")
        letters = (GEN_E, GEN_F, GEN_K, GEN_K_INV)
        for monomial in enumerate_basis(max_len):
            element = AlgebraElement.from_monomial(monomial)
            for h in letters:
                for g in letters:
                    lhs = act_letter(ActionSide.LEFT, h, act_letter(ActionSide.RIGHT, g, element))
                    rhs = act_letter(ActionSide.RIGHT, g, act_letter(ActionSide.LEFT, h, element))
                    result.compare(lhs, rhs, {"h": h, "g": g, "f": element})
        return result

    def check_hopf_examples(self, result: Optional[CheckResult] = None) -> CheckResult:
        """余乘、对极与余单位的基本取值"""
        result = result or CheckResult("uq-tables.hopf")
        ek = E * K
        expected_coproduct = sorted([((GEN_E, GEN_K), (GEN_K, GEN_K), ONE), ((), (GEN_E, GEN_K), ONE)])
        computed = sorted((t.left, t.right, t.coeff) for t in coproduct(ek))
        result.record(computed == expected_coproduct, {"h": "E K"}, str(computed), str(expected_coproduct))
        result.compare(antipode(K), K_INV, {"S": "K"})
        result.compare(antipode(E), E.scale(-Q), {"S": "E"})
        result.compare(antipode(F), F.scale(-Q_INV), {"S": "F"})
        result.compare(counit(K), ONE, {"ε": "K"})
        result.compare(counit(E), Scalar(0), {"ε": "E"})
        result.compare(dagger(E * K), K * F, {"†": "E K"})
        return result
