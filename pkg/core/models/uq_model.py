#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""U_q(su(2)) 模型：生成元 E、F、K、K⁻¹ 组成的词的线性组合"""

import re
from enum import Enum
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from core.models.error_model import ParsingError
from core.models.scalar_model import Scalar, ScalarLike, ONE, ZERO, Q, Q_INV

GEN_E = "E"
GEN_F = "F"
GEN_K = "K"
GEN_K_INV = "Ki"
UQ_LETTERS = (GEN_E, GEN_F, GEN_K, GEN_K_INV)

Word = Tuple[str, ...]


class ActionSide(Enum):
    """U_q 在 S³_q 上的作用方向"""
    LEFT = "left"    # h ▷ f
    RIGHT = "right"  # f ◁ h

    @staticmethod
    def values() -> List[str]:
        return [side.value for side in ActionSide]


def reduce_word(word: Iterable[str]) -> Word:
    """消去相邻的 K K⁻¹ 与 K⁻¹ K"""
    stack: List[str] = []
    for letter in word:
        if letter not in UQ_LETTERS:
            raise ValueError(f"未知 U_q 生成元: {letter}")
        if stack and {stack[-1], letter} == {GEN_K, GEN_K_INV}:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def word_to_str(word: Word) -> str:
    return " ".join(word) if word else "1"


class UqElement:
    """U_q(su(2)) 中词的线性组合（不在词之间做 q 交换约化）"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Word, ScalarLike]] = None):
        self._terms: Dict[Word, Scalar] = {}
        for word, coeff in (terms or {}).items():
            self._add_term(reduce_word(word), Scalar.coerce(coeff))

    def _add_term(self, word: Word, coeff: Scalar) -> None:
        total = self._terms.get(word, ZERO) + coeff
        if total.is_zero:
            self._terms.pop(word, None)
        else:
            self._terms[word] = total

    @classmethod
    def word(cls, *letters: str, coeff: ScalarLike = ONE) -> "UqElement":
        return cls({tuple(letters): coeff})

    def items(self) -> List[Tuple[Word, Scalar]]:
        return sorted(self._terms.items())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "UqElement") -> "UqElement":
        result = UqElement(self._terms)
        for word, coeff in other._terms.items():
            result._add_term(word, coeff)
        return result

    def __neg__(self) -> "UqElement":
        return UqElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "UqElement") -> "UqElement":
        return self + (-other)

    def scale(self, coeff: ScalarLike) -> "UqElement":
        coeff = Scalar.coerce(coeff)
        return UqElement({w: c * coeff for w, c in self._terms.items()})

    def __mul__(self, other) -> "UqElement":
        if isinstance(other, UqElement):
            result = UqElement()
            for left, left_coeff in self._terms.items():
                for right, right_coeff in other._terms.items():
                    result._add_term(reduce_word(left + right), left_coeff * right_coeff)
            return result
        return self.scale(other)

    def __rmul__(self, other: ScalarLike) -> "UqElement":
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UqElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({coeff})·{word_to_str(word)}" for word, coeff in self.items())

    def __repr__(self) -> str:
        return f"UqElement({self})"

    def to_json(self) -> List[Dict[str, object]]:
        return [{"word": list(word), "coeff": coeff.to_json()} for word, coeff in self.items()]


class TensorPair(NamedTuple):
    """U_q ⊗ U_q 中的一项 coeff · left ⊗ right"""
    left: Word
    right: Word
    coeff: Scalar


IDENTITY = UqElement({(): ONE})
E = UqElement.word(GEN_E)
F = UqElement.word(GEN_F)
K = UqElement.word(GEN_K)
K_INV = UqElement.word(GEN_K_INV)

# 生成元的余乘：Δ(K^±1) = K^±1 ⊗ K^±1，Δ(E) = E ⊗ K + K⁻¹ ⊗ E，Δ(F) = F ⊗ K + K⁻¹ ⊗ F
_COPRODUCT_TABLE: Dict[str, List[Tuple[Word, Word]]] = {
    GEN_K: [((GEN_K,), (GEN_K,))],
    GEN_K_INV: [((GEN_K_INV,), (GEN_K_INV,))],
    GEN_E: [((GEN_E,), (GEN_K,)), ((GEN_K_INV,), (GEN_E,))],
    GEN_F: [((GEN_F,), (GEN_K,)), ((GEN_K_INV,), (GEN_F,))],
}


def letter_coproduct(letter: str) -> List[Tuple[Word, Word]]:
    return _COPRODUCT_TABLE[letter]


def coproduct(element: UqElement) -> List[TensorPair]:
    """余乘 Δ，作为代数同态扩展到词上"""
    totals: Dict[Tuple[Word, Word], Scalar] = {}
    for word, coeff in element.items():
        pairs: Dict[Tuple[Word, Word], Scalar] = {((), ()): coeff}
        for letter in word:
            next_pairs: Dict[Tuple[Word, Word], Scalar] = {}
            for (left, right), value in pairs.items():
                for add_left, add_right in _COPRODUCT_TABLE[letter]:
                    key = (reduce_word(left + add_left), reduce_word(right + add_right))
                    next_pairs[key] = next_pairs.get(key, ZERO) + value
            pairs = next_pairs
        for key, value in pairs.items():
            totals[key] = totals.get(key, ZERO) + value
    return [TensorPair(left, right, coeff) for (left, right), coeff in sorted(totals.items()) if not coeff.is_zero]


# 对极：S(K) = K⁻¹，S(E) = -qE，S(F) = -q⁻¹F
_ANTIPODE_TABLE: Dict[str, Tuple[str, Scalar]] = {
    GEN_K: (GEN_K_INV, ONE),
    GEN_K_INV: (GEN_K, ONE),
    GEN_E: (GEN_E, -Q),
    GEN_F: (GEN_F, -Q_INV),
}


def antipode(element: UqElement) -> UqElement:
    """对极 S，反同态"""
    result = UqElement()
    for word, coeff in element.items():
        image: List[str] = []
        factor = coeff
        for letter in reversed(word):
            target, scale = _ANTIPODE_TABLE[letter]
            image.append(target)
            factor = factor * scale
        result._add_term(reduce_word(image), factor)
    return result


def counit(element: UqElement) -> Scalar:
    """余单位：ε(K^±1) = 1，ε(E) = ε(F) = 0"""
    total = ZERO
    for word, coeff in element.items():
        if GEN_E not in word and GEN_F not in word:
            total = total + coeff
    return total


_DAGGER_LETTER = {GEN_E: GEN_F, GEN_F: GEN_E, GEN_K: GEN_K, GEN_K_INV: GEN_K_INV}


def dagger(element: UqElement) -> UqElement:
    """反线性反同态 †：E† = F，F† = E，K† = K"""
    result = UqElement()
    for word, coeff in element.items():
        image = tuple(_DAGGER_LETTER[letter] for letter in reversed(word))
        result._add_term(image, coeff.conjugate())
    return result


_TOKEN_PATTERN = re.compile(r"Ki|K\^\{?(-?\d+)\}?|K|E|F|1")


def parse_uq_word(text: str) -> UqElement:
    """解析 "E K"、"F K^-1"、"K^2" 之类的单个词

    Raises:
        ParsingError: 含有无法识别的记号
    """
    compact = re.sub(r"[\s*·]", "", text)
    letters: List[str] = []
    position = 0
    while position < len(compact):
        match = _TOKEN_PATTERN.match(compact, position)
        if not match:
            raise ParsingError(f"无法识别的 U_q 记号: '{compact[position:]}'", location=text)
        token = match.group(0)
        if match.group(1) is not None:
            power = int(match.group(1))
            letters.extend([GEN_K if power > 0 else GEN_K_INV] * abs(power))
        elif token != "1":
            letters.append(token)
        position = match.end()
    return UqElement({tuple(letters): ONE})
