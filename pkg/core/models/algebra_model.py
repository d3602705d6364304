#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""S³_q 代数模型

元素以正规形基 A^α c^j (c*)^k 的有限线性组合表示，其中 α ≥ 0 时 A^α = a^α，
α < 0 时 A^α = (a*)^|α|。乘法按单个字母右乘重写，结果全部缓存。
"""

from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple, Union

from core.models.error_model import ParsingError
from core.models.scalar_model import Scalar, ScalarLike, ONE, ZERO, Q, q_power

# 生成元字母
LETTER_A = "a"
LETTER_A_STAR = "a*"
LETTER_C = "c"
LETTER_C_STAR = "c*"
LETTERS = (LETTER_A, LETTER_A_STAR, LETTER_C, LETTER_C_STAR)

INHOMOGENEOUS = "inhomogeneous"

# 元素 JSON 编码中每一项的字段
_TERM_KEYS = ("alpha", "j", "k", "coeff")


class Monomial(NamedTuple):
    """正规形基元素 A^alpha c^j (c*)^k"""
    alpha: int
    j: int
    k: int

    def length(self) -> int:
        return abs(self.alpha) + self.j + self.k

    def letters(self) -> Tuple[str, ...]:
        head = LETTER_A if self.alpha >= 0 else LETTER_A_STAR
        return (head,) * abs(self.alpha) + (LETTER_C,) * self.j + (LETTER_C_STAR,) * self.k

    def u1_degree(self) -> int:
        """左 K 作用的权：K ▷ m = q^(degree/2) m"""
        return -self.alpha - self.j + self.k

    def right_weight(self) -> int:
        """右 K 作用的权：m ◁ K = q^(weight/2) m"""
        return -self.alpha + self.j - self.k

    def __str__(self) -> str:
        parts = []
        if self.alpha:
            base = LETTER_A if self.alpha > 0 else LETTER_A_STAR
            parts.append(base if abs(self.alpha) == 1 else f"{base}^{abs(self.alpha)}")
        for letter, power in ((LETTER_C, self.j), (LETTER_C_STAR, self.k)):
            if power:
                parts.append(letter if power == 1 else f"{letter}^{power}")
        return " ".join(parts) if parts else "1"


UNIT_MONOMIAL = Monomial(0, 0, 0)
TermTuple = Tuple[Tuple[Monomial, Scalar], ...]


def _times_letter(monomial: Monomial, letter: str) -> List[Tuple[Monomial, Scalar]]:
    """正规形单项式右乘一个生成元字母"""
    alpha, j, k = monomial
    if letter == LETTER_C:
        return [(Monomial(alpha, j + 1, k), ONE)]
    if letter == LETTER_C_STAR:
        return [(Monomial(alpha, j, k + 1), ONE)]
    if letter == LETTER_A:
        # a 越过 c^j (c*)^k 得到 q^-(j+k)
        factor = q_power(-(j + k))
        if alpha >= 0:
            return [(Monomial(alpha + 1, j, k), factor)]
        # a* a = 1 - c* c
        return [(Monomial(alpha + 1, j, k), factor), (Monomial(alpha + 1, j + 1, k + 1), -factor)]
    if letter == LETTER_A_STAR:
        factor = q_power(j + k)
        if alpha <= 0:
            return [(Monomial(alpha - 1, j, k), factor)]
        # a a* = 1 - q² c c*
        return [(Monomial(alpha - 1, j, k), factor), (Monomial(alpha - 1, j + 1, k + 1), -(Q * Q) * factor)]
    raise ValueError(f"未知生成元: {letter}")


def _accumulate(terms: Dict[Monomial, Scalar], monomial: Monomial, coeff: Scalar) -> None:
    total = terms.get(monomial)
    total = coeff if total is None else total + coeff
    if total.is_zero:
        terms.pop(monomial, None)
    else:
        terms[monomial] = total


@lru_cache(maxsize=None)
def monomial_product(left: Monomial, right: Monomial) -> TermTuple:
    """两个正规形单项式之积的正规形"""
    terms: Dict[Monomial, Scalar] = {left: ONE}
    for letter in right.letters():
        next_terms: Dict[Monomial, Scalar] = {}
        for monomial, coeff in terms.items():
            for product, factor in _times_letter(monomial, letter):
                _accumulate(next_terms, product, coeff * factor)
        terms = next_terms
    return tuple(sorted(terms.items()))


@lru_cache(maxsize=None)
def monomial_star(monomial: Monomial) -> TermTuple:
    """(A^α c^j c*^k)* = c^k c*^j (A^α)*，再化为正规形"""
    return monomial_product(Monomial(0, monomial.k, monomial.j), Monomial(-monomial.alpha, 0, 0))


class AlgebraElement:
    """S³_q 中的元素；只保存非零系数"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, ScalarLike]] = None):
        self._terms: Dict[Monomial, Scalar] = {}
        self._hash = None
        if terms:
            for monomial, coeff in terms.items():
                coeff = Scalar.coerce(coeff)
                if not coeff.is_zero:
                    self._terms[Monomial(*monomial)] = coeff

    @classmethod
    def _from_clean(cls, terms: Dict[Monomial, Scalar]) -> "AlgebraElement":
        element = cls.__new__(cls)
        element._terms = terms
        element._hash = None
        return element

    @classmethod
    def from_monomial(cls, monomial: Monomial, coeff: ScalarLike = ONE) -> "AlgebraElement":
        return cls({monomial: coeff})

    @classmethod
    def scalar(cls, coeff: ScalarLike) -> "AlgebraElement":
        return cls({UNIT_MONOMIAL: coeff})

    # 访问

    def items(self) -> List[Tuple[Monomial, Scalar]]:
        return sorted(self._terms.items())

    def coefficient(self, monomial: Monomial) -> Scalar:
        return self._terms.get(monomial, ZERO)

    def monomials(self) -> List[Monomial]:
        return sorted(self._terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    # 线性结构

    def __add__(self, other: Union["AlgebraElement", ScalarLike]) -> "AlgebraElement":
        other = _as_element(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for monomial, coeff in other._terms.items():
            _accumulate(terms, monomial, coeff)
        return AlgebraElement._from_clean(terms)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._from_clean({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Union["AlgebraElement", ScalarLike]) -> "AlgebraElement":
        other = _as_element(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> "AlgebraElement":
        return _as_element(other) - self

    def scale(self, coeff: ScalarLike) -> "AlgebraElement":
        coeff = Scalar.coerce(coeff)
        if coeff.is_zero:
            return ZERO_ELEMENT
        return AlgebraElement._from_clean({m: c * coeff for m, c in self._terms.items()})

    def map_monomials(self, weight) -> "AlgebraElement":
        """每个单项式乘以 weight(monomial) 给出的标量"""
        terms: Dict[Monomial, Scalar] = {}
        for monomial, coeff in self._terms.items():
            _accumulate(terms, monomial, coeff * weight(monomial))
        return AlgebraElement._from_clean(terms)

    # 乘法

    def __mul__(self, other: Union["AlgebraElement", ScalarLike]) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            terms: Dict[Monomial, Scalar] = {}
            for left, left_coeff in self._terms.items():
                for right, right_coeff in other._terms.items():
                    base = left_coeff * right_coeff
                    for monomial, factor in monomial_product(left, right):
                        _accumulate(terms, monomial, base * factor)
            return AlgebraElement._from_clean(terms)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other: ScalarLike) -> "AlgebraElement":
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, exponent: int) -> "AlgebraElement":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = ONE_ELEMENT
        for _ in range(exponent):
            result = result * self
        return result

    # 结构映射

    def star(self) -> "AlgebraElement":
        """反线性反自同构 *"""
        terms: Dict[Monomial, Scalar] = {}
        for monomial, coeff in self._terms.items():
            conjugated = coeff.conjugate()
            for image, factor in monomial_star(monomial):
                _accumulate(terms, image, conjugated * factor)
        return AlgebraElement._from_clean(terms)

    def counit(self) -> Scalar:
        """ε(a) = ε(a*) = 1，ε(c) = ε(c*) = 0"""
        total = ZERO
        for monomial, coeff in self._terms.items():
            if monomial.j == 0 and monomial.k == 0:
                total = total + coeff
        return total

    def u1_degree(self) -> Union[int, str]:
        """U(1) 次数；零元素记为 0，非齐次元素返回 INHOMOGENEOUS"""
        degrees = {monomial.u1_degree() for monomial in self._terms}
        if not degrees:
            return 0
        if len(degrees) > 1:
            return INHOMOGENEOUS
        return degrees.pop()

    def max_length(self) -> int:
        return max((m.length() for m in self._terms), default=0)

    # 比较与编码

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Scalar)):
            other = AlgebraElement.scalar(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({coeff})·{monomial}" for monomial, coeff in self.items())

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"

    def to_json(self) -> List[Dict[str, object]]:
        return [
            {"alpha": m.alpha, "j": m.j, "k": m.k, "coeff": coeff.to_json()}
            for m, coeff in self.items()
        ]

    @classmethod
    def from_json(cls, data: object, location: str = "") -> "AlgebraElement":
        if not isinstance(data, list):
            raise ParsingError("代数元素必须是项的列表", location)
        terms: Dict[Monomial, Scalar] = {}
        for index, term in enumerate(data):
            where = f"{location}[{index}]"
            if not isinstance(term, dict) or any(key not in term for key in _TERM_KEYS):
                raise ParsingError("每一项需要 alpha、j、k 与 coeff 字段", where)
            alpha, j, k = (term[key] for key in _TERM_KEYS[:3])
            if (not all(isinstance(x, int) and not isinstance(x, bool) for x in (alpha, j, k))
                    or j < 0 or k < 0):
                raise ParsingError("alpha、j、k 必须是整数且 j, k ≥ 0", where)
            _accumulate(terms, Monomial(alpha, j, k), Scalar.from_json(term["coeff"]))
        return cls._from_clean(terms)


def _as_element(value) -> Optional[AlgebraElement]:
    if isinstance(value, AlgebraElement):
        return value
    try:
        return AlgebraElement.scalar(Scalar.coerce(value))
    except TypeError:
        return None


def enumerate_basis(max_len: int) -> List[Monomial]:
    """长度不超过 max_len 的全部正规形单项式，按 (alpha, j, k) 字典序"""
    basis = []
    for alpha in range(-max_len, max_len + 1):
        rest = max_len - abs(alpha)
        for j in range(rest + 1):
            for k in range(rest - j + 1):
                basis.append(Monomial(alpha, j, k))
    return sorted(basis)


def basis_elements(max_len: int) -> List[AlgebraElement]:
    return [AlgebraElement.from_monomial(m) for m in enumerate_basis(max_len)]


def product_of(factors: Iterable[AlgebraElement]) -> AlgebraElement:
    result = ONE_ELEMENT
    for factor in factors:
        result = result * factor
    return result


ZERO_ELEMENT = AlgebraElement()
ONE_ELEMENT = AlgebraElement.scalar(ONE)
A = AlgebraElement.from_monomial(Monomial(1, 0, 0))
A_STAR = AlgebraElement.from_monomial(Monomial(-1, 0, 0))
C = AlgebraElement.from_monomial(Monomial(0, 1, 0))
C_STAR = AlgebraElement.from_monomial(Monomial(0, 0, 1))

GENERATORS = {LETTER_A: A, LETTER_A_STAR: A_STAR, LETTER_C: C, LETTER_C_STAR: C_STAR}


def word_element(letters: Iterable[str]) -> AlgebraElement:
    """按字母序列相乘，例如 ("a", "c*")"""
    return product_of(GENERATORS[letter] for letter in letters)


# 定义关系的字母形式，用于对关系逐字母求微分
RELATION_WORDS: Dict[str, List[Tuple[Scalar, Tuple[str, ...]]]] = {
    "ac=qca": [(ONE, ("a", "c")), (-Q, ("c", "a"))],
    "c*a*=qa*c*": [(ONE, ("c*", "a*")), (-Q, ("a*", "c*"))],
    "ac*=qc*a": [(ONE, ("a", "c*")), (-Q, ("c*", "a"))],
    "ca*=qa*c": [(ONE, ("c", "a*")), (-Q, ("a*", "c"))],
    "cc*=c*c": [(ONE, ("c", "c*")), (-ONE, ("c*", "c"))],
    "a*a+c*c=1": [(ONE, ("a*", "a")), (ONE, ("c*", "c")), (-ONE, ())],
    "aa*+q2cc*=1": [(ONE, ("a", "a*")), (Q * Q, ("c", "c*")), (-ONE, ())],
}


def defining_relations() -> Dict[str, AlgebraElement]:
    """S³_q 的定义关系（以差的形式写出，正规形下应为零）"""
    return {
        name: sum((word_element(letters).scale(coeff) for coeff, letters in words), ZERO_ELEMENT)
        for name, words in RELATION_WORDS.items()
    }


def monomial_pairs(max_len: int) -> List[Tuple[AlgebraElement, AlgebraElement]]:
    """总长度不超过 max_len 的有序单项式对"""
    basis = enumerate_basis(max_len)
    return [
        (AlgebraElement.from_monomial(left), AlgebraElement.from_monomial(right))
        for left in basis for right in basis
        if left.length() + right.length() <= max_len
    ]
