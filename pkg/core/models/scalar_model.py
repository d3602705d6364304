#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""标量模型 - Q(i)(s) 中的精确有理函数，其中 s = q^(1/2)"""

from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Union

import sympy
from sympy import QQ
from sympy.polys.fields import FracElement, field

from core.models.error_model import ScalarDivisionError, ParsingError

# 实部与虚部分别存放于 Q(s)
S_FIELD, S_GEN = field("s", QQ)

# 表达式解析用的符号
Q_SYMBOL = sympy.Symbol("q", positive=True)
S_SYMBOL = sympy.Symbol("s", positive=True)
_PLAIN_S = sympy.Symbol("s")

ScalarLike = Union["Scalar", int, Fraction, FracElement]


def _to_field(value: Any) -> FracElement:
    """将输入转换为 Q(s) 元素"""
    if isinstance(value, FracElement):
        return value
    if isinstance(value, bool):
        raise TypeError("布尔值不是合法的标量")
    if isinstance(value, int):
        return S_FIELD(value)
    if isinstance(value, Fraction):
        return S_FIELD(QQ(value.numerator, value.denominator))
    if isinstance(value, str):
        rational = Fraction(value)
        return S_FIELD(QQ(rational.numerator, rational.denominator))
    raise TypeError(f"无法转换为标量: {value!r}")


class Scalar:
    """Q(i)(q^(1/2)) 中的元素，以 re + i·im 表示，re/im 均为约分后的有理函数"""

    __slots__ = ("re", "im")

    def __init__(self, re: Any = 0, im: Any = 0):
        self.re = _to_field(re)
        self.im = _to_field(im)

    # 构造

    @classmethod
    def coerce(cls, value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return cls(value)

    # 属性

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "Scalar":
        if not self.im:
            return self
        return Scalar(self.re, -self.im)

    # 算术

    def __add__(self, other: ScalarLike) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __sub__(self, other: ScalarLike) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.im and not other.im:
            return Scalar(self.re * other.re)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero:
            raise ScalarDivisionError(f"除数为零: {self} / 0")
        if not other.im:
            return Scalar(self.re / other.re, self.im / other.re)
        norm = other.re * other.re + other.im * other.im
        return Scalar(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return Scalar.coerce(other) / self

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return ONE / (self ** (-exponent))
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # 比较

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    # 展示与编码

    def to_expr(self) -> sympy.Expr:
        """转换为以 q 表示的 sympy 表达式"""
        re_expr = self.re.as_expr().subs(_PLAIN_S, sympy.sqrt(Q_SYMBOL))
        im_expr = self.im.as_expr().subs(_PLAIN_S, sympy.sqrt(Q_SYMBOL))
        return sympy.simplify(re_expr + sympy.I * im_expr)

    def __str__(self) -> str:
        return str(self.to_expr())

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def to_json(self) -> List[List[List[str]]]:
        """编码为 [分子系数, 分母系数]，按 s 的升幂排列，每个系数为 ["p/q", "p/q"]"""
        re_num, re_den = self.re.numer, self.re.denom
        im_num, im_den = self.im.numer, self.im.denom
        if not self.im:
            common = re_den
            num_re, num_im = re_num, re_num.ring.zero
        elif not self.re:
            common = im_den
            num_re, num_im = im_num.ring.zero, im_num
        else:
            common = re_den.lcm(im_den)
            num_re = re_num * common.exquo(re_den)
            num_im = im_num * common.exquo(im_den)
        return [_encode_complex_poly(num_re, num_im), _encode_complex_poly(common, common.ring.zero)]

    @classmethod
    def from_json(cls, data: Any) -> "Scalar":
        """从 JSON 系数表示解码"""
        if not isinstance(data, list) or len(data) != 2:
            raise ParsingError("标量编码必须是 [分子, 分母] 两个系数列表")
        numerator = _decode_complex_poly(data[0])
        denominator = _decode_complex_poly(data[1])
        return numerator / denominator


def _rational_str(value: Any) -> str:
    rational = QQ.to_sympy(value)
    return f"{rational.p}/{rational.q}"


def _encode_complex_poly(real_part, imag_part) -> List[List[str]]:
    degree = max(real_part.degree(), imag_part.degree())
    if degree < 0:
        return []
    real_terms = {monom[0]: coeff for monom, coeff in real_part.terms()}
    imag_terms = {monom[0]: coeff for monom, coeff in imag_part.terms()}
    return [
        [_rational_str(real_terms.get(power, QQ.zero)), _rational_str(imag_terms.get(power, QQ.zero))]
        for power in range(degree + 1)
    ]


def _decode_complex_poly(coefficients: Any) -> Scalar:
    if not isinstance(coefficients, list):
        raise ParsingError("系数列表格式错误")
    real_part = S_FIELD.zero
    imag_part = S_FIELD.zero
    for power, pair in enumerate(coefficients):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParsingError(f"第 {power} 个系数必须是 [实部, 虚部]")
        try:
            real_part += _to_field(str(pair[0])) * S_GEN ** power
            imag_part += _to_field(str(pair[1])) * S_GEN ** power
        except (ValueError, ZeroDivisionError) as e:
            raise ParsingError(f"无法解析系数 {pair}: {e}")
    return Scalar(real_part, imag_part)


def parse_scalar_expr(text: str) -> Scalar:
    """解析 q、s、I 组成的有理表达式，例如 "q^2 - 1/q" 或 "(1+I)*s"

    Raises:
        ParsingError: 表达式不是 Q(i)(s) 中的元素
    """
    try:
        expr = sympy.sympify(
            str(text).replace("^", "**"),
            locals={"q": Q_SYMBOL, "s": S_SYMBOL, "I": sympy.I, "i": sympy.I},
        )
        expr = expr.subs(Q_SYMBOL, S_SYMBOL ** 2)
        real_part, imag_part = sympy.expand_complex(expr).as_real_imag()
        real_part = sympy.together(real_part).subs(S_SYMBOL, _PLAIN_S)
        imag_part = sympy.together(imag_part).subs(S_SYMBOL, _PLAIN_S)
        return Scalar(S_FIELD.from_expr(real_part), S_FIELD.from_expr(imag_part))
    except (sympy.SympifyError, ValueError, TypeError, sympy.polys.polyerrors.PolynomialError) as e:
        raise ParsingError(f"无法解析标量表达式 '{text}': {e}")


def s_power(exponent: int) -> Scalar:
    """q^(exponent/2)"""
    return Scalar(S_GEN ** exponent)


def q_power(exponent: int) -> Scalar:
    """q^exponent"""
    return Scalar(S_GEN ** (2 * exponent))


@lru_cache(maxsize=None)
def q_integer(n: int) -> Scalar:
    """对称 q 整数 [n] = (q^n - q^-n) / (q - q^-1)，满足 [-n] = -[n]"""
    if n == 0:
        return ZERO
    if n < 0:
        return -q_integer(-n)
    total = S_FIELD.zero
    # [n] = q^(n-1) + q^(n-3) + ... + q^(1-n)
    for k in range(n):
        total += S_GEN ** (2 * (n - 1 - 2 * k))
    return Scalar(total)


ZERO = Scalar(0)
ONE = Scalar(1)
HALF = Scalar(Fraction(1, 2))
I_UNIT = Scalar(0, 1)
S = Scalar(S_GEN)
Q = Scalar(S_GEN ** 2)
Q_INV = Scalar(S_GEN ** -2)
