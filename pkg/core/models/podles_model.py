#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Podleś 球 S²_q 与其上的线丛投影

S²_q 由 B₀ = cc*、B₊ = ca*、B₋ = ac* 生成，即 S³_q 中 U(1) 次数为 0 的部分。
线丛投影 p_n 的矩阵元含有 √(β_μβ_ν) 因子，这里只保存无根号部分
M_μν = w_μ w_ν*，根号下的数另行记录。
"""

from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

from core.models.algebra_model import AlgebraElement, A, A_STAR, C, C_STAR
from core.models.connection_model import Connection, Matrix, SigmaModule, matrix_to_json
from core.models.error_model import ValidationError
from core.models.scalar_model import Scalar, ONE, q_power
from core.models.vector_field_model import FieldIndex

B_ZERO = C * C_STAR
B_PLUS = C * A_STAR
B_MINUS = A * C_STAR


def require_degree_zero(element: AlgebraElement, what: str = "输入") -> AlgebraElement:
    """确认 element 属于 S²_q

    Raises:
        ValidationError: U(1) 次数不为 0
    """
    degree = element.u1_degree()
    if degree != 0:
        raise ValidationError(f"{what}不在 S²_q 中（U(1) 次数为 {degree}）", {"element": element.to_json()})
    return element


class PodlesIndex(NamedTuple):
    """S²_q 的向量空间基 X(m)(B₀)^n"""
    m: int
    n: int

    def element(self) -> AlgebraElement:
        base = B_PLUS if self.m >= 0 else B_MINUS
        return (base ** abs(self.m)) * (B_ZERO ** self.n)

    def __str__(self) -> str:
        return f"X({self.m})·B0^{self.n}"


def podles_indices(max_degree: int) -> List[PodlesIndex]:
    """|m| ≤ max_degree、0 ≤ n ≤ max_degree 的全部基指标"""
    return [PodlesIndex(m, n) for m in range(-max_degree, max_degree + 1) for n in range(max_degree + 1)]


def bundle_weights(n: int) -> Tuple[Scalar, ...]:
    """n ≥ 0 时返回 β_{nμ}，n < 0 时返回 α_{|n|μ}"""
    size = abs(n)
    weights: List[Scalar] = []
    for mu in range(size + 1):
        value = ONE
        if n >= 0:
            value = q_power(2 * mu)
            for k in range(mu):
                value = value * (ONE - q_power(-2 * (size - k))) / (ONE - q_power(-2 * (k + 1)))
        else:
            for k in range(size - mu):
                value = value * (ONE - q_power(2 * (size - k))) / (ONE - q_power(2 * (k + 1)))
        weights.append(value)
    return tuple(weights)


def bundle_words(n: int) -> Tuple[AlgebraElement, ...]:
    """未归一化的生成元：Ψ 的 (c*)^μ (a*)^(n-μ)，或 Φ 的 c^(|n|-μ) a^μ"""
    size = abs(n)
    if n >= 0:
        return tuple((C_STAR ** mu) * (A_STAR ** (size - mu)) for mu in range(size + 1))
    return tuple((C ** (size - mu)) * (A ** mu) for mu in range(size + 1))


@dataclass(frozen=True)
class BundleProjector:
    """M_n 的投影 p = D·M·D，D = diag(√weight)"""
    n: int
    words: Tuple[AlgebraElement, ...]
    weights: Tuple[Scalar, ...]
    matrix: Matrix

    @property
    def rank(self) -> int:
        return len(self.words)

    @property
    def module(self) -> SigmaModule:
        """σ̂⁰_±(e_μ) = q^(|n|-2μ) e_μ"""
        size = abs(self.n)
        return SigmaModule(tuple(f"ê{mu}" for mu in range(size + 1)),
                           tuple(size - 2 * mu for mu in range(size + 1)))

    def radicand(self, mu: int, nu: int) -> Scalar:
        return self.weights[mu] * self.weights[nu]

    def u_matrix(self) -> Matrix:
        """坐标 u = m·D 下的投影 M·B，B = diag(weight)，其各行为生成元 ĝ_μ"""
        return tuple(
            tuple(self.matrix[mu][nu].scale(self.weights[nu]) for nu in range(self.rank))
            for mu in range(self.rank)
        )

    def to_json(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "matrix": matrix_to_json(self.matrix),
            "radical_exponents": [
                [{"radicand": self.radicand(mu, nu).to_json(), "exponent": "1/2"} for nu in range(self.rank)]
                for mu in range(self.rank)
            ],
        }


class ChristoffelEntry(NamedTuple):
    """∇_{X_a} ê_μ 中 ê_κ 的系数 = √radicand · value"""
    value: AlgebraElement
    radicand: Scalar


@dataclass
class BundleConnection:
    """M_n 上的投影联络 p_n∘∇⁰（u 坐标）及其 ê 基下的 Christoffel 表"""
    projector: BundleProjector
    connection: Connection
    christoffel: Dict[Tuple[FieldIndex, int, int], ChristoffelEntry] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.projector.n

    def entry(self, index: FieldIndex, mu: int, kappa: int) -> Optional[ChristoffelEntry]:
        return self.christoffel.get((index, mu, kappa))

    def to_json(self) -> Dict[str, object]:
        symbols = []
        for (index, mu, kappa), entry in sorted(self.christoffel.items(),
                                                key=lambda item: (item[0][0].position, item[0][1], item[0][2])):
            symbols.append({
                "field": index.field.value,
                "mu": mu,
                "kappa": kappa,
                "value": entry.value.to_json(),
                "radicand": entry.radicand.to_json(),
            })
        return {"n": self.n, "side": self.connection.side.value, "christoffel": symbols}

