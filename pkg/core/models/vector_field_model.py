#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""左不变向量场 X±、X_z 及其星对偶，以及扭曲自同构 σ"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Tuple

from core.models.scalar_model import Scalar, ONE, ZERO, S, Q_INV
from core.models.uq_model import ActionSide, UqElement, IDENTITY, GEN_E, GEN_F, GEN_K, GEN_K_INV


class FieldIndex(Enum):
    """切空间/余切空间的指标 +、-、z，按此顺序排列"""
    PLUS = "+"
    MINUS = "-"
    Z = "z"

    @property
    def position(self) -> int:
        return _INDEX_ORDER.index(self)

    @property
    def sigma_power(self) -> int:
        """σ_a = K^power 作用：± 为 2，z 为 4"""
        return 4 if self == FieldIndex.Z else 2

    @property
    def partner(self) -> "FieldIndex":
        """∇_{X_a*} 由 ∇_{X_partner} 给出：+ ↔ -，z ↔ z"""
        return {FieldIndex.PLUS: FieldIndex.MINUS, FieldIndex.MINUS: FieldIndex.PLUS}.get(self, FieldIndex.Z)

    @property
    def field(self) -> "BasisField":
        return BasisField(f"X{self.value}")

    @property
    def star_field(self) -> "BasisField":
        return BasisField(f"X{self.value}*")

    @staticmethod
    def values() -> List[str]:
        return [index.value for index in FieldIndex]


_INDEX_ORDER = [FieldIndex.PLUS, FieldIndex.MINUS, FieldIndex.Z]
INDICES: Tuple[FieldIndex, ...] = tuple(_INDEX_ORDER)


class BasisField(Enum):
    """六个基向量场"""
    X_PLUS = "X+"
    X_MINUS = "X-"
    X_Z = "Xz"
    X_PLUS_STAR = "X+*"
    X_MINUS_STAR = "X-*"
    X_Z_STAR = "Xz*"

    @property
    def index(self) -> FieldIndex:
        return FieldIndex(self.value[1])

    @property
    def is_star(self) -> bool:
        return self.value.endswith("*")

    @property
    def star(self) -> "BasisField":
        return self.index.field if self.is_star else self.index.star_field

    @property
    def sigma(self) -> "SigmaMap":
        """扭曲 Leibniz 规则中伴随的 σ"""
        return SigmaMap.of(self.index, starred=self.is_star)

    @staticmethod
    def values() -> List[str]:
        return [field.value for field in BasisField]


BASIS_FIELDS: Tuple[BasisField, ...] = tuple(BasisField)


class SigmaMap(Enum):
    """σ_a 与 σ_a* = σ_a⁻¹，以 K 的幂次表示"""
    SIGMA_PLUS = ("σ+", 2)
    SIGMA_MINUS = ("σ-", 2)
    SIGMA_Z = ("σz", 4)
    SIGMA_PLUS_STAR = ("σ+*", -2)
    SIGMA_MINUS_STAR = ("σ-*", -2)
    SIGMA_Z_STAR = ("σz*", -4)

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def k_power(self) -> int:
        return self.value[1]

    @property
    def inverse(self) -> "SigmaMap":
        return _SIGMA_INVERSE[self]

    def operator(self) -> UqElement:
        return k_power_operator(self.k_power)

    @staticmethod
    def of(index: FieldIndex, starred: bool = False) -> "SigmaMap":
        return _SIGMA_BY_INDEX[(index, starred)]


_SIGMA_BY_INDEX: Dict[Tuple[FieldIndex, bool], SigmaMap] = {
    (FieldIndex.PLUS, False): SigmaMap.SIGMA_PLUS,
    (FieldIndex.MINUS, False): SigmaMap.SIGMA_MINUS,
    (FieldIndex.Z, False): SigmaMap.SIGMA_Z,
    (FieldIndex.PLUS, True): SigmaMap.SIGMA_PLUS_STAR,
    (FieldIndex.MINUS, True): SigmaMap.SIGMA_MINUS_STAR,
    (FieldIndex.Z, True): SigmaMap.SIGMA_Z_STAR,
}
_SIGMA_INVERSE: Dict[SigmaMap, SigmaMap] = {
    SigmaMap.SIGMA_PLUS: SigmaMap.SIGMA_PLUS_STAR,
    SigmaMap.SIGMA_MINUS: SigmaMap.SIGMA_MINUS_STAR,
    SigmaMap.SIGMA_Z: SigmaMap.SIGMA_Z_STAR,
    SigmaMap.SIGMA_PLUS_STAR: SigmaMap.SIGMA_PLUS,
    SigmaMap.SIGMA_MINUS_STAR: SigmaMap.SIGMA_MINUS,
    SigmaMap.SIGMA_Z_STAR: SigmaMap.SIGMA_Z,
}


@lru_cache(maxsize=None)
def k_power_operator(power: int) -> UqElement:
    letter = GEN_K if power >= 0 else GEN_K_INV
    return UqElement({(letter,) * abs(power): ONE})


def xz_constant() -> Scalar:
    """X_z = (1 - K⁴) / (1 - q⁻²)"""
    return ONE / (ONE - Q_INV * Q_INV)


@lru_cache(maxsize=None)
def basis_operator(field: BasisField) -> UqElement:
    """基向量场的 U_q 实现

    X+ = q^(1/2) E K，X- = q^(-1/2) F K，X_z = (1 - K⁴)/(1 - q⁻²)，
    星对偶由 X+* = -K⁻² X-，X-* = -K⁻² X+，X_z* = -K⁻⁴ X_z 给出。
    """
    k4 = k_power_operator(4)
    k_inv2 = k_power_operator(-2)
    if field == BasisField.X_PLUS:
        return UqElement({(GEN_E, GEN_K): S})
    if field == BasisField.X_MINUS:
        return UqElement({(GEN_F, GEN_K): ONE / S})
    if field == BasisField.X_Z:
        return (IDENTITY - k4).scale(xz_constant())
    if field == BasisField.X_PLUS_STAR:
        return (k_inv2 * basis_operator(BasisField.X_MINUS)).scale(-ONE)
    if field == BasisField.X_MINUS_STAR:
        return (k_inv2 * basis_operator(BasisField.X_PLUS)).scale(-ONE)
    return (k_power_operator(-4) * basis_operator(BasisField.X_Z)).scale(-ONE)


@dataclass(frozen=True)
class VectorField:
    """六个基向量场的常系数线性组合"""
    coefficients: Tuple[Scalar, ...]
    side: ActionSide = ActionSide.LEFT

    def __post_init__(self):
        if len(self.coefficients) != len(BASIS_FIELDS):
            raise ValueError("向量场需要 6 个系数")

    @classmethod
    def basis(cls, field: BasisField, side: ActionSide = ActionSide.LEFT, coeff: Scalar = ONE) -> "VectorField":
        coefficients = tuple(coeff if f == field else ZERO for f in BASIS_FIELDS)
        return cls(coefficients, side)

    def components(self) -> List[Tuple[BasisField, Scalar]]:
        return [(f, c) for f, c in zip(BASIS_FIELDS, self.coefficients) if not c.is_zero]

    def __add__(self, other: "VectorField") -> "VectorField":
        if self.side != other.side:
            raise ValueError("不能相加不同作用方向的向量场")
        return VectorField(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)), self.side)

    def scale(self, coeff: Scalar) -> "VectorField":
        return VectorField(tuple(c * coeff for c in self.coefficients), self.side)

    def star(self) -> "VectorField":
        """(λX_a)* = λ̄ X_a*"""
        coefficients = [ZERO] * len(BASIS_FIELDS)
        for field, coeff in self.components():
            coefficients[BASIS_FIELDS.index(field.star)] = coeff.conjugate()
        return VectorField(tuple(coefficients), self.side)

    def operator(self) -> UqElement:
        result = UqElement()
        for field, coeff in self.components():
            result = result + basis_operator(field).scale(coeff)
        return result

    def __str__(self) -> str:
        parts = [f"({coeff})·{field.value}" for field, coeff in self.components()]
        return " + ".join(parts) if parts else "0"
