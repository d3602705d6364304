#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""σ-模、厄米度量与 q 仿射联络的数据模型"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from core.models.algebra_model import AlgebraElement, ZERO_ELEMENT, ONE_ELEMENT
from core.models.error_model import ParsingError, ValidationError
from core.models.scalar_model import Scalar, s_power
from core.models.uq_model import ActionSide
from core.models.vector_field_model import FieldIndex, INDICES

Matrix = Tuple[Tuple[AlgebraElement, ...], ...]
Vector = Tuple[AlgebraElement, ...]
GammaKey = Tuple[FieldIndex, int, int]


# 矩阵工具

def to_matrix(rows: Sequence[Sequence[AlgebraElement]]) -> Matrix:
    matrix = tuple(tuple(row) for row in rows)
    if any(len(row) != len(matrix) for row in matrix):
        raise ValidationError("矩阵必须是方阵")
    return matrix


def identity_matrix(rank: int) -> Matrix:
    return tuple(tuple(ONE_ELEMENT if i == j else ZERO_ELEMENT for j in range(rank)) for i in range(rank))


def diagonal_matrix(entries: Sequence[AlgebraElement]) -> Matrix:
    rank = len(entries)
    return tuple(tuple(entries[i] if i == j else ZERO_ELEMENT for j in range(rank)) for i in range(rank))


def matmul(left: Matrix, right: Matrix) -> Matrix:
    rank = len(left)
    return tuple(
        tuple(_dot(left[i][k] * right[k][j] for k in range(rank)) for j in range(rank))
        for i in range(rank)
    )


def vector_times_matrix(vector: Vector, matrix: Matrix) -> Vector:
    """行向量乘矩阵：(m·p)^j = m^i p_i^j"""
    rank = len(vector)
    return tuple(_dot(vector[i] * matrix[i][j] for i in range(rank) if not vector[i].is_zero) for j in range(rank))


def is_hermitian(matrix: Matrix) -> bool:
    rank = len(matrix)
    return all(matrix[i][j].star() == matrix[j][i] for i in range(rank) for j in range(i, rank))


def unit_vector(rank: int, index: int) -> Vector:
    return tuple(ONE_ELEMENT if i == index else ZERO_ELEMENT for i in range(rank))


def _dot(terms) -> AlgebraElement:
    total = ZERO_ELEMENT
    for term in terms:
        total = total + term
    return total


def matrix_to_json(matrix: Matrix) -> List[List[object]]:
    return [[entry.to_json() for entry in row] for row in matrix]


def matrix_from_json(data: object, location: str) -> Matrix:
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise ParsingError("矩阵必须是二维列表", location)
    rows = [
        [AlgebraElement.from_json(entry, f"{location}[{i}][{j}]") for j, entry in enumerate(row)]
        for i, row in enumerate(data)
    ]
    if any(len(row) != len(rows) for row in rows):
        raise ParsingError("矩阵必须是方阵", location)
    return to_matrix(rows)


@dataclass(frozen=True)
class SigmaModule:
    """秩为 n 的自由 σ-模；每个基元素带有 K 本征值 q^(weight/2)

    σ̂_±(e_i) = q^(weight_i) e_i，σ̂_z(e_i) = q^(2·weight_i) e_i，星号版本取倒数。
    """
    labels: Tuple[str, ...]
    weights: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.labels)

    def k_eigenvalue(self, i: int) -> Scalar:
        return s_power(self.weights[i])

    def sigma_weight(self, index: FieldIndex, i: int, starred: bool = False) -> Scalar:
        """σ̂_a(e_i) 或 σ̂_a*(e_i) 的本征值"""
        power = self.weights[i] * index.sigma_power
        return s_power(-power if starred else power)

    @classmethod
    def omega(cls) -> "SigmaModule":
        """Ω¹(S³_q)：基 ω₊、ω₋、ω_z，K(ω_a) = ω_a"""
        return cls(tuple(index.value for index in INDICES), (0, 0, 0))

    @classmethod
    def free(cls, rank: int, weights: Optional[Sequence[int]] = None) -> "SigmaModule":
        weights = tuple(weights) if weights is not None else (0,) * rank
        if len(weights) != rank:
            raise ValidationError("权重个数与秩不符")
        return cls(tuple(f"e{i}" for i in range(rank)), weights)


@dataclass(frozen=True)
class HermitianMetric:
    """自由模上的厄米形式 h(m₁, m₂) = m₁^i h_ij (m₂^j)*"""
    h: Matrix
    h_inv: Optional[Matrix] = None
    k_invariant: bool = False

    @property
    def rank(self) -> int:
        return len(self.h)

    def entry(self, i: int, j: int) -> AlgebraElement:
        return self.h[i][j]

    def inverse_entry(self, i: int, j: int) -> AlgebraElement:
        if self.h_inv is None:
            raise ValidationError("该度量没有提供逆矩阵")
        return self.h_inv[i][j]

    @property
    def invertible(self) -> bool:
        return self.h_inv is not None

    @classmethod
    def identity(cls, rank: int = 3) -> "HermitianMetric":
        unit = identity_matrix(rank)
        return cls(unit, unit, True)

    def to_json(self) -> Dict[str, object]:
        data: Dict[str, object] = {"h": matrix_to_json(self.h), "k_invariant": self.k_invariant}
        if self.h_inv is not None:
            data["h_inv"] = matrix_to_json(self.h_inv)
        return data


@dataclass(frozen=True)
class LCParams:
    """Levi-Civita 联络的六个自由参数"""
    tau1: AlgebraElement = ZERO_ELEMENT
    tau4: AlgebraElement = ZERO_ELEMENT
    mu2: AlgebraElement = ZERO_ELEMENT
    gamma_pm: AlgebraElement = ZERO_ELEMENT
    rho_zz: AlgebraElement = ZERO_ELEMENT
    f0: AlgebraElement = ZERO_ELEMENT

    FIELDS = ("tau1", "tau4", "mu2", "gamma_pm", "rho_zz", "f0")

    def to_json(self) -> Dict[str, object]:
        return {name: getattr(self, name).to_json() for name in self.FIELDS}

    @classmethod
    def from_json(cls, data: object, location: str = "params") -> "LCParams":
        if data is None:
            return cls()
        if not isinstance(data, dict):
            raise ParsingError("参数必须是对象", location)
        unknown = set(data) - set(cls.FIELDS)
        if unknown:
            raise ParsingError(f"未知参数: {sorted(unknown)}", location)
        values = {name: AlgebraElement.from_json(data[name], f"{location}.{name}") for name in data}
        return cls(**values)


@dataclass
class Connection:
    """自由 σ-模上的 q 仿射联络

    gamma_tilde[(a, i, j)] = Γ̃_{ai,j}，gamma[(a, i, j)] = Γ_{ai}^j；
    projector 非空时表示投影联络 p∘∇⁰，生成元为投影矩阵的各行。
    """
    module: SigmaModule
    metric: HermitianMetric
    gamma_tilde: Dict[GammaKey, AlgebraElement] = field(default_factory=dict)
    gamma: Optional[Dict[GammaKey, AlgebraElement]] = None
    projector: Optional[Matrix] = None
    side: ActionSide = ActionSide.LEFT

    @property
    def rank(self) -> int:
        return self.module.rank

    def tilde(self, index: FieldIndex, i: int, j: int) -> AlgebraElement:
        return self.gamma_tilde.get((index, i, j), ZERO_ELEMENT)

    def christoffel(self, index: FieldIndex, i: int, j: int) -> AlgebraElement:
        if self.gamma is None:
            raise ValidationError("联络缺少 Γ 表（需要可逆度量）")
        return self.gamma.get((index, i, j), ZERO_ELEMENT)

    def generators(self) -> List[Vector]:
        """像模的生成元：自由模的基，或投影矩阵的各行"""
        if self.projector is None:
            return [unit_vector(self.rank, i) for i in range(self.rank)]
        return [tuple(row) for row in self.projector]

    def symbol_label(self, index: FieldIndex, i: int, j: int) -> str:
        labels = self.module.labels
        return f"{index.value}{labels[i]},{labels[j]}"

    def to_json(self) -> Dict[str, object]:
        symbols = []
        for index in INDICES:
            for i in range(self.rank):
                for j in range(self.rank):
                    symbols.append({
                        "symbol": self.symbol_label(index, i, j),
                        "value": self.tilde(index, i, j).to_json(),
                    })
        return {"side": self.side.value, "labels": list(self.module.labels), "gamma_tilde": symbols}
