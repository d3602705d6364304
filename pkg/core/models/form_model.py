#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""一阶微分形式 Ω¹(S³_q)，以左模坐标 f₊ω₊ + f₋ω₋ + f_zω_z 保存"""

from dataclasses import dataclass
from typing import Dict, Iterator, Tuple

from core.models.algebra_model import AlgebraElement, ZERO_ELEMENT, ONE_ELEMENT
from core.models.error_model import ParsingError
from core.models.scalar_model import ScalarLike
from core.models.vector_field_model import FieldIndex, INDICES

_JSON_KEYS = {FieldIndex.PLUS: "wp", FieldIndex.MINUS: "wm", FieldIndex.Z: "wz"}


@dataclass(frozen=True)
class OneForm:
    wp: AlgebraElement = ZERO_ELEMENT
    wm: AlgebraElement = ZERO_ELEMENT
    wz: AlgebraElement = ZERO_ELEMENT

    @classmethod
    def from_coords(cls, coords) -> "OneForm":
        wp, wm, wz = coords
        return cls(wp, wm, wz)

    def coord(self, index: FieldIndex) -> AlgebraElement:
        return (self.wp, self.wm, self.wz)[index.position]

    def coords(self) -> Tuple[AlgebraElement, AlgebraElement, AlgebraElement]:
        return self.wp, self.wm, self.wz

    def __iter__(self) -> Iterator[Tuple[FieldIndex, AlgebraElement]]:
        return iter(zip(INDICES, self.coords()))

    @property
    def is_zero(self) -> bool:
        return self.wp.is_zero and self.wm.is_zero and self.wz.is_zero

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(self.wp + other.wp, self.wm + other.wm, self.wz + other.wz)

    def __neg__(self) -> "OneForm":
        return OneForm(-self.wp, -self.wm, -self.wz)

    def __sub__(self, other: "OneForm") -> "OneForm":
        return self + (-other)

    def scale(self, coeff: ScalarLike) -> "OneForm":
        return OneForm(self.wp.scale(coeff), self.wm.scale(coeff), self.wz.scale(coeff))

    def left_mul(self, element: AlgebraElement) -> "OneForm":
        """f·ω"""
        return OneForm(element * self.wp, element * self.wm, element * self.wz)

    def __str__(self) -> str:
        return f"({self.wp})ω+ + ({self.wm})ω- + ({self.wz})ωz"

    def to_json(self) -> Dict[str, object]:
        return {key: self.coord(index).to_json() for index, key in _JSON_KEYS.items()}

    @classmethod
    def from_json(cls, data: object, location: str = "") -> "OneForm":
        if not isinstance(data, dict):
            raise ParsingError("一阶形式必须是含 wp/wm/wz 的对象", location)
        coords = []
        for index, key in _JSON_KEYS.items():
            coords.append(AlgebraElement.from_json(data.get(key, []), f"{location}.{key}"))
        return cls.from_coords(coords)


ZERO_FORM = OneForm()
OMEGA_PLUS = OneForm(wp=ONE_ELEMENT)
OMEGA_MINUS = OneForm(wm=ONE_ELEMENT)
OMEGA_Z = OneForm(wz=ONE_ELEMENT)
OMEGA = {FieldIndex.PLUS: OMEGA_PLUS, FieldIndex.MINUS: OMEGA_MINUS, FieldIndex.Z: OMEGA_Z}
