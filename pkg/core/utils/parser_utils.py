#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
输入解析工具 - 代数元素表达式、度量文件与参数文件

元素表达式语法:
    生成元     a  a*  c  c*（也可写 a^* / c^*），B0  Bp  Bm
    标量       整数、分数 p/q、q、s（= q^(1/2)）、I（虚数单位）
    运算       + - 与乘法（空格、· 或 *），^ 整数幂，/ 仅允许除以标量
"a*c" 读作 a·c；星号紧跟空白、右括号、运算符或结尾时才表示共轭生成元。
"""

import re
from pathlib import Path
from typing import Any, List, Optional, Tuple, Union

from core.models.algebra_model import AlgebraElement, A, A_STAR, C, C_STAR, UNIT_MONOMIAL
from core.models.connection_model import HermitianMetric, LCParams, Matrix, is_hermitian
from core.models.error_model import ParsingError, ValidationError
from core.models.podles_model import B_MINUS, B_PLUS, B_ZERO
from core.models.scalar_model import I_UNIT, ONE, Q, S, Scalar
from core.utils.file_utils import read_json_file

_TOKEN_PATTERN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+)"
    r"|(?P<gen>[ac](?:\^\*|\*(?=\s|$|[)+\-^·]))?|B[0pm])"
    r"|(?P<sym>[qsI])"
    r"|(?P<op>[-+*/^()·]))"
)

_ATOMS = {
    "a": A, "a*": A_STAR, "a^*": A_STAR,
    "c": C, "c*": C_STAR, "c^*": C_STAR,
    "B0": B_ZERO, "Bp": B_PLUS, "Bm": B_MINUS,
}
_SCALARS = {"q": Q, "s": S, "I": I_UNIT}


def _tokenize(text: str, location: str) -> List[Tuple[str, str]]:
    tokens = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = _TOKEN_PATTERN.match(stripped, position)
        if not match or match.end() == position:
            raise ParsingError(f"无法识别的记号: '{stripped[position:].strip()}'", location)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        position = match.end()
    return tokens


class _ElementParser:
    """递归下降解析器；标量与元素统一按 AlgebraElement 处理"""

    def __init__(self, text: str, location: str):
        self.text = text
        self.location = location or "表达式"
        self.tokens = _tokenize(text, self.location)
        self.position = 0

    def _peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def _take(self) -> Tuple[str, str]:
        token = self._peek()
        if token is None:
            raise ParsingError(f"表达式意外结束: '{self.text}'", self.location)
        self.position += 1
        return token

    def _expect(self, value: str) -> None:
        kind, token = self._take()
        if token != value:
            raise ParsingError(f"期望 '{value}'，得到 '{token}'", self.location)

    def parse(self) -> AlgebraElement:
        if not self.tokens:
            raise ParsingError("空表达式", self.location)
        result = self._expression()
        if self._peek() is not None:
            raise ParsingError(f"多余的记号: '{self._peek()[1]}'", self.location)
        return result

    def _expression(self) -> AlgebraElement:
        sign = 1
        token = self._peek()
        if token is not None and token[1] in "+-":
            self._take()
            sign = -1 if token[1] == "-" else 1
        result = self._term().scale(sign)
        while (token := self._peek()) is not None and token[1] in "+-":
            self._take()
            term = self._term()
            result = result + term if token[1] == "+" else result - term
        return result

    def _starts_factor(self, token: Optional[Tuple[str, str]]) -> bool:
        return token is not None and (token[0] in ("num", "gen", "sym") or token[1] == "(")

    def _term(self) -> AlgebraElement:
        result = self._factor()
        while True:
            token = self._peek()
            if token is not None and token[1] in ("*", "·"):
                self._take()
                result = result * self._factor()
            elif token is not None and token[1] == "/":
                self._take()
                result = result.scale(ONE / self._scalar_of(self._factor()))
            elif self._starts_factor(token):
                result = result * self._factor()
            else:
                return result

    def _scalar_of(self, element: AlgebraElement) -> Scalar:
        monomials = element.monomials()
        if monomials and monomials != [UNIT_MONOMIAL]:
            raise ParsingError("只能除以标量", self.location)
        coeff = element.coefficient(UNIT_MONOMIAL)
        if coeff.is_zero:
            raise ParsingError("除数为零", self.location)
        return coeff

    def _factor(self) -> AlgebraElement:
        base = self._atom()
        token = self._peek()
        if token is None or token[1] != "^":
            return base
        self._take()
        sign = 1
        if self._peek() is not None and self._peek()[1] == "-":
            self._take()
            sign = -1
        kind, digits = self._take()
        if kind != "num":
            raise ParsingError(f"指数必须是整数，得到 '{digits}'", self.location)
        exponent = sign * int(digits)
        if exponent >= 0:
            return base ** exponent
        return AlgebraElement.scalar(self._scalar_of(base) ** exponent)

    def _atom(self) -> AlgebraElement:
        kind, token = self._take()
        if kind == "num":
            return AlgebraElement.scalar(Scalar(int(token)))
        if kind == "gen":
            return _ATOMS[token]
        if kind == "sym":
            return AlgebraElement.scalar(_SCALARS[token])
        if token == "(":
            inner = self._expression()
            self._expect(")")
            return inner
        raise ParsingError(f"此处不能出现 '{token}'", self.location)


def parse_element_expr(text: str, location: str = "") -> AlgebraElement:
    """解析代数元素表达式，例如 "1 + q^2 c c*" 或 "(1+I)/2 Bp"

    Raises:
        ParsingError: 表达式无法解析，location 指出出错位置
    """
    return _ElementParser(str(text), location).parse()


def element_from_value(value: Any, location: str) -> AlgebraElement:
    """JSON 值转换为代数元素：字符串按表达式解析，列表按元素编码解码，数字视为标量"""
    if isinstance(value, str):
        return parse_element_expr(value, location)
    if isinstance(value, bool):
        raise ParsingError("布尔值不能作为代数元素", location)
    if isinstance(value, int):
        return AlgebraElement.scalar(Scalar(value))
    if isinstance(value, list):
        return AlgebraElement.from_json(value, location)
    raise ParsingError(f"无法作为代数元素: {value!r}", location)


def matrix_from_value(value: Any, location: str, rank: Optional[int] = None) -> Matrix:
    """解析方阵；行数、列数不一致时报告出错的行

    Raises:
        ParsingError: 不是方阵或某个分量无法解析
    """
    if not isinstance(value, list) or not value:
        raise ParsingError("矩阵必须是非空的行列表", location)
    size = len(value) if rank is None else rank
    if len(value) != size:
        raise ParsingError(f"矩阵应有 {size} 行，实际 {len(value)} 行", location)
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != size:
            raise ParsingError(f"第 {i} 行应有 {size} 个分量", f"{location}[{i}]")
        rows.append(tuple(element_from_value(entry, f"{location}[{i}][{j}]") for j, entry in enumerate(row)))
    return tuple(rows)


def _first_non_hermitian(matrix: Matrix) -> Optional[Tuple[int, int]]:
    for i, row in enumerate(matrix):
        for j in range(i, len(row)):
            if matrix[i][j].star() != matrix[j][i]:
                return i, j
    return None


def metric_from_data(data: Any, location: str = "metric") -> HermitianMetric:
    """由 JSON 数据构造厄米度量

    接受 {"h": [[...]], "h_inv": [[...]], "k_invariant": bool} 或直接给出 h 的矩阵。

    Raises:
        ParsingError: 格式错误
        ValidationError: h 不是厄米的，消息中指出违反 h_ij* = h_ji 的分量
    """
    if isinstance(data, list):
        data = {"h": data}
    if not isinstance(data, dict) or "h" not in data:
        raise ParsingError("度量文件需要 h 字段", location)
    unknown = set(data) - {"h", "h_inv", "k_invariant"}
    if unknown:
        raise ParsingError(f"未知字段: {sorted(unknown)}", location)
    h = matrix_from_value(data["h"], f"{location}.h")
    entry = _first_non_hermitian(h)
    if entry is not None:
        i, j = entry
        raise ValidationError(
            f"{location}.h[{i}][{j}]: 度量不是厄米的，h[{i}][{j}]* ≠ h[{j}][{i}]",
            {"entry": [i, j], "h_ij": h[i][j].to_json(), "h_ji": h[j][i].to_json()},
        )
    h_inv = None
    if data.get("h_inv") is not None:
        h_inv = matrix_from_value(data["h_inv"], f"{location}.h_inv", len(h))
        if not is_hermitian(h_inv):
            raise ValidationError(f"{location}.h_inv: 逆度量不是厄米的")
    k_invariant = data.get("k_invariant", False)
    if not isinstance(k_invariant, bool):
        raise ParsingError("k_invariant 必须是布尔值", f"{location}.k_invariant")
    return HermitianMetric(h, h_inv, k_invariant)


def params_from_data(data: Any, location: str = "params") -> LCParams:
    """解析 Levi-Civita 参数；分量可写作表达式字符串或元素编码

    Raises:
        ParsingError: 未知参数名或分量无法解析
    """
    if data is None:
        return LCParams()
    if not isinstance(data, dict):
        raise ParsingError("参数必须是对象", location)
    unknown = set(data) - set(LCParams.FIELDS)
    if unknown:
        raise ParsingError(f"未知参数: {sorted(unknown)}", location)
    return LCParams(**{name: element_from_value(value, f"{location}.{name}") for name, value in data.items()})


def load_metric(file_path: Union[str, Path]) -> HermitianMetric:
    """从 JSON 文件读取度量"""
    return metric_from_data(read_json_file(file_path), str(file_path))


def load_params(file_path: Union[str, Path]) -> LCParams:
    """从 JSON 文件读取 Levi-Civita 参数"""
    return params_from_data(read_json_file(file_path), str(file_path))


def load_element(source: str) -> AlgebraElement:
    """读取元素：source 是已存在的 JSON 文件时按文件读取，否则按表达式解析"""
    path = Path(source)
    try:
        is_file = path.is_file()
    except OSError:
        is_file = False
    if is_file:
        return element_from_value(read_json_file(path), str(path))
    return parse_element_expr(source, "element")


__all__ = [
    'parse_element_expr', 'element_from_value', 'matrix_from_value',
    'metric_from_data', 'params_from_data', 'load_metric', 'load_params', 'load_element',
]
