import sys
import os

# 动态添加项目根目录到sys.path，确保可以导入core模块
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import json

import pytest

from core.models.algebra_model import A, A_STAR, C, C_STAR, ONE_ELEMENT, ZERO_ELEMENT
from core.models.error_model import ParsingError, ValidationError
from core.models.podles_model import B_PLUS, B_ZERO
from core.models.scalar_model import HALF, I_UNIT, ONE, Q
from core.utils.parser_utils import (
    element_from_value, load_element, load_metric, load_params, matrix_from_value, metric_from_data,
    params_from_data, parse_element_expr,
)


@pytest.mark.parametrize("text, expected", [
    ("a c*", A * C_STAR),
    ("a*c", A * C),
    ("a* c", A_STAR * C),
    ("a^*", A_STAR),
    ("c^* a", C_STAR * A),
    ("B0", B_ZERO),
    ("a·c", A * C),
    ("c^2", C * C),
])
def test_generator_products(text, expected):
    """星号只在后面没有生成元时表示共轭"""
    assert parse_element_expr(text) == expected


def test_scalars_and_sums():
    """标量系数、除以标量与负幂"""
    assert parse_element_expr("1 + q^2 c c*") == ONE_ELEMENT + (C * C_STAR).scale(Q * Q)
    assert parse_element_expr("(1+I)/2 Bp") == B_PLUS.scale((ONE + I_UNIT) * HALF)
    assert parse_element_expr("q^-1 a") == A.scale(Q ** -1)
    assert parse_element_expr("-a + a") == ZERO_ELEMENT


@pytest.mark.parametrize("text", ["a/c", "a^-1", "", "a +", "x", "(a", "a )", "1/0"])
def test_malformed_expressions(text):
    with pytest.raises(ParsingError):
        parse_element_expr(text)


def test_parse_error_carries_location():
    with pytest.raises(ParsingError) as excinfo:
        parse_element_expr("a ? c", "metric.h[0][1]")
    assert excinfo.value.location == "metric.h[0][1]"


def test_element_from_value():
    """字符串、整数与元素编码都可以作为元素"""
    assert element_from_value("c", "x") == C
    assert element_from_value(3, "x") == ONE_ELEMENT.scale(3)
    assert element_from_value(A.to_json(), "x") == A
    term = {"alpha": 1, "j": 0, "k": 1, "coeff": [[["1/1", "0/1"]], [["1/1", "0/1"]]]}
    assert element_from_value([term], "x") == A * C_STAR
    with pytest.raises(ParsingError):
        element_from_value(True, "x")
    with pytest.raises(ParsingError):
        element_from_value(1.5, "x")


def test_matrix_shape_errors():
    """行数或列数不对时指出出错的行"""
    assert matrix_from_value([["1", "0"], ["0", "1"]], "m") == ((ONE_ELEMENT, ZERO_ELEMENT), (ZERO_ELEMENT, ONE_ELEMENT))
    with pytest.raises(ParsingError) as excinfo:
        matrix_from_value([["1", "0"], ["0"]], "m")
    assert excinfo.value.location == "m[1]"
    with pytest.raises(ParsingError):
        matrix_from_value([], "m")
    with pytest.raises(ParsingError):
        matrix_from_value([["1"]], "m", rank=2)


def test_metric_from_data():
    metric = metric_from_data({"h": [["1", "c"], ["c*", "1"]], "k_invariant": False})
    assert metric.h[0][1] == C
    assert not metric.invertible
    assert metric_from_data([["1"]]).rank == 1


def test_non_hermitian_metric_names_entry():
    """非厄米度量的错误消息指出违反 h_ij* = h_ji 的分量"""
    with pytest.raises(ValidationError) as excinfo:
        metric_from_data({"h": [["1", "a"], ["a", "1"]]})
    assert "h[0][1]" in str(excinfo.value)
    assert excinfo.value.details["entry"] == [0, 1]


@pytest.mark.parametrize("data", [
    {"g": [["1"]]},
    {"h": [["1"]], "extra": 1},
    {"h": [["1"]], "k_invariant": "yes"},
    "h",
])
def test_malformed_metric_data(data):
    with pytest.raises(ParsingError):
        metric_from_data(data)


def test_params_from_data():
    """参数可写成表达式字符串"""
    params = params_from_data({"tau1": "a", "f0": "c c*"})
    assert params.tau1 == A
    assert params.f0 == C * C_STAR
    assert params.mu2 == ZERO_ELEMENT
    assert params_from_data(None).tau4 == ZERO_ELEMENT
    with pytest.raises(ParsingError):
        params_from_data({"sigma": "1"})
    with pytest.raises(ParsingError):
        params_from_data(["tau1"])


def test_load_files(tmp_path):
    """从 JSON 文件读取度量、参数与元素"""
    metric_file = tmp_path / "metric.json"
    metric_file.write_text(json.dumps({"h": [["1", "0"], ["0", "2"]], "h_inv": [["1", "0"], ["0", "1/2"]]}),
                           encoding="utf-8")
    metric = load_metric(metric_file)
    assert metric.invertible
    assert metric.h_inv[1][1] == ONE_ELEMENT.scale(HALF)

    params_file = tmp_path / "params.json"
    params_file.write_text(json.dumps({"rho_zz": "3"}), encoding="utf-8")
    assert load_params(params_file).rho_zz == ONE_ELEMENT.scale(3)

    element_file = tmp_path / "element.json"
    element_file.write_text(json.dumps("a c"), encoding="utf-8")
    assert load_element(str(element_file)) == A * C
    assert load_element("a + c") == A + C
