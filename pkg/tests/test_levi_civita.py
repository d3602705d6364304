import sys
import os

# 动态添加项目根目录到sys.path，确保可以导入core模块
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import random

import pytest

from core.models.algebra_model import AlgebraElement, A, A_STAR, C, C_STAR, ONE_ELEMENT, ZERO_ELEMENT
from core.models.connection_model import HermitianMetric, LCParams, diagonal_matrix, to_matrix
from core.models.error_model import ParsingError, ValidationError
from core.models.podles_model import B_PLUS, B_ZERO
from core.models.scalar_model import HALF, I_UNIT, Q, Q_INV
from core.models.uq_model import ActionSide
from core.models.vector_field_model import INDICES
from core.services.connection_service import ConnectionService
from core.suite_manager import constant_metric, non_real_metric

PLUS, MINUS, Z = INDICES


def assert_levi_civita(service, connection):
    """无挠且在两层都与度量相容"""
    torsion = service.check_torsion_free(connection)
    assert torsion.ok, torsion.counterexamples
    compatibility = service.check_metric_compatibility(connection, "gamma-tilde")
    assert compatibility.ok, compatibility.counterexamples
    if connection.metric.invertible:
        module = service.check_metric_compatibility(connection, "module")
        assert module.ok, module.counterexamples


def test_delta_metric_matches_explicit_table(connection_service):
    """h = δ 时 27 个 Γ̃ 与显式表逐项一致"""
    connection = connection_service.levi_civita(HermitianMetric.identity(3))
    explicit = connection_service.diagonal_connection(ONE_ELEMENT)
    for index in INDICES:
        for i in range(3):
            for j in range(3):
                assert connection.tilde(index, i, j) == explicit.tilde(index, i, j), \
                    connection.symbol_label(index, i, j)


def test_delta_metric_sample_symbols(connection_service):
    """Γ̃_{+-,z} = -½q⁻² 与 Γ̃_{+z,+} = ½"""
    connection = connection_service.levi_civita(HermitianMetric.identity(3))
    assert connection.tilde(PLUS, 1, 2) == ONE_ELEMENT.scale(-HALF * Q_INV * Q_INV)
    assert connection.tilde(PLUS, 2, 0) == ONE_ELEMENT.scale(HALF)
    assert connection.tilde(PLUS, 0, 0).is_zero


def test_delta_metric_is_levi_civita(connection_service):
    assert_levi_civita(connection_service, connection_service.levi_civita(HermitianMetric.identity(3)))


def test_deformed_diagonal_metric(connection_service):
    """h = diag(1 + cc*, 1, 1) 的 Levi-Civita 联络"""
    metric = HermitianMetric(diagonal_matrix([ONE_ELEMENT + C * C_STAR, ONE_ELEMENT, ONE_ELEMENT]), None, True)
    assert_levi_civita(connection_service, connection_service.levi_civita(metric))


def test_constant_metric_with_parameters(connection_service):
    """常数度量配合非零自由参数仍然给出 Levi-Civita 联络"""
    params = LCParams(tau1=A, tau4=C, mu2=ONE_ELEMENT.scale(I_UNIT), gamma_pm=C_STAR,
                      rho_zz=ONE_ELEMENT.scale(3), f0=C * C_STAR)
    assert_levi_civita(connection_service, connection_service.levi_civita(constant_metric(), params))


def test_random_constant_metrics(connection_service):
    rng = random.Random(42)
    for _ in range(2):
        metric = HermitianMetric(connection_service.random_hermitian_matrix(rng, 3, max_len=0), None, True)
        connection = connection_service.levi_civita(metric, connection_service.random_lc_params(rng))
        assert_levi_civita(connection_service, connection)


def test_trivial_connection_has_torsion(connection_service):
    """∇⁰ 不是无挠的"""
    trivial = connection_service.trivial_connection(HermitianMetric.identity(3))
    assert not connection_service.check_torsion_free(trivial).ok


@pytest.mark.parametrize("side, expected", [
    (ActionSide.LEFT, A * A),
    (ActionSide.RIGHT, B_PLUS),
])
def test_reality_condition_is_enforced(derivation_service, side, expected):
    """实性条件不成立时构造被拒绝，错误中给出 H；左作用 H = q⁻²a²，右作用 H = q⁻²B₊"""
    service = ConnectionService(derivation_service, side)
    metric = non_real_metric(side)
    service.validate_metric(metric)
    residual = service.reality_residual(metric)
    assert residual == expected.scale(Q_INV * Q_INV)
    assert residual.star() != residual
    with pytest.raises(ValidationError) as exc:
        service.levi_civita(metric)
    assert AlgebraElement.from_json(exc.value.details["H"]) == residual


def test_rank_must_be_three(connection_service):
    with pytest.raises(ValidationError):
        connection_service.levi_civita(HermitianMetric.identity(2))


def test_non_hermitian_parameters_are_rejected(connection_service):
    """f₀ 与 ρ_zz 必须是厄米的"""
    with pytest.raises(ValidationError):
        connection_service.levi_civita(HermitianMetric.identity(3), LCParams(f0=A))
    with pytest.raises(ValidationError):
        connection_service.levi_civita(HermitianMetric.identity(3), LCParams(rho_zz=ONE_ELEMENT.scale(I_UNIT)))


def test_non_invariant_metric_is_rejected(connection_service):
    """Levi-Civita 构造要求 K 不变的度量"""
    metric = HermitianMetric(diagonal_matrix([ONE_ELEMENT, ONE_ELEMENT + C + C_STAR, ONE_ELEMENT]))
    with pytest.raises(ValidationError):
        connection_service.levi_civita(metric)


def test_general_torsion_is_experimental(connection_service):
    """一般形式的无挠检查带有实验性标记"""
    connection = connection_service.levi_civita(constant_metric())
    result = connection_service.check_torsion_general(connection)
    assert result.experimental
    assert result.instances == 9


def test_connection_json_lists_all_symbols(connection_service):
    """JSON 输出包含 27 个带标签的符号"""
    data = connection_service.levi_civita(HermitianMetric.identity(3)).to_json()
    assert data["side"] == "right"
    assert data["labels"] == ["+", "-", "z"]
    assert len(data["gamma_tilde"]) == 27
    assert data["gamma_tilde"][0]["symbol"] == "++,+"


def test_params_from_json():
    """未知参数名被拒绝"""
    params = LCParams.from_json({"tau1": ONE_ELEMENT.to_json()})
    assert params.tau1 == ONE_ELEMENT
    assert params.mu2 == ZERO_ELEMENT
    with pytest.raises(ParsingError):
        LCParams.from_json({"tau2": []})


NON_CONSTANT_PARAMS = LCParams(tau1=A, tau4=C, mu2=C_STAR, gamma_pm=A_STAR, rho_zz=B_ZERO, f0=B_ZERO)


def off_diagonal_metric(side):
    """h₊z = t·B₀、h₋z = B₀；右作用取 t = q²，左作用取 t = q⁴，使 H 为实"""
    t = Q ** 2 if side == ActionSide.RIGHT else Q ** 4
    n, zero = ONE_ELEMENT, ZERO_ELEMENT
    return HermitianMetric(to_matrix([[n, zero, B_ZERO.scale(t)], [zero, n, B_ZERO], [B_ZERO.scale(t), B_ZERO, n]]),
                           None, True)


def deformed_z_metric():
    return HermitianMetric(diagonal_matrix([ONE_ELEMENT, ONE_ELEMENT, ONE_ELEMENT + B_ZERO]), None, True)


@pytest.mark.parametrize("side", [ActionSide.LEFT, ActionSide.RIGHT])
@pytest.mark.parametrize("shape", ["off-diagonal", "deformed-z"])
def test_non_constant_metrics_on_both_sides(derivation_service, side, shape):
    """非常数度量与非常数参数下，两种作用方向都给出 Levi-Civita 联络"""
    service = ConnectionService(derivation_service, side)
    metric = off_diagonal_metric(side) if shape == "off-diagonal" else deformed_z_metric()
    residual = service.reality_residual(metric)
    assert residual.star() == residual
    assert_levi_civita(service, service.levi_civita(metric, NON_CONSTANT_PARAMS))


@pytest.mark.parametrize("side, factor", [
    (ActionSide.LEFT, -HALF * Q ** 2),
    (ActionSide.RIGHT, -HALF * Q ** 4),
])
def test_z_row_coefficient_depends_on_side(derivation_service, side, factor):
    """Γ̃_{zz,+} = c·X₋(h_zz)：左作用 c = -½q²，右作用 c = -½q⁴"""
    service = ConnectionService(derivation_service, side)
    connection = service.levi_civita(deformed_z_metric())
    expected = service.x(MINUS, B_ZERO).scale(factor)
    assert not expected.is_zero
    assert connection.tilde(Z, 2, 0) == expected


@pytest.mark.parametrize("side", [ActionSide.LEFT, ActionSide.RIGHT])
def test_parameters_are_twisted_only_on_the_left(derivation_service, side):
    """Γ̃_{+-,+} = τ₁（右作用）或 K(τ₁)（左作用）"""
    service = ConnectionService(derivation_service, side)
    connection = service.levi_civita(HermitianMetric.identity(3), LCParams(tau1=A))
    expected = service.k(1, A) if side == ActionSide.LEFT else A
    assert connection.tilde(PLUS, 1, 0) == expected
