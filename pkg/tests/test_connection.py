import sys
import os

# 动态添加项目根目录到sys.path，确保可以导入core模块
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import random

import pytest

from core.models.algebra_model import A, C, C_STAR, ONE_ELEMENT, ZERO_ELEMENT, basis_elements
from core.models.connection_model import (
    HermitianMetric, SigmaModule, diagonal_matrix, identity_matrix, is_hermitian, matmul, to_matrix, unit_vector,
)
from core.models.error_model import ValidationError
from core.models.scalar_model import I_UNIT
from core.models.uq_model import ActionSide
from core.models.vector_field_model import BasisField, FieldIndex, VectorField
from core.services.connection_service import ConnectionService
from core.suite_manager import constant_metric, perturb


def random_connection(service, metric, seed=7):
    rng = random.Random(seed)
    matrices = [service.random_hermitian_matrix(rng, metric.rank) for _ in range(3)]
    return service.metric_connection_from_params(metric, *matrices)


def test_constant_metric_inverse():
    """常数度量的逆矩阵是精确的"""
    metric = constant_metric()
    assert is_hermitian(metric.h)
    assert matmul(metric.h, metric.h_inv) == identity_matrix(3)


def test_hermitian_form(connection_service):
    """h(m₁, m₂) = m₁^i h_ij (m₂^j)*"""
    metric = HermitianMetric.identity(2)
    m1 = (A, ZERO_ELEMENT)
    m2 = (C, ONE_ELEMENT)
    assert connection_service.hermitian_form(metric, m1, m2) == A * C_STAR
    with pytest.raises(ValidationError):
        connection_service.hermitian_form(metric, (A,), m2)


def test_validate_metric_rejects_wrong_inverse(connection_service):
    """逆矩阵不正确时报错"""
    bad = HermitianMetric(identity_matrix(2), diagonal_matrix([ONE_ELEMENT.scale(2), ONE_ELEMENT]))
    with pytest.raises(ValidationError):
        connection_service.validate_metric(bad)


def test_validate_metric_rejects_non_invariant_entries(connection_service):
    """声明 K 不变但分量 c 不是 K 不变的"""
    metric = HermitianMetric(diagonal_matrix([C + C_STAR, ONE_ELEMENT]), None, True)
    with pytest.raises(ValidationError):
        connection_service.validate_metric(metric)


@pytest.mark.parametrize("side", [ActionSide.LEFT, ActionSide.RIGHT])
@pytest.mark.parametrize("metric", [HermitianMetric.identity(3), constant_metric()], ids=["delta", "constant"])
def test_parameterised_connection_is_compatible(derivation_service, side, metric):
    """参数化联络在 Γ̃ 层与模层都与度量相容"""
    service = ConnectionService(derivation_service, side)
    connection = random_connection(service, metric)
    assert service.check_metric_compatibility(connection, "gamma-tilde").ok
    result = service.check_metric_compatibility(connection, "module")
    assert result.ok, result.counterexamples


def test_right_parametrisation_requires_invariant_metric(connection_service):
    """右作用下参数不带 K 扭曲，度量必须 K 不变"""
    metric = HermitianMetric(diagonal_matrix([ONE_ELEMENT + C + C_STAR, ONE_ELEMENT]), None, False)
    zero = diagonal_matrix([ZERO_ELEMENT, ZERO_ELEMENT])
    with pytest.raises(ValidationError):
        connection_service.metric_connection_from_params(metric, zero, zero, zero)
    left = ConnectionService(connection_service.derivation_service, ActionSide.LEFT)
    connection = left.metric_connection_from_params(metric, zero, zero, zero)
    assert left.check_metric_compatibility(connection, "gamma-tilde").ok


def test_right_parametrisation_respects_module_weights(connection_service):
    """右作用下参数不能连接 K 权重不同的基元素"""
    module = SigmaModule.free(2, (1, -1))
    metric = HermitianMetric(identity_matrix(2), identity_matrix(2), True)
    zero = diagonal_matrix([ZERO_ELEMENT, ZERO_ELEMENT])
    mixing = to_matrix([[ZERO_ELEMENT, ONE_ELEMENT], [ONE_ELEMENT, ZERO_ELEMENT]])
    with pytest.raises(ValidationError) as exc:
        connection_service.metric_connection_from_params(metric, mixing, zero, zero, module)
    assert exc.value.details["entry"] == [0, 1]
    connection = connection_service.metric_connection_from_params(metric, diagonal_matrix([A + A.star(), C * C_STAR]),
                                                                  zero, zero, module)
    for level in ("gamma-tilde", "module"):
        result = connection_service.check_metric_compatibility(connection, level)
        assert result.ok, result.counterexamples


def test_non_invertible_metric_only_checks_gamma_tilde(connection_service):
    """不可逆度量只产生 Γ̃ 表"""
    metric = HermitianMetric(diagonal_matrix([C * C_STAR, ONE_ELEMENT]), None, False)
    connection = random_connection(connection_service, metric)
    assert connection.gamma is None
    assert connection_service.check_metric_compatibility(connection, "gamma-tilde").ok
    with pytest.raises(ValidationError):
        connection_service.apply_connection(connection, BasisField.X_PLUS, unit_vector(2, 0))


def test_non_hermitian_parameters_are_rejected(connection_service):
    metric = HermitianMetric.identity(2)
    alpha = to_matrix([[ZERO_ELEMENT, A], [ZERO_ELEMENT, ZERO_ELEMENT]])
    zero = diagonal_matrix([ZERO_ELEMENT, ZERO_ELEMENT])
    with pytest.raises(ValidationError):
        connection_service.metric_connection_from_params(metric, alpha, zero, zero)


def test_perturbation_is_detected(connection_service):
    """随机扰动一个 Γ̃ 后相容性检查失败"""
    rng = random.Random(3)
    connection = random_connection(connection_service, HermitianMetric.identity(3))
    perturbed = perturb(connection, rng)
    assert perturbed.gamma is None
    assert not connection_service.check_metric_compatibility(perturbed, "gamma-tilde").ok


def test_unknown_compatibility_level(connection_service):
    connection = connection_service.trivial_connection(HermitianMetric.identity(3))
    with pytest.raises(ValidationError):
        connection_service.check_metric_compatibility(connection, "tensor")


def test_gamma_round_trip(connection_service):
    """Γ → Γ̃ → Γ 在可逆度量下还原"""
    metric = constant_metric()
    connection = random_connection(connection_service, metric, seed=11)
    module = SigmaModule.free(3)
    gamma = connection_service.gamma_from_tilde(connection.gamma_tilde, metric, module)
    assert connection_service.tilde_from_gamma(gamma, metric, module) == connection.gamma_tilde


@pytest.mark.parametrize("side", [ActionSide.LEFT, ActionSide.RIGHT])
def test_difference_of_connections_is_tensorial(derivation_service, side):
    """两个相容联络之差对模变量是（扭曲）线性的"""
    service = ConnectionService(derivation_service, side)
    metric = HermitianMetric.identity(3)
    first = random_connection(service, metric, seed=1)
    second = random_connection(service, metric, seed=2)
    vectors = [unit_vector(3, i) for i in range(3)]
    result = service.check_connection_difference(first, second, vectors, basis_elements(1))
    assert result.ok, result.counterexamples


def test_connection_is_linear_in_vector_field(connection_service):
    """∇_{X+Y} = ∇_X + ∇_Y"""
    connection = random_connection(connection_service, HermitianMetric.identity(3))
    m = (A, ZERO_ELEMENT, C)
    field = VectorField.basis(BasisField.X_PLUS) + VectorField.basis(BasisField.X_Z_STAR)
    combined = connection_service.apply_connection(connection, field, m)
    separate = [x + y for x, y in zip(connection_service.apply_connection(connection, BasisField.X_PLUS, m),
                                      connection_service.apply_connection(connection, BasisField.X_Z_STAR, m))]
    assert list(combined) == separate


def test_trivial_connection_differentiates_coordinates(connection_service):
    """∇⁰_{X₊}(f e₀) = X₊(f) e₀"""
    connection = connection_service.trivial_connection(HermitianMetric.identity(2))
    image = connection_service.apply_connection(connection, BasisField.X_PLUS, (C, ZERO_ELEMENT))
    assert image == (connection_service.x(FieldIndex.PLUS, C), ZERO_ELEMENT)


def test_projection_must_be_idempotent(connection_service):
    """非幂等矩阵不能作为投影"""
    connection = connection_service.trivial_connection(HermitianMetric.identity(2))
    with pytest.raises(ValidationError):
        connection_service.project_connection(connection, diagonal_matrix([ONE_ELEMENT.scale(2), ZERO_ELEMENT]))


def test_projection_must_be_orthogonal(connection_service):
    """幂等但非正交的投影被拒绝，除非显式放宽"""
    connection = connection_service.trivial_connection(HermitianMetric.identity(2))
    skew = to_matrix([[ONE_ELEMENT, ONE_ELEMENT.scale(I_UNIT)], [ZERO_ELEMENT, ZERO_ELEMENT]])
    with pytest.raises(ValidationError):
        connection_service.project_connection(connection, skew)
    projected = connection_service.project_connection(connection, skew, require_orthogonal=False)
    assert projected.projector == skew


def test_service_side_defaults_to_right():
    """联络服务缺省使用右作用，左作用需显式指定"""
    assert ConnectionService(None).side == ActionSide.RIGHT
    assert ConnectionService(None, "left").side == ActionSide.LEFT
