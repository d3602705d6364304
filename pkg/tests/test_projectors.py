import sys
import os

# 动态添加项目根目录到sys.path，确保可以导入core模块
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import random

import pytest

from core.models.algebra_model import A, A_STAR, C, C_STAR, ONE_ELEMENT, ZERO_ELEMENT
from core.models.connection_model import HermitianMetric, diagonal_matrix, to_matrix
from core.models.error_model import ValidationError
from core.models.podles_model import bundle_weights, bundle_words
from core.models.scalar_model import ONE, q_power
from core.models.uq_model import ActionSide
from core.models.vector_field_model import FieldIndex
from core.services.connection_service import ConnectionService
from core.services.podles_service import PodlesService


def test_bundle_weights():
    """β_{1μ} = (1, q²)，α_{1μ} = (1, 1)"""
    assert bundle_weights(1) == (ONE, q_power(2))
    assert bundle_weights(-1) == (ONE, ONE)
    assert bundle_weights(0) == (ONE,)
    assert len(bundle_weights(3)) == 4


def test_bundle_words():
    """Ψ 的生成元 (c*)^μ (a*)^(n-μ)，Φ 的生成元 c^(|n|-μ) a^μ"""
    assert bundle_words(1) == (A_STAR, C_STAR)
    assert bundle_words(-1) == (C, A)
    assert bundle_words(2)[1] == C_STAR * A_STAR


def test_trivial_bundle_projector(podles_service):
    """p_0 = [1]"""
    projector = podles_service.build_projector(0)
    assert projector.rank == 1
    assert projector.matrix == ((ONE_ELEMENT,),)


@pytest.mark.parametrize("n", [-2, -1, 1, 2])
def test_projector_structure(podles_service, n):
    """单位分解、幂等、厄米、矩阵元次数为 0"""
    projector = podles_service.build_projector(n)
    assert projector.rank == abs(n) + 1
    result = podles_service.check_projector(projector)
    assert result.ok, result.counterexamples


@pytest.mark.parametrize("n", [-1, 0, 1, 2])
def test_sigma_eigenvalues(podles_service, n):
    """生成元与矩阵元的右 K 本征值，以及 σ̂ 的相容性"""
    result = podles_service.sigma_eigen_check(n)
    assert result.ok, result.counterexamples


def test_partition_of_unity(podles_service):
    projector = podles_service.build_projector(2)
    assert podles_service.partition_of_unity(projector) == ONE_ELEMENT
    assert podles_service.is_idempotent(projector)


@pytest.mark.parametrize("n", [-1, 1])
def test_kernel_lemma(podles_service, n):
    """m = v - p(v) 落在 p 与 φ⁰ 的核中"""
    projector = podles_service.build_projector(n)
    result = podles_service.check_kernel_lemma(projector, random.Random(0), 2)
    assert result.ok, result.counterexamples
    assert result.instances == 4


def test_projector_module_weights(podles_service):
    """σ̂⁰ 的权重为 |n| - 2μ"""
    assert podles_service.build_projector(1).module.weights == (1, -1)
    assert podles_service.build_projector(-2).module.weights == (2, 0, -2)


def test_projector_json(podles_service):
    data = podles_service.build_projector(1).to_json()
    assert data["n"] == 1
    assert len(data["matrix"]) == 2
    assert data["radical_exponents"][0][1]["exponent"] == "1/2"


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
def test_bundle_connection_is_compatible(podles_service, n):
    """M_n 上的投影联络与度量相容"""
    bundle = podles_service.bundle_connection(n)
    rank = abs(n) + 1
    assert len(bundle.christoffel) == 3 * rank * rank
    result = podles_service.check_bundle_connection(bundle)
    assert result.ok, result.counterexamples


@pytest.mark.parametrize("n", [-1, 1, 2])
def test_bundle_christoffel_symbols_lie_in_podles_sphere(podles_service, n):
    """右作用下 M_n 上的 Christoffel 符号都属于 S²_q"""
    bundle = podles_service.bundle_connection(n)
    assert bundle.connection.side == ActionSide.RIGHT
    for key, entry in bundle.christoffel.items():
        assert entry.value.u1_degree() == 0, key
    assert any(not entry.value.is_zero for entry in bundle.christoffel.values())


def test_bundle_service_ignores_left_connection_side(derivation_service, calculus_service):
    """联络服务配置为左作用时线丛仍用右作用构造"""
    left = ConnectionService(derivation_service, ActionSide.LEFT)
    service = PodlesService(derivation_service, calculus_service, left)
    assert service.bundle_service.side == ActionSide.RIGHT
    bundle = service.bundle_connection(2)
    result = service.check_bundle_connection(bundle)
    assert result.ok, result.counterexamples


def test_bundle_connection_with_parameters(podles_service):
    """带对角参数的联络仍然相容"""
    alpha = diagonal_matrix([ONE_ELEMENT.scale(2), C * C_STAR])
    rho = diagonal_matrix([ZERO_ELEMENT, ONE_ELEMENT])
    bundle = podles_service.bundle_connection(1, alpha=alpha, rho=rho)
    result = podles_service.check_bundle_connection(bundle)
    assert result.ok, result.counterexamples


def test_scaled_metric_keeps_projection_orthogonal(podles_service):
    """度量 2δ 下投影仍然正交"""
    metric = HermitianMetric(diagonal_matrix([ONE_ELEMENT.scale(2)] * 2), None, True)
    bundle = podles_service.bundle_connection(1, metric)
    assert podles_service.check_bundle_connection(bundle).ok


def test_unequal_diagonal_metric_breaks_orthogonality(podles_service):
    """diag(2, 3) 下投影不再正交"""
    metric = HermitianMetric(diagonal_matrix([ONE_ELEMENT.scale(2), ONE_ELEMENT.scale(3)]), None, True)
    with pytest.raises(ValidationError):
        podles_service.bundle_connection(1, metric)


@pytest.mark.parametrize("metric", [
    HermitianMetric(to_matrix([[ONE_ELEMENT, A], [A_STAR, ONE_ELEMENT]]), None, True),
    HermitianMetric(diagonal_matrix([C * C_STAR, ONE_ELEMENT]), None, True),
    HermitianMetric(diagonal_matrix([ZERO_ELEMENT, ONE_ELEMENT]), None, True),
    HermitianMetric.identity(3),
], ids=["off-diagonal", "non-constant", "degenerate", "wrong-rank"])
def test_bundle_metric_restrictions(podles_service, metric):
    """线丛度量必须是阶数正确的对角非零实常数矩阵"""
    with pytest.raises(ValidationError):
        podles_service.bundle_connection(1, metric)


def test_off_diagonal_parameters_are_rejected(podles_service):
    alpha = to_matrix([[ZERO_ELEMENT, ONE_ELEMENT], [ONE_ELEMENT, ZERO_ELEMENT]])
    with pytest.raises(ValidationError):
        podles_service.bundle_connection(1, alpha=alpha)


def test_bundle_connection_json(podles_service):
    """Christoffel 表按 (a, μ, κ) 排序输出"""
    data = podles_service.bundle_connection(-1).to_json()
    assert data["n"] == -1
    assert data["side"] == "right"
    assert [entry["field"] for entry in data["christoffel"][:4]] == ["X+"] * 4
    entry = podles_service.bundle_connection(1).entry(FieldIndex.Z, 0, 0)
    assert entry is not None
    assert entry.radicand == ONE
