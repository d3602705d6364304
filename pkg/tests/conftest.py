import sys
import os

# 动态添加项目根目录到sys.path，确保可以导入core模块
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import pytest
from hypothesis import settings, HealthCheck

from core.models.config import RandomSamples, SuiteConfig
from core.services.action_service import ActionService
from core.services.calculus_service import CalculusService
from core.services.connection_service import ConnectionService
from core.services.derivation_service import DerivationService
from core.services.podles_service import PodlesService
from core.services.suite_service import SuiteService

# 精确有理函数运算较慢，关闭时限
settings.register_profile("qsphere", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qsphere")


@pytest.fixture(scope="session")
def action_service():
    return ActionService()


@pytest.fixture(scope="session")
def derivation_service(action_service):
    return DerivationService(action_service)


@pytest.fixture(scope="session")
def calculus_service(derivation_service):
    return CalculusService(derivation_service)


@pytest.fixture(scope="session")
def connection_service(derivation_service):
    return ConnectionService(derivation_service)


@pytest.fixture(scope="session")
def podles_service(derivation_service, calculus_service, connection_service):
    return PodlesService(derivation_service, calculus_service, connection_service)


@pytest.fixture
def suite_service(action_service, derivation_service, calculus_service, connection_service, podles_service):
    return SuiteService(action_service, derivation_service, calculus_service, connection_service, podles_service)


@pytest.fixture
def small_samples():
    """小样本数，保证套件测试的耗时可控"""
    return RandomSamples(associativity=10, metric_connections=2, perturbations=1, levi_civita=1, kernel=1)


@pytest.fixture
def make_config(small_samples):
    """构造运行配置的工厂"""
    def _make(suites, **kwargs):
        kwargs.setdefault("max_degree", 1)
        kwargs.setdefault("bundle_range", 1)
        kwargs.setdefault("samples", small_samples)
        kwargs.setdefault("known_discrepancies", ("podles-rvf.relation", "podles-exd.lemma"))
        return SuiteConfig(suites=tuple(suites), **kwargs)
    return _make
