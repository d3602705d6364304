import sys
import os

# 动态添加项目根目录到sys.path，确保可以导入core模块
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import pytest

from core.containers import create_container
from core.events import event_bus, EventTypes
from core.models.config import OutputFormat, SuiteName
from core.models.error_model import ValidationError
from core.models.uq_model import ActionSide
from core.services.config_service import ConfigService


def test_defaults():
    """没有配置时使用代码内默认值"""
    service = ConfigService()
    assert service.get_suites() == tuple(SuiteName)
    assert service.get_max_degree() == 4
    assert service.get_connection_side() == ActionSide.RIGHT
    assert service.get_output_format() == OutputFormat.TEXT
    assert service.get_known_discrepancies() == ("podles-rvf.relation", "podles-exd.lemma")


def test_parse_suites_keeps_fixed_order():
    """输出按固定的套件顺序排列，all 展开为全部"""
    assert ConfigService.parse_suites(["torsion", "algebra"]) == (SuiteName.ALGEBRA, SuiteName.TORSION)
    assert ConfigService.parse_suites("pairing") == (SuiteName.PAIRING,)
    assert ConfigService.parse_suites(["pairing", "all"]) == tuple(SuiteName)
    with pytest.raises(ValidationError):
        ConfigService.parse_suites(["algebra", "geometry"])


def test_partial_config_is_merged():
    """部分配置与默认值逐层合并"""
    service = ConfigService({"verification": {"max_degree": 2}, "connections": {"side": "left"}})
    assert service.get_max_degree() == 2
    assert service.get_bundle_range() == 4
    assert service.get_connection_side() == ActionSide.LEFT


@pytest.mark.parametrize("config", [
    {"verification": {"max_degree": -1}},
    {"verification": {"kernel_samples": "3"}},
    {"verification": {"seed_samples": 1, "associativity_samples": True}},
])
def test_invalid_counts(config):
    with pytest.raises(ValidationError):
        ConfigService(config).resolve()


def test_invalid_side_and_format():
    with pytest.raises(ValidationError):
        ConfigService({"connections": {"side": "up"}}).get_connection_side()
    with pytest.raises(ValidationError):
        ConfigService({"output": {"format": "xml"}}).get_output_format()


def test_resolve_with_overrides():
    """命令行参数优先，值为 None 的项被忽略"""
    suite_config = ConfigService().resolve({
        "suites": ["calculus"], "max_degree": 1, "side": "left", "seed": None, "output_format": "json",
    })
    assert suite_config.suites == (SuiteName.CALCULUS,)
    assert suite_config.max_degree == 1
    assert suite_config.side == ActionSide.LEFT
    assert suite_config.seed == 20240229
    assert suite_config.output_format == OutputFormat.JSON
    assert suite_config.to_dict()["suites"] == ["calculus"]


def test_resolve_rejects_negative_override():
    with pytest.raises(ValidationError):
        ConfigService().resolve({"bundle_range": -2})


def test_setter_publishes_event():
    """修改配置时发布 ConfigChangedEvent"""
    received = []
    handler = event_bus.subscribe(EventTypes.CONFIG_CHANGED, received.append)
    try:
        service = ConfigService()
        service.set_max_degree(3)
    finally:
        event_bus.unsubscribe(EventTypes.CONFIG_CHANGED, handler)
    assert service.get_max_degree() == 3
    assert received[-1].key == "verification.max_degree"
    assert received[-1].value == 3
    assert received[-1].source == "config_service"


def test_log_settings():
    settings = ConfigService({"logging": {"console_level": "DEBUG"}}).get_log_settings()
    assert settings["console_level"] == "DEBUG"
    assert settings["log_filename"] == "qsphere.log"


def test_container_loads_yaml(tmp_path):
    """容器读取 YAML 配置并据此构造联络服务"""
    config_file = tmp_path / "config.yaml"
    config_file.write_text("verification:\n  max_degree: 2\nconnections:\n  side: left\n", encoding="utf-8")
    container = create_container(str(config_file))
    assert container.config_service().get_max_degree() == 2
    assert container.connection_service().side == ActionSide.LEFT
    assert container.podles_service().bundle_service.side == ActionSide.RIGHT
    assert container.config_service().get_bundle_range() == 4
