#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
依赖注入容器 - 负责项目中所有依赖关系的管理
"""

import os

from dependency_injector import containers, providers

from core.events import event_bus
from core.models.config import DEFAULT_CONFIG, DEFAULT_CONFIG_FILE
from core.services.action_service import ActionService
from core.services.calculus_service import CalculusService
from core.services.config_service import ConfigService
from core.services.connection_service import ConnectionService
from core.services.derivation_service import DerivationService
from core.services.error_handling_service import ErrorHandlingService
from core.services.podles_service import PodlesService
from core.services.suite_service import SuiteService
from core.utils.file_utils import get_resource_path, read_yaml_file


class AppContainer(containers.DeclarativeContainer):
    """应用程序容器 - 管理所有服务和配置的依赖注入"""

    # 定义配置提供者，代码内默认值打底
    config = providers.Configuration(name="config")
    config.from_dict(DEFAULT_CONFIG)

    # 定义事件总线（单例）
    event_bus_instance = providers.Object(event_bus)

    # 定义错误处理服务
    error_handling_service = providers.Singleton(
        ErrorHandlingService
    )

    # 定义配置服务 - 依赖配置提供者
    config_service = providers.Singleton(
        ConfigService,
        config=config
    )

    # 定义作用服务
    action_service = providers.Singleton(
        ActionService
    )

    # 定义导数服务 - 依赖作用服务
    derivation_service = providers.Singleton(
        DerivationService,
        action_service=action_service
    )

    # 定义微分演算服务 - 依赖导数服务
    calculus_service = providers.Singleton(
        CalculusService,
        derivation_service=derivation_service
    )

    # 定义联络服务 - 作用方向来自配置
    connection_service = providers.Singleton(
        ConnectionService,
        derivation_service=derivation_service,
        side=config.connections.side
    )

    # 定义 Podleś 服务 - 依赖导数、微分演算和联络服务
    podles_service = providers.Singleton(
        PodlesService,
        derivation_service=derivation_service,
        calculus_service=calculus_service,
        connection_service=connection_service
    )

    # 定义套件服务 - 每次运行新建
    suite_service = providers.Factory(
        SuiteService,
        action_service=action_service,
        derivation_service=derivation_service,
        calculus_service=calculus_service,
        connection_service=connection_service,
        podles_service=podles_service,
        error_service=error_handling_service
    )


def create_container(config_file: str = None) -> AppContainer:
    """创建容器并加载 YAML 配置

    Args:
        config_file: 配置文件路径，为空时使用随包提供的 config/config.yaml

    Returns:
        AppContainer: 已加载配置的容器
    """
    container = AppContainer()
    path = config_file or get_resource_path(DEFAULT_CONFIG_FILE)
    if config_file is not None or os.path.isfile(path):
        container.config.from_dict(read_yaml_file(path))
    return container
