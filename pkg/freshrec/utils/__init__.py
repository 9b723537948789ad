# -*- coding: utf-8 -*-
"""
Utility modules
"""

from .config import (
    CONFIG_ENV_VAR,
    IngestionConfig,
    Settings,
    load_config,
    load_settings,
    clear_cache,
)
from .log import setup_logging

__all__ = [
    'CONFIG_ENV_VAR', 'IngestionConfig', 'Settings', 'load_config', 'load_settings',
    'clear_cache', 'setup_logging',
]
