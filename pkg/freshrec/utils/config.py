# -*- coding: utf-8 -*-
"""
Configuration loading

Reads config/freshrec.yaml (or $FRESHREC_CONFIG) and validates it into typed
blocks named after the types they configure.
"""

import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError as PydanticValidationError

from ..core.errors import ConfigError, IoError
from ..feedback.policies import DecayPolicy, PenaltyConfig, ServingConfig
from ..metric.freshness import MetricConfig
from ..shuffle.shuffler import ShuffleConfig
from ..simulator.experiment import ExperimentConfig

CONFIG_ENV_VAR = "FRESHREC_CONFIG"

# Cache for loaded configuration
_config_cache: Optional[Dict[str, Any]] = None


class IngestionConfig(BaseModel):
    """事件日志解析模式"""

    model_config = ConfigDict(extra='forbid', frozen=True)

    strict: bool = Field(True, description="Reject unknown fields and malformed lines")


class Settings(BaseModel):
    """整个配置文件的类型化视图"""

    model_config = ConfigDict(extra='forbid', frozen=True, populate_by_name=True)

    penalty: PenaltyConfig = Field(default_factory=PenaltyConfig, alias='PenaltyConfig')
    decay: DecayPolicy = Field(default_factory=DecayPolicy, alias='DecayPolicy')
    shuffle: ShuffleConfig = Field(default_factory=ShuffleConfig, alias='ShuffleConfig')
    metric: MetricConfig = Field(default_factory=MetricConfig, alias='MetricConfig')
    experiment: ExperimentConfig = Field(default_factory=ExperimentConfig, alias='ExperimentConfig')
    serving: ServingConfig = Field(default_factory=ServingConfig, alias='Serving')
    ingestion: IngestionConfig = Field(default_factory=IngestionConfig, alias='Ingestion')

    def experiment_config(self) -> ExperimentConfig:
        """模拟参数：嵌套的模块配置取自顶层块，t 和 exclude_prioritized 未显式设置时取自 Serving"""
        update: Dict[str, Any] = {
            'penalty': self.penalty,
            'decay': self.decay,
            'shuffle': self.shuffle,
            'metric': self.metric,
        }
        explicit = self.experiment.model_fields_set
        if 't' not in explicit:
            update['t'] = self.serving.t
        if 'exclude_prioritized' not in explicit:
            update['exclude_prioritized'] = self.serving.exclude_prioritized
        return self.experiment.model_copy(update=update)

    def with_seed(self, seed: Optional[int]) -> 'Settings':
        """用命令行种子覆盖 ShuffleConfig 与 ExperimentConfig 的 rng_seed"""
        if seed is None:
            return self
        if not 0 <= seed < 2 ** 64:
            raise ConfigError(f"seed must lie in [0, 2**64), got {seed}")
        return self.model_copy(update={
            'shuffle': self.shuffle.model_copy(update={'rng_seed': seed}),
            'experiment': self.experiment.model_copy(update={'rng_seed': seed}),
        })


def default_config_path() -> Path:
    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        return Path(env_path)
    project_root = Path(__file__).parent.parent.parent
    return project_root / "config" / "freshrec.yaml"


def load_config(config_path: Optional[Union[str, Path]] = None, force_reload: bool = False) -> Dict[str, Any]:
    """
    Load raw configuration from file

    Args:
        config_path: Path to config file (default: $FRESHREC_CONFIG or config/freshrec.yaml)
        force_reload: Force reload config even if cached

    Returns:
        Configuration dict (empty when the default file is missing)
    """
    global _config_cache

    if _config_cache is not None and not force_reload and config_path is None:
        return _config_cache

    explicit = config_path is not None
    path = Path(config_path) if explicit else default_config_path()

    if not path.exists():
        if explicit:
            raise IoError(f"config file not found: {path}")
        data: Dict[str, Any] = {}
    else:
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f) or {}
        except OSError as e:
            raise IoError(f"cannot read config {path}: {e.strerror or e}") from None
        except UnicodeDecodeError as e:
            raise ConfigError(f"{path}: invalid UTF-8 at byte {e.start}") from None
        except yaml.YAMLError as e:
            raise ConfigError(f"{path}: invalid YAML: {e}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: top level must be a mapping of config blocks")

    if not explicit:
        _config_cache = data
    return data


def describe_errors(error: PydanticValidationError) -> str:
    """把 pydantic 错误压成一行：字段路径: 原因"""
    return '; '.join(
        f"{'.'.join(str(p) for p in item.get('loc', ()))}: {item.get('msg', 'invalid')}"
        for item in error.errors()
    )


def load_settings(config_path: Optional[Union[str, Path]] = None, force_reload: bool = False) -> Settings:
    """加载并校验配置；未知块名或越界参数抛出 ConfigError"""
    data = load_config(config_path, force_reload=force_reload)
    try:
        return Settings.model_validate(data)
    except PydanticValidationError as e:
        raise ConfigError(f"invalid configuration: {describe_errors(e)}") from None


def clear_cache():
    """Clear the config cache"""
    global _config_cache
    _config_cache = None
