#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
配置加载测试
"""

import os
import sys
import tempfile
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../..'))

from freshrec.core.errors import ConfigError, IoError
from freshrec.feedback.policies import DecayVariant
from freshrec.utils.config import (
    CONFIG_ENV_VAR,
    Settings,
    clear_cache,
    load_config,
    load_settings,
)


def write_config(tmpdir, text):
    path = Path(tmpdir) / 'freshrec.yaml'
    path.write_text(text, encoding='utf-8')
    return path


def test_load_default_config():
    """默认配置文件包含所有模块块"""
    clear_cache()
    config = load_config()
    for block in ['PenaltyConfig', 'DecayPolicy', 'ShuffleConfig', 'MetricConfig',
                  'ExperimentConfig', 'Serving', 'Ingestion']:
        assert block in config, f"missing block {block}"

    settings = load_settings()
    assert settings.penalty.dwell_coefficient == 0.01
    assert settings.decay.variant == DecayVariant.FULL_RESET_BY_SERVES
    assert settings.metric.window_capacity == 5
    assert settings.ingestion.strict is True
    assert load_config() is config


def test_missing_blocks_use_defaults():
    with tempfile.TemporaryDirectory() as tmpdir:
        path = write_config(tmpdir, "MetricConfig:\n  window_capacity: 3\n")
        settings = load_settings(path)
        assert settings.metric.window_capacity == 3
        assert settings.shuffle.partition_length == 5
        assert settings.serving.t == 10


def test_invalid_config_rejected():
    """未知块名或越界参数 → ConfigError"""
    with tempfile.TemporaryDirectory() as tmpdir:
        with pytest.raises(ConfigError):
            load_settings(write_config(tmpdir, "Unknown:\n  a: 1\n"))
        with pytest.raises(ConfigError):
            load_settings(write_config(tmpdir, "MetricConfig:\n  freshness_threshold: 1.5\n"))
        with pytest.raises(ConfigError):
            load_settings(write_config(tmpdir, "DecayPolicy:\n  variant: FullResetByServes\n  parameter: 2.5\n"))
        with pytest.raises(ConfigError):
            load_settings(write_config(tmpdir, "- just\n- a list\n"))
        binary = Path(tmpdir) / 'binary.yaml'
        binary.write_bytes(b'MetricConfig:\n  window_capacity: \xff\n')
        with pytest.raises(ConfigError):
            load_settings(binary)
        with pytest.raises(IoError):
            load_settings(Path(tmpdir) / 'missing.yaml')


def test_env_override():
    with tempfile.TemporaryDirectory() as tmpdir:
        path = write_config(tmpdir, "ShuffleConfig:\n  partition_length: 2\n")
        previous = os.environ.get(CONFIG_ENV_VAR)
        os.environ[CONFIG_ENV_VAR] = str(path)
        try:
            assert load_settings(force_reload=True).shuffle.partition_length == 2
        finally:
            if previous is None:
                del os.environ[CONFIG_ENV_VAR]
            else:
                os.environ[CONFIG_ENV_VAR] = previous
            clear_cache()


def test_experiment_config_merges_blocks():
    """模拟参数从顶层块取嵌套配置，t 未显式设置时取自 Serving"""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = write_config(tmpdir, (
            "Serving:\n  t: 7\n"
            "MetricConfig:\n  freshness_threshold: 0.8\n"
            "ExperimentConfig:\n  users: 4\n"
        ))
        experiment = load_settings(path).experiment_config()
        assert experiment.t == 7
        assert experiment.users == 4
        assert experiment.metric.freshness_threshold == 0.8

        path = write_config(tmpdir, "Serving:\n  t: 7\nExperimentConfig:\n  t: 3\n")
        assert load_settings(path).experiment_config().t == 3


def test_seed_override():
    settings = Settings().with_seed(99)
    assert settings.shuffle.rng_seed == 99
    assert settings.experiment.rng_seed == 99
    assert Settings().with_seed(None) == Settings()
    with pytest.raises(ConfigError):
        Settings().with_seed(-1)


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-q']))
