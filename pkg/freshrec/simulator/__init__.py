# -*- coding: utf-8 -*-
"""
Synthetic users and the offline A/B harness
"""

from .users import (
    PositionBias,
    SyntheticUser,
    view_probability,
    synth_relevance,
    simulate_interaction,
    synthetic_inventory,
    sample_user,
)
from .stats import SignTestResult, paired_sign_test
from .experiment import (
    Variant,
    ExperimentConfig,
    SessionRow,
    VariantSummary,
    ExperimentReport,
    build_population,
    default_inventory,
    run_ab,
    run_experiment,
)

__all__ = [
    'PositionBias', 'SyntheticUser', 'view_probability', 'synth_relevance',
    'simulate_interaction', 'synthetic_inventory', 'sample_user',
    'SignTestResult', 'paired_sign_test',
    'Variant', 'ExperimentConfig', 'SessionRow', 'VariantSummary', 'ExperimentReport',
    'build_population', 'default_inventory', 'run_ab', 'run_experiment',
]
