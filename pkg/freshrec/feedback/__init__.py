# -*- coding: utf-8 -*-
"""
NegativeWeights feedback loop
"""

from .policies import DecayPolicy, DecayVariant, PenaltyConfig, ServingConfig
from .engine import (
    combine_scores,
    rank_candidates,
    serve_top_t,
    build_dwell_array,
    apply_penalty,
    apply_decay,
    record_suppressions,
    commit_serve,
    feedback_serve_cycle,
    ingest_batch,
)

__all__ = [
    'DecayPolicy', 'DecayVariant', 'PenaltyConfig', 'ServingConfig',
    'combine_scores', 'rank_candidates', 'serve_top_t', 'build_dwell_array',
    'apply_penalty', 'apply_decay', 'record_suppressions', 'commit_serve',
    'feedback_serve_cycle', 'ingest_batch',
]
