# -*- coding: utf-8 -*-
"""
Freshness metric and metric-driven re-ranking
"""

from .freshness import (
    ReplacementRule,
    WindowMode,
    MetricConfig,
    compute_freshness,
    push_window,
    HistoryState,
    advance_history,
    MetricFeedbackResult,
    metric_feedback_recommend,
    MetricRecord,
    FreshnessTracker,
)

__all__ = [
    'ReplacementRule', 'WindowMode', 'MetricConfig', 'compute_freshness', 'push_window',
    'HistoryState', 'advance_history', 'MetricFeedbackResult', 'metric_feedback_recommend',
    'MetricRecord', 'FreshnessTracker',
]
