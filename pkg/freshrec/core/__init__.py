# -*- coding: utf-8 -*-
"""
Core domain model shared by every other module
"""

from .errors import (
    FreshnessError,
    ValidationError,
    IoError,
    ParseError,
)
from .models import (
    BASELINE_WEIGHT,
    NEVER,
    Product,
    Inventory,
    build_inventory,
    ScoreKind,
    ScoreVector,
    EventKind,
    EventRecord,
    RecWindow,
    UserSessionState,
    new_user_state,
    RecommendationList,
)

__all__ = [
    'FreshnessError', 'ValidationError', 'IoError', 'ParseError',
    'BASELINE_WEIGHT', 'NEVER',
    'Product', 'Inventory', 'build_inventory',
    'ScoreKind', 'ScoreVector',
    'EventKind', 'EventRecord',
    'RecWindow', 'UserSessionState', 'new_user_state',
    'RecommendationList',
]
