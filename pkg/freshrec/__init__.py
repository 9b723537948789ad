# -*- coding: utf-8 -*-
"""
freshrec - 推荐结果新鲜度后处理引擎

Negative-feedback weights, decay policies, brand-aware shuffling,
sliding-window freshness and an offline A/B simulator.
"""

__version__ = "0.1.0"
