#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
新鲜度指标与基于指标的重排测试
"""

import math
import os
import sys
from itertools import combinations

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../..'))

from freshrec.core.errors import EmptyList, InvalidServeSize
from freshrec.core.models import RecWindow
from freshrec.metric.freshness import (
    FreshnessTracker,
    HistoryState,
    MetricConfig,
    ReplacementRule,
    WindowMode,
    advance_history,
    compute_freshness,
    metric_feedback_recommend,
    push_window,
)


def test_compute_freshness_examples():
    assert compute_freshness(['a', 'b', 'c'], set()) == 1.0
    assert compute_freshness(['a', 'b', 'c'], {'a', 'b', 'c', 'd'}) == 0.0
    assert compute_freshness(['a', 'b', 'c'], {'b', 'c', 'd'}) == 1 / 3
    with pytest.raises(EmptyList):
        compute_freshness([], {'a'})


def test_compute_freshness_matches_oracle():
    """1000 组随机 (R, A)：与集合差暴力计算完全一致"""
    rng = np.random.default_rng(0)
    universe = [f"p{i}" for i in range(20)]
    for _ in range(1000):
        t = int(rng.integers(1, 11))
        served = list(rng.choice(universe, size=t, replace=False))
        history = set(rng.choice(universe, size=int(rng.integers(0, 21)), replace=False))
        unique = [pid for pid in served if pid not in history]
        assert compute_freshness(served, history) == len(unique) / t


def test_freshness_is_oblivious_to_shuffling():
    """200 个列表 × 20 个排列：新鲜度不变"""
    rng = np.random.default_rng(1)
    universe = [f"p{i}" for i in range(30)]
    for _ in range(200):
        served = list(rng.choice(universe, size=int(rng.integers(1, 15)), replace=False))
        history = set(rng.choice(universe, size=10, replace=False))
        expected = compute_freshness(served, history)
        for _ in range(20):
            assert compute_freshness(list(rng.permutation(served)), history) == expected


def test_push_window_examples():
    window = RecWindow(2)
    for served in [{'a'}, {'b'}, {'c'}]:
        window = push_window(window, served)
    assert window.union() == frozenset({'b', 'c'})

    one = push_window(push_window(RecWindow(1), {'a', 'b'}), {'c'})
    assert one.union() == frozenset({'c'})

    window = push_window(RecWindow(3), {'a'})
    assert push_window(window, set()).union() == window.union()


def test_metric_feedback_examples():
    config = MetricConfig(freshness_threshold=1.0)
    result = metric_feedback_recommend(['a', 'b', 'c', 'd'], HistoryState(), config, 2)
    assert result.recommendations.items == ['a', 'b']
    assert result.freshness == 1.0 and result.replacements == 0

    result = metric_feedback_recommend(['a', 'b', 'c', 'd'], HistoryState(frozenset({'a', 'b'}), 1), config, 2)
    assert result.recommendations.items == ['c', 'd']
    assert result.replacements == 2
    assert result.history == HistoryState(frozenset({'a', 'b', 'c', 'd'}), 2)

    result = metric_feedback_recommend(
        ['a', 'b'], HistoryState(frozenset({'a', 'b'}), 1), MetricConfig(freshness_threshold=0.5), 2
    )
    assert result.recommendations.items == ['a', 'b']
    assert result.freshness == 0.0
    assert result.exhausted is True

    with pytest.raises(InvalidServeSize):
        metric_feedback_recommend(['a'], HistoryState(), config, 0)


def test_lowest_stale_replaced_first():
    """默认替换排名最低的已见商品，保留更相关的"""
    history = HistoryState(frozenset({'s1', 's2'}), 1)
    config = MetricConfig(freshness_threshold=0.5)
    result = metric_feedback_recommend(['s1', 's2', 'u'], history, config, 2)
    assert result.recommendations.items == ['s1', 'u']

    highest = MetricConfig(freshness_threshold=0.5, replacement=ReplacementRule.HIGHEST_STALE)
    result = metric_feedback_recommend(['s1', 's2', 'u'], history, highest, 2)
    assert result.recommendations.items == ['s2', 'u']


def random_instance(rng, max_candidates, max_t):
    n = int(rng.integers(1, max_candidates + 1))
    candidates = [f"c{i}" for i in range(n)]
    stale = frozenset(pid for pid in candidates if rng.random() < 0.5)
    t = int(rng.integers(1, max_t + 1))
    threshold = float(rng.choice([0.0, 0.25, 0.5, 0.75, 1.0]))
    return candidates, stale, t, threshold


def test_threshold_guarantee():
    """未见候选足够时，返回列表的新鲜度一定达到阈值；不足时标记 exhausted"""
    rng = np.random.default_rng(2)
    for _ in range(1000):
        candidates, stale, t, threshold = random_instance(rng, 20, 10)
        config = MetricConfig(freshness_threshold=threshold)
        result = metric_feedback_recommend(candidates, HistoryState(stale, 0), config, t)
        items = result.recommendations.items

        assert len(items) == min(t, len(candidates))
        assert len(set(items)) == len(items)
        assert result.freshness == compute_freshness(items, stale)

        unseen = len([pid for pid in candidates if pid not in stale])
        if unseen >= math.ceil(threshold * len(items)):
            assert result.freshness >= threshold
            assert result.exhausted is False
        else:
            assert result.exhausted is True


def test_relevance_maximality_brute_force():
    """返回列表在达到同等新鲜度的子集中排名组合字典序最优（t ≤ 4, 候选 ≤ 8）"""
    rng = np.random.default_rng(3)
    for _ in range(500):
        candidates, stale, t, threshold = random_instance(rng, 8, 4)
        config = MetricConfig(freshness_threshold=threshold)
        result = metric_feedback_recommend(candidates, HistoryState(stale, 0), config, t)
        size = len(result.recommendations.items)
        rank = {pid: i for i, pid in enumerate(candidates)}

        best = min(
            tuple(sorted(rank[pid] for pid in subset))
            for subset in combinations(candidates, size)
            if compute_freshness(list(subset), stale) >= result.freshness
        )
        assert tuple(sorted(rank[pid] for pid in result.recommendations.items)) == best
        # 列表保持相关性顺序
        assert result.recommendations.items == sorted(result.recommendations.items, key=rank.get)


def test_history_reset_periodicity():
    """count 达到 max_decay_count 后的下一次调用清空 ProdRecTillNow"""
    state = HistoryState()
    for call in range(3):
        state = advance_history(state, {f"p{call}"}, 3)
    assert state == HistoryState(frozenset({'p0', 'p1', 'p2'}), 3)

    state = advance_history(state, {'p3'}, 3)
    assert state == HistoryState()

    config = MetricConfig(freshness_threshold=0.0, max_decay_count=3)
    result = metric_feedback_recommend(['p0', 'p1'], state, config, 2)
    assert result.freshness == 1.0


def test_tracker_records_both_window_modes():
    """先按推荐前的历史计分，再推进窗口"""
    tracker = FreshnessTracker(MetricConfig(window_capacity=1, max_decay_count=10), user_id='u1')
    first = tracker.observe(['a', 'b'])
    second = tracker.observe(['b', 'c'], replacements=1)
    third = tracker.observe(['a', 'd'])

    assert [r.freshness for r in first] == [1.0, 1.0]
    assert second[0].window_mode == WindowMode.SLIDING_K
    assert second[0].freshness == 0.5
    assert second[1].window_mode == WindowMode.ALG3_SET
    assert second[1].replacements_made == 1
    # 窗口只记得上一次 {b, c}，累积集合记得 {a, b, c}
    assert third[0].freshness == 1.0
    assert third[1].freshness == 0.5
    assert third[0].call_index == 2
    assert third[0].to_dict() == {
        'call_index': 2, 'freshness': 1.0, 'window_mode': 'sliding_k',
        'replacements_made': 0, 'exhausted': False, 'user_id': 'u1',
    }


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-q']))
