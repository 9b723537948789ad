#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
品牌感知洗牌与洗牌空间计数测试
"""

import math
import os
import sys
from itertools import combinations_with_replacement, permutations

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../..'))

from freshrec.core.errors import IndivisibleBatch, ValidationError
from freshrec.core.models import RecommendationList
from freshrec.shuffle.counting import (
    ShuffleMode,
    batched_space_discrepancy,
    enumerate_batched_outputs,
    shuffle_space_size,
)
from freshrec.shuffle.shuffler import (
    ShuffleConfig,
    arrange_no_adjacent_brands,
    brand_multiplicity,
    count_adjacencies,
    cross_partition_brand_swap,
    make_rng,
    partition,
    shuffle,
)


def rec_list(items):
    return RecommendationList(list(items), [float(len(items) - i) for i in range(len(items))])


def test_partition():
    assert partition(['a', 'b', 'c', 'd', 'e'], 2) == [['a', 'b'], ['c', 'd'], ['e']]
    assert partition(['a', 'b', 'c', 'd'], 4) == [['a', 'b', 'c', 'd']]
    assert partition([], 3) == []
    with pytest.raises(ValidationError):
        partition(['a'], 0)


def test_arrange_examples():
    brands = {'x1': 'X', 'x2': 'X', 'y1': 'Y', 'x3': 'X'}
    assert arrange_no_adjacent_brands(['x1', 'x2', 'y1'], brands) == ['x1', 'y1', 'x2']

    arranged = arrange_no_adjacent_brands(['x1', 'x2', 'x3'], brands)
    assert sorted(arranged) == ['x1', 'x2', 'x3']
    assert count_adjacencies(arranged, brands) == 2


def test_arrange_exhaustive_feasible_multisets():
    """≤8 个商品、≤4 个品牌的所有可行多重集合：相邻同品牌数为 0"""
    brand_names = ['A', 'B', 'C', 'D']
    checked = 0
    for size in range(1, 9):
        for multiset in combinations_with_replacement(brand_names, size):
            block = [f"{brand}{i}" for i, brand in enumerate(multiset)]
            brands = {pid: pid[0] for pid in block}
            if brand_multiplicity(block, brands) > math.ceil(size / 2):
                continue
            arranged = arrange_no_adjacent_brands(block, brands)
            assert sorted(arranged) == sorted(block)
            assert count_adjacencies(arranged, brands) == 0, arranged
            checked += 1
    assert checked > 0


def test_arrange_minimizes_when_infeasible():
    """不可行时相邻数等于下界 max_count - (len - max_count) - 1"""
    for size in range(2, 8):
        for majority in range(math.ceil(size / 2) + 1, size + 1):
            block = [f"A{i}" for i in range(majority)] + [f"B{i}" for i in range(size - majority)]
            brands = {pid: pid[0] for pid in block}
            best = min(count_adjacencies(p, brands) for p in permutations(block))
            assert count_adjacencies(arrange_no_adjacent_brands(block, brands), brands) == best


def test_cross_partition_swap_examples():
    brands = {'x1': 'X', 'x2': 'X', 'y1': 'Y'}
    assert cross_partition_brand_swap([['x1'], ['x2']], make_rng(0), brands) == [['x2'], ['x1']]
    # Y 只出现在一个分区，不交换
    assert cross_partition_brand_swap([['y1'], ['x1']], make_rng(0), brands) == [['y1'], ['x1']]


def test_shuffle_examples():
    brands = {f"p{i}": f"b{i // 2}" for i in range(6)}
    single = shuffle(rec_list(['p0']), ShuffleConfig(partition_length=3, rng_seed=1), brands)
    assert single.items == ['p0']

    one_brand = {f"q{i}": 'B' for i in range(4)}
    out = shuffle(rec_list(one_brand), ShuffleConfig(partition_length=4, rng_seed=1), one_brand)
    assert sorted(out.items) == sorted(one_brand)
    assert count_adjacencies(out.items, one_brand) == 3

    config = ShuffleConfig(partition_length=3, rng_seed=42)
    first = shuffle(rec_list(brands), config, brands)
    second = shuffle(rec_list(brands), config, brands)
    assert first.items == second.items
    assert first.scores == [rec_list(brands).scores[int(pid[1:])] for pid in first.items]


def test_shuffle_permutation_and_block_guarantee():
    """输出是输入的排列；可行块在交换后仍无相邻同品牌"""
    rng = np.random.default_rng(8)
    for trial in range(200):
        n = int(rng.integers(1, 16))
        items = [f"p{i:02d}" for i in range(n)]
        brands = {pid: f"b{int(rng.integers(0, 4))}" for pid in items}
        p = int(rng.integers(1, 6))
        out = shuffle(rec_list(items), ShuffleConfig(partition_length=p, rng_seed=trial), brands)
        assert sorted(out.items) == items

        for before, after in zip(partition(items, p), partition(out.items, p)):
            if brand_multiplicity(before, brands) <= math.ceil(len(before) / 2):
                assert count_adjacencies(after, brands) == 0


def test_different_seeds_produce_different_outputs():
    items = [f"p{i}" for i in range(9)]
    brands = {pid: f"b{i % 3}" for i, pid in enumerate(items)}
    outputs = {
        tuple(shuffle(rec_list(items), ShuffleConfig(partition_length=3, rng_seed=seed), brands).items)
        for seed in range(30)
    }
    assert len(outputs) >= 2


def test_shuffle_space_formulas():
    """n! 与 (n/h)! × h 与直接阶乘计算一致"""
    assert shuffle_space_size(4) == 24
    assert shuffle_space_size(4, 2, ShuffleMode.BATCHED) == 4
    assert shuffle_space_size(0) == 1
    for n in range(0, 9):
        assert shuffle_space_size(n, mode=ShuffleMode.WHOLE) == math.factorial(n)
        for h in range(1, 9):
            if n % h == 0 and n > 0:
                expected = math.factorial(n // h) * h
                assert shuffle_space_size(n, h, ShuffleMode.BATCHED) == expected
        if n > 0:
            assert shuffle_space_size(n, n, ShuffleMode.BATCHED) == n

    with pytest.raises(IndivisibleBatch):
        shuffle_space_size(5, 2, ShuffleMode.BATCHED)


def test_batched_enumeration_discrepancy_note():
    """枚举结果与闭式不一致时给出说明"""
    for n in range(1, 7):
        for h in range(1, n + 1):
            if n % h:
                continue
            note = batched_space_discrepancy(n, h)
            assert note['enumerated'] == math.factorial(h) ** (n // h)
            assert note['enumerated'] == len(enumerate_batched_outputs(n, h))
            if not note['matches']:
                assert 'note' in note
    assert batched_space_discrepancy(4, 2)['matches'] is True
    assert batched_space_discrepancy(6, 3)['matches'] is False


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-q']))
