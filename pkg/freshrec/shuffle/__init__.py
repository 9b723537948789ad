# -*- coding: utf-8 -*-
"""
Brand-aware shuffling
"""

from .shuffler import (
    RNG_ALGORITHM,
    ShuffleConfig,
    make_rng,
    partition,
    count_adjacencies,
    arrange_no_adjacent_brands,
    cross_partition_brand_swap,
    shuffle,
    brand_multiplicity,
)
from .counting import (
    ShuffleMode,
    shuffle_space_size,
    enumerate_batched_outputs,
    batched_space_discrepancy,
)

__all__ = [
    'RNG_ALGORITHM', 'ShuffleConfig', 'make_rng', 'partition', 'count_adjacencies',
    'arrange_no_adjacent_brands', 'cross_partition_brand_swap', 'shuffle',
    'brand_multiplicity',
    'ShuffleMode', 'shuffle_space_size', 'enumerate_batched_outputs',
    'batched_space_discrepancy',
]
