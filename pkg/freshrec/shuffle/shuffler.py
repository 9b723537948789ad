# -*- coding: utf-8 -*-
"""
品牌感知的分块洗牌

partition → arrange_no_adjacent_brands → cross_partition_brand_swap → flatten
"""

import logging
from collections import Counter, defaultdict
from typing import Dict, List, Mapping, Sequence, Set, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..core.errors import UnknownProduct, ValidationError
from ..core.models import RecommendationList

logger = logging.getLogger(__name__)

# 报告头中记录的随机数生成器标识
RNG_ALGORITHM = "numpy.PCG64"


class ShuffleConfig(BaseModel):
    """洗牌参数"""

    model_config = ConfigDict(extra='forbid', frozen=True)

    partition_length: int = Field(5, ge=1, description="Block length p")
    rng_seed: int = Field(0, ge=0, lt=2 ** 64, description="Seed for the counterpart choice")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _items_of(rec_list: Union[RecommendationList, Sequence[str]]) -> List[str]:
    if isinstance(rec_list, RecommendationList):
        return list(rec_list.items)
    return list(rec_list)


def _brand(brands: Mapping[str, str], product_id: str) -> str:
    try:
        return brands[product_id]
    except KeyError:
        raise UnknownProduct(f"no brand known for product {product_id!r}") from None


def partition(rec_list: Union[RecommendationList, Sequence[str]], p: int) -> List[List[str]]:
    """切成 ceil(n/p) 个连续块，最后一块可能较短"""
    if p < 1:
        raise ValidationError(f"partition length must be >= 1, got {p}")
    items = _items_of(rec_list)
    return [items[i:i + p] for i in range(0, len(items), p)]


def count_adjacencies(items: Sequence[str], brands: Mapping[str, str]) -> int:
    """相邻同品牌的对数"""
    return sum(
        1 for a, b in zip(items, items[1:]) if _brand(brands, a) == _brand(brands, b)
    )


def arrange_no_adjacent_brands(block: Sequence[str], brands: Mapping[str, str]) -> List[str]:
    """贪心交错：每次放剩余数量最多、且与上一个不同品牌的商品

    可行（最大品牌数 ≤ ceil(len/2)）时相邻同品牌数为 0，否则取最小值。
    """
    by_brand: Dict[str, List[str]] = defaultdict(list)
    for product_id in block:
        by_brand[_brand(brands, product_id)].append(product_id)
    queues = {brand: sorted(ids, reverse=True) for brand, ids in by_brand.items()}

    arranged: List[str] = []
    previous = None
    for _ in range(len(block)):
        candidates = [b for b, ids in queues.items() if ids and b != previous]
        if candidates:
            brand = min(candidates, key=lambda b: (-len(queues[b]), b))
        else:
            brand = previous
        arranged.append(queues[brand].pop())
        previous = brand
    return arranged


def _block_adjacencies(blocks: Sequence[Sequence[str]], brands: Mapping[str, str]) -> List[int]:
    return [count_adjacencies(block, brands) for block in blocks]


def cross_partition_brand_swap(
    blocks: Sequence[Sequence[str]],
    rng: np.random.Generator,
    brands: Mapping[str, str],
    guard_adjacency: bool = False,
) -> List[List[str]]:
    """每个分区的每个品牌：与其它分区中随机一个同品牌商品交换位置

    每个商品最多参与一次交换。guard_adjacency 为 True 时，引入新相邻的交换会换一个
    对手重试，全部失败则跳过。
    """
    result = [list(block) for block in blocks]
    swapped: Set[str] = set()
    limits = _block_adjacencies(result, brands) if guard_adjacency else []

    for i, block in enumerate(result):
        for brand in sorted({_brand(brands, pid) for pid in block}):
            source_pos = next(
                (pos for pos, pid in enumerate(result[i])
                 if _brand(brands, pid) == brand and pid not in swapped),
                None,
            )
            if source_pos is None:
                continue

            counterparts: List[Tuple[int, int]] = [
                (j, pos)
                for j, other in enumerate(result) if j != i
                for pos, pid in enumerate(other)
                if _brand(brands, pid) == brand and pid not in swapped
            ]
            if not counterparts:
                continue

            for pick in rng.permutation(len(counterparts)):
                j, pos = counterparts[int(pick)]
                source = result[i][source_pos]
                target = result[j][pos]
                result[i][source_pos], result[j][pos] = target, source
                if guard_adjacency and (
                    count_adjacencies(result[i], brands) > limits[i]
                    or count_adjacencies(result[j], brands) > limits[j]
                ):
                    result[i][source_pos], result[j][pos] = source, target
                    continue
                swapped.update((source, target))
                break
            else:
                logger.debug("swap for brand %s in partition %d skipped", brand, i)

    return result


def shuffle(
    rec_list: RecommendationList,
    config: ShuffleConfig,
    brands: Mapping[str, str],
) -> RecommendationList:
    """分块、块内排列、跨块交换，输出输入 id 的一个排列"""
    scores = dict(zip(rec_list.items, rec_list.scores))
    blocks = [
        arrange_no_adjacent_brands(block, brands)
        for block in partition(rec_list, config.partition_length)
    ]
    rng = make_rng(config.rng_seed)
    blocks = cross_partition_brand_swap(blocks, rng, brands, guard_adjacency=True)
    items = [pid for block in blocks for pid in block]
    return RecommendationList(
        items=items,
        scores=[scores[pid] for pid in items],
        truncated=rec_list.truncated,
    )


def brand_multiplicity(block: Sequence[str], brands: Mapping[str, str]) -> int:
    """块内出现次数最多的品牌的次数"""
    if not block:
        return 0
    return max(Counter(_brand(brands, pid) for pid in block).values())
