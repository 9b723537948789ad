# -*- coding: utf-8 -*-
"""
合成用户行为模型

Behaviour model assumption: a long dwell without an add comes from a product
the user is not really interested in, so the dwell-penalty hypothesis holds by
construction in simulation.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List

import numpy as np

from ..core.errors import ValidationError
from ..core.models import (
    EventKind,
    EventRecord,
    Inventory,
    Product,
    RecommendationList,
    ScoreKind,
    ScoreVector,
    build_inventory,
)


class PositionBias(str, Enum):
    """浏览概率随位置衰减的形状"""
    RECIPROCAL = "reciprocal"
    EXPONENTIAL = "exponential"


# exponential 形状下每下移一位的保留率
EXPONENTIAL_VIEW_DECAY = 0.85


def view_probability(position: int, bias: PositionBias = PositionBias.RECIPROCAL) -> float:
    if bias == PositionBias.EXPONENTIAL:
        return EXPONENTIAL_VIEW_DECAY ** position
    return 1.0 / (1.0 + position)


@dataclass
class SyntheticUser:
    """合成用户：每个库存位置的真实兴趣 + 停留/加入习惯"""
    user_id: str
    preference_vector: np.ndarray
    patience: float
    add_threshold: float

    def __post_init__(self):
        self.preference_vector = np.asarray(self.preference_vector, dtype=np.float64)
        if np.any(self.preference_vector < 0) or np.any(self.preference_vector > 1):
            raise ValidationError("preference values must lie in [0, 1]")
        if self.patience <= 0:
            raise ValidationError("patience must be positive")
        if not 0 <= self.add_threshold <= 1:
            raise ValidationError("add_threshold must lie in [0, 1]")


def synth_relevance(user: SyntheticUser, noise_sd: float, rng: np.random.Generator) -> ScoreVector:
    """relevance = clamp(preference + N(0, noise_sd), 0, 1)"""
    if noise_sd < 0:
        raise ValidationError("noise_sd must be >= 0")
    noise = rng.normal(0.0, noise_sd, size=user.preference_vector.shape)
    return ScoreVector(np.clip(user.preference_vector + noise, 0.0, 1.0), ScoreKind.RELEVANCE)


def simulate_interaction(
    user: SyntheticUser,
    served: RecommendationList,
    inventory: Inventory,
    rng: np.random.Generator,
    now: int = 0,
    bias: PositionBias = PositionBias.RECIPROCAL,
) -> List[EventRecord]:
    """为一次推荐生成事件：Served → Viewed → Clicked → Dwell → AddedToPriorityList"""
    if len(served) == 0:
        raise ValidationError("cannot simulate interaction with an empty list")

    events = [
        EventRecord(user_id=user.user_id, product_id=pid, event_kind=EventKind.SERVED, timestamp=now)
        for pid in served.items
    ]

    for position, product_id in enumerate(served.items):
        preference = float(user.preference_vector[inventory.position(product_id)])
        if rng.random() >= view_probability(position, bias):
            continue
        events.append(_event(user, product_id, EventKind.VIEWED, now))
        if rng.random() >= preference:
            continue
        events.append(_event(user, product_id, EventKind.CLICKED, now))

        added = preference >= user.add_threshold
        mean_dwell = user.patience * (preference if added else 1.0 - preference)
        dwell = float(rng.exponential(mean_dwell)) if mean_dwell > 0 else 0.0
        events.append(EventRecord(
            user_id=user.user_id, product_id=product_id, event_kind=EventKind.DWELL,
            dwell_seconds=dwell, timestamp=now,
        ))
        if added:
            events.append(_event(user, product_id, EventKind.ADDED, now))

    return events


def _event(user: SyntheticUser, product_id: str, kind: EventKind, now: int) -> EventRecord:
    return EventRecord(user_id=user.user_id, product_id=product_id, event_kind=kind, timestamp=now)


def synthetic_inventory(size: int, brands: int, rng: np.random.Generator) -> Inventory:
    """带品牌标签的合成库存，id 零填充以保证字典序等于数值序"""
    if size < 1 or brands < 1:
        raise ValidationError("inventory size and brand count must be >= 1")
    width = len(str(size - 1))
    labels = rng.integers(0, brands, size=size)
    return build_inventory([
        Product(product_id=f"p{i:0{width}d}", brand=f"brand{int(labels[i]):02d}")
        for i in range(size)
    ])


def sample_user(
    user_id: str,
    inventory_size: int,
    rng: np.random.Generator,
    alpha: float,
    beta: float,
    patience: float,
    add_threshold: float,
) -> SyntheticUser:
    """从 Beta(alpha, beta) 抽取兴趣；耐心在 ±50% 内浮动"""
    return SyntheticUser(
        user_id=user_id,
        preference_vector=rng.beta(alpha, beta, size=inventory_size),
        patience=patience * float(rng.uniform(0.5, 1.5)),
        add_threshold=add_threshold,
    )
