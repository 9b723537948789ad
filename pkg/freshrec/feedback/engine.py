# -*- coding: utf-8 -*-
"""
Feedback loop engine

Score combination, top-t serving, dwell penalties and NegativeWeights decay.
All operations return a new UserSessionState; inputs are never mutated.
"""

import logging
from typing import AbstractSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import ForeignUserEvent, InvalidServeSize, LengthMismatch, ScoreKindMismatch
from ..core.models import (
    BASELINE_WEIGHT,
    NEVER,
    EventKind,
    EventRecord,
    Inventory,
    RecommendationList,
    ScoreKind,
    ScoreVector,
    UserSessionState,
)
from .policies import DecayPolicy, DecayVariant, PenaltyConfig

logger = logging.getLogger(__name__)


def _require_kind(vector: ScoreVector, kind: ScoreKind, name: str):
    if vector.kind != kind:
        raise ScoreKindMismatch(f"{name} must be {kind.value}, got {vector.kind.value}")


def _require_length(size: int, expected: int, name: str):
    if size != expected:
        raise LengthMismatch(f"{name} has length {size}, expected {expected}")


def combine_scores(relevance: ScoreVector, negative_weights: ScoreVector) -> ScoreVector:
    """FinalScores = RelevanceScores - NegativeWeights（允许负值，不截断）"""
    _require_kind(relevance, ScoreKind.RELEVANCE, "relevance")
    _require_kind(negative_weights, ScoreKind.NEGATIVE_WEIGHTS, "negative_weights")
    _require_length(len(negative_weights), len(relevance), "negative_weights")
    return ScoreVector(relevance.values - negative_weights.values, ScoreKind.FINAL)


def rank_positions(
    scores: ScoreVector,
    inventory: Inventory,
    excluded: AbstractSet[str] = frozenset(),
) -> np.ndarray:
    """按分数降序、id 升序排列的全部非排除位置"""
    _require_length(len(scores), len(inventory), "scores")
    order = np.lexsort((inventory.id_rank, -scores.values))
    if excluded:
        blocked = {inventory.position(pid) for pid in excluded}
        order = np.array([pos for pos in order if pos not in blocked], dtype=np.int64)
    return order


def rank_candidates(
    scores: ScoreVector,
    inventory: Inventory,
    excluded: AbstractSet[str] = frozenset(),
) -> List[str]:
    ids = inventory.ids
    return [ids[pos] for pos in rank_positions(scores, inventory, excluded)]


def serve_top_t(
    final: ScoreVector,
    t: int,
    excluded: AbstractSet[str],
    inventory: Inventory,
) -> RecommendationList:
    """取最终分数最高的 t 个商品；候选不足时返回较短列表并标记 truncated"""
    if t < 1:
        raise InvalidServeSize(f"t must be >= 1, got {t}")
    order = rank_positions(final, inventory, excluded)
    chosen = order[:t]
    ids = inventory.ids
    return RecommendationList(
        items=[ids[pos] for pos in chosen],
        scores=[float(final.values[pos]) for pos in chosen],
        truncated=len(chosen) < t,
    )


def build_dwell_array(
    events: Iterable[EventRecord],
    state: UserSessionState,
    inventory: Inventory,
    config: PenaltyConfig,
) -> ScoreVector:
    """汇总一个批次内 "点击但未加入优先列表" 商品的停留时长"""
    clicked = set()
    added = set()
    dwell = np.zeros(len(inventory), dtype=np.float64)
    dwell_events = []

    for event in events:
        if event.user_id != state.user_id:
            raise ForeignUserEvent(
                f"event for user {event.user_id!r} given to state of {state.user_id!r}"
            )
        if event.product_id is None:
            continue
        if event.event_kind == EventKind.CLICKED:
            clicked.add(event.product_id)
        elif event.event_kind == EventKind.ADDED:
            added.add(event.product_id)
        elif event.event_kind == EventKind.DWELL:
            dwell_events.append(event)

    penalized = clicked - added if config.require_click_without_add else clicked
    for event in dwell_events:
        if event.product_id in penalized:
            dwell[inventory.position(event.product_id)] += event.dwell_seconds

    return ScoreVector(dwell, ScoreKind.DWELL)


def apply_penalty(
    state: UserSessionState,
    dwell_array: ScoreVector,
    config: PenaltyConfig,
    now: int,
) -> UserSessionState:
    """NegativeWeights += dwell_coefficient · DwellArray"""
    _require_length(len(dwell_array), len(state), "dwell_array")
    touched = dwell_array.values > 0
    if not touched.any():
        return state.copy()

    new_state = state.copy()
    weights = new_state.negative_weights.values + config.dwell_coefficient * dwell_array.values
    new_state.negative_weights = ScoreVector(weights, ScoreKind.NEGATIVE_WEIGHTS)
    new_state.weight_set_at[touched] = now
    return new_state


def _reset_positions(state: UserSessionState, mask: np.ndarray):
    state.negative_weights.values[mask] = BASELINE_WEIGHT
    state.weight_set_at[mask] = NEVER


def apply_decay(state: UserSessionState, policy: DecayPolicy, now: int) -> UserSessionState:
    """按策略把 NegativeWeights 恢复到基线 1.0"""
    new_state = state.copy()
    is_set = new_state.weight_set_at != NEVER
    # 从未设置的节点年龄视为 0
    age = np.where(is_set, now - new_state.weight_set_at, 0)

    if policy.variant == DecayVariant.PER_NODE_AGE:
        mask = is_set & (age > policy.max_age_seconds)
        if mask.any():
            _reset_positions(new_state, mask)
            logger.debug("user %s: %d weights aged out", state.user_id, int(mask.sum()))

    elif policy.variant == DecayVariant.PER_NODE_SUPPRESSION:
        mask = new_state.suppression_count > policy.count_limit
        if mask.any():
            _reset_positions(new_state, mask)
            new_state.suppression_count[mask] = 0
            logger.debug("user %s: %d weights reset after suppression",
                         state.user_id, int(mask.sum()))

    elif policy.variant == DecayVariant.FULL_RESET_BY_SERVES:
        if new_state.serve_count >= policy.count_limit:
            _reset_positions(new_state, np.ones(len(new_state), dtype=bool))
            new_state.serve_count = 0
            logger.debug("user %s: full reset after %d serves", state.user_id, policy.count_limit)

    elif policy.variant == DecayVariant.FULL_RESET_BY_AGE:
        if is_set.any() and age[is_set].max() > policy.max_age_seconds:
            _reset_positions(new_state, np.ones(len(new_state), dtype=bool))
            logger.debug("user %s: full reset by age", state.user_id)

    return new_state


def record_suppressions(
    state: UserSessionState,
    would_serve_without_weights: RecommendationList,
    actually_served: RecommendationList,
    inventory: Inventory,
) -> UserSessionState:
    """相关性排进 top-t 却因 NegativeWeights 被挤出的商品计数 +1"""
    new_state = state.copy()
    served = actually_served.item_set()
    for product_id in would_serve_without_weights.items:
        if product_id not in served:
            new_state.suppression_count[inventory.position(product_id)] += 1
    return new_state


def commit_serve(
    state: UserSessionState,
    served: RecommendationList,
    would_serve: Optional[RecommendationList],
    policy: DecayPolicy,
    now: int,
    inventory: Inventory,
) -> UserSessionState:
    """记录一次已完成的推荐：压制计数、窗口、serve_count，然后检查衰减"""
    new_state = state
    if would_serve is not None:
        new_state = record_suppressions(new_state, would_serve, served, inventory)
    else:
        new_state = new_state.copy()
    new_state.window = new_state.window.pushed(served.items)
    new_state.serve_count += 1
    return apply_decay(new_state, policy, now)


def serving_exclusions(state: UserSessionState, exclude_prioritized: bool) -> AbstractSet[str]:
    return frozenset(state.prioritized) if exclude_prioritized else frozenset()


def feedback_serve_cycle(
    state: UserSessionState,
    relevance: ScoreVector,
    t: int,
    policy: DecayPolicy,
    config: PenaltyConfig,
    now: int,
    inventory: Inventory,
    exclude_prioritized: bool = True,
) -> Tuple[RecommendationList, UserSessionState]:
    """反馈回路的一次推荐：合并分数 → 取 top-t → 衰减检查

    惩罚不在这里施加，事件到达后通过 ingest_batch / apply_penalty 异步处理。
    """
    _require_length(len(relevance), len(inventory), "relevance")
    excluded = serving_exclusions(state, exclude_prioritized)

    final = combine_scores(relevance, state.negative_weights)
    served = serve_top_t(final, t, excluded, inventory)
    unweighted = ScoreVector(relevance.values, ScoreKind.FINAL)
    would_serve = serve_top_t(unweighted, t, excluded, inventory)

    new_state = commit_serve(state, served, would_serve, policy, now, inventory)
    return served, new_state


def ingest_batch(
    state: UserSessionState,
    events: Sequence[EventRecord],
    inventory: Inventory,
    config: PenaltyConfig,
    now: int,
) -> UserSessionState:
    """处理一批交互事件：施加停留惩罚，并把加入/购买的商品放进 prioritized"""
    dwell_array = build_dwell_array(events, state, inventory, config)
    new_state = apply_penalty(state, dwell_array, config, now)
    for event in events:
        if event.product_id is None:
            continue
        if event.event_kind in (EventKind.ADDED, EventKind.PURCHASED):
            # 未知商品抛出 UnknownProduct
            inventory.position(event.product_id)
            new_state.prioritized.add(event.product_id)
    return new_state
