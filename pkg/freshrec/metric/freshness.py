# -*- coding: utf-8 -*-
"""
新鲜度指标与基于指标的重排

Freshness = |R \\ A| / t。A 有两种取法：
- sliding_k: 最近 k 次调用推荐过的商品 (RecWindow)
- alg3_set:  累积集合 ProdRecTillNow，每 max_decay_count 次调用清空一次
"""

import logging
from dataclasses import asdict, dataclass
from enum import Enum
from typing import (
    AbstractSet, Any, Dict, FrozenSet, Iterable, Mapping, Optional, Sequence, Tuple, Union,
)

from pydantic import BaseModel, ConfigDict, Field

from ..core.errors import EmptyList, InvalidServeSize, ValidationError
from ..core.models import RecommendationList, RecWindow, UserSessionState

logger = logging.getLogger(__name__)


class ReplacementRule(str, Enum):
    """替换哪个已见过的商品"""
    LOWEST_STALE = "lowest_stale"
    HIGHEST_STALE = "highest_stale"


class WindowMode(str, Enum):
    ALG3_SET = "alg3_set"
    SLIDING_K = "sliding_k"


class MetricConfig(BaseModel):
    """新鲜度指标参数"""

    model_config = ConfigDict(extra='forbid', frozen=True)

    window_capacity: int = Field(5, ge=1, description="k of the sliding window A_k")
    freshness_threshold: float = Field(0.5, ge=0, le=1, description="Target freshness")
    max_decay_count: int = Field(10, ge=1, description="Calls before ProdRecTillNow is cleared")
    replacement: ReplacementRule = Field(
        ReplacementRule.LOWEST_STALE, description="Which stale list member is replaced first"
    )


def compute_freshness(
    rec_list: Union[RecommendationList, Sequence[str]],
    history: AbstractSet[str],
) -> float:
    """|R \\ history| / t"""
    items = rec_list.items if isinstance(rec_list, RecommendationList) else list(rec_list)
    t = len(items)
    if t == 0:
        raise EmptyList("freshness is undefined for an empty list")
    unique = set(items) - set(history)
    return len(unique) / t


def push_window(window: RecWindow, served: Iterable[str]) -> RecWindow:
    """追加最新一次推荐集合，超过容量时丢弃最旧的"""
    return window.pushed(served)


@dataclass(frozen=True)
class HistoryState:
    """累积历史 (ProdRecTillNow, count)"""
    prod_rec_till_now: FrozenSet[str] = frozenset()
    count: int = 0


def advance_history(history: HistoryState, served: Iterable[str], max_decay_count: int) -> HistoryState:
    if history.count < max_decay_count:
        return HistoryState(history.prod_rec_till_now | frozenset(served), history.count + 1)
    return HistoryState()


@dataclass
class MetricFeedbackResult:
    """metric_feedback_recommend 的结果及注释"""
    recommendations: RecommendationList
    history: HistoryState
    freshness: float
    replacements: int
    exhausted: bool


def metric_feedback_recommend(
    ranked_candidates: Sequence[str],
    history_state: HistoryState,
    config: MetricConfig,
    t: int,
    scores: Optional[Mapping[str, float]] = None,
) -> MetricFeedbackResult:
    """从 top-t 出发，用下一个未见过的候选替换已见过的成员，直到达到阈值

    候选耗尽时返回能达到的最好列表并标记 exhausted，不会死循环。
    """
    if t < 1:
        raise InvalidServeSize(f"t must be >= 1, got {t}")
    if len(set(ranked_candidates)) != len(ranked_candidates):
        raise ValidationError("ranked candidates contain duplicates")
    if not ranked_candidates:
        raise EmptyList("no candidates to recommend")

    stale = history_state.prod_rec_till_now
    current = list(ranked_candidates[:t])  # 始终保持相关性顺序
    pointer = len(current)
    freshness = compute_freshness(current, stale)
    replacements = 0

    while freshness < config.freshness_threshold:
        while pointer < len(ranked_candidates) and ranked_candidates[pointer] in stale:
            pointer += 1
        if pointer >= len(ranked_candidates):
            break
        stale_members = [pid for pid in current if pid in stale]
        if config.replacement == ReplacementRule.LOWEST_STALE:
            victim = stale_members[-1]
        else:
            victim = stale_members[0]
        current.remove(victim)
        current.append(ranked_candidates[pointer])
        pointer += 1
        replacements += 1
        freshness = compute_freshness(current, stale)

    exhausted = freshness < config.freshness_threshold
    if exhausted:
        logger.debug("candidates exhausted at freshness %.3f", freshness)

    if scores is None:
        total = len(ranked_candidates)
        rank = {pid: i for i, pid in enumerate(ranked_candidates)}
        item_scores = [float(total - rank[pid]) for pid in current]
    else:
        item_scores = [float(scores[pid]) for pid in current]

    recommendations = RecommendationList(
        items=current, scores=item_scores, truncated=len(current) < t
    )
    return MetricFeedbackResult(
        recommendations=recommendations,
        history=advance_history(history_state, current, config.max_decay_count),
        freshness=freshness,
        replacements=replacements,
        exhausted=exhausted,
    )


@dataclass
class MetricRecord:
    """每次推荐调用一条的指标记录"""
    call_index: int
    freshness: float
    window_mode: WindowMode
    replacements_made: int = 0
    exhausted: bool = False
    user_id: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['window_mode'] = self.window_mode.value
        if self.user_id is None:
            del data['user_id']
        return data


class FreshnessTracker:
    """同时维护两种窗口，给一个用户的每次推荐打分"""

    def __init__(self, config: MetricConfig, user_id: Optional[str] = None):
        self.config = config
        self.user_id = user_id
        self.window = RecWindow(config.window_capacity)
        self.history = HistoryState()
        self.calls = 0

    @classmethod
    def from_state(cls, config: MetricConfig, state: UserSessionState) -> 'FreshnessTracker':
        """从已持久化的用户状态恢复两种窗口"""
        tracker = cls(config, user_id=state.user_id)
        tracker.window = state.window
        tracker.history = HistoryState(state.history, state.history_count)
        return tracker

    def observe(
        self,
        served: Union[RecommendationList, Sequence[str]],
        replacements: int = 0,
        exhausted: bool = False,
        call_index: Optional[int] = None,
    ) -> Tuple[MetricRecord, MetricRecord]:
        """先对比推荐前的历史计算新鲜度，再推进两个窗口"""
        items = served.items if isinstance(served, RecommendationList) else list(served)
        index = self.calls if call_index is None else call_index

        sliding = MetricRecord(
            call_index=index,
            freshness=compute_freshness(items, self.window.union()),
            window_mode=WindowMode.SLIDING_K,
            user_id=self.user_id,
        )
        alg3 = MetricRecord(
            call_index=index,
            freshness=compute_freshness(items, self.history.prod_rec_till_now),
            window_mode=WindowMode.ALG3_SET,
            replacements_made=replacements,
            exhausted=exhausted,
            user_id=self.user_id,
        )

        self.window = push_window(self.window, items)
        self.history = advance_history(self.history, items, self.config.max_decay_count)
        self.calls += 1
        return sliding, alg3
