# -*- coding: utf-8 -*-
"""
事件日志回放

把记录下来的日志当作反馈循环逐批重放：每个用户的一段连续 Served 事件
开启一个新的推荐周期，其后的交互事件属于同一批次。
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from ..core.errors import OutOfOrderEvents
from ..core.models import EventKind, EventRecord, Inventory, UserSessionState, new_user_state
from ..feedback.engine import apply_decay, ingest_batch
from ..metric.freshness import FreshnessTracker, MetricRecord
from ..utils.config import Settings

logger = logging.getLogger(__name__)


@dataclass
class ReplayResult:
    """回放后的用户状态与逐次调用的指标记录"""
    states: Dict[str, UserSessionState]
    records: List[MetricRecord] = field(default_factory=list)
    calls: int = 0
    batches: int = 0


def check_order(events: Sequence[EventRecord]):
    for index in range(1, len(events)):
        if events[index].timestamp < events[index - 1].timestamp:
            raise OutOfOrderEvents(
                f"event {index + 1} at {events[index].timestamp} precedes "
                f"event {index} at {events[index - 1].timestamp}"
            )


def group_by_user(events: Sequence[EventRecord]) -> Dict[str, List[EventRecord]]:
    grouped: Dict[str, List[EventRecord]] = {}
    for event in events:
        grouped.setdefault(event.user_id, []).append(event)
    return grouped


def split_batches(events: Sequence[EventRecord]) -> List[List[EventRecord]]:
    """每段连续 Served 事件开启一个新批次"""
    batches: List[List[EventRecord]] = []
    current: List[EventRecord] = []
    previous_served = False
    for event in events:
        is_served = event.event_kind == EventKind.SERVED
        if is_served and not previous_served and current:
            batches.append(current)
            current = []
        current.append(event)
        previous_served = is_served
    if current:
        batches.append(current)
    return batches


def served_items(batch: Sequence[EventRecord]) -> List[str]:
    """批次开头 Served 段中的商品（去重，保持顺序）；无 product_id 的 Served 只作分隔符"""
    items: List[str] = []
    for event in batch:
        if event.event_kind != EventKind.SERVED:
            break
        if event.product_id is not None and event.product_id not in items:
            items.append(event.product_id)
    return items


def replay(
    events: Sequence[EventRecord],
    states: Dict[str, UserSessionState],
    inventory: Inventory,
    settings: Optional[Settings] = None,
    start_index: int = 0,
) -> ReplayResult:
    """
    按反馈回路的循环结构回放事件

    Args:
        events: 按时间戳排序的事件
        states: 已有的用户状态（不会被修改）
        inventory: 商品库存
        settings: 配置，默认使用内置默认值
        start_index: 第一条指标记录的 call_index

    Returns:
        ReplayResult，states 包含所有输入状态和日志中出现的新用户
    """
    settings = settings or Settings()
    check_order(events)

    result = ReplayResult(states=dict(states))
    call_index = start_index

    grouped = group_by_user(events)
    for user_id in sorted(grouped):
        state = result.states.get(user_id)
        if state is None:
            state = new_user_state(user_id, inventory, settings.metric.window_capacity)

        for batch in split_batches(grouped[user_id]):
            now = batch[-1].timestamp
            items = served_items(batch)
            if items:
                for product_id in items:
                    inventory.position(product_id)
                tracker = FreshnessTracker.from_state(settings.metric, state)
                sliding, alg3 = tracker.observe(items, call_index=call_index)
                result.records.extend([sliding, alg3])
                call_index += 1
                result.calls += 1

                state = state.copy()
                state.window = tracker.window
                state.history = tracker.history.prod_rec_till_now
                state.history_count = tracker.history.count
                state.serve_count += 1

            state = ingest_batch(state, batch, inventory, settings.penalty, now)
            state = apply_decay(state, settings.decay, now)
            result.batches += 1

        result.states[user_id] = state

    logger.info("replayed %d events: %d users, %d batches, %d serve calls",
                len(events), len(grouped), result.batches, result.calls)
    return result
