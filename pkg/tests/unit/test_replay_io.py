#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
事件日志读取、快照存储、回放与报告输出测试
"""

import json
import os
import sys
import tempfile
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../..'))

from freshrec.core.errors import IoError, OutOfOrderEvents, ParseError, SnapshotError, ValidationError
from freshrec.core.models import EventKind, EventRecord, Product, build_inventory, new_user_state
from freshrec.io.events import ingest_events, load_inventory, parse_event_lines, write_events, write_inventory
from freshrec.io.replay import replay, served_items, split_batches
from freshrec.io.reports import (
    SESSION_CSV_FIELDS,
    metric_report,
    render_metric_records,
    render_session_csv,
    report_header,
)
from freshrec.io.snapshots import SnapshotStore, render_snapshot
from freshrec.metric.freshness import WindowMode
from freshrec.simulator.experiment import SessionRow
from freshrec.utils.config import Settings

T0 = 1_700_000_000


def make_inventory():
    return build_inventory([Product(pid, f"brand-{pid}") for pid in ['a', 'b', 'c', 'd']])


def ev(kind, product_id=None, ts=T0, user='u1', dwell=None):
    return EventRecord(user_id=user, product_id=product_id, event_kind=kind,
                       dwell_seconds=dwell, timestamp=ts)


def served(user, items, ts):
    return [ev(EventKind.SERVED, pid, ts, user) for pid in items]


def test_ingest_strict_and_lenient():
    """第 2 行损坏：strict 报错带行号，lenient 跳过并计数"""
    lines = [
        '{"user_id": "u1", "product_id": "a", "event_kind": "Served", "timestamp": 1}',
        '{"user_id": "u1", "event_kind": ',
        '{"user_id": "u1", "product_id": "a", "event_kind": "Clicked", "timestamp": 2}',
    ]
    with pytest.raises(ParseError) as excinfo:
        parse_event_lines(lines, strict=True)
    assert excinfo.value.line_no == 2

    result = parse_event_lines(lines, strict=False)
    assert len(result.records) == 2
    assert result.skipped_count == 1


def test_ingest_events_file_round_trip():
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / 'events.jsonl'
        records = served('u1', ['a', 'b'], T0) + [ev(EventKind.DWELL, 'a', T0 + 1, dwell=4.5)]
        write_events(path, records)
        result = ingest_events(path)
        assert result.records == records
        assert result.skipped_count == 0

        with pytest.raises(IoError):
            ingest_events(Path(tmpdir) / 'missing.jsonl')


def test_ingest_invalid_utf8_line():
    """非 UTF-8 的行按坏行处理：strict 报行号，lenient 只丢这一行"""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / 'events.jsonl'
        write_events(path, served('u1', ['a'], T0))
        with open(path, 'ab') as f:
            f.write(b'\xff\xfe\n')
            f.write(ev(EventKind.CLICKED, 'a', T0 + 1).to_json_line().encode('utf-8') + b'\n')

        with pytest.raises(ParseError) as excinfo:
            ingest_events(path, strict=True)
        assert excinfo.value.line_no == 2

        result = ingest_events(path, strict=False)
        assert [r.event_kind for r in result.records] == [EventKind.SERVED, EventKind.CLICKED]
        assert result.skipped_count == 1

        lines = [b'\xff', '{"user_id": "u1", "product_id": "a", "event_kind": "Served", "timestamp": 1}']
        with pytest.raises(ParseError) as excinfo:
            parse_event_lines(lines, strict=True)
        assert excinfo.value.line_no == 1
        assert parse_event_lines(lines, strict=False).skipped_count == 1


def test_invalid_utf8_snapshot_and_inventory():
    with tempfile.TemporaryDirectory() as tmpdir:
        state_dir = Path(tmpdir) / 'state'
        state_dir.mkdir()
        (state_dir / 'u1.json').write_bytes(b'{"user_id": "\xff"}')
        with pytest.raises(SnapshotError):
            SnapshotStore(state_dir).load('u1')

        inventory_path = Path(tmpdir) / 'inventory.json'
        inventory_path.write_bytes(b'[{"product_id": "\xff"}]')
        with pytest.raises(ValidationError):
            load_inventory(inventory_path)


def test_inventory_file_round_trip():
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / 'inventory.json'
        inventory = make_inventory()
        write_inventory(path, inventory)
        loaded = load_inventory(path)
        assert loaded.ids == inventory.ids
        assert loaded.brands() == inventory.brands()

        path.write_text('{"not": "a list"}', encoding='utf-8')
        with pytest.raises(ValidationError):
            load_inventory(path)


def test_snapshot_store():
    """保存/加载/列出/重置快照"""
    inventory = make_inventory()
    with tempfile.TemporaryDirectory() as tmpdir:
        store = SnapshotStore(Path(tmpdir) / 'state')
        assert store.list_users() == []
        assert store.load('u1') is None

        state = new_user_state('u1', inventory, 3)
        state.negative_weights.values[2] = 1.25
        path = store.save(state)
        assert path.read_text(encoding='utf-8') == render_snapshot(state)
        assert store.load('u1', inventory) == state
        assert store.list_users() == ['u1']

        store.save(new_user_state('u2', inventory, 3))
        assert store.load_all(inventory) == {'u1': state, 'u2': new_user_state('u2', inventory, 3)}

        other = build_inventory([Product('a', 'x')])
        with pytest.raises(SnapshotError):
            store.load('u1', other)
        with pytest.raises(SnapshotError):
            store.load_all(other)
        with pytest.raises(ValidationError):
            store.load('../u1')

        assert store.reset('u1') is True
        assert store.reset('u1') is False
        assert store.load('u1') is None
        assert store.list_users() == ['u2']


def test_split_batches():
    events = (
        [ev(EventKind.CLICKED, 'a', T0)]
        + served('u1', ['a', 'b'], T0 + 1)
        + [ev(EventKind.VIEWED, 'a', T0 + 2)]
        + served('u1', ['c'], T0 + 3)
    )
    batches = split_batches(events)
    assert [len(batch) for batch in batches] == [1, 3, 1]
    assert served_items(batches[0]) == []
    assert served_items(batches[1]) == ['a', 'b']


def test_replay_empty_log():
    inventory = make_inventory()
    states = {'u1': new_user_state('u1', inventory, 3)}
    result = replay([], states, inventory)
    assert result.states == states
    assert result.records == []


def test_replay_single_dwell_penalty():
    """点击未加入 + 停留 30s → 最终快照中 a 的权重为 1.3"""
    inventory = make_inventory()
    events = served('u1', ['a', 'b'], T0) + [
        ev(EventKind.VIEWED, 'a', T0 + 1),
        ev(EventKind.CLICKED, 'a', T0 + 2),
        ev(EventKind.DWELL, 'a', T0 + 32, dwell=30.0),
    ]
    result = replay(events, {}, inventory)
    state = result.states['u1']
    assert state.negative_weights.values[0] == pytest.approx(1.3)
    assert state.weight_set_at[0] == T0 + 32
    assert state.serve_count == 1
    assert state.window.union() == frozenset({'a', 'b'})
    assert [r.window_mode for r in result.records] == [WindowMode.SLIDING_K, WindowMode.ALG3_SET]
    assert result.records[0].freshness == 1.0


def test_replay_prioritizes_added_products():
    inventory = make_inventory()
    events = served('u1', ['a'], T0) + [ev(EventKind.CLICKED, 'a', T0 + 1), ev(EventKind.ADDED, 'a', T0 + 2)]
    state = replay(events, {}, inventory).states['u1']
    assert state.prioritized == {'a'}
    assert state.negative_weights.values[0] == 1.0


def test_replay_rejects_out_of_order():
    inventory = make_inventory()
    events = [ev(EventKind.SERVED, 'a', T0 + 5), ev(EventKind.CLICKED, 'a', T0)]
    with pytest.raises(OutOfOrderEvents):
        replay(events, {}, inventory)


def test_replay_twice_equals_concatenated():
    """分两次回放与一次回放拼接日志得到相同状态"""
    inventory = make_inventory()
    first = served('u1', ['a', 'b'], T0) + [
        ev(EventKind.CLICKED, 'a', T0 + 1), ev(EventKind.DWELL, 'a', T0 + 2, dwell=12.0),
    ] + served('u2', ['c'], T0 + 3) + [ev(EventKind.VIEWED, 'c', T0 + 4, 'u2')]
    second = served('u1', ['a', 'c'], T0 + 10) + [
        ev(EventKind.CLICKED, 'c', T0 + 11), ev(EventKind.ADDED, 'c', T0 + 12),
    ] + served('u2', ['c', 'd'], T0 + 13)
    settings = Settings()

    step = replay(first, {}, inventory, settings)
    step = replay(second, step.states, inventory, settings)
    once = replay(first + second, {}, inventory, settings)
    assert step.states == once.states
    assert {uid: render_snapshot(s) for uid, s in step.states.items()} == \
        {uid: render_snapshot(s) for uid, s in once.states.items()}


def test_replay_freshness_across_calls():
    inventory = make_inventory()
    # 连续的 Served 属于同一次调用，中间需要交互事件分隔
    events = served('u1', ['a', 'b'], T0) + [ev(EventKind.VIEWED, 'a', T0)] + served('u1', ['b', 'c'], T0 + 1)
    result = replay(events, {}, inventory)
    sliding = [r for r in result.records if r.window_mode == WindowMode.SLIDING_K]
    assert [r.freshness for r in sliding] == [1.0, 0.5]
    assert [r.call_index for r in sliding] == [0, 1]


def test_reports_are_stable():
    rows = [SessionRow(0, 'Baseline', 'u0', 1.0, 1.0, 2, 1)]
    csv_text = render_session_csv(rows)
    assert csv_text.splitlines()[0] == ','.join(SESSION_CSV_FIELDS)
    assert csv_text.splitlines()[1] == '0,Baseline,u0,1.0,1.0,2,1'

    inventory = make_inventory()
    result = replay(served('u1', ['a'], T0), {}, inventory)
    lines = render_metric_records(result.records).splitlines()
    assert json.loads(lines[0])['window_mode'] == 'sliding_k'

    report = metric_report(result.records, report_header(5, {}))
    assert report['header'] == {'seed': 5, 'rng_algorithm': 'numpy.PCG64', 'config': {}}
    assert report['summary']['sliding_k'] == {'calls': 1, 'mean_freshness': 1.0}


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-q']))
