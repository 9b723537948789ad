# -*- coding: utf-8 -*-
"""
Event logs, state snapshots, replay and reports
"""

from .events import (
    IngestResult,
    parse_event_lines,
    ingest_events,
    write_events,
    load_inventory,
    write_inventory,
)
from .snapshots import SnapshotStore, render_snapshot
from .replay import ReplayResult, check_order, split_batches, served_items, replay
from .reports import (
    SESSION_CSV_FIELDS,
    report_header,
    render_json,
    write_json,
    render_session_csv,
    write_session_csv,
    render_metric_records,
    write_metric_records,
    summarize_records,
    metric_report,
    experiment_report,
)

__all__ = [
    'IngestResult', 'parse_event_lines', 'ingest_events', 'write_events',
    'load_inventory', 'write_inventory',
    'SnapshotStore', 'render_snapshot',
    'ReplayResult', 'check_order', 'split_batches', 'served_items', 'replay',
    'SESSION_CSV_FIELDS', 'report_header', 'render_json', 'write_json',
    'render_session_csv', 'write_session_csv', 'render_metric_records',
    'write_metric_records', 'summarize_records', 'metric_report', 'experiment_report',
]
