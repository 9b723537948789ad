# -*- coding: utf-8 -*-
"""
replay 命令 - 从快照出发回放事件日志，并写回快照
"""

import argparse

from rich.table import Table

from ...core.models import BASELINE_WEIGHT
from ...io.events import ingest_events, load_inventory
from ...io.replay import replay
from ...io.reports import metric_report, report_header
from ...io.snapshots import SnapshotStore
from .base import Command


class ReplayCommand(Command):
    """回放事件日志"""

    @property
    def name(self) -> str:
        return "replay"

    @property
    def description(self) -> str:
        return "Replay an event log through the feedback loop and persist user snapshots"

    @property
    def usage(self) -> str:
        return "freshrec replay EVENTS --inventory INVENTORY [--state-dir DIR] [--out REPORT]"

    @property
    def category(self) -> str:
        return "pipeline"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument('events_path', help='Event log (one JSON object per line)')
        parser.add_argument('--inventory', required=True, help='Inventory JSON array')
        parser.add_argument('--state-dir', default='state', help='Snapshot directory (default: state)')

    def execute(self, args: argparse.Namespace) -> int:
        events_path = self.require_file(args.events_path, "event log")
        inventory_path = self.require_file(args.inventory, "inventory")
        settings = self.load_settings(args)

        inventory = load_inventory(inventory_path)
        ingested = ingest_events(events_path, strict=self.strict_mode(args, settings))
        store = SnapshotStore(args.state_dir)

        user_ids = sorted({event.user_id for event in ingested.records})
        states = {}
        for user_id in user_ids:
            state = store.load(user_id, inventory)
            if state is not None:
                states[user_id] = state

        result = replay(ingested.records, states, inventory, settings)
        store.save_all({uid: result.states[uid] for uid in user_ids})

        table = Table(title="Replay")
        table.add_column("用户", style="cyan")
        table.add_column("serve_count", justify="right")
        table.add_column("penalized", justify="right")
        table.add_column("prioritized", justify="right")
        for user_id in user_ids:
            state = result.states[user_id]
            penalized = int((state.negative_weights.values > BASELINE_WEIGHT).sum())
            table.add_row(user_id, str(state.serve_count), str(penalized), str(len(state.prioritized)))
        self.console.print(table)
        self.console.print(
            f"[dim]{len(ingested.records)} events, {ingested.skipped_count} skipped, "
            f"{result.calls} serve calls[/dim]"
        )

        if args.out:
            header = report_header(getattr(args, 'seed', None), settings.model_dump(mode='json', by_alias=True))
            self.emit_json(args, metric_report(result.records, header, {
                'events': len(ingested.records),
                'skipped': ingested.skipped_count,
                'users': user_ids,
            }))
        return 0
