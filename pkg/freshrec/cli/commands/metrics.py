# -*- coding: utf-8 -*-
"""
metrics 命令 - 计算事件日志中每次推荐的新鲜度
"""

import argparse

from rich.table import Table

from ...io.events import ingest_events
from ...io.replay import check_order, group_by_user, served_items, split_batches
from ...io.reports import metric_report, report_header, write_metric_records
from ...metric.freshness import FreshnessTracker, WindowMode
from .base import Command


class MetricsCommand(Command):
    """从日志计算新鲜度"""

    @property
    def name(self) -> str:
        return "metrics"

    @property
    def description(self) -> str:
        return "Compute per-call freshness for the serve calls recorded in an event log"

    @property
    def usage(self) -> str:
        return "freshrec metrics LOG [--window-capacity K] [--out REPORT] [--records RECORDS.jsonl]"

    @property
    def category(self) -> str:
        return "analysis"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument('log_path', help='Event log (one JSON object per line)')
        parser.add_argument('--window-capacity', type=int, help='Sliding window size k')
        parser.add_argument('--records', help='Also write one MetricRecord per line (JSONL)')

    def execute(self, args: argparse.Namespace) -> int:
        log_path = self.require_file(args.log_path, "event log")
        settings = self.load_settings(args)
        metric_config = self.override(settings.metric, window_capacity=args.window_capacity)

        ingested = ingest_events(log_path, strict=self.strict_mode(args, settings))
        check_order(ingested.records)

        records = []
        call_index = 0
        grouped = group_by_user(ingested.records)
        for user_id in sorted(grouped):
            tracker = FreshnessTracker(metric_config, user_id=user_id)
            for batch in split_batches(grouped[user_id]):
                items = served_items(batch)
                if not items:
                    continue
                records.extend(tracker.observe(items, call_index=call_index))
                call_index += 1

        table = Table(title=f"Freshness (k={metric_config.window_capacity})")
        table.add_column("call", justify="right")
        table.add_column("用户", style="cyan")
        table.add_column("sliding", justify="right")
        table.add_column("alg3", justify="right")
        sliding = [r for r in records if r.window_mode == WindowMode.SLIDING_K]
        alg3 = [r for r in records if r.window_mode == WindowMode.ALG3_SET]
        for s, a in zip(sliding, alg3):
            table.add_row(str(s.call_index), s.user_id or "", f"{s.freshness:.3f}", f"{a.freshness:.3f}")
        self.console.print(table)

        if not sliding:
            self.console.print("[yellow]日志中没有推荐记录 (Served)[/yellow]")

        if args.records:
            write_metric_records(args.records, records)
            self.console.print(f"[green]✓ 已写入 {args.records}[/green]")

        if args.out:
            header = report_header(getattr(args, 'seed', None), {'MetricConfig': metric_config.model_dump(mode='json')})
            self.emit_json(args, metric_report(records, header))
        return 0
