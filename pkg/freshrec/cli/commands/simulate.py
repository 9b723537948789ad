# -*- coding: utf-8 -*-
"""
simulate 命令 - 在合成用户上运行离线 A/B 对比
"""

import argparse

from rich.table import Table

from ...io.events import load_inventory
from ...io.reports import experiment_report, write_session_csv
from ...simulator.experiment import Variant, run_ab
from .base import Command


class SimulateCommand(Command):
    """运行 A/B 模拟"""

    @property
    def name(self) -> str:
        return "simulate"

    @property
    def description(self) -> str:
        return "Run the offline A/B simulation over synthetic users"

    @property
    def usage(self) -> str:
        return "freshrec simulate [--variant NAME ...] [--users N] [--sessions N] [--csv PATH] [--out REPORT]"

    @property
    def category(self) -> str:
        return "analysis"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument(
            '--variant', action='append', choices=[v.value for v in Variant],
            help='Variant to run (repeatable, default: all)',
        )
        parser.add_argument('--users', type=int, help='Override ExperimentConfig.users')
        parser.add_argument('--sessions', type=int, help='Override ExperimentConfig.sessions')
        parser.add_argument('--inventory', help='Inventory JSON array (default: synthetic)')
        parser.add_argument('--csv', help='Write per-session rows as CSV')

    def execute(self, args: argparse.Namespace) -> int:
        settings = self.load_settings(args)
        config = settings.experiment_config()

        config = self.override(config, users=args.users, sessions=args.sessions)

        inventory = None
        if args.inventory:
            inventory = load_inventory(self.require_file(args.inventory, "inventory"))

        variants = [Variant(v) for v in args.variant] if args.variant else list(Variant)
        report = run_ab(config, inventory, variants)

        table = Table(title=f"A/B ({config.users} users × {config.sessions} sessions, seed {config.rng_seed})")
        table.add_column("Variant", style="cyan")
        table.add_column("freshness (sliding)", justify="right")
        table.add_column("freshness (alg3)", justify="right")
        table.add_column("clicks/session", justify="right")
        table.add_column("adds/session", justify="right")
        table.add_column("p vs Baseline", justify="right")
        for name, summary in report.variants.items():
            comparison = report.comparisons.get(f"{name}_vs_Baseline")
            table.add_row(
                name,
                f"{summary.mean_freshness_sliding:.3f}",
                f"{summary.mean_freshness_alg3:.3f}",
                f"{summary.mean_clicks_per_session:.2f}",
                f"{summary.mean_adds_per_session:.2f}",
                f"{comparison['p_value']:.2g}" if comparison else "-",
            )

        if args.csv:
            write_session_csv(args.csv, report.rows)

        # 没有 --out 时 stdout 只输出 JSON 报告
        if args.out:
            self.console.print(table)
        self.emit_json(args, experiment_report(report))
        return 0
