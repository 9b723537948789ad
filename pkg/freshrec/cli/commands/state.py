# -*- coding: utf-8 -*-
"""
state 命令 - 查看、重置或列出用户快照
"""

import argparse
from typing import Optional

import numpy as np
from rich.table import Table

from ...core.errors import UsageError
from ...core.models import BASELINE_WEIGHT, NEVER, Inventory
from ...io.events import load_inventory
from ...io.snapshots import SnapshotStore
from .base import Command

# show 时最多列出的已惩罚商品数
MAX_WEIGHT_ROWS = 20


class StateCommand(Command):
    """用户快照管理"""

    @property
    def name(self) -> str:
        return "state"

    @property
    def description(self) -> str:
        return "Show, reset or list user state snapshots"

    @property
    def usage(self) -> str:
        return "freshrec state show|reset USER_ID | state list [--state-dir DIR] [--inventory INVENTORY]"

    @property
    def category(self) -> str:
        return "pipeline"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument('action', choices=['show', 'reset', 'list'], help='show, reset or list')
        parser.add_argument('user_id', nargs='?', help='User whose snapshot is addressed (show, reset)')
        parser.add_argument('--state-dir', default='state', help='Snapshot directory (default: state)')
        parser.add_argument('--inventory', help='Inventory JSON array for product ids and length checks')

    def execute(self, args: argparse.Namespace) -> int:
        store = SnapshotStore(args.state_dir)
        if args.action == 'list':
            return self._list(store, args)
        if not args.user_id:
            raise UsageError(f"state {args.action} needs a USER_ID")
        if args.action == 'reset':
            return self._reset(store, args.user_id)
        return self._show(store, args)

    def _reset(self, store: SnapshotStore, user_id: str) -> int:
        if store.reset(user_id):
            self.console.print(f"[green]✓ 已重置 {user_id}[/green]")
        else:
            self.console.print(f"[yellow]{user_id} 没有快照，无需重置[/yellow]")
        return 0

    def _inventory(self, args: argparse.Namespace) -> Optional[Inventory]:
        if not args.inventory:
            return None
        return load_inventory(self.require_file(args.inventory, "inventory"))

    def _list(self, store: SnapshotStore, args: argparse.Namespace) -> int:
        """列出目录中全部快照；给定库存时逐个校验长度"""
        states = store.load_all(self._inventory(args))
        summary = {
            user_id: {
                'serve_count': state.serve_count,
                'penalized': int(np.count_nonzero(state.negative_weights.values != BASELINE_WEIGHT)),
                'prioritized': len(state.prioritized),
                'history': len(state.history),
            }
            for user_id, state in states.items()
        }
        if args.out:
            self.emit_json(args, {'state_dir': str(store.state_dir), 'users': summary})
            return 0
        if not summary:
            self.console.print(f"[yellow]{store.state_dir} 中没有快照[/yellow]")
            return 0

        table = Table(title=f"Snapshots in {store.state_dir}")
        table.add_column("用户", style="cyan")
        for column in ('serve_count', 'penalized', 'prioritized', 'history'):
            table.add_column(column, justify="right")
        for user_id, row in summary.items():
            table.add_row(user_id, *(str(value) for value in row.values()))
        self.console.print(table)
        return 0

    def _show(self, store: SnapshotStore, args: argparse.Namespace) -> int:
        inventory = self._inventory(args)
        state = store.load(args.user_id, inventory)
        if state is None:
            self.console.print(f"[yellow]{args.user_id} 没有快照[/yellow]")
            return 0

        if args.out:
            self.emit_json(args, state.to_dict())
            return 0

        self.console.print(f"[bold]{state.user_id}[/bold]  serve_count={state.serve_count}  "
                           f"history={len(state.history)} (count {state.history_count})")
        self.console.print(f"prioritized: {', '.join(sorted(state.prioritized)) or '-'}")
        self.console.print(f"window: {[sorted(s) for s in state.window.served_sets]}")

        ids = inventory.ids if inventory is not None else None
        table = Table(title="NegativeWeights (non-baseline)")
        table.add_column("position", justify="right")
        table.add_column("product")
        table.add_column("weight", justify="right")
        table.add_column("set_at", justify="right")
        table.add_column("suppressed", justify="right")
        changed = [i for i, w in enumerate(state.negative_weights.values) if w != BASELINE_WEIGHT]
        for position in changed[:MAX_WEIGHT_ROWS]:
            set_at = int(state.weight_set_at[position])
            table.add_row(
                str(position),
                ids[position] if ids is not None else "?",
                f"{state.negative_weights.values[position]:.4f}",
                "-" if set_at == NEVER else str(set_at),
                str(int(state.suppression_count[position])),
            )
        self.console.print(table)
        if len(changed) > MAX_WEIGHT_ROWS:
            self.console.print(f"[dim]... {len(changed) - MAX_WEIGHT_ROWS} more[/dim]")
        return 0
