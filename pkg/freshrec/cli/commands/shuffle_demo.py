# -*- coding: utf-8 -*-
"""
shuffle-demo 命令 - 对一份带品牌的列表执行分块洗牌并展示结果
"""

import argparse

from rich.table import Table

from ...core.models import RecommendationList
from ...io.events import load_inventory
from ...io.reports import report_header
from ...shuffle.counting import (
    MAX_ENUMERATION_SIZE,
    ShuffleMode,
    batched_space_discrepancy,
    shuffle_space_size,
)
from ...shuffle.shuffler import count_adjacencies, shuffle
from .base import Command


class ShuffleDemoCommand(Command):
    """品牌感知洗牌演示"""

    @property
    def name(self) -> str:
        return "shuffle-demo"

    @property
    def description(self) -> str:
        return "Shuffle a brand-labelled list in blocks and report brand adjacencies"

    @property
    def usage(self) -> str:
        return "freshrec shuffle-demo LIST --p 5 --seed 7 [--out REPORT]"

    @property
    def category(self) -> str:
        return "analysis"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument('list_path', help='JSON array of {"product_id", "brand"} in rank order')
        parser.add_argument('--p', type=int, help='Partition length (default: ShuffleConfig)')

    def execute(self, args: argparse.Namespace) -> int:
        list_path = self.require_file(args.list_path, "list")
        settings = self.load_settings(args)
        config = self.override(settings.shuffle, partition_length=args.p)

        # 列表顺序即排名顺序
        inventory = load_inventory(list_path)
        brands = inventory.brands()
        n = len(inventory)
        original = RecommendationList(list(inventory.ids), [float(n - i) for i in range(n)])
        shuffled = shuffle(original, config, brands)

        table = Table(title=f"Shuffle (p={config.partition_length}, seed={config.rng_seed})")
        table.add_column("#", justify="right")
        table.add_column("before", style="cyan")
        table.add_column("after", style="green")
        for i, (before, after) in enumerate(zip(original.items, shuffled.items)):
            table.add_row(str(i), f"{before} ({brands[before]})", f"{after} ({brands[after]})")
        self.console.print(table)

        before_adj = count_adjacencies(original.items, brands)
        after_adj = count_adjacencies(shuffled.items, brands)
        self.console.print(f"同品牌相邻: {before_adj} → {after_adj}")

        space = {'whole': shuffle_space_size(n, mode=ShuffleMode.WHOLE)}
        p = config.partition_length
        if n % p == 0:
            space['batched'] = shuffle_space_size(n, p, ShuffleMode.BATCHED)
            if n <= MAX_ENUMERATION_SIZE:
                space['batched_check'] = batched_space_discrepancy(n, p)

        if args.out:
            self.emit_json(args, {
                'header': report_header(config.rng_seed, {'ShuffleConfig': config.model_dump(mode='json')}),
                'input': original.items,
                'output': shuffled.items,
                'adjacencies': {'before': before_adj, 'after': after_adj},
                'shuffle_space': space,
            })
        return 0
