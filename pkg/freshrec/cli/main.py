# -*- coding: utf-8 -*-
"""
freshrec 命令行入口

退出码：0 成功，1 校验错误，2 读写错误，130 中断
"""

import argparse
import logging
import sys
from typing import List, NoReturn, Optional

from rich.console import Console
from rich.markup import escape

from .. import __version__
from ..core.errors import FreshnessError, UsageError
from ..utils.log import setup_logging
from .command_registry import CommandRegistry

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """参数错误以 UsageError 抛出，统一映射为退出码 1"""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_common_parser() -> argparse.ArgumentParser:
    """所有子命令共享的参数"""
    common = ArgumentParser(add_help=False)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument('--strict', dest='strict', action='store_true', default=None,
                      help='Reject unknown fields and malformed lines (default: Ingestion.strict)')
    mode.add_argument('--lenient', dest='strict', action='store_false',
                      help='Ignore unknown fields and skip malformed lines')
    common.add_argument('--seed', type=int, help='Override ShuffleConfig/ExperimentConfig rng_seed')
    common.add_argument('--config', help='Config file (default: $FRESHREC_CONFIG or config/freshrec.yaml)')
    common.add_argument('--out', help='Output report path (JSON)')
    common.add_argument('-v', '--verbose', action='store_true', help='Debug logging')
    return common


def build_parser(registry: CommandRegistry) -> argparse.ArgumentParser:
    parser = ArgumentParser(
        prog='freshrec',
        description='Freshness post-processing for recommendation lists',
        epilog=registry.format_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('--version', action='version', version=f'freshrec {__version__}')
    subparsers = parser.add_subparsers(dest='command_name', metavar='COMMAND')
    registry.register_parsers(subparsers, parents=[build_common_parser()])
    return parser


def main(argv: Optional[List[str]] = None, console: Optional[Console] = None) -> int:
    """主入口点"""
    console = console or Console()
    error_console = Console(stderr=True)

    try:
        registry = CommandRegistry(console)
        parser = build_parser(registry)
        args = parser.parse_args(argv)

        if not getattr(args, 'command', None):
            parser.print_help()
            return 1

        setup_logging(verbose=args.verbose)
        logger.debug("running %s", args.command_name)
        return args.command.execute(args)

    except KeyboardInterrupt:
        error_console.print("\n[yellow]Interrupted[/yellow]")
        return 130
    except FreshnessError as e:
        error_console.print(f"[red]Error: {escape(str(e))}[/red]", highlight=False)
        return e.exit_code


if __name__ == '__main__':
    sys.exit(main())
