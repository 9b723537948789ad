# -*- coding: utf-8 -*-
"""
命令注册器 - 自动发现子命令并注册到 argparse
"""

import argparse
import importlib
import inspect
import logging
from pathlib import Path
from typing import Dict, List, Type

from rich.console import Console

from .commands.base import Command

logger = logging.getLogger(__name__)

COMMANDS_PACKAGE = 'freshrec.cli.commands'


class CommandMetadata:
    """命令元数据"""

    def __init__(self, name: str, description: str, usage: str, category: str,
                 module_path: str, class_name: str):
        self.name = name
        self.description = description
        self.usage = usage
        self.category = category
        self.module_path = module_path
        self.class_name = class_name


class CommandRegistry:
    """命令注册器 - 扫描 commands/ 目录中的 Command 子类"""

    def __init__(self, console: Console):
        self.console = console
        self._commands: Dict[str, Command] = {}
        self._command_metadata: Dict[str, CommandMetadata] = {}
        self._discover_commands()

    def _discover_commands(self):
        """扫描 commands/ 目录，自动发现所有命令类"""
        commands_dir = Path(__file__).parent / 'commands'

        # 按文件名排序，保证子命令顺序稳定
        for py_file in sorted(commands_dir.glob('*.py')):
            if py_file.name in ('__init__.py', 'base.py'):
                continue

            module_path = f'{COMMANDS_PACKAGE}.{py_file.stem}'
            module = importlib.import_module(module_path)

            for class_name, obj in inspect.getmembers(module, inspect.isclass):
                if obj is Command or not issubclass(obj, Command):
                    continue
                if obj.__module__ != module_path:
                    continue
                self._register(obj, module_path, class_name)

    def _register(self, command_class: Type[Command], module_path: str, class_name: str):
        instance = command_class(console=self.console)
        if instance.name in self._commands:
            logger.warning("duplicate command %s in %s ignored", instance.name, module_path)
            return
        self._commands[instance.name] = instance
        self._command_metadata[instance.name] = CommandMetadata(
            name=instance.name,
            description=instance.description,
            usage=instance.usage,
            category=instance.category,
            module_path=module_path,
            class_name=class_name,
        )

    def register_parsers(self, subparsers, parents: List[argparse.ArgumentParser]):
        """为每个命令创建子解析器，并通过 set_defaults 绑定命令实例"""
        for name in self.list_commands():
            command = self._commands[name]
            parser = subparsers.add_parser(
                name, help=command.description, description=command.description, parents=parents
            )
            command.add_arguments(parser)
            parser.set_defaults(command=command)

    def get_commands_by_category(self) -> Dict[str, List[CommandMetadata]]:
        """按类别分组获取命令元数据"""
        categories: Dict[str, List[CommandMetadata]] = {}
        for metadata in self._command_metadata.values():
            categories.setdefault(metadata.category, []).append(metadata)
        return categories

    def list_commands(self) -> List[str]:
        return list(self._command_metadata.keys())

    def format_epilog(self) -> str:
        """按类别列出命令用法，作为 --help 的结尾"""
        lines = []
        for category, commands in sorted(self.get_commands_by_category().items()):
            lines.append(f"{category}:")
            lines.extend(f"  {metadata.usage}" for metadata in commands)
        return '\n'.join(lines)
