# -*- coding: utf-8 -*-
"""
命令基类

定义所有子命令的基类接口
"""

import argparse
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Optional, TypeVar

from pydantic import BaseModel, ValidationError as PydanticValidationError
from rich.console import Console

from ...core.errors import IoError, UsageError
from ...io.reports import render_json, write_json
from ...utils.config import Settings, describe_errors, load_settings

ModelT = TypeVar('ModelT', bound=BaseModel)


class Command(ABC):
    """子命令基类"""

    def __init__(self, console: Console):
        """
        初始化命令

        Args:
            console: Rich Console 实例
        """
        self.console = console

    @property
    @abstractmethod
    def name(self) -> str:
        """子命令名称"""
        pass

    @property
    def description(self) -> str:
        """命令描述"""
        return ""

    @property
    def usage(self) -> str:
        """命令用法示例（用于帮助文档生成）"""
        return f"freshrec {self.name}"

    @property
    def category(self) -> str:
        """命令类别：'pipeline', 'analysis' 或 'other'"""
        return "other"

    def add_arguments(self, parser: argparse.ArgumentParser):
        """注册子命令自己的参数"""
        pass

    @abstractmethod
    def execute(self, args: argparse.Namespace) -> int:
        """
        执行命令

        Args:
            args: 解析后的命令行参数（含公共参数）

        Returns:
            退出码
        """
        pass

    def load_settings(self, args: argparse.Namespace) -> Settings:
        """读取配置并应用 --seed 覆盖"""
        settings = load_settings(getattr(args, 'config', None), force_reload=True)
        return settings.with_seed(getattr(args, 'seed', None))

    def strict_mode(self, args: argparse.Namespace, settings: Settings) -> bool:
        strict = getattr(args, 'strict', None)
        return settings.ingestion.strict if strict is None else strict

    def override(self, model: ModelT, **updates: Any) -> ModelT:
        """用命令行参数覆盖配置块字段并重新校验；值为 None 的参数不覆盖"""
        updates = {key: value for key, value in updates.items() if value is not None}
        if not updates:
            return model
        try:
            return type(model).model_validate({**model.model_dump(), **updates})
        except PydanticValidationError as e:
            raise UsageError(f"invalid {type(model).__name__} override: {describe_errors(e)}") from None

    def require_file(self, path: Optional[str], what: str) -> Path:
        """执行前检查输入路径"""
        if not path:
            raise IoError(f"{what} path is required")
        resolved = Path(path)
        if not resolved.is_file():
            raise IoError(f"{what} not found: {path}")
        return resolved

    def emit_json(self, args: argparse.Namespace, data: Dict[str, Any]):
        """写入 --out；未指定时输出到 stdout"""
        out = getattr(args, 'out', None)
        if out:
            write_json(out, data)
            self.console.print(f"[green]✓ 已写入 {out}[/green]")
        else:
            self.console.out(render_json(data), end='', highlight=False)
