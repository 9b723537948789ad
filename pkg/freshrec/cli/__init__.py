# -*- coding: utf-8 -*-
"""
CLI 模块
"""


# 延迟导入，避免 import freshrec.cli 时就扫描全部子命令
def __getattr__(name):
    """延迟导入模块成员"""
    if name == 'main':
        from .main import main
        return main
    if name == 'CommandRegistry':
        from .command_registry import CommandRegistry
        return CommandRegistry
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = ['main', 'CommandRegistry']
