# -*- coding: utf-8 -*-
"""
CLI 子命令
"""

from .base import Command
from .metrics import MetricsCommand
from .replay import ReplayCommand
from .shuffle_demo import ShuffleDemoCommand
from .simulate import SimulateCommand
from .state import StateCommand

__all__ = [
    'Command',
    'MetricsCommand',
    'ReplayCommand',
    'ShuffleDemoCommand',
    'SimulateCommand',
    'StateCommand',
]
