# -*- coding: utf-8 -*-
"""
日志配置 - 所有模块使用 logging.getLogger(__name__)，由这里统一挂上 RichHandler
"""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "freshrec"


def setup_logging(verbose: bool = False, console: Optional[Console] = None) -> logging.Logger:
    """
    配置 freshrec 日志

    Args:
        verbose: True 时输出 DEBUG，否则 WARNING 以上
        console: 输出目标，默认写 stderr 以免混入命令结果

    Returns:
        freshrec 根 logger
    """
    logger = logging.getLogger(LOGGER_NAME)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    handler = RichHandler(
        console=console or Console(stderr=True),
        show_time=False,
        show_path=verbose,
        markup=False,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    logger.propagate = False
    return logger
