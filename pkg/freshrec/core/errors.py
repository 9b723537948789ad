# -*- coding: utf-8 -*-
"""
freshrec exceptions

ValidationError 系列对应 CLI 退出码 1，IoError 对应退出码 2。
"""


class FreshnessError(Exception):
    """Base exception for freshrec operations"""
    exit_code = 1


class ValidationError(FreshnessError):
    """输入或状态不满足约束"""
    exit_code = 1


class EmptyInventory(ValidationError):
    pass


class DuplicateProductId(ValidationError):
    pass


class InvalidProduct(ValidationError):
    pass


class UnknownProduct(ValidationError):
    pass


class InvalidWindowCapacity(ValidationError):
    pass


class InvalidServeSize(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class ScoreKindMismatch(ValidationError):
    pass


class InvalidScores(ValidationError):
    pass


class ForeignUserEvent(ValidationError):
    pass


class InvalidEvent(ValidationError):
    pass


class IndivisibleBatch(ValidationError):
    pass


class EmptyList(ValidationError):
    pass


class OutOfOrderEvents(ValidationError):
    pass


class ConfigError(ValidationError):
    pass


class SnapshotError(ValidationError):
    pass


class ParseError(ValidationError):
    """事件日志解析失败（带行号）"""

    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class IoError(FreshnessError):
    """文件读写失败"""
    exit_code = 2


class UsageError(ValidationError):
    """命令行参数错误"""
    pass
