# -*- coding: utf-8 -*-
"""
核心领域模型 - 商品、库存、分数向量、事件与用户状态

所有其它模块都消费这里定义的类型。权重数组按库存位置索引，
Inventory.index 负责 product_id → 位置的映射。
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError as PydanticValidationError
from pydantic import model_validator

from .errors import (
    DuplicateProductId,
    EmptyInventory,
    InvalidEvent,
    InvalidProduct,
    InvalidScores,
    InvalidWindowCapacity,
    LengthMismatch,
    SnapshotError,
    UnknownProduct,
)

# NegativeWeights 基线值
BASELINE_WEIGHT = 1.0

# weight_set_at 中表示 "从未设置" 的哨兵值
NEVER = -1

SNAPSHOT_VERSION = "v1"


@dataclass
class Product:
    """库存中的商品"""
    product_id: str
    brand: str
    attributes: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.brand:
            raise InvalidProduct(f"product {self.product_id!r} has an empty brand")

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'product_id': self.product_id, 'brand': self.brand}
        if self.attributes:
            data['attributes'] = dict(self.attributes)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Product':
        return cls(
            product_id=str(data['product_id']),
            brand=str(data.get('brand', '')),
            attributes={str(k): str(v) for k, v in (data.get('attributes') or {}).items()},
        )


class Inventory:
    """有序商品集合 + product_id → 位置索引"""

    def __init__(self, products: Sequence[Product]):
        self._products: Tuple[Product, ...] = tuple(products)
        self._index: Dict[str, int] = {}
        for position, product in enumerate(self._products):
            if product.product_id in self._index:
                raise DuplicateProductId(f"duplicate product_id: {product.product_id!r}")
            self._index[product.product_id] = position

        self._ids: Tuple[str, ...] = tuple(p.product_id for p in self._products)
        # 每个位置在 "按 id 升序" 中的名次，用于确定性的并列打破
        order = sorted(range(len(self._ids)), key=lambda i: self._ids[i])
        id_rank = np.empty(len(self._ids), dtype=np.int64)
        id_rank[order] = np.arange(len(self._ids), dtype=np.int64)
        self._id_rank = id_rank

    def __len__(self) -> int:
        return len(self._products)

    def __iter__(self):
        return iter(self._products)

    def __contains__(self, product_id: object) -> bool:
        return product_id in self._index

    @property
    def products(self) -> Tuple[Product, ...]:
        return self._products

    @property
    def index(self) -> Dict[str, int]:
        return dict(self._index)

    @property
    def ids(self) -> Tuple[str, ...]:
        return self._ids

    @property
    def id_rank(self) -> np.ndarray:
        """Ascending-id rank per position (read-only view)"""
        view = self._id_rank.view()
        view.flags.writeable = False
        return view

    def position(self, product_id: str) -> int:
        try:
            return self._index[product_id]
        except KeyError:
            raise UnknownProduct(f"product {product_id!r} is not in the inventory") from None

    def get(self, product_id: str) -> Product:
        return self._products[self.position(product_id)]

    def brands(self) -> Dict[str, str]:
        """product_id → brand"""
        return {p.product_id: p.brand for p in self._products}


def build_inventory(products: Sequence[Product]) -> Inventory:
    """从商品列表构建库存（保持输入顺序）"""
    if not products:
        raise EmptyInventory("inventory needs at least one product")
    return Inventory(products)


class ScoreKind(str, Enum):
    """分数向量的种类"""
    RELEVANCE = "Relevance"
    NEGATIVE_WEIGHTS = "NegativeWeights"
    FINAL = "Final"
    DWELL = "Dwell"


# 这些种类要求所有值非负
_NON_NEGATIVE_KINDS = {ScoreKind.NEGATIVE_WEIGHTS, ScoreKind.DWELL}


class ScoreVector:
    """与库存位置平行的分数数组"""

    __slots__ = ('values', 'kind')

    def __init__(self, values: Iterable[float], kind: ScoreKind):
        array = np.array(values, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(array)):
            raise InvalidScores(f"{kind.value} scores must be finite")
        if kind in _NON_NEGATIVE_KINDS and np.any(array < 0):
            raise InvalidScores(f"{kind.value} scores must be >= 0")
        self.values = array
        self.kind = kind

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScoreVector):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return f"ScoreVector(kind={self.kind.value}, values={self.values.tolist()})"

    def copy(self) -> 'ScoreVector':
        return ScoreVector(self.values.copy(), self.kind)

    def tolist(self) -> List[float]:
        return [float(v) for v in self.values]

    @classmethod
    def zeros(cls, size: int, kind: ScoreKind) -> 'ScoreVector':
        return cls(np.zeros(size, dtype=np.float64), kind)

    @classmethod
    def baseline(cls, size: int) -> 'ScoreVector':
        return cls(np.full(size, BASELINE_WEIGHT, dtype=np.float64), ScoreKind.NEGATIVE_WEIGHTS)


class EventKind(str, Enum):
    """埋点事件类型"""
    SERVED = "Served"
    VIEWED = "Viewed"
    CLICKED = "Clicked"
    ADDED = "AddedToPriorityList"
    PURCHASED = "Purchased"
    DWELL = "Dwell"


class EventRecord(BaseModel):
    """一条埋点事件（事件日志中的一行）"""

    model_config = ConfigDict(extra='forbid', frozen=True)

    user_id: str
    product_id: Optional[str] = None
    event_kind: EventKind
    dwell_seconds: Optional[float] = Field(default=None, ge=0)
    timestamp: int

    @model_validator(mode='after')
    def _check_dwell(self) -> 'EventRecord':
        is_dwell = self.event_kind == EventKind.DWELL
        if is_dwell and self.dwell_seconds is None:
            raise ValueError("Dwell event requires dwell_seconds")
        if not is_dwell and self.dwell_seconds is not None:
            raise ValueError(f"{self.event_kind.value} event must not carry dwell_seconds")
        if is_dwell and not np.isfinite(self.dwell_seconds):
            raise ValueError("dwell_seconds must be finite")
        return self

    @classmethod
    def parse(cls, data: Dict[str, Any], strict: bool = True) -> 'EventRecord':
        """校验一个扁平 dict；lenient 模式下忽略未知字段"""
        if not isinstance(data, dict):
            raise InvalidEvent("event must be a JSON object")
        if not strict:
            data = {k: v for k, v in data.items() if k in cls.model_fields}
        try:
            return cls.model_validate(data)
        except PydanticValidationError as e:
            raise InvalidEvent(_summarize_pydantic_error(e)) from None

    @classmethod
    def from_json_line(cls, line: str, strict: bool = True) -> 'EventRecord':
        try:
            data = json.loads(line)
        except json.JSONDecodeError as e:
            raise InvalidEvent(f"invalid JSON: {e.msg}") from None
        return cls.parse(data, strict=strict)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'user_id': self.user_id}
        if self.product_id is not None:
            data['product_id'] = self.product_id
        data['event_kind'] = self.event_kind.value
        if self.dwell_seconds is not None:
            data['dwell_seconds'] = self.dwell_seconds
        data['timestamp'] = self.timestamp
        return data

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)


def _summarize_pydantic_error(error: PydanticValidationError) -> str:
    parts = []
    for item in error.errors():
        loc = '.'.join(str(p) for p in item.get('loc', ())) or 'event'
        parts.append(f"{loc}: {item.get('msg', 'invalid')}")
    return '; '.join(parts)


@dataclass(frozen=True)
class RecWindow:
    """最近 capacity 次调用的推荐集合（最新的在最后）"""
    capacity: int
    served_sets: Tuple[FrozenSet[str], ...] = ()

    def __post_init__(self):
        if self.capacity < 1:
            raise InvalidWindowCapacity(f"window capacity must be >= 1, got {self.capacity}")
        if len(self.served_sets) > self.capacity:
            raise InvalidWindowCapacity("window holds more sets than its capacity")

    def union(self) -> FrozenSet[str]:
        """A_k：窗口内所有推荐过的商品"""
        result: Set[str] = set()
        for served in self.served_sets:
            result |= served
        return frozenset(result)

    def pushed(self, served: Iterable[str]) -> 'RecWindow':
        sets = self.served_sets + (frozenset(served),)
        return RecWindow(self.capacity, sets[-self.capacity:])

    def to_dict(self) -> Dict[str, Any]:
        return {
            'capacity': self.capacity,
            'served_sets': [sorted(s) for s in self.served_sets],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RecWindow':
        return cls(
            capacity=int(data['capacity']),
            served_sets=tuple(frozenset(s) for s in data.get('served_sets', [])),
        )


@dataclass
class UserSessionState:
    """单个用户的可变状态（由其所属会话独占修改）"""
    user_id: str
    negative_weights: ScoreVector
    weight_set_at: np.ndarray
    suppression_count: np.ndarray
    window: RecWindow
    serve_count: int = 0
    prioritized: Set[str] = field(default_factory=set)
    # 指标重排的累积历史 ProdRecTillNow 与 count
    history: FrozenSet[str] = frozenset()
    history_count: int = 0

    def __len__(self) -> int:
        return len(self.negative_weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UserSessionState):
            return NotImplemented
        return (
            self.user_id == other.user_id
            and self.negative_weights == other.negative_weights
            and np.array_equal(self.weight_set_at, other.weight_set_at)
            and np.array_equal(self.suppression_count, other.suppression_count)
            and self.window == other.window
            and self.serve_count == other.serve_count
            and set(self.prioritized) == set(other.prioritized)
            and self.history == other.history
            and self.history_count == other.history_count
        )

    def copy(self) -> 'UserSessionState':
        return UserSessionState(
            user_id=self.user_id,
            negative_weights=self.negative_weights.copy(),
            weight_set_at=self.weight_set_at.copy(),
            suppression_count=self.suppression_count.copy(),
            window=self.window,
            serve_count=self.serve_count,
            prioritized=set(self.prioritized),
            history=self.history,
            history_count=self.history_count,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'version': SNAPSHOT_VERSION,
            'user_id': self.user_id,
            'negative_weights': self.negative_weights.tolist(),
            'weight_set_at': [None if v == NEVER else int(v) for v in self.weight_set_at],
            'suppression_count': [int(v) for v in self.suppression_count],
            'serve_count': self.serve_count,
            'window': self.window.to_dict(),
            'prioritized': sorted(self.prioritized),
            'history': sorted(self.history),
            'history_count': self.history_count,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'UserSessionState':
        version = data.get('version')
        if version != SNAPSHOT_VERSION:
            raise SnapshotError(f"unsupported snapshot version: {version!r}")
        try:
            weights = ScoreVector(data['negative_weights'], ScoreKind.NEGATIVE_WEIGHTS)
            set_at = np.array(
                [NEVER if v is None else int(v) for v in data['weight_set_at']], dtype=np.int64
            )
            suppression = np.array(data['suppression_count'], dtype=np.int64)
            state = cls(
                user_id=str(data['user_id']),
                negative_weights=weights,
                weight_set_at=set_at,
                suppression_count=suppression,
                window=RecWindow.from_dict(data['window']),
                serve_count=int(data['serve_count']),
                prioritized=set(data.get('prioritized', [])),
                history=frozenset(data.get('history', [])),
                history_count=int(data.get('history_count', 0)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise SnapshotError(f"malformed snapshot: {e}") from None
        if not (len(weights) == len(set_at) == len(suppression)):
            raise SnapshotError("snapshot arrays have different lengths")
        if state.serve_count < 0:
            raise SnapshotError("serve_count must be >= 0")
        return state


def new_user_state(user_id: str, inventory: Inventory, window_capacity: int) -> UserSessionState:
    """新用户：NegativeWeights 全部初始化为 1"""
    if window_capacity < 1:
        raise InvalidWindowCapacity(f"window capacity must be >= 1, got {window_capacity}")
    size = len(inventory)
    return UserSessionState(
        user_id=user_id,
        negative_weights=ScoreVector.baseline(size),
        weight_set_at=np.full(size, NEVER, dtype=np.int64),
        suppression_count=np.zeros(size, dtype=np.int64),
        window=RecWindow(window_capacity),
    )


@dataclass
class RecommendationList:
    """一次推荐调用的有序结果"""
    items: List[str]
    scores: List[float]
    truncated: bool = False

    def __post_init__(self):
        if len(self.items) != len(self.scores):
            raise LengthMismatch(
                f"items ({len(self.items)}) and scores ({len(self.scores)}) differ in length"
            )
        if len(set(self.items)) != len(self.items):
            raise InvalidProduct("recommendation list contains duplicate product ids")

    @property
    def t(self) -> int:
        return len(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def item_set(self) -> FrozenSet[str]:
        return frozenset(self.items)

    def to_dict(self) -> Dict[str, Any]:
        return {'items': list(self.items), 'scores': list(self.scores), 'truncated': self.truncated}
