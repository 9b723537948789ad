# -*- coding: utf-8 -*-
"""
事件日志与库存文件读写

事件日志：每行一个扁平 JSON 对象（JSON Lines）。
库存文件：JSON 数组 [{"product_id", "brand", "attributes"?}, ...]。
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Union

from ..core.errors import InvalidEvent, InvalidProduct, IoError, ParseError
from ..core.models import EventRecord, Inventory, Product, build_inventory

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass
class IngestResult:
    """解析结果；skipped_count 只在 lenient 模式下可能非零"""
    records: List[EventRecord] = field(default_factory=list)
    skipped_count: int = 0

    def __len__(self) -> int:
        return len(self.records)


def _read_bytes(path: PathLike) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise IoError(f"cannot read {path}: {e.strerror or e}") from None


def _write_text(path: PathLike, text: str):
    target = Path(path)
    try:
        if target.parent and not target.parent.exists():
            target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding='utf-8')
    except OSError as e:
        raise IoError(f"cannot write {path}: {e.strerror or e}") from None


def _decode_line(line: Union[str, bytes]) -> str:
    if isinstance(line, str):
        return line
    try:
        return line.decode('utf-8')
    except UnicodeDecodeError as e:
        raise InvalidEvent(f"invalid UTF-8 at byte {e.start}") from None


def parse_event_lines(lines: Iterable[Union[str, bytes]], strict: bool = True) -> IngestResult:
    """逐行解析；空行跳过，行号从 1 开始；bytes 行按 UTF-8 逐行解码"""
    result = IngestResult()
    for line_no, line in enumerate(lines, start=1):
        try:
            text = _decode_line(line)
            if not text.strip():
                continue
            result.records.append(EventRecord.from_json_line(text, strict=strict))
        except InvalidEvent as e:
            if strict:
                raise ParseError(line_no, str(e)) from None
            result.skipped_count += 1
            logger.warning("skipping line %d: %s", line_no, e)
    return result


def ingest_events(path: PathLike, strict: bool = True) -> IngestResult:
    """读取事件日志，保持文件顺序"""
    result = parse_event_lines(_read_bytes(path).splitlines(), strict=strict)
    logger.info("read %d events from %s (%d skipped)",
                len(result.records), path, result.skipped_count)
    return result


def write_events(path: PathLike, records: Iterable[EventRecord]):
    lines = [record.to_json_line() for record in records]
    _write_text(path, ''.join(line + '\n' for line in lines))


def load_inventory(path: PathLike) -> Inventory:
    """从 JSON 数组加载库存（保持文件中的顺序）"""
    try:
        data = json.loads(_read_bytes(path).decode('utf-8'))
    except UnicodeDecodeError as e:
        raise InvalidProduct(f"{path}: invalid UTF-8 at byte {e.start}") from None
    except json.JSONDecodeError as e:
        raise InvalidProduct(f"{path}: invalid JSON: {e.msg}") from None
    if not isinstance(data, list):
        raise InvalidProduct(f"{path}: inventory must be a JSON array")
    products = []
    for position, item in enumerate(data):
        if not isinstance(item, dict) or 'product_id' not in item:
            raise InvalidProduct(f"{path}: entry {position} needs a product_id")
        products.append(Product.from_dict(item))
    return build_inventory(products)


def write_inventory(path: PathLike, inventory: Inventory):
    payload = [product.to_dict() for product in inventory]
    _write_text(path, json.dumps(payload, ensure_ascii=False, indent=2) + '\n')
