# -*- coding: utf-8 -*-
"""
报告输出 - JSON 报告、CSV 会话明细、JSONL 指标记录

所有输出的字段顺序固定，相同输入得到逐字节相同的文件。
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Union

from ..core.errors import IoError
from ..metric.freshness import MetricRecord, WindowMode
from ..shuffle.shuffler import RNG_ALGORITHM
from ..simulator.experiment import ExperimentReport, SessionRow

PathLike = Union[str, Path]

SESSION_CSV_FIELDS = [
    'call_index', 'variant', 'user_id', 'freshness_sliding', 'freshness_alg3', 'clicks', 'adds',
]


def report_header(seed: Optional[int], config: Dict[str, Any]) -> Dict[str, Any]:
    return {'seed': seed, 'rng_algorithm': RNG_ALGORITHM, 'config': config}


def render_json(data: Dict[str, Any]) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2) + '\n'


def write_text(path: PathLike, text: str):
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    except OSError as e:
        raise IoError(f"cannot write {path}: {e.strerror or e}") from None


def write_json(path: PathLike, data: Dict[str, Any]):
    write_text(path, render_json(data))


def render_session_csv(rows: Iterable[SessionRow]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=SESSION_CSV_FIELDS, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow(row.to_dict())
    return buffer.getvalue()


def write_session_csv(path: PathLike, rows: Iterable[SessionRow]):
    write_text(path, render_session_csv(rows))


def render_metric_records(records: Iterable[MetricRecord]) -> str:
    return ''.join(json.dumps(record.to_dict(), ensure_ascii=False) + '\n' for record in records)


def write_metric_records(path: PathLike, records: Iterable[MetricRecord]):
    write_text(path, render_metric_records(records))


def summarize_records(records: Sequence[MetricRecord]) -> Dict[str, Any]:
    """按窗口模式汇总平均新鲜度"""
    summary: Dict[str, Any] = {}
    for mode in WindowMode:
        values = [r.freshness for r in records if r.window_mode == mode]
        summary[mode.value] = {
            'calls': len(values),
            'mean_freshness': sum(values) / len(values) if values else None,
        }
    return summary


def metric_report(
    records: Sequence[MetricRecord],
    header: Dict[str, Any],
    extra: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    report: Dict[str, Any] = {'header': header}
    if extra:
        report.update(extra)
    report['summary'] = summarize_records(records)
    report['records'] = [record.to_dict() for record in records]
    return report


def experiment_report(report: ExperimentReport) -> Dict[str, Any]:
    return report.to_dict()
