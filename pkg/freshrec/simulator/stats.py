# -*- coding: utf-8 -*-
"""
Paired sign test
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict, Sequence

from scipy.stats import binomtest

from ..core.errors import LengthMismatch


@dataclass
class SignTestResult:
    """配对符号检验结果（单侧：treatment > control）"""
    positives: int
    negatives: int
    ties: int
    p_value: float

    def significant(self, alpha: float = 0.05) -> bool:
        return self.p_value < alpha

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def paired_sign_test(treatment: Sequence[float], control: Sequence[float]) -> SignTestResult:
    if len(treatment) != len(control):
        raise LengthMismatch("paired samples must have equal length")
    positives = sum(1 for a, b in zip(treatment, control) if a > b)
    negatives = sum(1 for a, b in zip(treatment, control) if a < b)
    ties = len(treatment) - positives - negatives
    trials = positives + negatives
    if trials == 0:
        p_value = 1.0
    else:
        p_value = float(binomtest(positives, trials, 0.5, alternative='greater').pvalue)
    return SignTestResult(positives, negatives, ties, p_value)
