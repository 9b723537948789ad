# -*- coding: utf-8 -*-
"""
反馈回路配置 - 衰减策略与惩罚函数参数
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

SECONDS_PER_DAY = 86400


class DecayVariant(str, Enum):
    """NegativeWeights 的四种衰减方式"""
    PER_NODE_AGE = "PerNodeAge"
    PER_NODE_SUPPRESSION = "PerNodeSuppression"
    FULL_RESET_BY_SERVES = "FullResetByServes"
    FULL_RESET_BY_AGE = "FullResetByAge"


# 参数必须是整数的变体
_INTEGER_VARIANTS = {DecayVariant.PER_NODE_SUPPRESSION, DecayVariant.FULL_RESET_BY_SERVES}


class DecayPolicy(BaseModel):
    """衰减策略

    parameter 的含义随 variant 变化：
    - PerNodeAge / FullResetByAge: 天数 (max_age_days)
    - PerNodeSuppression: 被压制次数上限 (suppression_limit)
    - FullResetByServes: 推荐次数 (reset_after_serves)
    """

    model_config = ConfigDict(extra='forbid', frozen=True)

    variant: DecayVariant = Field(
        DecayVariant.FULL_RESET_BY_SERVES, description="Which decay rule to apply"
    )
    parameter: float = Field(100, ge=1, description="Days, suppression limit or serve count")

    @model_validator(mode='after')
    def _check_integer_parameter(self) -> 'DecayPolicy':
        if self.variant in _INTEGER_VARIANTS and self.parameter != int(self.parameter):
            raise ValueError(f"{self.variant.value} needs an integer parameter")
        return self

    @classmethod
    def per_node_age(cls, max_age_days: float) -> 'DecayPolicy':
        return cls(variant=DecayVariant.PER_NODE_AGE, parameter=max_age_days)

    @classmethod
    def per_node_suppression(cls, suppression_limit: int) -> 'DecayPolicy':
        return cls(variant=DecayVariant.PER_NODE_SUPPRESSION, parameter=suppression_limit)

    @classmethod
    def full_reset_by_serves(cls, reset_after_serves: int) -> 'DecayPolicy':
        return cls(variant=DecayVariant.FULL_RESET_BY_SERVES, parameter=reset_after_serves)

    @classmethod
    def full_reset_by_age(cls, max_age_days: float) -> 'DecayPolicy':
        return cls(variant=DecayVariant.FULL_RESET_BY_AGE, parameter=max_age_days)

    @property
    def max_age_seconds(self) -> float:
        return self.parameter * SECONDS_PER_DAY

    @property
    def count_limit(self) -> int:
        return int(self.parameter)


class PenaltyConfig(BaseModel):
    """f(X) = dwell_coefficient · X 的参数"""

    model_config = ConfigDict(extra='forbid', frozen=True)

    dwell_coefficient: float = Field(
        0.01, gt=0, description="Weight added per second of dwell (100s adds one baseline unit)"
    )
    require_click_without_add: bool = Field(
        True, description="Only penalize products clicked but not added in the same batch"
    )


class ServingConfig(BaseModel):
    """推荐调用参数"""

    model_config = ConfigDict(extra='forbid', frozen=True)

    t: int = Field(10, ge=1, description="Recommendations served per call")
    exclude_prioritized: bool = Field(
        True, description="Skip products the user already added to the priority list"
    )
