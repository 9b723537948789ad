# -*- coding: utf-8 -*-
"""
Offline A/B harness

Every variant sees the same synthetic population and the same random streams
(common random numbers), so differences between variants come from the
serving policy alone.
"""

import logging
from dataclasses import asdict, dataclass, field
from enum import Enum, IntEnum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..core.models import (
    EventKind,
    Inventory,
    RecommendationList,
    ScoreKind,
    ScoreVector,
    UserSessionState,
    new_user_state,
)
from ..feedback.engine import (
    combine_scores,
    commit_serve,
    feedback_serve_cycle,
    ingest_batch,
    rank_candidates,
    serve_top_t,
    serving_exclusions,
)
from ..feedback.policies import DecayPolicy, PenaltyConfig
from ..metric.freshness import FreshnessTracker, MetricConfig, metric_feedback_recommend
from ..shuffle.shuffler import RNG_ALGORITHM, ShuffleConfig, shuffle
from .stats import paired_sign_test
from .users import (
    PositionBias,
    SyntheticUser,
    sample_user,
    simulate_interaction,
    synth_relevance,
    synthetic_inventory,
)

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    """参与对比的推荐策略"""
    BASELINE = "Baseline"
    FEEDBACK_LOOP = "FeedbackLoop"
    SHUFFLE = "Shuffle"
    METRIC_FEEDBACK = "MetricFeedback"
    FEEDBACK_THEN_METRIC = "FeedbackThenMetric"


# 会把事件反馈进 NegativeWeights 的策略
FEEDBACK_VARIANTS = {Variant.FEEDBACK_LOOP, Variant.FEEDBACK_THEN_METRIC}


class Stream(IntEnum):
    """Independent random streams derived from one experiment seed"""
    INVENTORY = 0
    POPULATION = 1
    RELEVANCE = 2
    BEHAVIOUR = 3
    SHUFFLE = 4


def stream_rng(seed: int, stream: Stream, *key: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(seed, spawn_key=(int(stream),) + tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(sequence))


class ExperimentConfig(BaseModel):
    """A/B 模拟参数（各模块配置嵌套在内）"""

    model_config = ConfigDict(extra='forbid', frozen=True)

    variant: Variant = Field(Variant.BASELINE, description="Serving policy under test")
    sessions: int = Field(30, ge=1, description="Serve calls per user")
    users: int = Field(50, ge=1, description="Synthetic users")
    rng_seed: int = Field(0, ge=0, lt=2 ** 64, description="Base seed for all streams")
    t: int = Field(10, ge=1, description="Recommendations per call")
    noise_sd: float = Field(0.05, ge=0, description="Relevance noise around true preference")
    session_gap_seconds: int = Field(86400, ge=1, description="Time between sessions")
    start_timestamp: int = Field(1_700_000_000, ge=0, description="Timestamp of the first session")
    position_bias: PositionBias = Field(PositionBias.RECIPROCAL, description="View probability shape")
    preference_alpha: float = Field(1.0, gt=0, description="Beta prior alpha for preferences")
    preference_beta: float = Field(2.0, gt=0, description="Beta prior beta for preferences")
    patience: float = Field(60.0, gt=0, description="Mean dwell scale in seconds")
    add_threshold: float = Field(0.7, ge=0, le=1, description="Preference needed to add on click")
    inventory_size: int = Field(200, ge=1, description="Synthetic inventory size")
    brands: int = Field(12, ge=1, description="Synthetic brand count")
    exclude_prioritized: bool = Field(True, description="Feedback variants skip added products")

    penalty: PenaltyConfig = Field(default_factory=PenaltyConfig)
    decay: DecayPolicy = Field(default_factory=DecayPolicy)
    shuffle: ShuffleConfig = Field(default_factory=ShuffleConfig)
    metric: MetricConfig = Field(default_factory=MetricConfig)


@dataclass
class SessionRow:
    """一个 (用户, 会话) 的结果，对应 CSV 的一行"""
    call_index: int
    variant: str
    user_id: str
    freshness_sliding: float
    freshness_alg3: float
    clicks: int
    adds: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class VariantSummary:
    """单个策略的聚合统计"""
    variant: str
    mean_freshness_sliding: float
    mean_freshness_alg3: float
    mean_clicks_per_session: float
    mean_adds_per_session: float
    unique_products_per_user: float
    mean_replacements: float
    exhausted_rate: float
    freshness_series_sliding: List[float] = field(default_factory=list)
    freshness_series_alg3: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class VariantRun:
    summary: VariantSummary
    rows: List[SessionRow]
    per_user_sliding: List[float]


@dataclass
class ExperimentReport:
    """A/B 报告：头信息 + 各策略汇总 + 相对 Baseline 的符号检验"""
    header: Dict[str, Any]
    variants: Dict[str, VariantSummary]
    comparisons: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    rows: List[SessionRow] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'header': self.header,
            'variants': {name: summary.to_dict() for name, summary in self.variants.items()},
            'comparisons': self.comparisons,
        }


def build_population(config: ExperimentConfig, inventory: Inventory) -> List[SyntheticUser]:
    width = len(str(config.users - 1))
    return [
        sample_user(
            user_id=f"u{index:0{width}d}",
            inventory_size=len(inventory),
            rng=stream_rng(config.rng_seed, Stream.POPULATION, index),
            alpha=config.preference_alpha,
            beta=config.preference_beta,
            patience=config.patience,
            add_threshold=config.add_threshold,
        )
        for index in range(config.users)
    ]


def default_inventory(config: ExperimentConfig) -> Inventory:
    return synthetic_inventory(
        config.inventory_size, config.brands, stream_rng(config.rng_seed, Stream.INVENTORY)
    )


def _unweighted(relevance: ScoreVector) -> ScoreVector:
    return ScoreVector(relevance.values, ScoreKind.FINAL)


def _serve(
    variant: Variant,
    config: ExperimentConfig,
    inventory: Inventory,
    state: UserSessionState,
    tracker: FreshnessTracker,
    relevance: ScoreVector,
    now: int,
    user_index: int,
    session: int,
) -> Tuple[RecommendationList, UserSessionState, int, bool]:
    """按策略产出一次推荐；返回 (列表, 新状态, 替换次数, 是否耗尽)"""
    if variant == Variant.FEEDBACK_LOOP:
        served, state = feedback_serve_cycle(
            state, relevance, config.t, config.decay, config.penalty, now, inventory,
            exclude_prioritized=config.exclude_prioritized,
        )
        return served, state, 0, False

    if variant == Variant.FEEDBACK_THEN_METRIC:
        excluded = serving_exclusions(state, config.exclude_prioritized)
        final = combine_scores(relevance, state.negative_weights)
        ranked = rank_candidates(final, inventory, excluded)
        if not ranked:
            return RecommendationList([], [], truncated=True), state, 0, True
        scores = dict(zip(inventory.ids, final.values.tolist()))
        result = metric_feedback_recommend(ranked, tracker.history, config.metric, config.t, scores)
        would_serve = serve_top_t(_unweighted(relevance), config.t, excluded, inventory)
        state = commit_serve(state, result.recommendations, would_serve, config.decay, now, inventory)
        return result.recommendations, state, result.replacements, result.exhausted

    if variant == Variant.METRIC_FEEDBACK:
        ranked = rank_candidates(_unweighted(relevance), inventory)
        scores = dict(zip(inventory.ids, relevance.values.tolist()))
        result = metric_feedback_recommend(ranked, tracker.history, config.metric, config.t, scores)
        return result.recommendations, state, result.replacements, result.exhausted

    served = serve_top_t(_unweighted(relevance), config.t, frozenset(), inventory)
    if variant == Variant.SHUFFLE:
        seed = int(stream_rng(config.rng_seed, Stream.SHUFFLE, user_index, session).integers(2 ** 63))
        shuffle_config = ShuffleConfig(
            partition_length=config.shuffle.partition_length, rng_seed=seed
        )
        served = shuffle(served, shuffle_config, inventory.brands())
    return served, state, 0, False


def _run_variant(
    config: ExperimentConfig,
    inventory: Inventory,
    population: Sequence[SyntheticUser],
    variant: Variant,
) -> VariantRun:
    rows: List[SessionRow] = []
    per_user_sliding: List[float] = []
    unique_counts: List[int] = []
    sliding_grid = np.zeros((len(population), config.sessions))
    alg3_grid = np.zeros((len(population), config.sessions))
    total_clicks = total_adds = total_replacements = total_exhausted = 0

    for user_index, user in enumerate(population):
        state = new_user_state(user.user_id, inventory, config.metric.window_capacity)
        tracker = FreshnessTracker(config.metric, user_id=user.user_id)
        seen = set()

        for session in range(config.sessions):
            now = config.start_timestamp + session * config.session_gap_seconds
            relevance = synth_relevance(
                user, config.noise_sd,
                stream_rng(config.rng_seed, Stream.RELEVANCE, user_index, session),
            )
            served, state, replacements, exhausted = _serve(
                variant, config, inventory, state, tracker, relevance, now, user_index, session
            )
            total_replacements += replacements
            total_exhausted += int(exhausted)

            if len(served) == 0:
                # 所有商品都已加入优先列表，本次没有可推荐的内容
                rows.append(SessionRow(session, variant.value, user.user_id, 0.0, 0.0, 0, 0))
                continue

            sliding, alg3 = tracker.observe(served, replacements, exhausted, call_index=session)
            seen.update(served.items)

            events = simulate_interaction(
                user, served, inventory,
                stream_rng(config.rng_seed, Stream.BEHAVIOUR, user_index, session),
                now=now, bias=config.position_bias,
            )
            clicks = sum(1 for e in events if e.event_kind == EventKind.CLICKED)
            adds = sum(1 for e in events if e.event_kind == EventKind.ADDED)
            total_clicks += clicks
            total_adds += adds

            if variant in FEEDBACK_VARIANTS:
                state = ingest_batch(state, events, inventory, config.penalty, now)

            sliding_grid[user_index, session] = sliding.freshness
            alg3_grid[user_index, session] = alg3.freshness
            rows.append(SessionRow(
                session, variant.value, user.user_id,
                sliding.freshness, alg3.freshness, clicks, adds,
            ))

        per_user_sliding.append(float(sliding_grid[user_index].mean()))
        unique_counts.append(len(seen))

    calls = len(population) * config.sessions
    summary = VariantSummary(
        variant=variant.value,
        mean_freshness_sliding=float(sliding_grid.mean()),
        mean_freshness_alg3=float(alg3_grid.mean()),
        mean_clicks_per_session=total_clicks / calls,
        mean_adds_per_session=total_adds / calls,
        unique_products_per_user=float(np.mean(unique_counts)),
        mean_replacements=total_replacements / calls,
        exhausted_rate=total_exhausted / calls,
        freshness_series_sliding=[float(v) for v in sliding_grid.mean(axis=0)],
        freshness_series_alg3=[float(v) for v in alg3_grid.mean(axis=0)],
    )
    logger.info("%s: sliding freshness %.3f over %d calls",
                variant.value, summary.mean_freshness_sliding, calls)
    return VariantRun(summary, rows, per_user_sliding)


def _header(config: ExperimentConfig, variants: Sequence[Variant]) -> Dict[str, Any]:
    return {
        'seed': config.rng_seed,
        'rng_algorithm': RNG_ALGORITHM,
        'variants': [v.value for v in variants],
        'config': config.model_dump(mode='json'),
    }


def run_ab(
    config: ExperimentConfig,
    inventory: Optional[Inventory] = None,
    variants: Optional[Sequence[Variant]] = None,
) -> ExperimentReport:
    """在同一批用户上运行多个策略，并对每个策略做相对 Baseline 的配对符号检验"""
    inventory = inventory if inventory is not None else default_inventory(config)
    variants = list(variants) if variants else list(Variant)
    population = build_population(config, inventory)

    runs = {variant: _run_variant(config, inventory, population, variant) for variant in variants}

    comparisons: Dict[str, Dict[str, Any]] = {}
    baseline = runs.get(Variant.BASELINE)
    if baseline is not None:
        for variant, run in runs.items():
            if variant == Variant.BASELINE:
                continue
            test = paired_sign_test(run.per_user_sliding, baseline.per_user_sliding)
            comparisons[f"{variant.value}_vs_Baseline"] = test.to_dict()

    return ExperimentReport(
        header=_header(config, variants),
        variants={variant.value: run.summary for variant, run in runs.items()},
        comparisons=comparisons,
        rows=[row for run in runs.values() for row in run.rows],
    )


def run_experiment(config: ExperimentConfig, inventory: Optional[Inventory] = None) -> ExperimentReport:
    """只运行 config.variant 一个策略"""
    return run_ab(config, inventory, [config.variant])
