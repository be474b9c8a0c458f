from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Sequence, Tuple

from .bootstrap import BootstrapDistribution, Decision, bootstrap_statistic, decide
from .config import JOINT_RULE, BootstrapConfig
from .sample_io import BivariateSample
from .statistics import ModClass, Order, StatisticKind


log = logging.getLogger(__name__)


class Direction(str, Enum):
    A_DOMINATES_B = "a_dominates_b"
    B_DOMINATES_A = "b_dominates_a"


class Adjustment(str, Enum):
    NONE = "none"
    BONFERRONI = "bonferroni"


class JointDecision(str, Enum):
    REJECT_DOMINANCE = "reject_dominance"
    FAIL_TO_REJECT = "fail_to_reject"


@dataclass(frozen=True)
class Hypothesis:
    order: Order
    cls: ModClass
    direction: Direction = Direction.A_DOMINATES_B

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", Order(self.order))
        object.__setattr__(self, "cls", ModClass(self.cls))
        object.__setattr__(self, "direction", Direction(self.direction))
        if self.cls not in (ModClass.SUBMODULAR, ModClass.SUPERMODULAR):
            raise ValueError(f"hypotheses are stated over submodular or supermodular classes, not {self.cls.value}")

    def reversed(self) -> "Hypothesis":
        other = Direction.B_DOMINATES_A if self.direction is Direction.A_DOMINATES_B else Direction.A_DOMINATES_B
        return Hypothesis(self.order, self.cls, other)


@dataclass(frozen=True)
class Condition:
    name: str
    condition_id: str
    kind: StatisticKind


def _marginals(order: Order) -> List[Condition]:
    if order is Order.FIRST:
        return [
            Condition("ΔFˣ", "delta_F_x", StatisticKind(order, ModClass.MARGINAL_X)),
            Condition("ΔFʸ", "delta_F_y", StatisticKind(order, ModClass.MARGINAL_Y)),
        ]
    return [
        Condition("ΔĤˣ", "delta_H_x", StatisticKind(order, ModClass.MARGINAL_X)),
        Condition("ΔĤʸ", "delta_H_y", StatisticKind(order, ModClass.MARGINAL_Y)),
    ]


def conditions_for(hyp: Hypothesis) -> List[Condition]:
    if hyp.order is Order.FIRST:
        if hyp.cls is ModClass.SUBMODULAR:
            return [Condition("ΔF", "delta_F", StatisticKind(Order.FIRST, ModClass.SUBMODULAR))]
        return [Condition("ΔK", "delta_K", StatisticKind(Order.FIRST, ModClass.SUPERMODULAR))] + _marginals(Order.FIRST)
    if hyp.cls is ModClass.SUBMODULAR:
        principal = Condition("ΔH", "delta_H", StatisticKind(Order.SECOND, ModClass.SUBMODULAR))
    else:
        principal = Condition("ΔL", "delta_L", StatisticKind(Order.SECOND, ModClass.SUPERMODULAR))
    return [principal] + _marginals(Order.SECOND)


@dataclass(frozen=True)
class SubResult:
    condition: Condition
    distribution: BootstrapDistribution
    decision: Decision
    level: float


@dataclass(frozen=True)
class DominanceTestReport:
    hypothesis: Hypothesis
    sub_results: Tuple[SubResult, ...]
    joint_decision: JointDecision
    adjustment: Adjustment
    beta: float
    metadata: Dict[str, Any] = field(default_factory=dict)


def condition_level(beta: float, adjustment: Adjustment, k: int) -> float:
    return beta / k if Adjustment(adjustment) is Adjustment.BONFERRONI else beta


def recompute_joint_decision(decisions: Sequence[Decision | str]) -> JointDecision:
    if any(Decision(d) is Decision.REJECT for d in decisions):
        return JointDecision.REJECT_DOMINANCE
    return JointDecision.FAIL_TO_REJECT


def run_test(
    hyp: Hypothesis,
    a: BivariateSample,
    b: BivariateSample,
    cfg: BootstrapConfig,
    adjustment: Adjustment = Adjustment.NONE,
) -> DominanceTestReport:
    adjustment = Adjustment(adjustment)
    first, second = (a, b) if hyp.direction is Direction.A_DOMINATES_B else (b, a)
    conditions = conditions_for(hyp)
    level = condition_level(cfg.beta, adjustment, len(conditions))

    results = []
    for cond in conditions:
        # ĉ and decision both at the condition level
        dist = bootstrap_statistic(cond.kind, first, second, cfg).at_level(level)
        decision = decide(dist)
        log.debug(
            "%s %s: value=%.6g critical=%.6g p=%.4f -> %s",
            hyp.direction.value, cond.condition_id, dist.observed.value, dist.critical_value, dist.p_value, decision.value,
        )
        results.append(SubResult(condition=cond, distribution=dist, decision=decision, level=level))

    joint = recompute_joint_decision([r.decision for r in results])
    metadata = {
        "m": a.size,
        "n": b.size,
        "labels": {"a": a.label, "b": b.label},
        "seed": cfg.seed,
        "replicates": cfg.replicates,
        "rescale": a.rescale,
        "joint_rule": JOINT_RULE,
    }
    return DominanceTestReport(
        hypothesis=hyp,
        sub_results=tuple(results),
        joint_decision=joint,
        adjustment=adjustment,
        beta=cfg.beta,
        metadata=metadata,
    )


def run_both_directions(
    order: Order,
    cls: ModClass,
    a: BivariateSample,
    b: BivariateSample,
    cfg: BootstrapConfig,
    adjustment: Adjustment = Adjustment.NONE,
) -> Tuple[DominanceTestReport, DominanceTestReport]:
    """Test a-over-b and b-over-a separately; no relation between them is assumed."""
    hyp = Hypothesis(order, cls, Direction.A_DOMINATES_B)
    return run_test(hyp, a, b, cfg, adjustment), run_test(hyp.reversed(), a, b, cfg, adjustment)
