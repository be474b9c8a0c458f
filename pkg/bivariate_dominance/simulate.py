"""Monte Carlo size and power studies: repeat (generate, run_test) R times."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict

from .config import BootstrapConfig
from .dominance import Adjustment, Hypothesis, JointDecision, conditions_for, run_test
from .bootstrap import Decision
from .sample_io import RawSample, rescale_pooled
from .synth import GeneratorSpec, derive_seed, generate


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimulationResult:
    hypothesis: Hypothesis
    generator_a: GeneratorSpec
    generator_b: GeneratorSpec
    m: int
    n: int
    trials: int
    rejections: int
    cfg: BootstrapConfig
    adjustment: Adjustment
    condition_rejections: Dict[str, int] = field(default_factory=dict)

    @property
    def rejection_frequency(self) -> float:
        return self.rejections / self.trials

    @property
    def standard_error(self) -> float:
        p = self.rejection_frequency
        return math.sqrt(p * (1.0 - p) / self.trials)

    @property
    def condition_rejection_frequency(self) -> Dict[str, float]:
        return {k: v / self.trials for k, v in self.condition_rejections.items()}


def run_simulation(
    hyp: Hypothesis,
    generator_a: GeneratorSpec,
    generator_b: GeneratorSpec,
    m: int,
    n: int,
    trials: int,
    cfg: BootstrapConfig,
    adjustment: Adjustment = Adjustment.NONE,
    rescale: str = "identity",
) -> SimulationResult:
    """Rejection frequency of `hyp` over `trials` independent sample pairs.

    Trial r draws sample a from seed (cfg.seed, r, 0), sample b from
    (cfg.seed, r, 1) and bootstraps with (cfg.seed, r, 2).
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    ids = [c.condition_id for c in conditions_for(hyp)]
    per_condition = {cid: 0 for cid in ids}
    rejections = 0
    step = max(1, trials // 10)

    for r in range(trials):
        a = generate(generator_a.with_seed(derive_seed(cfg.seed, r, 0)), m)
        b = generate(generator_b.with_seed(derive_seed(cfg.seed, r, 1)), n)
        if rescale == "pooled-minmax":
            a, b, _ = rescale_pooled(RawSample(a.points, a.label), RawSample(b.points, b.label))
        trial_cfg = cfg.model_copy(update={"seed": derive_seed(cfg.seed, r, 2)})
        report = run_test(hyp, a, b, trial_cfg, adjustment)
        if report.joint_decision is JointDecision.REJECT_DOMINANCE:
            rejections += 1
        for sub in report.sub_results:
            if sub.decision is Decision.REJECT:
                per_condition[sub.condition.condition_id] += 1
        if (r + 1) % step == 0:
            log.info("simulate: %d/%d trials, %d rejections", r + 1, trials, rejections)

    return SimulationResult(
        hypothesis=hyp,
        generator_a=generator_a,
        generator_b=generator_b,
        m=m,
        n=n,
        trials=trials,
        rejections=rejections,
        cfg=cfg,
        adjustment=Adjustment(adjustment),
        condition_rejections=per_condition,
    )
