from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .config import BootstrapConfig
from .empirical import CombinedGrid, combined_grid
from .env import get_default_workers
from .sample_io import BivariateSample
from .statistics import StatisticKind, StatisticValue, compute_statistic
from .utils import resolve_workers


log = logging.getLogger(__name__)


class Decision(str, Enum):
    REJECT = "reject"
    FAIL_TO_REJECT = "fail_to_reject"


@dataclass(frozen=True)
class PooledSample:
    """a's points first (indices [0, m)), then b's (indices [m, N))."""

    points: np.ndarray
    m: int
    n: int

    @classmethod
    def from_samples(cls, a: BivariateSample, b: BivariateSample) -> "PooledSample":
        points = np.vstack([a.points, b.points])
        points.setflags(write=False)
        return cls(points=points, m=a.size, n=b.size)

    @property
    def N(self) -> int:
        return self.m + self.n


@dataclass(frozen=True)
class BootstrapDistribution:
    kind: StatisticKind
    values: np.ndarray  # replicate order
    observed: StatisticValue
    critical_value: float
    p_value: float
    seed: int
    beta: float

    @property
    def replicates(self) -> int:
        return len(self.values)

    def at_level(self, beta: float) -> "BootstrapDistribution":
        """Same replicates with ĉ taken at `beta`."""
        if beta == self.beta:
            return self
        return replace(self, critical_value=critical_value(self.values, beta), beta=beta)


# keyed on (seed, r): replicate values are independent of worker count and order
def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(replicate,)))


def resample_pooled(pooled: PooledSample, rng) -> Tuple[BivariateSample, BivariateSample]:
    """Draw N pooled indices with replacement; the first m form a*, the rest b*."""
    idx = np.asarray(rng.integers(0, pooled.N, size=pooled.N))
    pts = pooled.points[idx]
    return (
        BivariateSample.from_points(pts[: pooled.m], label="a*"),
        BivariateSample.from_points(pts[pooled.m :], label="b*"),
    )


def critical_value(values: np.ndarray, beta: float) -> float:
    """ĉ = min { t in values : #{values > t} / B <= beta }."""
    v = np.sort(np.asarray(values, dtype=float))
    B = len(v)
    if B == 0:
        raise ValueError("critical value needs at least one replicate")
    exceed = B - np.searchsorted(v, v, side="right")
    # the largest value always qualifies (nothing exceeds it)
    ok = exceed / B <= beta
    return float(v[int(np.argmax(ok))])


def p_value(values: np.ndarray, observed: float) -> float:
    values = np.asarray(values, dtype=float)
    return (1 + int(np.count_nonzero(values >= observed))) / (len(values) + 1)


def _replicate_value(
    kind: StatisticKind, pooled: PooledSample, grid: CombinedGrid, seed: int, replicate: int
) -> float:
    a_star, b_star = resample_pooled(pooled, replicate_rng(seed, replicate))
    # resampled coordinates are a subset of the pooled ones, so the pooled grid covers them
    return compute_statistic(kind, a_star, b_star, grid).value


def bootstrap_statistic(
    kind: StatisticKind, a: BivariateSample, b: BivariateSample, cfg: BootstrapConfig
) -> BootstrapDistribution:
    observed = compute_statistic(kind, a, b)
    pooled = PooledSample.from_samples(a, b)
    grid = combined_grid(a, b)
    B = cfg.replicates
    workers = min(B, resolve_workers(cfg.workers or get_default_workers()))
    log.debug("Bootstrap %s: m=%d n=%d B=%d workers=%d seed=%d", kind.name, a.size, b.size, B, workers, cfg.seed)

    values = np.empty(B, dtype=float)
    if workers == 1:
        for r in range(B):
            values[r] = _replicate_value(kind, pooled, grid, cfg.seed, r)
    else:
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="replicate") as ex:
            futs = {ex.submit(_replicate_value, kind, pooled, grid, cfg.seed, r): r for r in range(B)}
            for fu in as_completed(futs):
                values[futs[fu]] = fu.result()
    values.setflags(write=False)

    return BootstrapDistribution(
        kind=kind,
        values=values,
        observed=observed,
        critical_value=critical_value(values, cfg.beta),
        p_value=p_value(values, observed.value),
        seed=cfg.seed,
        beta=cfg.beta,
    )


def decide(dist: BootstrapDistribution, beta: Optional[float] = None) -> Decision:
    """Reject iff the observed statistic is strictly above ĉ at level `beta`."""
    c = dist.critical_value if beta is None else dist.at_level(beta).critical_value
    return Decision.REJECT if dist.observed.value > c else Decision.FAIL_TO_REJECT
