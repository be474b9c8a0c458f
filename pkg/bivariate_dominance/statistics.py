"""Scaled two-sample statistics λ, κ, μ, γ and the marginal D*, S*."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple, Union

from .empirical import Axis, CombinedGrid, EmpiricalCdf, Surface, combined_grid, sup_delta_marginal_cdf, sup_delta_surface
from .functionals import Functional, sup_delta_functional, sup_delta_marginal_functional
from .sample_io import BivariateSample, SampleSizeError


class Order(str, Enum):
    FIRST = "first"
    SECOND = "second"


class ModClass(str, Enum):
    SUBMODULAR = "submodular"
    SUPERMODULAR = "supermodular"
    MARGINAL_X = "marginal_x"
    MARGINAL_Y = "marginal_y"


_NAMES = {
    (Order.FIRST, ModClass.SUBMODULAR): ("lambda", "λ"),
    (Order.FIRST, ModClass.SUPERMODULAR): ("kappa", "κ"),
    (Order.SECOND, ModClass.SUBMODULAR): ("mu", "μ"),
    (Order.SECOND, ModClass.SUPERMODULAR): ("gamma", "γ"),
    (Order.FIRST, ModClass.MARGINAL_X): ("D_star_x", "D*x"),
    (Order.FIRST, ModClass.MARGINAL_Y): ("D_star_y", "D*y"),
    (Order.SECOND, ModClass.MARGINAL_X): ("S_star_x", "S*x"),
    (Order.SECOND, ModClass.MARGINAL_Y): ("S_star_y", "S*y"),
}


@dataclass(frozen=True)
class StatisticKind:
    order: Order
    cls: ModClass

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", Order(self.order))
        object.__setattr__(self, "cls", ModClass(self.cls))

    @property
    def axis(self) -> Optional[Axis]:
        if self.cls is ModClass.MARGINAL_X:
            return Axis.X
        if self.cls is ModClass.MARGINAL_Y:
            return Axis.Y
        return None

    @property
    def is_marginal(self) -> bool:
        return self.axis is not None

    @property
    def name(self) -> str:
        return _NAMES[(self.order, self.cls)][0]

    @property
    def symbol(self) -> str:
        return _NAMES[(self.order, self.cls)][1]


ALL_KINDS: List[StatisticKind] = [StatisticKind(o, c) for o in Order for c in ModClass]

Argmax = Union[Tuple[float, float], float]


@dataclass(frozen=True)
class StatisticValue:
    kind: StatisticKind
    raw_sup: float
    scale: float
    value: float
    argmax: Argmax


def scale_factor(m: int, n: int) -> float:
    return math.sqrt(m * n / (m + n))


def _raw_sup(kind: StatisticKind, a: BivariateSample, b: BivariateSample, grid: CombinedGrid) -> Tuple[float, Argmax]:
    if kind.is_marginal:
        values = grid.axis_values(kind.axis)
        if kind.order is Order.FIRST:
            return sup_delta_marginal_cdf(EmpiricalCdf.from_sample(a), EmpiricalCdf.from_sample(b), kind.axis, values)
        return sup_delta_marginal_functional(a, b, kind.axis, values)
    if kind.order is Order.FIRST:
        surface = Surface.F if kind.cls is ModClass.SUBMODULAR else Surface.K
        return sup_delta_surface(surface, EmpiricalCdf.from_sample(a), EmpiricalCdf.from_sample(b), grid)
    functional = Functional.H if kind.cls is ModClass.SUBMODULAR else Functional.L
    return sup_delta_functional(functional, a, b, grid)


def compute_statistic(
    kind: StatisticKind, a: BivariateSample, b: BivariateSample, grid: Optional[CombinedGrid] = None
) -> StatisticValue:
    """Scaled one-sided sup statistic of `kind` for "a minus b".

    `grid` may be any superset of the combined grid of a and b (the bootstrap
    passes the pooled grid); by default the combined grid is built here.
    """
    if a.size < 1 or b.size < 1:
        raise SampleSizeError("statistics need two non-empty samples")
    if grid is None:
        grid = combined_grid(a, b)
    raw, argmax = _raw_sup(kind, a, b, grid)
    scale = scale_factor(a.size, b.size)
    return StatisticValue(kind=kind, raw_sup=raw, scale=scale, value=scale * raw, argmax=argmax)


def statistic_pair(
    kind: StatisticKind, a: BivariateSample, b: BivariateSample
) -> Tuple[StatisticValue, StatisticValue]:
    """Forward (a - b) and reverse (b - a) statistics; neither determines the other."""
    grid = combined_grid(a, b)
    return compute_statistic(kind, a, b, grid), compute_statistic(kind, b, a, grid)
