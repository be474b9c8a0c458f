"""Second-order integral functionals H, Hˣ, Hʸ and L in closed form.

Exchanging the finite sum in F̂ with the double integral gives

    Ĥ(x, y) = (1/n) Σ (x - X_i)⁺ (y - Y_i)⁺,    Ĥˣ(x) = (1/n) Σ (x - X_i)⁺,

and termwise integration of K̂ = F̂ˣ + F̂ʸ - F̂ gives

    L̂(x, y) = y Ĥˣ(x) + x Ĥʸ(y) - Ĥ(x, y).

On each combined-grid cell every difference of these is bilinear in (x, y),
so its maximum over the cell sits on a vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .empirical import Axis, CombinedGrid, grid_argmax
from .sample_io import BivariateSample


class Functional(str, Enum):
    H = "H"
    HX = "HX"
    HY = "HY"
    L = "L"


def _check_unit(*values: float) -> None:
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"query coordinate {v!r} outside [0,1]")


def _coords(sample: BivariateSample, axis: Axis) -> np.ndarray:
    return sample.x if Axis(axis) is Axis.X else sample.y


def h_at(sample: BivariateSample, x: float, y: float) -> float:
    _check_unit(x, y)
    return float(np.mean(np.maximum(0.0, x - sample.x) * np.maximum(0.0, y - sample.y)))


def h_marginal_at(sample: BivariateSample, axis: Axis, v: float) -> float:
    _check_unit(v)
    return float(np.mean(np.maximum(0.0, v - _coords(sample, axis))))


def l_at(sample: BivariateSample, x: float, y: float) -> float:
    return y * h_marginal_at(sample, Axis.X, x) + x * h_marginal_at(sample, Axis.Y, y) - h_at(sample, x, y)


@dataclass(frozen=True)
class IntegralFunctional:
    sample: BivariateSample
    kind: Functional

    def __call__(self, x: float, y: Optional[float] = None) -> float:
        kind = Functional(self.kind)
        if kind is Functional.HX:
            return h_marginal_at(self.sample, Axis.X, x)
        if kind is Functional.HY:
            # marginal in y takes its argument first
            return h_marginal_at(self.sample, Axis.Y, x)
        if y is None:
            raise ValueError(f"functional {kind.value} needs both x and y")
        return h_at(self.sample, x, y) if kind is Functional.H else l_at(self.sample, x, y)


def h_marginal_line(sample: BivariateSample, axis: Axis, values: np.ndarray) -> np.ndarray:
    """Ĥˣ (or Ĥʸ) at every entry of `values` via sorted prefix sums."""
    values = np.asarray(values, dtype=float)
    coords = np.sort(_coords(sample, axis))
    csum = np.concatenate([[0.0], np.cumsum(coords)])
    c = np.searchsorted(coords, values, side="right")
    return (values * c - csum[c]) / sample.size


def h_surface(sample: BivariateSample, grid: CombinedGrid) -> np.ndarray:
    """Ĥ at every grid vertex.

    Σ over dominated points of (x - X)(y - Y) expands into xy·#, x·ΣY, y·ΣX
    and ΣXY, each a 2-D prefix sum of a weighted histogram.
    """
    gx, gy = grid.shape
    # fixed accumulation order: equal multisets give bitwise-equal surfaces
    order = np.lexsort((sample.y, sample.x))
    x = sample.x[order]
    y = sample.y[order]
    flat = np.searchsorted(grid.xs, x, side="left") * gy + np.searchsorted(grid.ys, y, side="left")

    def prefix(weights: Optional[np.ndarray]) -> np.ndarray:
        hist = np.bincount(flat, weights=weights, minlength=gx * gy).astype(float)
        return hist.reshape(gx, gy).cumsum(axis=0).cumsum(axis=1)

    count = prefix(None)
    sx, sy, sxy = prefix(x), prefix(y), prefix(x * y)
    xs = grid.xs[:, None]
    ys = grid.ys[None, :]
    return (xs * ys * count - xs * sy - ys * sx + sxy) / sample.size


def l_surface(sample: BivariateSample, grid: CombinedGrid) -> np.ndarray:
    hx = h_marginal_line(sample, Axis.X, grid.xs)
    hy = h_marginal_line(sample, Axis.Y, grid.ys)
    return grid.ys[None, :] * hx[:, None] + grid.xs[:, None] * hy[None, :] - h_surface(sample, grid)


def sup_delta_functional(
    kind: Functional, a: BivariateSample, b: BivariateSample, grid: CombinedGrid
) -> Tuple[float, Tuple[float, float]]:
    """Exact sup over [0,1]^2 of functional_a - functional_b (kind H or L)."""
    kind = Functional(kind)
    if kind is Functional.H:
        build = h_surface
    elif kind is Functional.L:
        build = l_surface
    else:
        raise ValueError(f"sup_delta_functional takes H or L, got {kind.value}")
    return grid_argmax(build(a, grid) - build(b, grid), grid)


def sup_delta_marginal_functional(
    a: BivariateSample, b: BivariateSample, axis: Axis, values: np.ndarray
) -> Tuple[float, float]:
    """sup of ΔĤ on one axis; piecewise linear, so knots plus {0, 1} suffice."""
    diff = h_marginal_line(a, axis, values) - h_marginal_line(b, axis, values)
    k = int(np.argmax(diff))
    return float(diff[k]), float(values[k])
