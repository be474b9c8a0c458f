from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from .sample_io import BivariateSample


class Axis(str, Enum):
    X = "X"
    Y = "Y"


class Surface(str, Enum):
    F = "F"
    K = "K"


def _check_unit(*values: float) -> None:
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"query coordinate {v!r} outside [0,1]")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class CombinedGrid:
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self) -> None:
        for name in ("xs", "ys"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.size < 2 or v[0] != 0.0 or v[-1] != 1.0 or not (np.diff(v) > 0).all():
                raise ValueError(f"grid {name} must be strictly increasing from 0 to 1")
            object.__setattr__(self, name, _frozen(v))

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.xs), len(self.ys)

    def axis_values(self, axis: Axis) -> np.ndarray:
        return self.xs if Axis(axis) is Axis.X else self.ys


@dataclass(frozen=True)
class EmpiricalCdf:
    sample: BivariateSample
    sorted_x: np.ndarray
    sorted_y: np.ndarray

    @classmethod
    def from_sample(cls, sample: BivariateSample) -> "EmpiricalCdf":
        return cls(
            sample=sample,
            sorted_x=_frozen(np.sort(sample.x)),
            sorted_y=_frozen(np.sort(sample.y)),
        )

    @property
    def size(self) -> int:
        return self.sample.size

    def sorted_axis(self, axis: Axis) -> np.ndarray:
        return self.sorted_x if Axis(axis) is Axis.X else self.sorted_y

    def joint_count(self, s: float, t: float) -> int:
        return int(np.count_nonzero((self.sample.x <= s) & (self.sample.y <= t)))

    def marginal_count(self, axis: Axis, v: float) -> int:
        return int(np.searchsorted(self.sorted_axis(axis), v, side="right"))


def cdf_at(F: EmpiricalCdf, s: float, t: float) -> float:
    """F̂(s,t) = #{i : X_i <= s and Y_i <= t} / n."""
    _check_unit(s, t)
    return F.joint_count(s, t) / F.size


def marginal_cdf_at(F: EmpiricalCdf, axis: Axis, v: float) -> float:
    _check_unit(v)
    return F.marginal_count(Axis(axis), v) / F.size


def k_at(F: EmpiricalCdf, s: float, t: float) -> float:
    """K̂(s,t) = F̂ˣ(s) + F̂ʸ(t) - F̂(s,t), the mass of {X <= s or Y <= t}.

    Evaluated on integer counts so it matches the union-event count exactly.
    """
    _check_unit(s, t)
    union = F.marginal_count(Axis.X, s) + F.marginal_count(Axis.Y, t) - F.joint_count(s, t)
    return union / F.size


def combined_grid(a: BivariateSample, b: BivariateSample) -> CombinedGrid:
    xs = np.unique(np.concatenate([[0.0, 1.0], a.x, b.x]))
    ys = np.unique(np.concatenate([[0.0, 1.0], a.y, b.y]))
    return CombinedGrid(xs=xs, ys=ys)


def count_matrix(sample: BivariateSample, grid: CombinedGrid) -> np.ndarray:
    """C[i, j] = #{k : X_k <= xs[i] and Y_k <= ys[j]} via histogram + prefix sums.

    Exact at every vertex of any grid: a point lands in the first vertex at or
    above it, which is the first vertex whose rectangle contains it.
    """
    gx, gy = grid.shape
    ix = np.searchsorted(grid.xs, sample.x, side="left")
    iy = np.searchsorted(grid.ys, sample.y, side="left")
    hist = np.bincount(ix * gy + iy, minlength=gx * gy).reshape(gx, gy)
    return hist.cumsum(axis=0).cumsum(axis=1)


def cdf_surface(F: EmpiricalCdf, grid: CombinedGrid) -> np.ndarray:
    return count_matrix(F.sample, grid) / F.size


def k_surface(F: EmpiricalCdf, grid: CombinedGrid) -> np.ndarray:
    C = count_matrix(F.sample, grid)
    # ys[-1] == 1 and xs[-1] == 1 give the marginal counts
    union = C[:, -1][:, None] + C[-1, :][None, :] - C
    return union / F.size


def grid_argmax(values: np.ndarray, grid: CombinedGrid) -> Tuple[float, Tuple[float, float]]:
    """Maximum over grid vertices; ties go to the lexicographically smallest (x, y)."""
    # argmax returns the first hit in row-major order, i.e. smallest x, then smallest y
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    return float(values[i, j]), (float(grid.xs[i]), float(grid.ys[j]))


def sup_delta_surface(
    surface: Surface, a: EmpiricalCdf, b: EmpiricalCdf, grid: CombinedGrid
) -> Tuple[float, Tuple[float, float]]:
    """Exact sup over [0,1]^2 of surface_a - surface_b, with its argmax.

    Both surfaces are constant on each grid cell and equal to their value at
    the lower-left vertex, so the vertex maximum is the supremum.
    """
    build = cdf_surface if Surface(surface) is Surface.F else k_surface
    return grid_argmax(build(a, grid) - build(b, grid), grid)


def sup_delta_marginal_cdf(
    a: EmpiricalCdf, b: EmpiricalCdf, axis: Axis, values: np.ndarray
) -> Tuple[float, float]:
    """sup over `values` of F̂ᵃ_axis - F̂ᵇ_axis (one-sided univariate KS)."""
    axis = Axis(axis)
    values = np.asarray(values, dtype=float)
    fa = np.searchsorted(a.sorted_axis(axis), values, side="right") / a.size
    fb = np.searchsorted(b.sorted_axis(axis), values, side="right") / b.size
    diff = fa - fb
    k = int(np.argmax(diff))
    return float(diff[k]), float(values[k])
