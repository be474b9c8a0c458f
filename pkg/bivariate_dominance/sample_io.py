from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Optional, Tuple

import numpy as np
import pandas as pd


log = logging.getLogger(__name__)


MIN_RAW_SIZE = 2
_NAN_TOKENS = {"nan", "+nan", "-nan"}


class SampleFormatError(ValueError):
    def __init__(self, message: str, row: Optional[int] = None):
        super().__init__(message)
        self.row = row


class SampleSizeError(ValueError):
    pass


class DegenerateAxisError(ValueError):
    pass


class OutOfRangeError(ValueError):
    pass


def _as_points(points) -> np.ndarray:
    arr = np.array(points, dtype=float).reshape(-1, 2)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class RescaleTransform:
    x_min: float = 0.0
    x_max: float = 1.0
    y_min: float = 0.0
    y_max: float = 1.0
    identity_flag: bool = True

    def __post_init__(self) -> None:
        if not self.identity_flag and not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise DegenerateAxisError("rescale transform needs x_min < x_max and y_min < y_max")

    def apply(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        if self.identity_flag:
            return pts.copy()
        out = np.empty_like(pts)
        out[:, 0] = (pts[:, 0] - self.x_min) / (self.x_max - self.x_min)
        out[:, 1] = (pts[:, 1] - self.y_min) / (self.y_max - self.y_min)
        return out

    def invert(self, point: Tuple[float, float]) -> Tuple[float, float]:
        """Map a unit-square location back to raw data units."""
        u, v = point
        if self.identity_flag:
            return float(u), float(v)
        return (
            float(self.x_min + u * (self.x_max - self.x_min)),
            float(self.y_min + v * (self.y_max - self.y_min)),
        )

    def invert_axis(self, axis: str, value: float) -> float:
        if self.identity_flag:
            return float(value)
        if axis == "X":
            return float(self.x_min + value * (self.x_max - self.x_min))
        return float(self.y_min + value * (self.y_max - self.y_min))

    def to_dict(self) -> dict:
        return {
            "mode": "identity" if self.identity_flag else "pooled-minmax",
            "x_min": self.x_min,
            "x_max": self.x_max,
            "y_min": self.y_min,
            "y_max": self.y_max,
            "identity_flag": self.identity_flag,
        }


IDENTITY = RescaleTransform()


@dataclass(frozen=True)
class RawSample:
    points: np.ndarray
    label: str = "sample"

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", _as_points(self.points))
        if not np.isfinite(self.points).all():
            bad = int(np.flatnonzero(~np.isfinite(self.points).all(axis=1))[0]) + 1
            raise SampleFormatError(f"{self.label}: non-finite value at row {bad}", row=bad)
        if len(self.points) < MIN_RAW_SIZE:
            raise SampleSizeError(f"{self.label}: sample too small ({len(self.points)} < {MIN_RAW_SIZE} rows)")

    @property
    def size(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class BivariateSample:
    """Points on [0,1]^2 plus the transform that put them there.

    Duplicate points are kept: each carries empirical mass 1/m.
    """

    points: np.ndarray
    rescale: RescaleTransform = field(default=IDENTITY)
    label: str = "sample"

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", _as_points(self.points))
        if len(self.points) < 1:
            raise SampleSizeError(f"{self.label}: empty sample")
        if not np.isfinite(self.points).all():
            raise OutOfRangeError(f"{self.label}: non-finite coordinate")
        if (self.points < 0.0).any() or (self.points > 1.0).any():
            raise OutOfRangeError(f"{self.label}: coordinates must lie in [0,1]^2")

    @classmethod
    def from_points(cls, points, label: str = "sample") -> "BivariateSample":
        return cls(points=points, rescale=IDENTITY, label=label)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]


def _infer_format(path: Path) -> str:
    return "tsv" if path.suffix.lower() in {".tsv", ".tab"} else "csv"


def _first_bad_row(raw: pd.Series, numeric: pd.Series, blank: pd.Series) -> Optional[int]:
    tokens = raw.str.lower()
    unparsed = numeric.isna() & ~tokens.isin(_NAN_TOKENS) & ~blank
    hits = np.flatnonzero(unparsed.to_numpy())
    return int(hits[0]) if hits.size else None


def load_sample(
    path: Path | str,
    format: Optional[Literal["csv", "tsv"]] = None,
    has_header: bool = False,
    label: Optional[str] = None,
) -> RawSample:
    """Read two numeric columns (x, y) into a RawSample, keeping file order.

    Blank lines are skipped but still counted: row numbers in errors are
    physical lines after any header, starting at 1.
    """
    path = Path(path)
    fmt = format or _infer_format(path)
    sep = "\t" if fmt == "tsv" else ","
    name = label or path.stem
    try:
        df = pd.read_csv(
            path,
            sep=sep,
            header=0 if has_header else None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise SampleSizeError(f"{name}: sample too small (0 < {MIN_RAW_SIZE} rows)") from None
    except pd.errors.ParserError as e:
        raise SampleFormatError(f"{name}: {e}") from e

    raw = df.fillna("").astype(str).apply(lambda col: col.str.strip())
    blank = (raw == "").all(axis=1)
    if blank.all():
        raise SampleSizeError(f"{name}: sample too small (0 < {MIN_RAW_SIZE} rows)")
    if df.shape[1] != 2:
        raise SampleFormatError(f"{name}: expected 2 columns (x, y), found {df.shape[1]}")

    cols = []
    bad_rows = []
    for j in range(2):
        numeric = pd.to_numeric(raw.iloc[:, j], errors="coerce")
        bad = _first_bad_row(raw.iloc[:, j], numeric, blank)
        if bad is not None:
            bad_rows.append((bad, raw.iloc[bad, j]))
        cols.append(numeric.to_numpy(dtype=float))
    if bad_rows:
        row, token = min(bad_rows)
        raise SampleFormatError(f"{name}: cannot parse {token!r} as a number at row {row + 1}", row=row + 1)

    keep = ~blank.to_numpy()
    points = np.column_stack(cols)
    nonfinite = np.flatnonzero(keep & ~np.isfinite(points).all(axis=1))
    if nonfinite.size:
        row = int(nonfinite[0]) + 1
        raise SampleFormatError(f"{name}: non-finite value at row {row}", row=row)
    points = points[keep]
    log.debug("Loaded %d rows from %s", len(points), path)
    return RawSample(points=points, label=name)


def rescale_pooled(
    a: RawSample, b: RawSample, identity: bool = False
) -> Tuple[BivariateSample, BivariateSample, RescaleTransform]:
    """Map both samples onto [0,1]^2 with the pooled per-axis min/max.

    With `identity`, samples already inside the unit square pass unchanged.
    """
    if identity:
        for s in (a, b):
            if (s.points < 0.0).any() or (s.points > 1.0).any():
                raise OutOfRangeError(f"{s.label}: identity rescaling needs all points inside [0,1]^2")
        return (
            BivariateSample(a.points, IDENTITY, a.label),
            BivariateSample(b.points, IDENTITY, b.label),
            IDENTITY,
        )

    pooled = np.vstack([a.points, b.points])
    lo = pooled.min(axis=0)
    hi = pooled.max(axis=0)
    for axis, (l, h) in zip("xy", zip(lo, hi)):
        if not l < h:
            raise DegenerateAxisError(f"degenerate {axis} axis: every pooled value equals {l:g}")
    transform = RescaleTransform(
        x_min=float(lo[0]), x_max=float(hi[0]), y_min=float(lo[1]), y_max=float(hi[1]), identity_flag=False
    )
    pa = transform.apply(a.points)
    pb = transform.apply(b.points)
    return (
        BivariateSample(pa, transform, a.label),
        BivariateSample(pb, transform, b.label),
        transform,
    )
