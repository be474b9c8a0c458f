"""Synthetic bivariate families on [0,1]^2 with known cdfs.

  independent_uniform        (U, V)                 F = s t
  comonotone_uniform         (U, U)                 F = min(s, t)
  countermonotone_uniform    (U, 1 - U)             F = max(0, s + t - 1)
  scaled_uniform(c)          c (U, V), 0 < c <= 1   F = min(s/c, 1) min(t/c, 1)
  gaussian_copula(rho)       (Φ(Z1), Φ(Z2)), corr(Z1, Z2) = rho

scaled_uniform(c) puts more mass near the origin than independent_uniform,
so F_scaled >= F_uniform everywhere: the uniform family dominates it at
first order over the submodular class.
"""

from __future__ import annotations

import logging
import re
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import stats

from .config import MAX_SEED
from .sample_io import BivariateSample


log = logging.getLogger(__name__)


Family = Literal[
    "independent_uniform",
    "comonotone_uniform",
    "countermonotone_uniform",
    "scaled_uniform",
    "gaussian_copula",
]

_ALIASES = {"uniform": "independent_uniform", "comonotone": "comonotone_uniform", "countermonotone": "countermonotone_uniform"}
_SPEC_RE = re.compile(r"^\s*([a-z_]+)\s*(?:[:(]\s*([-+0-9.eE]+)\s*\)?)?\s*$")


class GeneratorSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: Family
    param: Optional[float] = None
    seed: int = Field(0, ge=0, le=MAX_SEED)

    @model_validator(mode="after")
    def _check_param(self) -> "GeneratorSpec":
        if self.family == "scaled_uniform":
            if self.param is None or not 0.0 < self.param <= 1.0:
                raise ValueError("scaled_uniform needs a scale c in (0, 1]")
        elif self.family == "gaussian_copula":
            if self.param is None or not -1.0 < self.param < 1.0:
                raise ValueError("gaussian_copula needs a correlation rho in (-1, 1)")
        elif self.param is not None:
            raise ValueError(f"{self.family} takes no parameter")
        return self

    @property
    def label(self) -> str:
        return self.family if self.param is None else f"{self.family}({self.param:g})"

    def with_seed(self, seed: int) -> "GeneratorSpec":
        return self.model_copy(update={"seed": int(seed)})

    def to_dict(self) -> dict:
        return {"family": self.family, "param": self.param, "seed": self.seed}


def parse_generator(text: str, seed: int = 0) -> GeneratorSpec:
    """Parse 'scaled_uniform:0.8', 'gaussian_copula(0.5)' or 'independent_uniform'."""
    m = _SPEC_RE.match(text or "")
    if not m:
        raise ValueError(f"cannot parse generator spec {text!r}")
    family = _ALIASES.get(m.group(1), m.group(1))
    param = float(m.group(2)) if m.group(2) is not None else None
    return GeneratorSpec(family=family, param=param, seed=seed)


def derive_seed(seed: int, *key: int) -> int:
    """Independent 64-bit seed for the stream keyed on (seed, *key)."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def generate(spec: GeneratorSpec, n: int) -> BivariateSample:
    if n < 1:
        raise ValueError(f"sample size must be positive, got {n}")
    rng = np.random.default_rng(spec.seed)
    if spec.family == "independent_uniform":
        points = rng.random((n, 2))
    elif spec.family == "comonotone_uniform":
        u = rng.random(n)
        points = np.column_stack([u, u])
    elif spec.family == "countermonotone_uniform":
        u = rng.random(n)
        points = np.column_stack([u, 1.0 - u])
    elif spec.family == "scaled_uniform":
        points = spec.param * rng.random((n, 2))
    else:
        rho = spec.param
        z = rng.standard_normal((n, 2))
        z[:, 1] = rho * z[:, 0] + np.sqrt(1.0 - rho * rho) * z[:, 1]
        points = stats.norm.cdf(z)
    return BivariateSample.from_points(points, label=spec.label)


def population_cdf(spec: GeneratorSpec, s: float, t: float) -> float:
    s = min(max(float(s), 0.0), 1.0)
    t = min(max(float(t), 0.0), 1.0)
    if spec.family == "independent_uniform":
        return s * t
    if spec.family == "comonotone_uniform":
        return min(s, t)
    if spec.family == "countermonotone_uniform":
        return max(0.0, s + t - 1.0)
    if spec.family == "scaled_uniform":
        c = spec.param
        return min(s / c, 1.0) * min(t / c, 1.0)
    if s <= 0.0 or t <= 0.0:
        return 0.0
    if s >= 1.0:
        return t
    if t >= 1.0:
        return s
    rho = spec.param
    mvn = stats.multivariate_normal(mean=[0.0, 0.0], cov=[[1.0, rho], [rho, 1.0]])
    return float(mvn.cdf([stats.norm.ppf(s), stats.norm.ppf(t)]))
