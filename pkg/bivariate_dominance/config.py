from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, model_validator


log = logging.getLogger(__name__)


DEFAULT_REPLICATES = 999
DEFAULT_BETA = 0.05
DEFAULT_SEED = 0
MAX_SEED = 2**64 - 1
DEFAULT_TRIALS = 100
WORKERS_ENV_VAR = "BIDOM_WORKERS"
SCHEMA_VERSION = 1

JOINT_RULE = "reject dominance if any condition rejects"


class BootstrapConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    replicates: int = Field(DEFAULT_REPLICATES, ge=1)
    seed: int = Field(DEFAULT_SEED, ge=0, le=MAX_SEED)
    beta: float = Field(DEFAULT_BETA, gt=0.0, lt=1.0)
    # None -> one worker per CPU
    workers: Optional[int] = Field(None, ge=1)


class CliConfig(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    command: Literal["test", "simulate", "statistic"]
    a: Optional[Path] = None
    b: Optional[Path] = None
    format: Optional[Literal["csv", "tsv"]] = None
    header: bool = False
    order: Literal["first", "second"] = "first"
    modularity: Literal["submodular", "supermodular", "marginal_x", "marginal_y"] = Field(
        "submodular", alias="class"
    )
    direction: Literal["a_dominates_b", "b_dominates_a", "both"] = "a_dominates_b"
    replicates: int = Field(DEFAULT_REPLICATES, ge=1)
    seed: int = Field(DEFAULT_SEED, ge=0, le=MAX_SEED)
    alpha: float = Field(DEFAULT_BETA, gt=0.0, lt=1.0)
    rescale: Optional[Literal["pooled-minmax", "identity"]] = None
    adjustment: Literal["none", "bonferroni"] = "none"
    output: Literal["json", "text"] = "json"
    workers: Optional[int] = Field(None, ge=1)
    out: Optional[Path] = None
    # simulate only
    generator_a: Optional[str] = None
    generator_b: Optional[str] = None
    m: int = Field(100, ge=2)
    n: int = Field(100, ge=2)
    trials: int = Field(DEFAULT_TRIALS, ge=1)

    @model_validator(mode="after")
    def _check_command(self) -> "CliConfig":
        if self.command in {"test", "statistic"}:
            if self.a is None or self.b is None:
                raise ValueError(f"{self.command} needs both --a and --b sample files")
        if self.command in {"test", "simulate"} and self.modularity not in {"submodular", "supermodular"}:
            raise ValueError(f"class {self.modularity!r} is only available for the statistic command")
        if self.command == "simulate":
            if not self.generator_a or not self.generator_b:
                raise ValueError("simulate needs --gen-a and --gen-b generator specs")
        return self

    @property
    def rescale_mode(self) -> str:
        # synthetic data already lives on the unit square
        if self.rescale is not None:
            return self.rescale
        return "identity" if self.command == "simulate" else "pooled-minmax"

    def bootstrap_config(self) -> BootstrapConfig:
        return BootstrapConfig(replicates=self.replicates, seed=self.seed, beta=self.alpha, workers=self.workers)


def load_run_config(path: Path) -> Dict[str, Any]:
    """Read a YAML run file; keys are CliConfig field names (or `class`)."""
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f"run file {path} must contain a mapping, got {type(data).__name__}")
    log.debug("Loaded run file %s with keys %s", path, sorted(data))
    out = {str(k).replace("-", "_"): v for k, v in data.items()}
    if "class" in out:
        out["modularity"] = out.pop("class")
    return out
