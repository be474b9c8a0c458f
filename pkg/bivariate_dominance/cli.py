from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Callable, Dict, Optional, Sequence

import yaml
from pydantic import ValidationError

from .config import CliConfig, load_run_config
from .dominance import Adjustment, Direction, Hypothesis, run_both_directions, run_test
from .env import load_env
from .report import (
    both_directions_to_dict,
    dominance_report_to_dict,
    render_json,
    render_text,
    simulation_to_dict,
    statistic_pair_to_dict,
    statistic_to_dict,
    write_document,
)
from .sample_io import load_sample, rescale_pooled
from .simulate import run_simulation
from .statistics import StatisticKind, compute_statistic, statistic_pair
from .synth import parse_generator
from .utils import setup_logging


log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 2


def _emit(doc: Dict[str, Any], cfg: CliConfig) -> None:
    text = render_json(doc) if cfg.output == "json" else render_text(doc)
    write_document(text, cfg.out)


def _load_pair(cfg: CliConfig):
    raw_a = load_sample(cfg.a, cfg.format, cfg.header)
    raw_b = load_sample(cfg.b, cfg.format, cfg.header)
    if cfg.rescale_mode == "identity":
        log.info("Identity rescaling: samples are taken as already on the unit square")
    return rescale_pooled(raw_a, raw_b, identity=cfg.rescale_mode == "identity")


def cmd_test(cfg: CliConfig) -> int:
    a, b, _ = _load_pair(cfg)
    boot = cfg.bootstrap_config()
    adjustment = Adjustment(cfg.adjustment)
    if cfg.direction == "both":
        reports = run_both_directions(cfg.order, cfg.modularity, a, b, boot, adjustment)
        doc = both_directions_to_dict(reports)
    else:
        hyp = Hypothesis(cfg.order, cfg.modularity, cfg.direction)
        doc = dominance_report_to_dict(run_test(hyp, a, b, boot, adjustment))
    _emit(doc, cfg)
    return EXIT_OK


def cmd_statistic(cfg: CliConfig) -> int:
    a, b, _ = _load_pair(cfg)
    kind = StatisticKind(cfg.order, cfg.modularity)
    if cfg.direction == "both":
        forward, reverse = statistic_pair(kind, a, b)
        doc = statistic_pair_to_dict(forward, reverse, a, b)
    elif cfg.direction == "b_dominates_a":
        doc = statistic_to_dict(compute_statistic(kind, b, a), a, b, Direction.B_DOMINATES_A)
    else:
        doc = statistic_to_dict(compute_statistic(kind, a, b), a, b)
    _emit(doc, cfg)
    return EXIT_OK


def cmd_simulate(cfg: CliConfig) -> int:
    if cfg.direction == "both":
        raise ValueError("simulate runs one direction at a time")
    gen_a = parse_generator(cfg.generator_a)
    gen_b = parse_generator(cfg.generator_b)
    hyp = Hypothesis(cfg.order, cfg.modularity, cfg.direction)
    result = run_simulation(
        hyp, gen_a, gen_b, cfg.m, cfg.n, cfg.trials, cfg.bootstrap_config(), Adjustment(cfg.adjustment), cfg.rescale_mode
    )
    _emit(simulation_to_dict(result), cfg)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[CliConfig], int]] = {
    "test": cmd_test,
    "statistic": cmd_statistic,
    "simulate": cmd_simulate,
}


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps unset flags out of the namespace so run-file values survive
    S = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="YAML run file; flags override its values")
    common.add_argument("--order", choices=["first", "second"], default=S)
    common.add_argument("--class", dest="modularity", default=S,
                        choices=["submodular", "supermodular", "marginal_x", "marginal_y"])
    common.add_argument("--direction", choices=["a_dominates_b", "b_dominates_a", "both"], default=S)
    common.add_argument("--replicates", type=int, default=S)
    common.add_argument("--seed", type=int, default=S)
    common.add_argument("--alpha", type=float, default=S)
    common.add_argument("--adjustment", choices=["none", "bonferroni"], default=S)
    common.add_argument("--rescale", choices=["pooled-minmax", "identity"], default=S)
    common.add_argument("--output", choices=["json", "text"], default=S)
    common.add_argument("--out", default=S, help="write the report here instead of stdout")
    common.add_argument("--workers", type=int, default=S)
    common.add_argument("-v", "--verbose", action="store_true")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--a", default=S, help="sample a (two numeric columns x,y)")
    data.add_argument("--b", default=S, help="sample b")
    data.add_argument("--format", choices=["csv", "tsv"], default=S)
    data.add_argument("--header", action="store_true", default=S, help="skip one header line")

    ap = argparse.ArgumentParser(prog="bidom", description="Bivariate stochastic dominance tests")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("test", parents=[common, data], help="bootstrap dominance test on two CSV samples")
    sub.add_parser("statistic", parents=[common, data], help="statistic value without bootstrap")
    sim = sub.add_parser("simulate", parents=[common], help="Monte Carlo size/power study")
    sim.add_argument("--gen-a", dest="generator_a", default=S, help="e.g. independent_uniform")
    sim.add_argument("--gen-b", dest="generator_b", default=S, help="e.g. scaled_uniform:0.8")
    sim.add_argument("--m", type=int, default=S)
    sim.add_argument("--n", type=int, default=S)
    sim.add_argument("--trials", type=int, default=S, help="Monte Carlo repetitions R")
    return ap


def build_config(args: argparse.Namespace) -> CliConfig:
    values: Dict[str, Any] = {}
    if args.config:
        values.update(load_run_config(args.config))
    flags = {k: v for k, v in vars(args).items() if k not in {"config", "verbose"}}
    values.update(flags)
    return CliConfig.model_validate(values)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(logging.DEBUG if args.verbose else logging.INFO)
    load_env()
    try:
        cfg = build_config(args)
        return COMMANDS[cfg.command](cfg)
    except (ValidationError, ValueError, OSError, yaml.YAMLError) as e:
        log.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
