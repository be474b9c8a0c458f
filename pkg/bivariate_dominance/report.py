from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from .config import SCHEMA_VERSION
from .dominance import Direction, DominanceTestReport, SubResult, recompute_joint_decision
from .sample_io import BivariateSample, RescaleTransform
from .simulate import SimulationResult
from .statistics import StatisticValue
from .utils import atomic_write


def _argmax_raw(sv: StatisticValue, transform: RescaleTransform):
    if sv.kind.is_marginal:
        return transform.invert_axis(sv.kind.axis.value, sv.argmax)
    return list(transform.invert(sv.argmax))


def _argmax(sv: StatisticValue):
    return sv.argmax if sv.kind.is_marginal else list(sv.argmax)


def _hypothesis(hyp) -> Dict[str, str]:
    return {"order": hyp.order.value, "class": hyp.cls.value, "direction": hyp.direction.value}


def condition_to_dict(sub: SubResult, transform: RescaleTransform) -> Dict[str, Any]:
    dist = sub.distribution
    sv = dist.observed
    return {
        "name": sub.condition.name,
        "condition_id": sub.condition.condition_id,
        "statistic": sv.kind.name,
        "value": sv.value,
        "raw_sup": sv.raw_sup,
        "scale": sv.scale,
        "argmax": _argmax(sv),
        "argmax_raw": _argmax_raw(sv, transform),
        "critical_value": dist.critical_value,
        "p_value": dist.p_value,
        "level": sub.level,
        "decision": sub.decision.value,
    }


def dominance_report_to_dict(report: DominanceTestReport) -> Dict[str, Any]:
    meta = report.metadata
    transform: RescaleTransform = meta["rescale"]
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "test",
        "hypothesis": _hypothesis(report.hypothesis),
        "conditions": [condition_to_dict(s, transform) for s in report.sub_results],
        "joint_decision": report.joint_decision.value,
        "joint_rule": meta["joint_rule"],
        "adjustment": report.adjustment.value,
        "alpha": report.beta,
        "replicates": meta["replicates"],
        "seed": meta["seed"],
        "samples": {
            "a": {"label": meta["labels"]["a"], "size": meta["m"]},
            "b": {"label": meta["labels"]["b"], "size": meta["n"]},
        },
        "rescale": transform.to_dict(),
    }


def both_directions_to_dict(reports: Sequence[DominanceTestReport]) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "test",
        "direction": "both",
        "reports": [dominance_report_to_dict(r) for r in reports],
    }


def statistic_pair_to_dict(forward: StatisticValue, reverse: StatisticValue, a: BivariateSample, b: BivariateSample) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "statistic",
        "direction": "both",
        "reports": [
            statistic_to_dict(forward, a, b, Direction.A_DOMINATES_B),
            statistic_to_dict(reverse, a, b, Direction.B_DOMINATES_A),
        ],
    }


def statistic_to_dict(
    sv: StatisticValue, a: BivariateSample, b: BivariateSample, direction: Direction = Direction.A_DOMINATES_B
) -> Dict[str, Any]:
    """`a` and `b` keep their input roles; `direction` names the claim `sv` measures."""
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "statistic",
        "statistic": sv.kind.name,
        "order": sv.kind.order.value,
        "class": sv.kind.cls.value,
        "direction": Direction(direction).value,
        "value": sv.value,
        "raw_sup": sv.raw_sup,
        "scale": sv.scale,
        "argmax": _argmax(sv),
        "argmax_raw": _argmax_raw(sv, a.rescale),
        "samples": {"a": {"label": a.label, "size": a.size}, "b": {"label": b.label, "size": b.size}},
        "rescale": a.rescale.to_dict(),
    }


def simulation_to_dict(result: SimulationResult) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "simulate",
        "hypothesis": _hypothesis(result.hypothesis),
        "generator_a": result.generator_a.to_dict(),
        "generator_b": result.generator_b.to_dict(),
        "m": result.m,
        "n": result.n,
        "trials": result.trials,
        "rejections": result.rejections,
        "rejection_frequency": result.rejection_frequency,
        "standard_error": result.standard_error,
        "condition_rejection_frequency": result.condition_rejection_frequency,
        "alpha": result.cfg.beta,
        "replicates": result.cfg.replicates,
        "seed": result.cfg.seed,
        "adjustment": result.adjustment.value,
    }


def joint_decision_from_document(doc: Dict[str, Any]) -> str:
    """Recompute a test document's joint decision from its conditions alone."""
    return recompute_joint_decision([c["decision"] for c in doc["conditions"]]).value


def render_json(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _fmt_point(p) -> str:
    if isinstance(p, (list, tuple)):
        return "(" + ", ".join(f"{v:.6g}" for v in p) + ")"
    return f"{p:.6g}"


def _render_test_text(doc: Dict[str, Any]) -> list[str]:
    h = doc["hypothesis"]
    lines = [
        f"Hypothesis: {h['direction']} at {h['order']} order over {h['class']} functions",
        f"Samples: a={doc['samples']['a']['label']} (m={doc['samples']['a']['size']}), "
        f"b={doc['samples']['b']['label']} (n={doc['samples']['b']['size']})",
        f"Bootstrap: B={doc['replicates']} seed={doc['seed']} alpha={doc['alpha']} adjustment={doc['adjustment']}",
    ]
    for c in doc["conditions"]:
        lines.append(
            f"  {c['name']:<5} {c['statistic']:<9} value={c['value']:.6g} raw_sup={c['raw_sup']:.6g} "
            f"at {_fmt_point(c['argmax_raw'])} critical={c['critical_value']:.6g} p={c['p_value']:.4f} -> {c['decision']}"
        )
    lines.append(f"Joint decision: {doc['joint_decision']} ({doc['joint_rule']})")
    return lines


def render_text(doc: Dict[str, Any]) -> str:
    if "reports" in doc:
        return "\n".join(render_text(sub) for sub in doc["reports"])
    if doc["command"] == "test":
        lines = _render_test_text(doc)
    elif doc["command"] == "statistic":
        lines = [
            f"{doc['statistic']} ({doc['order']}, {doc['class']}) {doc['direction']}: value={doc['value']:.6g} "
            f"raw_sup={doc['raw_sup']:.6g} scale={doc['scale']:.6g}",
            f"argmax={_fmt_point(doc['argmax'])} raw={_fmt_point(doc['argmax_raw'])}",
        ]
    else:
        h = doc["hypothesis"]
        lines = [
            f"Simulation: {doc['trials']} trials, m={doc['m']} n={doc['n']}, "
            f"a~{doc['generator_a']['family']} b~{doc['generator_b']['family']}",
            f"Hypothesis: {h['direction']} at {h['order']} order over {h['class']} functions",
            f"Rejection frequency: {doc['rejection_frequency']:.4f} (SE {doc['standard_error']:.4f})",
        ]
        for cid, freq in doc["condition_rejection_frequency"].items():
            lines.append(f"  {cid}: {freq:.4f}")
    return "\n".join(lines) + "\n"


def write_document(text: str, out: Optional[Path] = None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with atomic_write(out) as tmp:
        tmp.write_text(text, encoding="utf-8")
