"""Report serialization: a fixed, versioned JSON schema and a text rendering.

Every number in the JSON carries both its exact fraction string and a float,
so consumers can choose exactness or convenience. The schema is stable:
``schema_version``, ``verdict``, ``measures[]`` (each with ``gap`` and
``satisfied``), ``stats``, ``tolerance``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, Optional, Union

from .compatibility import CompatibilityVerdict, Diagnosis, PerformanceLine
from .confusion import GroupStats, PopulationStats
from .errors import DomainError
from .measures import FairnessReport, GroupRates, MeasureGap, RatePair
from .rational import fraction_str

SCHEMA_VERSION = 1

Verdict = Union[None, str, CompatibilityVerdict, Diagnosis]


def number_payload(x: Optional[Fraction]) -> Optional[Dict[str, Any]]:
    if x is None:
        return None
    f = Fraction(x)
    return {"fraction": fraction_str(f), "decimal": float(f)}


def _measure_payload(m: MeasureGap) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "measure": m.measure,
        "gap": number_payload(m.gap),
        "satisfied": m.satisfied,
        "error": m.error,
    }
    if m.measure == "equal_opportunity" and m.gap is not None:
        out["fnr_gap"] = number_payload(-m.gap)
    return out


def _group_stats_payload(g: GroupStats) -> Dict[str, Any]:
    return {
        "group": g.group,
        "n": g.n,
        "demographic_rate": number_payload(g.demographic_rate),
        "base_rate": number_payload(g.base_rate),
        "posterior": number_payload(g.posterior),
        "fpr": number_payload(g.fpr),
        "tpr": number_payload(g.tpr),
        "fnr": number_payload(g.fnr),
    }


def _group_rates_payload(g: GroupRates) -> Dict[str, Any]:
    return {
        "group": g.group,
        "base_rate": number_payload(g.base_rate),
        "posterior": number_payload(g.posterior),
        "fpr": number_payload(g.fpr),
        "tpr": number_payload(g.tpr),
        "fnr": number_payload(g.fnr),
    }


def stats_payload(stats: Union[PopulationStats, RatePair]) -> Dict[str, Any]:
    if isinstance(stats, PopulationStats):
        return {
            "kind": "counts",
            "n_total": stats.n_total,
            "groups": [_group_stats_payload(stats.group0), _group_stats_payload(stats.group1)],
        }
    if isinstance(stats, RatePair):
        return {
            "kind": "rates",
            "groups": [_group_rates_payload(stats.group0), _group_rates_payload(stats.group1)],
            "pi1": number_payload(stats.pi1),
        }
    raise DomainError(f"cannot serialize stats of type {type(stats).__name__}")


def verdict_payload(v: CompatibilityVerdict) -> Dict[str, Any]:
    return {
        "kind": v.kind.value,
        "p0": number_payload(v.p0),
        "p1": number_payload(v.p1),
        "fpr_star": number_payload(v.fpr_star),
        "tpr_star": number_payload(v.tpr_star),
        "q0": number_payload(v.q0),
        "q1": number_payload(v.q1),
        "parity_gap": number_payload(v.parity_gap),
        "on_chance_line": v.on_chance_line,
        "explanation": v.explanation,
    }


def line_payload(line: PerformanceLine) -> Dict[str, Any]:
    return {
        "base_rate": number_payload(line.base_rate),
        "target_posterior": number_payload(line.target_posterior),
        "degenerate": line.degenerate,
        "slope": None if line.degenerate else number_payload(line.slope),
        "intercept": None if line.degenerate else number_payload(line.intercept),
    }


def report_payload(report: FairnessReport, verdict: Verdict = None) -> Dict[str, Any]:
    """The fixed JSON document for one audit."""
    verdict_str: Optional[str] = None
    detail: Optional[Dict[str, Any]] = None
    diagnosis_fields: Dict[str, Any] = {}
    if isinstance(verdict, str):
        verdict_str = verdict
    elif isinstance(verdict, CompatibilityVerdict):
        verdict_str = verdict.kind.value
        detail = verdict_payload(verdict)
    elif isinstance(verdict, Diagnosis):
        verdict_str = verdict.kind
        detail = verdict_payload(verdict.verdict) if verdict.verdict is not None else None
        diagnosis_fields = {
            "equalized_odds_holds": verdict.equalized_odds_holds,
            "failing": list(verdict.failing),
            "lines": [line_payload(l) for l in verdict.lines],
        }
    payload: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "verdict": verdict_str,
        "tolerance": number_payload(report.tolerance),
        "measures": [_measure_payload(m) for m in report.measures],
        "stats": stats_payload(report.stats),
        "disparate_impact_ratio": number_payload(report.disparate_impact_ratio),
        "all_satisfied": report.all_satisfied,
    }
    if detail is not None or isinstance(verdict, Diagnosis):
        payload["verdict_detail"] = detail
    payload.update(diagnosis_fields)
    return payload


def _fmt_number(num: Optional[Dict[str, Any]]) -> str:
    if num is None:
        return "-"
    return f"{num['fraction']} ({num['decimal']:.6g})"


def render_text(payload: Dict[str, Any]) -> str:
    """Human-readable rendering of a report payload."""
    lines = []
    tol = payload["tolerance"]
    lines.append(f"fairness audit  (tolerance {tol['decimal']:.6g})")
    lines.append("")
    lines.append(f"  {'measure':<22} {'gap':<26} verdict")
    for m in payload["measures"]:
        if m["error"] is not None:
            verdict = f"undefined: {m['error']}"
        else:
            verdict = "satisfied" if m["satisfied"] else "VIOLATED"
        lines.append(f"  {m['measure']:<22} {_fmt_number(m['gap']):<26} {verdict}")
    di = payload.get("disparate_impact_ratio")
    if di is not None:
        lines.append("")
        lines.append(f"  disparate impact ratio (informational): {_fmt_number(di)}")
    stats = payload.get("stats")
    if stats:
        lines.append("")
        for g in stats["groups"]:
            parts = [f"group {g['group']}:"]
            if g.get("n") is not None:
                parts.append(f"n={g['n']}")
            for key, label in (
                ("base_rate", "p"),
                ("posterior", "q"),
                ("fpr", "FPR"),
                ("tpr", "TPR"),
            ):
                num = g.get(key)
                if num is not None:
                    parts.append(f"{label}={num['fraction']}")
            lines.append("  " + " ".join(parts))
    if payload.get("verdict"):
        lines.append("")
        lines.append(f"verdict: {payload['verdict']}")
        detail = payload.get("verdict_detail")
        if detail is not None:
            lines.append(f"  {detail['explanation']}")
    if payload.get("equalized_odds_holds") is not None:
        lines.append(f"equalized odds holds: {'yes' if payload['equalized_odds_holds'] else 'no'}")
        if payload.get("failing"):
            lines.append(f"failing equalities: {', '.join(payload['failing'])}")
    lines.append("")
    lines.append("overall: " + ("all measures satisfied" if payload["all_satisfied"] else "violations found"))
    return "\n".join(lines) + "\n"


def emit_report(report: FairnessReport, verdict: Verdict = None, fmt: str = "text") -> str:
    """Serialize a report with an optional verdict as JSON or text."""
    payload = report_payload(report, verdict)
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "text":
        return render_text(payload)
    raise DomainError(f"format must be 'text' or 'json', got {fmt!r}")
