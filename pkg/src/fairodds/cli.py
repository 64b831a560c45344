"""Command-line client for the audit service.

Every subcommand builds a request, sends it to the service (in process by
default, or remote via --server) and formats the response. Exit codes follow
the CI gating contract: 0 when every requested measure is satisfied, 1 when a
violation (or an unverifiable measure) is found, 2 on input or usage errors.
"""

from __future__ import annotations

import json
import sys
from typing import Any, Dict, List, Optional

import click

from .client import ServiceClient
from .errors import AuditError
from .rational import as_fraction
from .records import AuditConfig, ReadResult, read_records, write_records
from .reporting import render_text


def _fail_usage(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _client(ctx: click.Context) -> ServiceClient:
    return ServiceClient(base_url=ctx.obj.get("server"))


def _write_output(text: str, output: Optional[str]) -> None:
    if output and output != "-":
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _read_input(input_path: str, config: AuditConfig) -> ReadResult:
    if input_path == "-":
        return read_records(sys.stdin, config)
    return read_records(input_path, config)


def _parse_tolerance(raw: str) -> str:
    as_fraction(raw, "tolerance")  # fail fast with a clear message
    return raw


read_options = [
    click.option("--group-col", default="group", show_default=True, help="Group column name."),
    click.option("--truth-col", default="y", show_default=True, help="Ground-truth column name."),
    click.option("--prediction-col", default="yhat", show_default=True, help="Prediction column name."),
    click.option("--score-col", default=None, help="Score column name (replaces the prediction column)."),
    click.option("--protected-label", default=None, help="Group value mapped to the protected group (1)."),
    click.option("--unprotected-label", default=None, help="Group value mapped to the unprotected group (0)."),
    click.option("--tab", is_flag=True, help="Read tab-separated input instead of commas."),
]

output_options = [
    click.option("--format", "fmt", type=click.Choice(["text", "json", "svg"]), default="text", show_default=True),
    click.option("--output", "-o", default=None, help="Write to a file instead of stdout."),
    click.option("--tolerance", default="1e-9", show_default=True, help="Gap tolerance (exact: '1e-9', '1/1000')."),
]


def _apply(options):
    def wrap(fn):
        for opt in reversed(options):
            fn = opt(fn)
        return fn

    return wrap


def _config(group_col, truth_col, prediction_col, score_col, protected_label, unprotected_label, tab) -> AuditConfig:
    return AuditConfig(
        group_column=group_col,
        truth_column=truth_col,
        prediction_column=None if score_col else prediction_col,
        score_column=score_col,
        protected_label=protected_label,
        unprotected_label=unprotected_label,
        delimiter="\t" if tab else ",",
    )


def _gap_annotations(payload: Dict[str, Any]) -> List[str]:
    notes = []
    for m in payload.get("measures", ()):
        if m.get("error"):
            notes.append(f"{m['measure']}: undefined")
        elif m.get("gap") is not None:
            mark = "ok" if m["satisfied"] else "VIOLATED"
            notes.append(f"{m['measure']}: gap {m['gap']['fraction']} ({mark})")
    return notes


def _stats_points(payload: Dict[str, Any]) -> List[Dict[str, Any]]:
    points = []
    for g in payload.get("stats", {}).get("groups", ()):
        if g.get("fpr") is not None and g.get("tpr") is not None:
            points.append(
                {"fpr": g["fpr"]["fraction"], "tpr": g["tpr"]["fraction"], "label": f"S={g['group']}"}
            )
    return points


def _report_plot_spec(payload: Dict[str, Any], title: str) -> Dict[str, Any]:
    spec: Dict[str, Any] = {
        "points": _stats_points(payload),
        "annotations": _gap_annotations(payload),
        "title": title,
    }
    lines = payload.get("lines")
    if lines:
        spec["lines"] = [
            {"p": l["base_rate"]["fraction"], "q_star": l["target_posterior"]["fraction"]} for l in lines
        ]
    return spec


def _emit_report(ctx: click.Context, payload: Dict[str, Any], fmt: str, output: Optional[str], title: str) -> None:
    if fmt == "json":
        _write_output(json.dumps(payload, indent=2) + "\n", output)
    elif fmt == "svg":
        with _client(ctx) as client:
            svg = client.plot(_report_plot_spec(payload, title))
        _write_output(svg, output)
    else:
        _write_output(render_text(payload), output)
    sys.exit(0 if payload["all_satisfied"] else 1)


@click.group()
@click.option("--server", default=None, help="Base URL of a running audit service; default runs in process.")
@click.version_option()
@click.pass_context
def main(ctx: click.Context, server: Optional[str]) -> None:
    """Audit binary classifiers for parity/odds fairness and their trade-offs."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command()
@click.argument("input", default="-")
@_apply(read_options)
@_apply(output_options)
@click.pass_context
def audit(ctx, input, group_col, truth_col, prediction_col, score_col, protected_label, unprotected_label, tab, fmt, output, tolerance):
    """Compute all fairness measure gaps from labeled prediction records."""
    try:
        config = _config(group_col, truth_col, prediction_col, score_col, protected_label, unprotected_label, tab)
        if config.score_column is not None:
            _fail_usage("audit needs hard predictions; use 'tradeoff' for score data")
        result = _read_input(input, config)
        with _client(ctx) as client:
            payload = client.audit(
                {"records": [list(r) for r in result.records], "tolerance": _parse_tolerance(tolerance)}
            )
    except (AuditError, OSError) as exc:
        _fail_usage(str(exc))
    _emit_report(ctx, payload, fmt, output, "fairness audit")


@main.command()
@click.argument("input", default="-")
@_apply(read_options)
@_apply(output_options)
@click.pass_context
def diagnose(ctx, input, group_col, truth_col, prediction_col, score_col, protected_label, unprotected_label, tab, fmt, output, tolerance):
    """Audit plus the parity/odds compatibility verdict and plot lines."""
    try:
        config = _config(group_col, truth_col, prediction_col, score_col, protected_label, unprotected_label, tab)
        if config.score_column is not None:
            _fail_usage("diagnose needs hard predictions; use 'tradeoff' for score data")
        result = _read_input(input, config)
        with _client(ctx) as client:
            payload = client.diagnose(
                {"records": [list(r) for r in result.records], "tolerance": _parse_tolerance(tolerance)}
            )
    except (AuditError, OSError) as exc:
        _fail_usage(str(exc))
    _emit_report(ctx, payload, fmt, output, "parity/odds diagnosis")


@main.command()
@click.option("--p0", required=True, help="Base rate of group 0 (exact strings accepted: '1/3').")
@click.option("--p1", required=True, help="Base rate of group 1.")
@click.option("--q-star", required=True, help="Shared posterior target q*.")
@_apply(output_options)
@click.pass_context
def lines(ctx, p0, p1, q_star, fmt, output, tolerance):
    """Print or plot the two operating-point lines and their crossing."""
    try:
        with _client(ctx) as client:
            payload = client.lines({"p0": p0, "p1": p1, "q_star": q_star})
            if fmt == "svg":
                spec: Dict[str, Any] = {
                    "lines": [{"p": p0, "q_star": q_star}, {"p": p1, "q_star": q_star}],
                    "title": "operating-point lines",
                }
                crossing = payload.get("intersection")
                if crossing is not None:
                    spec["points"] = [
                        {
                            "fpr": crossing["point"][0]["fraction"],
                            "tpr": crossing["point"][1]["fraction"],
                            "label": "crossing",
                        }
                    ]
                _write_output(client.plot(spec), output)
                return
    except AuditError as exc:
        _fail_usage(str(exc))
    if fmt == "json":
        _write_output(json.dumps(payload, indent=2) + "\n", output)
        return
    text_lines = []
    for i, line in enumerate(payload["lines"]):
        if line["degenerate"]:
            form = f"vertical: FPR = {line['target_posterior']['fraction']}"
        else:
            form = f"slope={line['slope']['fraction']}, intercept={line['intercept']['fraction']}"
        text_lines.append(
            f"L{i}: p={line['base_rate']['fraction']}, q*={line['target_posterior']['fraction']}, {form}"
        )
    crossing = payload.get("intersection")
    if crossing is None:
        text_lines.append(f"no crossing: {payload.get('note')}")
    else:
        fx = crossing["point"][0]["fraction"]
        tx = crossing["point"][1]["fraction"]
        where = "on the chance line" if crossing["on_chance_line"] else "off the chance line"
        text_lines.append(f"crossing at ({fx}, {tx}), {where} [{crossing['kind']}]")
    _write_output("\n".join(text_lines) + "\n", output)


def _parse_curve(raw: str) -> List[List[str]]:
    points = []
    for chunk in raw.replace(";", " ").split():
        parts = chunk.split(",")
        if len(parts) != 2:
            raise AuditError(f"curve point {chunk!r} is not 'fpr,tpr'")
        points.append([parts[0], parts[1]])
    return points


@main.command()
@click.argument("input", default=None, required=False)
@_apply(read_options)
@click.option("--curve", default=None, help="Shared ROC curve as 'f,t f,t ...' vertices.")
@click.option("--curve0", default=None, help="Group-0 ROC curve vertices.")
@click.option("--curve1", default=None, help="Group-1 ROC curve vertices.")
@click.option("--p0", required=True, help="Base rate of group 0.")
@click.option("--p1", required=True, help="Base rate of group 1.")
@click.option(
    "--policy",
    type=click.Choice(["enforce-parity", "enforce-odds", "random"]),
    required=True,
    help="Which measure to enforce when base rates differ.",
)
@click.option("--q-star", default=None, help="Posterior target for enforce-parity / random.")
@click.option("--point", default=None, help="Shared 'fpr,tpr' point for enforce-odds.")
@click.option("--pi1", default=None, help="Protected group's population share (enables representativity).")
@_apply(output_options)
@click.pass_context
def tradeoff(ctx, input, group_col, truth_col, prediction_col, score_col, protected_label, unprotected_label, tab, curve, curve0, curve1, p0, p1, policy, q_star, point, pi1, fmt, output, tolerance):
    """Place per-group operating points under a policy and report the cost."""
    try:
        request: Dict[str, Any] = {
            "policy": policy.replace("-", "_"),
            "p0": p0,
            "p1": p1,
            "tolerance": _parse_tolerance(tolerance),
        }
        if q_star is not None:
            request["q_star"] = q_star
        if point is not None:
            parts = point.split(",")
            if len(parts) != 2:
                _fail_usage(f"--point must be 'fpr,tpr', got {point!r}")
            request["point"] = [parts[0], parts[1]]
        if pi1 is not None:
            request["pi1"] = pi1
        if curve is not None:
            request["curve"] = _parse_curve(curve)
        if curve0 is not None:
            request["curve0"] = _parse_curve(curve0)
        if curve1 is not None:
            request["curve1"] = _parse_curve(curve1)
        if input is not None:
            config = _config(group_col, truth_col, prediction_col, score_col or "score", protected_label, unprotected_label, tab)
            result = _read_input(input, config)
            if result.kind != "score":
                _fail_usage("tradeoff reads score data; pass --score-col or provide curves")
            request["scores"] = [
                {"group": r.group, "truth": r.truth, "score": r.score} for r in result.records
            ]
        with _client(ctx) as client:
            payload = client.tradeoff(request)
            if fmt == "svg":
                spec = {
                    "points": [
                        {"fpr": p_["fpr"]["fraction"], "tpr": p_["tpr"]["fraction"], "label": f"S={p_['group']}"}
                        for p_ in payload["points"]
                    ],
                    "annotations": _gap_annotations(payload["report"]),
                    "title": f"policy: {payload['policy']}",
                }
                drawn = [c for c in (curve, curve0, curve1) if c is not None]
                if drawn:
                    spec["curves"] = [{"vertices": _parse_curve(c)} for c in drawn]
                _write_output(client.plot(spec), output)
                sys.exit(0 if payload["report"]["all_satisfied"] else 1)
    except (AuditError, OSError) as exc:
        _fail_usage(str(exc))
    if fmt == "json":
        _write_output(json.dumps(payload, indent=2) + "\n", output)
    else:
        text = [f"policy: {payload['policy']}" + ("  (random classifier)" if payload["random_classifier"] else "")]
        for p_ in payload["points"]:
            thr = "" if p_["threshold"] is None else f"  threshold={p_['threshold']:g}"
            q = p_["q"]["fraction"] if p_["q"] else "-"
            text.append(
                f"group {p_['group']}: FPR={p_['fpr']['fraction']} TPR={p_['tpr']['fraction']} q={q}{thr}"
            )
        text.append("")
        text.append(render_text(payload["report"]))
        _write_output("\n".join(text), output)
    sys.exit(0 if payload["report"]["all_satisfied"] else 1)


@main.command()
@click.argument("point", type=click.Choice(["A", "B", "C", "a", "b", "c"]))
@click.option("--expected", is_flag=True, help="Emit the JSON payload with counts and expected stats.")
@click.option("--output", "-o", default=None)
@click.pass_context
def example(ctx, point, expected, output):
    """Emit the bundled worked-example records for operation point A, B or C."""
    try:
        with _client(ctx) as client:
            payload = client.example(point.upper())
    except AuditError as exc:
        _fail_usage(str(exc))
    if expected:
        _write_output(json.dumps(payload, indent=2) + "\n", output)
    else:
        _write_output(write_records([tuple(r) for r in payload["records"]]), output)


@main.command()
@click.argument("spec", default="-")
@click.option("--output", "-o", default=None)
@click.pass_context
def plot(ctx, spec, output):
    """Render a plot-spec JSON document to SVG."""
    try:
        if spec == "-":
            raw = sys.stdin.read()
        else:
            with open(spec, encoding="utf-8") as fh:
                raw = fh.read()
        data = json.loads(raw)
        with _client(ctx) as client:
            svg = client.plot(data)
    except (AuditError, OSError, json.JSONDecodeError) as exc:
        _fail_usage(str(exc))
    _write_output(svg, output)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host: str, port: int) -> None:
    """Run the audit service with uvicorn."""
    import uvicorn

    uvicorn.run("fairodds.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
