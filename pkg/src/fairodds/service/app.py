"""FastAPI application exposing the audit library over HTTP."""

from __future__ import annotations

from typing import List, Optional, Tuple, Union

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .. import __version__
from ..compatibility import (
    diagnose,
    line_intersection,
    performance_line,
    compatibility_check,
)
from ..confusion import GroupConfusion, counts_from_records, stats_from_counts
from ..errors import AuditError, ParallelLinesError
from ..measures import GroupRates, RatePair, full_report, report_from_rates
from ..rational import as_fraction, unit_fraction
from ..records import generate_running_example
from ..reporting import (
    line_payload,
    number_payload,
    report_payload,
    stats_payload,
    verdict_payload,
)
from ..roc import (
    EnforceOdds,
    EnforceParity,
    RandomPolicy,
    RocCurve,
    ScoredRecord,
    roc_from_scores,
    select_operating_points,
)
from ..svgplot import plot_spec_from_payload, render_plane
from . import schemas


def _stats_from_request(req: schemas.AuditRequest):
    """PopulationStats or RatePair from whichever input the request carries."""
    if req.counts is not None:
        c0 = GroupConfusion(**req.counts.group0.model_dump())
        c1 = GroupConfusion(**req.counts.group1.model_dump())
        return stats_from_counts(c0, c1)
    if req.records is not None:
        c0, c1 = counts_from_records(req.records)
        return stats_from_counts(c0, c1)
    assert req.rates is not None
    pi1 = as_fraction(req.rates.pi1, "pi1") if req.rates.pi1 is not None else None
    return RatePair(
        group0=GroupRates(
            group=0,
            base_rate=as_fraction(req.rates.group0.base_rate, "base_rate"),
            fpr=as_fraction(req.rates.group0.fpr, "fpr"),
            tpr=as_fraction(req.rates.group0.tpr, "tpr"),
        ),
        group1=GroupRates(
            group=1,
            base_rate=as_fraction(req.rates.group1.base_rate, "base_rate"),
            fpr=as_fraction(req.rates.group1.fpr, "fpr"),
            tpr=as_fraction(req.rates.group1.tpr, "tpr"),
        ),
        pi1=pi1,
    )


def _report_for(req: schemas.AuditRequest, stats):
    tol = as_fraction(req.tolerance, "tolerance")
    if isinstance(stats, RatePair):
        return report_from_rates(stats.group0, stats.group1, tol, pi1=stats.pi1)
    return full_report(stats, tol)


def _curve(points: Optional[List[Tuple[Union[str, float, int], Union[str, float, int]]]]) -> Optional[RocCurve]:
    return RocCurve.from_points(points) if points is not None else None


def _point_out(pt) -> dict:
    return {
        "group": pt.group,
        "fpr": number_payload(pt.fpr),
        "tpr": number_payload(pt.tpr),
        "q": number_payload(pt.q),
        "threshold": pt.threshold,
        "on_chance_line": pt.on_chance_line,
    }


def create_app() -> FastAPI:
    app = FastAPI(
        title="fairodds audit service",
        version=__version__,
        description=(
            "Audits binary classifiers for statistical parity and equalized odds "
            "across two sensitive groups, and diagnoses base-rate incompatibility."
        ),
    )

    @app.exception_handler(AuditError)
    async def _audit_error(request: Request, exc: AuditError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/audit", response_model=schemas.ReportOut)
    def audit(req: schemas.AuditRequest) -> dict:
        stats = _stats_from_request(req)
        return report_payload(_report_for(req, stats))

    @app.post("/diagnose", response_model=schemas.ReportOut)
    def diagnose_endpoint(req: schemas.AuditRequest) -> dict:
        stats = _stats_from_request(req)
        result = diagnose(stats, as_fraction(req.tolerance, "tolerance"))
        return report_payload(result.report, result)

    @app.post("/lines", response_model=schemas.LinesResponse)
    def lines(req: schemas.LinesRequest) -> dict:
        l0 = performance_line(req.p0, req.q_star)
        l1 = performance_line(req.p1, req.q_star1 if req.q_star1 is not None else req.q_star)
        out: dict = {"lines": [line_payload(l0), line_payload(l1)], "intersection": None, "note": None}
        try:
            crossing = line_intersection(l0, l1)
        except ParallelLinesError as exc:
            out["note"] = str(exc)
        else:
            out["intersection"] = {
                "point": (number_payload(crossing.point[0]), number_payload(crossing.point[1])),
                "on_chance_line": crossing.on_chance_line,
                "kind": crossing.kind,
            }
        return out

    @app.post("/compatibility", response_model=schemas.VerdictDetailOut)
    def compatibility(req: schemas.CompatibilityCheckRequest) -> dict:
        verdict = compatibility_check(req.p0, req.p1, req.fpr_star, req.tpr_star, req.tolerance)
        return verdict_payload(verdict)

    @app.post("/tradeoff", response_model=schemas.TradeoffResponse)
    def tradeoff(req: schemas.TradeoffRequest) -> dict:
        if req.scores is not None:
            records = [ScoredRecord(r.group, r.truth, r.score) for r in req.scores]
            roc0 = roc_from_scores(records, group=0)
            roc1 = roc_from_scores(records, group=1)
        elif req.curve is not None:
            roc0 = roc1 = _curve(req.curve)
        else:
            roc0 = _curve(req.curve0)
            roc1 = _curve(req.curve1)
        if req.policy == "enforce_parity":
            policy = EnforceParity(q_star=as_fraction(req.q_star, "q_star"))
        elif req.policy == "enforce_odds":
            policy = EnforceOdds(
                fpr=as_fraction(req.point[0], "fpr"),
                tpr=as_fraction(req.point[1], "tpr"),
            )
        else:
            policy = RandomPolicy(q_star=as_fraction(req.q_star, "q_star"))
        result = select_operating_points(
            roc0,
            roc1,
            unit_fraction(req.p0, "p0"),
            unit_fraction(req.p1, "p1"),
            policy,
            tolerance=as_fraction(req.tolerance, "tolerance"),
            pi1=req.pi1,
        )
        return {
            "policy": result.policy,
            "random_classifier": result.random_classifier,
            "points": [_point_out(result.point0), _point_out(result.point1)],
            "report": report_payload(result.report),
        }

    @app.get("/example/{point}", response_model=schemas.ExampleResponse)
    def example(point: str) -> dict:
        data = generate_running_example(point)
        return {
            "point": data.point,
            "records": list(data.records),
            "counts": [
                {"tp": c.tp, "fn": c.fn, "fp": c.fp, "tn": c.tn} for c in data.counts
            ],
            "expected": stats_payload(data.expected),
        }

    @app.post("/plot")
    def plot(req: schemas.PlotRequest) -> Response:
        svg = render_plane(plot_spec_from_payload(req.spec))
        return Response(content=svg, media_type="image/svg+xml")

    return app


app = create_app()
