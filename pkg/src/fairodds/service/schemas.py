"""Pydantic request/response models for the audit service.

Numeric inputs accept strings as well as numbers so callers can send exact
rationals ("1/3", "0.3"); parsing happens in the endpoints via as_fraction.
Responses mirror the fixed report JSON schema.
"""

from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, model_validator

RationalIn = Union[str, float, int]


class CountsIn(BaseModel):
    tp: int = Field(ge=0)
    fn: int = Field(ge=0)
    fp: int = Field(ge=0)
    tn: int = Field(ge=0)


class GroupCountsIn(BaseModel):
    group0: CountsIn
    group1: CountsIn


class GroupRatesIn(BaseModel):
    base_rate: RationalIn
    fpr: RationalIn
    tpr: RationalIn


class RatesIn(BaseModel):
    group0: GroupRatesIn
    group1: GroupRatesIn
    pi1: Optional[RationalIn] = None


class AuditRequest(BaseModel):
    counts: Optional[GroupCountsIn] = None
    records: Optional[List[Tuple[int, int, int]]] = None
    rates: Optional[RatesIn] = None
    tolerance: RationalIn = "1/1000000000"

    @model_validator(mode="after")
    def _one_source(self) -> "AuditRequest":
        given = [x is not None for x in (self.counts, self.records, self.rates)]
        if sum(given) != 1:
            raise ValueError("provide exactly one of counts, records, rates")
        return self


class NumberOut(BaseModel):
    fraction: str
    decimal: float


class MeasureOut(BaseModel):
    measure: str
    gap: Optional[NumberOut] = None
    satisfied: Optional[bool] = None
    error: Optional[str] = None
    fnr_gap: Optional[NumberOut] = None


class GroupStatsOut(BaseModel):
    group: int
    n: Optional[int] = None
    demographic_rate: Optional[NumberOut] = None
    base_rate: Optional[NumberOut] = None
    posterior: Optional[NumberOut] = None
    fpr: Optional[NumberOut] = None
    tpr: Optional[NumberOut] = None
    fnr: Optional[NumberOut] = None


class StatsOut(BaseModel):
    kind: Literal["counts", "rates"]
    n_total: Optional[int] = None
    groups: List[GroupStatsOut]
    pi1: Optional[NumberOut] = None


class VerdictDetailOut(BaseModel):
    kind: str
    p0: Optional[NumberOut] = None
    p1: Optional[NumberOut] = None
    fpr_star: Optional[NumberOut] = None
    tpr_star: Optional[NumberOut] = None
    q0: Optional[NumberOut] = None
    q1: Optional[NumberOut] = None
    parity_gap: Optional[NumberOut] = None
    on_chance_line: Optional[bool] = None
    explanation: str


class LineOut(BaseModel):
    base_rate: NumberOut
    target_posterior: NumberOut
    degenerate: bool
    slope: Optional[NumberOut] = None
    intercept: Optional[NumberOut] = None


class ReportOut(BaseModel):
    schema_version: int
    verdict: Optional[str] = None
    tolerance: NumberOut
    measures: List[MeasureOut]
    stats: StatsOut
    disparate_impact_ratio: Optional[NumberOut] = None
    all_satisfied: bool
    verdict_detail: Optional[VerdictDetailOut] = None
    equalized_odds_holds: Optional[bool] = None
    failing: Optional[List[str]] = None
    lines: Optional[List[LineOut]] = None


class LinesRequest(BaseModel):
    p0: RationalIn
    p1: RationalIn
    q_star: RationalIn
    q_star1: Optional[RationalIn] = None  # second line's target when it differs


class IntersectionOut(BaseModel):
    point: Tuple[NumberOut, NumberOut]
    on_chance_line: bool
    kind: str


class LinesResponse(BaseModel):
    lines: List[LineOut]
    intersection: Optional[IntersectionOut] = None
    note: Optional[str] = None


class CompatibilityCheckRequest(BaseModel):
    p0: RationalIn
    p1: RationalIn
    fpr_star: RationalIn
    tpr_star: RationalIn
    tolerance: RationalIn = "1/1000000000"


class ScoredRecordIn(BaseModel):
    group: int
    truth: int
    score: float


class TradeoffRequest(BaseModel):
    policy: Literal["enforce_parity", "enforce_odds", "random"]
    p0: RationalIn
    p1: RationalIn
    q_star: Optional[RationalIn] = None
    point: Optional[Tuple[RationalIn, RationalIn]] = None
    curve: Optional[List[Tuple[RationalIn, RationalIn]]] = None
    curve0: Optional[List[Tuple[RationalIn, RationalIn]]] = None
    curve1: Optional[List[Tuple[RationalIn, RationalIn]]] = None
    scores: Optional[List[ScoredRecordIn]] = None
    pi1: Optional[RationalIn] = None
    tolerance: RationalIn = "1/1000000000"

    @model_validator(mode="after")
    def _policy_args(self) -> "TradeoffRequest":
        if self.policy in ("enforce_parity", "random") and self.q_star is None:
            raise ValueError(f"policy {self.policy} needs q_star")
        if self.policy == "enforce_odds" and self.point is None:
            raise ValueError("policy enforce_odds needs point")
        if self.curve is not None and (self.curve0 is not None or self.curve1 is not None):
            raise ValueError("give either a shared curve or per-group curves, not both")
        return self


class PointOut(BaseModel):
    group: int
    fpr: NumberOut
    tpr: NumberOut
    q: Optional[NumberOut] = None
    threshold: Optional[float] = None
    on_chance_line: bool


class TradeoffResponse(BaseModel):
    policy: str
    random_classifier: bool
    points: List[PointOut]
    report: ReportOut


class CountsOut(BaseModel):
    tp: int
    fn: int
    fp: int
    tn: int


class ExampleResponse(BaseModel):
    point: str
    records: List[Tuple[int, int, int]]
    counts: List[CountsOut]
    expected: StatsOut


class PlotRequest(BaseModel):
    spec: Dict[str, Any]


class HealthResponse(BaseModel):
    status: str
    version: str
