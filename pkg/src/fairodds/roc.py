"""ROC construction from scores and operating-point placement policies.

A classifier with a score output gives each group a staircase ROC curve.
Because both coordinates are non-decreasing along the curve and a base rate
p in (0, 1) weights them positively, the implied posterior rate
q = p*TPR + (1-p)*FPR increases monotonically from 0 at (0,0) to 1 at (1,1).
That is what makes parity placement well defined: for any target q* there is
a point on the curve delivering it, found by walking the vertices.

The placement policies mirror the three ways of resolving the parity/odds
conflict under unequal base rates: equalize the posterior rates with
per-group points (sacrificing rate equality), share one operating point
(sacrificing parity), or retreat to the chance line (sacrificing the
classifier).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .confusion import GroupConfusion, PopulationStats, posterior_from_rates, stats_from_counts
from .errors import DomainError, MalformedRecordError, UndefinedRateError, UnreachableTargetError
from .measures import FairnessReport, GroupRates, full_report, report_from_rates
from .rational import DEFAULT_TOLERANCE, Rational, as_fraction, unit_fraction


@dataclass(frozen=True)
class ScoredRecord:
    group: int
    truth: int
    score: float

    def __post_init__(self) -> None:
        if self.group not in (0, 1):
            raise DomainError(f"group must be 0 or 1, got {self.group!r}")
        if self.truth not in (0, 1):
            raise DomainError(f"truth must be 0 or 1, got {self.truth!r}")
        object.__setattr__(self, "score", float(self.score))
        if not math.isfinite(self.score):
            raise DomainError(f"score must be finite, got {self.score!r}")


@dataclass(frozen=True)
class OperationPoint:
    """A chosen (FPR, TPR) pair for one group.

    ``q`` is the implied posterior rate; when the base rate is known it is
    derived from it, and a supplied q must match the derivation exactly.
    A point on the chance line carries its q without needing a base rate.
    """

    group: int
    fpr: Fraction
    tpr: Fraction
    threshold: Optional[float] = None
    base_rate: Optional[Fraction] = None
    q: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.group not in (0, 1):
            raise DomainError(f"group must be 0 or 1, got {self.group!r}")
        object.__setattr__(self, "fpr", unit_fraction(self.fpr, "fpr"))
        object.__setattr__(self, "tpr", unit_fraction(self.tpr, "tpr"))
        if self.base_rate is not None:
            object.__setattr__(self, "base_rate", unit_fraction(self.base_rate, "base_rate"))
            implied = posterior_from_rates(self.base_rate, self.tpr, self.fpr)
            if self.q is not None and as_fraction(self.q, "q") != implied:
                raise DomainError(f"q={self.q} contradicts the implied posterior {implied}")
            object.__setattr__(self, "q", implied)
        elif self.q is not None:
            object.__setattr__(self, "q", unit_fraction(self.q, "q"))

    @property
    def on_chance_line(self) -> bool:
        return self.fpr == self.tpr


@dataclass(frozen=True)
class RocCurve:
    """Monotone piecewise-linear curve from (0,0) to (1,1) in the unit square."""

    vertices: Tuple[Tuple[Fraction, Fraction], ...]
    thresholds: Optional[Tuple[Optional[float], ...]] = None

    def __post_init__(self) -> None:
        verts = self.vertices
        if len(verts) < 2:
            raise DomainError("a curve needs at least the two corner vertices")
        if verts[0] != (0, 0):
            raise DomainError(f"curve must begin at (0, 0), got {verts[0]}")
        if verts[-1] != (1, 1):
            raise DomainError(f"curve must end at (1, 1), got {verts[-1]}")
        prev = verts[0]
        for v in verts[1:]:
            if not (0 <= v[0] <= 1 and 0 <= v[1] <= 1):
                raise DomainError(f"vertex {v} outside the unit square")
            if v[0] < prev[0] or v[1] < prev[1]:
                raise DomainError(f"vertices must be non-decreasing, {prev} -> {v} is not")
            if v == prev:
                raise DomainError(f"duplicate consecutive vertex {v}")
            prev = v
        if self.thresholds is not None and len(self.thresholds) != len(verts):
            raise DomainError("thresholds must align with vertices")

    @classmethod
    def from_points(
        cls,
        points: Iterable[Sequence[Rational]],
        thresholds: Optional[Sequence[Optional[float]]] = None,
    ) -> "RocCurve":
        verts = []
        for pt in points:
            try:
                f, t = pt
            except (TypeError, ValueError):
                raise DomainError(f"curve vertex {pt!r} is not an (fpr, tpr) pair") from None
            verts.append((unit_fraction(f, "fpr"), unit_fraction(t, "tpr")))
        deduped = []
        kept_thresholds: Optional[List[Optional[float]]] = [] if thresholds is not None else None
        for i, v in enumerate(verts):
            if deduped and deduped[-1] == v:
                continue
            deduped.append(v)
            if kept_thresholds is not None:
                kept_thresholds.append(thresholds[i])
        return cls(
            vertices=tuple(deduped),
            thresholds=tuple(kept_thresholds) if kept_thresholds is not None else None,
        )

    def posterior_profile(self, p: Rational) -> Tuple[Fraction, ...]:
        """Implied q at every vertex; non-decreasing for any p in [0, 1]."""
        p_ = unit_fraction(p, "p")
        return tuple(p_ * t + (1 - p_) * f for f, t in self.vertices)

    def point_at_posterior(
        self,
        p: Rational,
        q_star: Rational,
        *,
        flat_rule: str = "min_fpr",
        group: Optional[int] = None,
    ) -> Tuple[Fraction, Fraction, Optional[float]]:
        """The point on the curve where the implied posterior equals q*.

        Monotonicity makes the crossing unique except along a run where q is
        flat (possible only at base rate 0 or 1); there the lowest-FPR point
        is taken unless ``flat_rule="max_fpr"`` asks for the other end.
        Returns (fpr, tpr, threshold); the threshold is None when the point
        is interpolated inside a segment rather than at a score cutoff.
        """
        if flat_rule not in ("min_fpr", "max_fpr"):
            raise DomainError(f"flat_rule must be 'min_fpr' or 'max_fpr', got {flat_rule!r}")
        q = as_fraction(q_star, "q_star")
        qs = self.posterior_profile(p)
        if q < qs[0] or q > qs[-1]:
            raise UnreachableTargetError(q, group)
        i = 0
        while qs[i] < q:
            i += 1
        if qs[i] == q:
            if flat_rule == "max_fpr":
                while i + 1 < len(qs) and qs[i + 1] == q:
                    i += 1
            f, t = self.vertices[i]
            thr = self.thresholds[i] if self.thresholds is not None else None
            return f, t, thr
        f0, t0 = self.vertices[i - 1]
        f1, t1 = self.vertices[i]
        w = (q - qs[i - 1]) / (qs[i] - qs[i - 1])
        return f0 + w * (f1 - f0), t0 + w * (t1 - t0), None


def roc_from_scores(
    records: Iterable[Union[ScoredRecord, Sequence[Union[int, float]]]],
    *,
    group: Optional[int] = None,
) -> RocCurve:
    """Staircase ROC over distinct score thresholds for one group's records.

    Records with equal scores flip together (one diagonal segment per tie
    set), so the curve is deterministic regardless of input order. Each
    vertex is annotated with the lowest score still predicted positive
    there; the origin, where nothing is predicted positive, has none.
    """
    pairs: List[Tuple[int, float]] = []
    for i, rec in enumerate(records):
        if isinstance(rec, ScoredRecord):
            if group is not None and rec.group != group:
                continue
            pairs.append((rec.truth, rec.score))
            continue
        try:
            truth, score = rec
        except (TypeError, ValueError):
            raise MalformedRecordError(i, "record", rec, "expected (truth, score)") from None
        if truth not in (0, 1):
            raise MalformedRecordError(i, "truth", truth, "expected 0 or 1")
        score = float(score)
        if not math.isfinite(score):
            raise MalformedRecordError(i, "score", score, "must be finite")
        pairs.append((truth, score))
    n_pos = sum(t for t, _ in pairs)
    n_neg = len(pairs) - n_pos
    if n_pos == 0:
        raise UndefinedRateError(group, "tpr")
    if n_neg == 0:
        raise UndefinedRateError(group, "fpr")
    tranche: dict = {}
    for truth, score in pairs:
        pos, neg = tranche.get(score, (0, 0))
        tranche[score] = (pos + truth, neg + (1 - truth))
    verts: List[Tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(0))]
    thrs: List[Optional[float]] = [None]
    tp = fp = 0
    for score in sorted(tranche, reverse=True):
        pos, neg = tranche[score]
        tp += pos
        fp += neg
        verts.append((Fraction(fp, n_neg), Fraction(tp, n_pos)))
        thrs.append(score)
    return RocCurve(vertices=tuple(verts), thresholds=tuple(thrs))


def chance_line_point(q_star: Rational) -> Tuple[OperationPoint, OperationPoint]:
    """Both groups at (q*, q*): every measure equalized, classifier random.

    On the chance line the posterior rate equals the coordinate for any base
    rate, so the points need none. q* = 0 rejects everyone, q* = 1 accepts
    everyone.
    """
    q = unit_fraction(q_star, "q_star")
    return (
        OperationPoint(group=0, fpr=q, tpr=q, q=q),
        OperationPoint(group=1, fpr=q, tpr=q, q=q),
    )


def parity_points_on_roc(
    roc0: RocCurve,
    roc1: RocCurve,
    p0: Rational,
    p1: Rational,
    q_star: Rational,
    *,
    flat_rule: str = "min_fpr",
) -> Tuple[OperationPoint, OperationPoint]:
    """Per-group points equalizing the posterior rate at q*.

    Each group lands where its own parity line crosses its curve, which in
    general means different thresholds and different FPR/TPR per group: the
    price of parity under unequal base rates.
    """
    p0_ = unit_fraction(p0, "p0")
    p1_ = unit_fraction(p1, "p1")
    if p0_ in (0, 1) or p1_ in (0, 1):
        raise DomainError("base rates must lie strictly inside (0, 1) for parity placement")
    points = []
    for group, curve, p in ((0, roc0, p0_), (1, roc1, p1_)):
        fpr, tpr, thr = curve.point_at_posterior(p, q_star, flat_rule=flat_rule, group=group)
        points.append(OperationPoint(group=group, fpr=fpr, tpr=tpr, threshold=thr, base_rate=p))
    return points[0], points[1]


def shared_point_gaps(
    fpr: Rational, tpr: Rational, p0: Rational, p1: Rational
) -> Tuple[Fraction, Fraction, Fraction]:
    """(q0, q1, parity gap) when both groups run at one shared point.

    Rate equality holds by construction; the parity gap is exactly
    (p0 - p1) * (tpr - fpr).
    """
    q0 = posterior_from_rates(p0, tpr, fpr)
    q1 = posterior_from_rates(p1, tpr, fpr)
    return q0, q1, q0 - q1


@dataclass(frozen=True)
class SweepRow:
    threshold: float
    stats: PopulationStats
    report: FairnessReport


def threshold_sweep(
    records: Iterable[Union[ScoredRecord, Sequence[Union[int, float]]]],
    thresholds: Optional[Sequence[float]] = None,
    *,
    tolerance: Rational = DEFAULT_TOLERANCE,
) -> Tuple[SweepRow, ...]:
    """Audit every threshold: predict positive where score >= threshold.

    One row per distinct score (descending) unless explicit thresholds are
    supplied. Rows are independent; each carries full exact stats and the
    complete measure report.
    """
    recs: List[ScoredRecord] = []
    for i, rec in enumerate(records):
        if isinstance(rec, ScoredRecord):
            recs.append(rec)
        else:
            try:
                g, t, s = rec
            except (TypeError, ValueError):
                raise MalformedRecordError(i, "record", rec, "expected (group, truth, score)") from None
            try:
                recs.append(ScoredRecord(group=g, truth=t, score=s))
            except DomainError as exc:
                raise MalformedRecordError(i, "record", rec, str(exc)) from None
    for g in (0, 1):
        sub = [r for r in recs if r.group == g]
        if not any(r.truth == 1 for r in sub):
            raise UndefinedRateError(g, "tpr")
        if not any(r.truth == 0 for r in sub):
            raise UndefinedRateError(g, "fpr")
    if thresholds is None:
        sweep = sorted({r.score for r in recs}, reverse=True)
    else:
        sweep = [float(t) for t in thresholds]
    rows = []
    for t in sweep:
        cells = [[0, 0, 0, 0], [0, 0, 0, 0]]
        for r in recs:
            pred = 1 if r.score >= t else 0
            if r.truth == 1:
                cells[r.group][0 if pred else 1] += 1
            else:
                cells[r.group][2 if pred else 3] += 1
        stats = stats_from_counts(
            GroupConfusion(*cells[0]),
            GroupConfusion(*cells[1]),
        )
        rows.append(SweepRow(threshold=t, stats=stats, report=full_report(stats, tolerance)))
    return tuple(rows)


@dataclass(frozen=True)
class EnforceParity:
    """Equalize posterior rates at q* with per-group operating points."""

    q_star: Fraction
    name = "enforce_parity"

    def __post_init__(self) -> None:
        object.__setattr__(self, "q_star", unit_fraction(self.q_star, "q_star"))


@dataclass(frozen=True)
class EnforceOdds:
    """Run both groups at one shared (FPR, TPR) point."""

    fpr: Fraction
    tpr: Fraction
    name = "enforce_odds"

    def __post_init__(self) -> None:
        object.__setattr__(self, "fpr", unit_fraction(self.fpr, "fpr"))
        object.__setattr__(self, "tpr", unit_fraction(self.tpr, "tpr"))


@dataclass(frozen=True)
class RandomPolicy:
    """Give up on prediction: both groups at (q*, q*) on the chance line."""

    q_star: Fraction
    name = "random"

    def __post_init__(self) -> None:
        object.__setattr__(self, "q_star", unit_fraction(self.q_star, "q_star"))


Policy = Union[EnforceParity, EnforceOdds, RandomPolicy]


@dataclass(frozen=True)
class TradeoffResult:
    point0: OperationPoint
    point1: OperationPoint
    report: FairnessReport
    policy: str
    random_classifier: bool


def select_operating_points(
    roc0: Optional[RocCurve],
    roc1: Optional[RocCurve],
    p0: Rational,
    p1: Rational,
    policy: Policy,
    *,
    tolerance: Rational = DEFAULT_TOLERANCE,
    pi1: Optional[Rational] = None,
    flat_rule: str = "min_fpr",
) -> TradeoffResult:
    """Place operating points under a policy and report what it sacrifices.

    ``roc1`` defaults to ``roc0`` (one classifier shared by both groups);
    pass a second curve to model distinct per-group classifiers. Curves are
    only consulted by the parity policy. Supply ``pi1`` to include the
    representativity measure in the attached report.
    """
    p0_ = unit_fraction(p0, "p0")
    p1_ = unit_fraction(p1, "p1")
    if isinstance(policy, EnforceParity):
        if roc0 is None:
            raise DomainError("enforce_parity needs an ROC curve")
        pt0, pt1 = parity_points_on_roc(
            roc0, roc1 if roc1 is not None else roc0, p0_, p1_, policy.q_star, flat_rule=flat_rule
        )
        random_flag = pt0.on_chance_line and pt1.on_chance_line
    elif isinstance(policy, EnforceOdds):
        pt0 = OperationPoint(group=0, fpr=policy.fpr, tpr=policy.tpr, base_rate=p0_)
        pt1 = OperationPoint(group=1, fpr=policy.fpr, tpr=policy.tpr, base_rate=p1_)
        random_flag = policy.fpr == policy.tpr
    elif isinstance(policy, RandomPolicy):
        pt0 = OperationPoint(group=0, fpr=policy.q_star, tpr=policy.q_star, base_rate=p0_)
        pt1 = OperationPoint(group=1, fpr=policy.q_star, tpr=policy.q_star, base_rate=p1_)
        random_flag = True
    else:
        raise DomainError(f"unknown policy {policy!r}")
    report = report_from_rates(
        GroupRates(group=0, base_rate=p0_, fpr=pt0.fpr, tpr=pt0.tpr),
        GroupRates(group=1, base_rate=p1_, fpr=pt1.fpr, tpr=pt1.tpr),
        tolerance=tolerance,
        pi1=pi1,
    )
    return TradeoffResult(
        point0=pt0,
        point1=pt1,
        report=report,
        policy=policy.name,
        random_classifier=random_flag,
    )
