"""When can statistical parity and equalized odds hold at the same time?

For a classifier with shared rates FPR* and TPR* across both groups (that is,
equalized odds in place), the per-group positive-prediction rates are

    q_s = p_s * TPR* + (1 - p_s) * FPR*,

so the parity gap factors as (p_0 - p_1) * (TPR* - FPR*). It vanishes only
when the base rates agree or the operating point sits on the chance line
TPR = FPR. That dichotomy is what ``compatibility_check`` decides.

The dual view fixes a shared target posterior q* instead: each group's
admissible operating points form the line p*TPR + (1-p)*FPR = q* in the
FPR-TPR plane. Lines for two different base rates always cross at (q*, q*),
on the chance line; ``line_intersection`` computes this exactly. Lines are
stored in implicit form because the explicit slope 1 - 1/p blows up as the
base rate approaches zero.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .confusion import PopulationStats, posterior_from_rates
from .errors import (
    DegenerateBaseRateError,
    DomainError,
    ParallelLinesError,
    UndefinedRateError,
)
from .measures import (
    FairnessReport,
    RatePair,
    full_report,
    report_from_rates,
)
from .rational import DEFAULT_TOLERANCE, Rational, as_fraction, positive_fraction, unit_fraction


class CompatibilityKind(str, enum.Enum):
    #: Base rates agree: parity follows from equalized odds at any point.
    BASE_RATES_BALANCED = "base_rates_balanced"
    #: Base rates differ: joint satisfaction is only possible on the chance line.
    CHANCE_LINE_FORCED = "chance_line_forced"
    #: The given operating point is on the chance line, so everything holds now,
    #: at the cost of a random classifier.
    JOINTLY_SATISFIED_ON_CHANCE_LINE = "jointly_satisfied_on_chance_line"
    #: Base rates differ and the point is off the chance line: parity cannot hold.
    INCOMPATIBLE = "incompatible"


@dataclass(frozen=True)
class CompatibilityVerdict:
    kind: CompatibilityKind
    p0: Fraction
    p1: Fraction
    fpr_star: Optional[Fraction]
    tpr_star: Optional[Fraction]
    q0: Optional[Fraction]
    q1: Optional[Fraction]
    parity_gap: Optional[Fraction]
    on_chance_line: Optional[bool]
    explanation: str


@dataclass(frozen=True)
class PerformanceLine:
    """All operating points yielding posterior rate q at base rate p.

    Implicit form: base_rate * TPR + (1 - base_rate) * FPR = target_posterior.
    The explicit slope/intercept form exists only for base_rate > 0; at
    base_rate == 0 the locus degenerates to the vertical line FPR = q.
    """

    base_rate: Fraction
    target_posterior: Fraction

    @property
    def coefficients(self) -> Tuple[Fraction, Fraction, Fraction]:
        """(a, b, c) with a*TPR + b*FPR = c."""
        return (self.base_rate, 1 - self.base_rate, self.target_posterior)

    @property
    def degenerate(self) -> bool:
        return self.base_rate == 0

    @property
    def slope(self) -> Fraction:
        if self.degenerate:
            raise DegenerateBaseRateError()
        return 1 - Fraction(1) / self.base_rate

    @property
    def intercept(self) -> Fraction:
        if self.degenerate:
            raise DegenerateBaseRateError()
        return self.target_posterior / self.base_rate

    def residual(self, fpr: Rational, tpr: Rational) -> Fraction:
        """How far (fpr, tpr) is from satisfying the implicit equation."""
        f = as_fraction(fpr, "fpr")
        t = as_fraction(tpr, "tpr")
        return self.base_rate * t + (1 - self.base_rate) * f - self.target_posterior

    def tpr_at(self, fpr: Rational) -> Fraction:
        if self.degenerate:
            raise DegenerateBaseRateError()
        f = as_fraction(fpr, "fpr")
        return (self.target_posterior - (1 - self.base_rate) * f) / self.base_rate


def performance_line(p: Rational, q_star: Rational) -> PerformanceLine:
    """Build the operating-point line for base rate p and posterior target q*."""
    return PerformanceLine(
        base_rate=unit_fraction(p, "p"),
        target_posterior=unit_fraction(q_star, "q_star"),
    )


@dataclass(frozen=True)
class Intersection:
    point: Tuple[Fraction, Fraction]
    on_chance_line: bool
    #: "shared_posterior" when both lines target the same q* (the point is then
    #: (q*, q*)); "mismatched_posteriors" for the general two-line crossing.
    kind: str


def line_intersection(l0: PerformanceLine, l1: PerformanceLine) -> Intersection:
    """Exact crossing of two operating-point lines.

    Raises ParallelLinesError when the base rates are equal; equal base rates
    give equal slopes, so there is either no crossing or the lines coincide.
    """
    if l0.base_rate == l1.base_rate:
        raise ParallelLinesError()
    if l0.target_posterior == l1.target_posterior:
        q = l0.target_posterior
        return Intersection(point=(q, q), on_chance_line=True, kind="shared_posterior")
    p0, q0 = l0.base_rate, l0.target_posterior
    p1, q1 = l1.base_rate, l1.target_posterior
    det = p0 - p1
    fpr = (p0 * q1 - p1 * q0) / det
    tpr = (q0 * (1 - p1) - q1 * (1 - p0)) / det
    return Intersection(point=(fpr, tpr), on_chance_line=fpr == tpr, kind="mismatched_posteriors")


def chance_line_posterior(x_star: Rational) -> Fraction:
    """Posterior rate at a chance-line point: q equals the point itself.

    The identity posterior_from_rates(p, x, x) == x for every p makes the
    consequence of choosing TPR = FPR explicit and directly testable.
    """
    return unit_fraction(x_star, "x_star")


def compatibility_check(
    p0: Rational,
    p1: Rational,
    fpr_star: Rational,
    tpr_star: Rational,
    tolerance: Rational = DEFAULT_TOLERANCE,
) -> CompatibilityVerdict:
    """Can a classifier with shared rates (FPR*, TPR*) also satisfy parity?

    The parity gap implied by the shared rates is exactly
    (p0 - p1) * (TPR* - FPR*), so the answer is yes only when the base rates
    agree within tolerance, or the point sits on the chance line within
    tolerance. Otherwise the verdict is incompatible and the gap is returned
    as the witness.
    """
    p0_ = unit_fraction(p0, "p0")
    p1_ = unit_fraction(p1, "p1")
    fpr = unit_fraction(fpr_star, "fpr_star")
    tpr = unit_fraction(tpr_star, "tpr_star")
    tol = positive_fraction(tolerance)
    q0 = posterior_from_rates(p0_, tpr, fpr)
    q1 = posterior_from_rates(p1_, tpr, fpr)
    parity_gap = q0 - q1
    on_line = abs(tpr - fpr) <= tol
    if abs(p0_ - p1_) <= tol:
        kind = CompatibilityKind.BASE_RATES_BALANCED
        explanation = "base rates agree within tolerance; parity follows from the shared rates at any operating point"
        if on_line:
            explanation += " (the operating point also sits on the chance line)"
    elif on_line:
        kind = CompatibilityKind.JOINTLY_SATISFIED_ON_CHANCE_LINE
        explanation = (
            "the operating point sits on the chance line (TPR = FPR), so parity, "
            "FPR equality and TPR equality all hold, at the cost of a random classifier"
        )
    else:
        kind = CompatibilityKind.INCOMPATIBLE
        explanation = (
            "base rates differ and the operating point is off the chance line; "
            f"the shared rates force a parity gap of (p0 - p1)*(TPR* - FPR*) = {parity_gap}. "
            "Joint satisfaction would require balancing the base rates or moving to the chance line"
        )
    return CompatibilityVerdict(
        kind=kind,
        p0=p0_,
        p1=p1_,
        fpr_star=fpr,
        tpr_star=tpr,
        q0=q0,
        q1=q1,
        parity_gap=parity_gap,
        on_chance_line=on_line,
        explanation=explanation,
    )


def joint_satisfaction_requirement(
    p0: Rational, p1: Rational, tolerance: Rational = DEFAULT_TOLERANCE
) -> CompatibilityVerdict:
    """What do these base rates alone demand of a jointly fair classifier?

    With balanced base rates there is no constraint beyond equalized odds
    itself; with unbalanced ones, any operating point satisfying both
    measures is forced onto the chance line.
    """
    p0_ = unit_fraction(p0, "p0")
    p1_ = unit_fraction(p1, "p1")
    tol = positive_fraction(tolerance)
    if abs(p0_ - p1_) <= tol:
        kind = CompatibilityKind.BASE_RATES_BALANCED
        explanation = "base rates agree within tolerance; no extra constraint on the operating point"
    else:
        kind = CompatibilityKind.CHANCE_LINE_FORCED
        explanation = (
            "base rates differ; satisfying parity and equalized odds together "
            "forces the operating point onto the chance line TPR = FPR (a random classifier)"
        )
    return CompatibilityVerdict(
        kind=kind,
        p0=p0_,
        p1=p1_,
        fpr_star=None,
        tpr_star=None,
        q0=None,
        q1=None,
        parity_gap=None,
        on_chance_line=None,
        explanation=explanation,
    )


@dataclass(frozen=True)
class Diagnosis:
    """Measured-rates diagnosis: the full report plus the compatibility verdict.

    ``verdict`` is None when equalized odds does not hold at the tolerance; the
    dichotomy says nothing about such classifiers, so the failing equalities
    are listed instead. The two performance lines are always included, pinned
    at the mean of the measured posteriors, for plotting.
    """

    report: FairnessReport
    verdict: Optional[CompatibilityVerdict]
    equalized_odds_holds: bool
    failing: Tuple[str, ...]
    lines: Tuple[PerformanceLine, PerformanceLine]

    @property
    def kind(self) -> str:
        if self.verdict is not None:
            return self.verdict.kind.value
        return "equalized_odds_not_in_place"


def _rate_view(stats: Union[PopulationStats, RatePair]):
    """(base_rate, fpr, tpr, posterior) per group; raises on undefined rates."""
    groups = []
    for g in (stats.group0, stats.group1):
        fpr, tpr = g.fpr, g.tpr
        if fpr is None:
            raise UndefinedRateError(g.group, "fpr")
        if tpr is None:
            raise UndefinedRateError(g.group, "tpr")
        groups.append((g.base_rate, fpr, tpr, g.posterior))
    return groups[0], groups[1]


def diagnose(
    stats: Union[PopulationStats, RatePair],
    tolerance: Rational = DEFAULT_TOLERANCE,
) -> Diagnosis:
    """Run the compatibility dichotomy against measured statistics."""
    tol = positive_fraction(tolerance)
    (p0, fpr0, tpr0, q0), (p1, fpr1, tpr1, q1) = _rate_view(stats)
    if isinstance(stats, PopulationStats):
        report = full_report(stats, tol)
    elif isinstance(stats, RatePair):
        report = report_from_rates(stats.group0, stats.group1, tol, pi1=stats.pi1)
    else:
        raise DomainError(f"cannot diagnose a {type(stats).__name__}")
    pe = report.measure("predictive_equality")
    eo = report.measure("equal_opportunity")
    holds = pe.satisfied is True and eo.satisfied is True
    q_mid = (q0 + q1) / 2
    lines = (
        PerformanceLine(base_rate=p0, target_posterior=q_mid),
        PerformanceLine(base_rate=p1, target_posterior=q_mid),
    )
    if holds:
        verdict = compatibility_check(p0, p1, (fpr0 + fpr1) / 2, (tpr0 + tpr1) / 2, tol)
        failing: Tuple[str, ...] = ()
    else:
        verdict = None
        failing = tuple(
            name
            for name, m in (("predictive_equality", pe), ("equal_opportunity", eo))
            if m.satisfied is not True
        )
    return Diagnosis(
        report=report,
        verdict=verdict,
        equalized_odds_holds=holds,
        failing=failing,
        lines=lines,
    )
