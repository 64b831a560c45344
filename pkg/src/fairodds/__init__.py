"""Group-fairness auditing for binary classifiers over two sensitive groups.

The library computes statistical parity, predictive equality, equal
opportunity, error rate balance and representativity as exact rational gaps,
decides when parity and equalized odds can hold together given the groups'
base rates, and places ROC operating points under explicit trade-off
policies. A FastAPI service and a thin CLI expose the same operations.
"""

__version__ = "0.1.0"

from .compatibility import (
    CompatibilityKind,
    CompatibilityVerdict,
    Diagnosis,
    Intersection,
    PerformanceLine,
    chance_line_posterior,
    diagnose,
    joint_satisfaction_requirement,
    line_intersection,
    performance_line,
    compatibility_check,
)
from .confusion import (
    PROTECTED,
    UNPROTECTED,
    GroupConfusion,
    GroupStats,
    PopulationStats,
    counts_from_records,
    posterior_from_rates,
    stats_from_counts,
)
from .errors import (
    AuditError,
    ClientError,
    DegenerateBaseRateError,
    DomainError,
    EmptyGroupError,
    MalformedRecordError,
    MissingColumnError,
    NoPositivePredictionsError,
    ParallelLinesError,
    UndefinedRateError,
    UnreachableTargetError,
)
from .measures import (
    MEASURES,
    FairnessReport,
    GroupRates,
    MeasureGap,
    RatePair,
    equal_opportunity_gap,
    error_rate_balance_gap,
    full_report,
    predictive_equality_gap,
    report_from_rates,
    representativity_check,
    statistical_parity_gap,
)
from .rational import DEFAULT_TOLERANCE, as_fraction, fraction_str, unit_fraction
from .records import (
    AuditConfig,
    ExampleData,
    ReadResult,
    generate_running_example,
    read_records,
    write_records,
)
from .reporting import emit_report, report_payload
from .roc import (
    EnforceOdds,
    EnforceParity,
    OperationPoint,
    Policy,
    RandomPolicy,
    RocCurve,
    ScoredRecord,
    SweepRow,
    TradeoffResult,
    chance_line_point,
    parity_points_on_roc,
    roc_from_scores,
    select_operating_points,
    shared_point_gaps,
    threshold_sweep,
)
from .svgplot import Marker, PlotSpec, plot_spec_from_payload, render_plane

__all__ = [
    "__version__",
    "AuditConfig",
    "AuditError",
    "ClientError",
    "CompatibilityKind",
    "CompatibilityVerdict",
    "DEFAULT_TOLERANCE",
    "DegenerateBaseRateError",
    "Diagnosis",
    "DomainError",
    "EmptyGroupError",
    "EnforceOdds",
    "EnforceParity",
    "ExampleData",
    "FairnessReport",
    "GroupConfusion",
    "GroupRates",
    "GroupStats",
    "Intersection",
    "MEASURES",
    "MalformedRecordError",
    "Marker",
    "MeasureGap",
    "MissingColumnError",
    "NoPositivePredictionsError",
    "OperationPoint",
    "PROTECTED",
    "ParallelLinesError",
    "PerformanceLine",
    "PlotSpec",
    "Policy",
    "PopulationStats",
    "RandomPolicy",
    "RatePair",
    "ReadResult",
    "RocCurve",
    "ScoredRecord",
    "SweepRow",
    "TradeoffResult",
    "UNPROTECTED",
    "UndefinedRateError",
    "UnreachableTargetError",
    "as_fraction",
    "chance_line_point",
    "chance_line_posterior",
    "counts_from_records",
    "diagnose",
    "emit_report",
    "equal_opportunity_gap",
    "error_rate_balance_gap",
    "fraction_str",
    "full_report",
    "generate_running_example",
    "joint_satisfaction_requirement",
    "line_intersection",
    "parity_points_on_roc",
    "performance_line",
    "plot_spec_from_payload",
    "posterior_from_rates",
    "predictive_equality_gap",
    "read_records",
    "render_plane",
    "report_from_rates",
    "report_payload",
    "representativity_check",
    "roc_from_scores",
    "select_operating_points",
    "shared_point_gaps",
    "statistical_parity_gap",
    "stats_from_counts",
    "compatibility_check",
    "threshold_sweep",
    "unit_fraction",
    "write_records",
]
