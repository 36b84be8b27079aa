from .estimate import BisectResult, ExponentFit, Probe, bisect_threshold, exponent_fit
from .table import TableRowReport, expected_slope, host_for, reproduce_table_row
from .thresholds import ThresholdRow, find_row, p_s, phi, row_by_name, threshold_table
from .trials import (
    HostKind,
    HostSpec,
    MonotonicityFlag,
    SweepPoint,
    SweepResult,
    TrialSpec,
    monotone_smooth,
    monotonicity_audit,
    run_trial,
    run_trials,
    sweep,
)

__all__ = [
    "BisectResult",
    "ExponentFit",
    "HostKind",
    "HostSpec",
    "MonotonicityFlag",
    "Probe",
    "SweepPoint",
    "SweepResult",
    "TableRowReport",
    "ThresholdRow",
    "TrialSpec",
    "bisect_threshold",
    "expected_slope",
    "exponent_fit",
    "find_row",
    "host_for",
    "monotone_smooth",
    "monotonicity_audit",
    "p_s",
    "phi",
    "reproduce_table_row",
    "row_by_name",
    "run_trial",
    "run_trials",
    "sweep",
    "threshold_table",
]
