"""Collatz scenarios: words over {s, d}, their start/end progressions and realizations."""

from .engine import (
    ResidueClass,
    StopRule,
    Trajectory,
    Verdict,
    apply_scenario,
    classify_rc,
    extract_scenario,
    is_handle,
    run_ops,
    verify_realization,
)
from .errors import (
    BudgetExceeded,
    CollatzError,
    DomainError,
    InvariantViolation,
    OracleNotFound,
    ScenarioMismatch,
    ScenarioSyntaxError,
    ScenarioValidationError,
)
from .handles import HandleLink, SweepReport, link, link_even, link_odd, sweep_verify, verify_link
from .periods import (
    PeriodPhase,
    Realization,
    append_d,
    append_s,
    base_case,
    bruteforce_phase_oracle,
    compute_period_phase,
    concat_periods,
    hook_period_phase,
    realize,
    render_decimal,
    rho_metric,
)
from .scenario import (
    Hook,
    Scenario,
    ScenarioStats,
    as_scenario,
    concat_scenarios,
    decompose_hooks,
    format_scenario,
    parse_scenario,
)
from .series import SeriesPoint, an_series, emit, on_series

__version__ = "0.1.0"
