"""UAV wireless power transfer planning for two ground receivers.

Given two energy receivers on a line and a UAV with altitude, speed, and
beamwidth limits, this package finds the symmetric hover placement
maximizing the minimum received RF energy, turns it into a
hover-fly-hover trajectory with greedy in-flight beam scheduling,
integrates the delivered energy, and compares against isotropic-antenna
and static-hover baselines plus an exhaustive grid search.
"""

from .benchmarks import (
    BenchmarkResult,
    StaticInfeasible,
    omni_benchmark,
    static_benchmark,
    unit_gain_power_grid,
)
from .energy import (
    EnergyReport,
    default_fly_dt,
    hover_energy,
    integrate_energy,
    upper_bound_energy,
)
from .gridsearch import GridResult, GridSpec, brute_force_hover, sample_scenario
from .hover import (
    CaseTag,
    EmptyInterval,
    HoverSolution,
    ThetaSearchRange,
    best_offset,
    midpoint_slack_candidate,
    offset_bounds,
    solve_dual_er,
    solve_hover,
    solve_single_er,
    stationary_offsets,
    theta_search_range,
    tight_cover_power,
    tight_cover_power_dx,
)
from .model import (
    RadioParams,
    RegimeViolation,
    Scenario,
    UavLimits,
    UavState,
    covers_er,
    db_to_linear,
    dbm_to_watts,
    default_limits,
    default_radio,
    received_power,
    received_power_grid,
    require_coverable,
    validate_scenario,
)
from .trajectory import (
    DurationTooShort,
    Segment,
    SegmentKind,
    TimeOutOfRange,
    Trajectory,
    build_trajectory,
    candidate_beams,
    flight_beamwidth,
    flight_beamwidths,
    state_at,
    trajectory_table,
)

__version__ = "0.1.0"

__all__ = [
    "BenchmarkResult",
    "CaseTag",
    "DurationTooShort",
    "EmptyInterval",
    "EnergyReport",
    "GridResult",
    "GridSpec",
    "HoverSolution",
    "RadioParams",
    "RegimeViolation",
    "Scenario",
    "Segment",
    "SegmentKind",
    "StaticInfeasible",
    "ThetaSearchRange",
    "TimeOutOfRange",
    "Trajectory",
    "UavLimits",
    "UavState",
    "best_offset",
    "brute_force_hover",
    "build_trajectory",
    "candidate_beams",
    "covers_er",
    "db_to_linear",
    "dbm_to_watts",
    "default_fly_dt",
    "default_limits",
    "default_radio",
    "flight_beamwidth",
    "flight_beamwidths",
    "hover_energy",
    "integrate_energy",
    "midpoint_slack_candidate",
    "offset_bounds",
    "omni_benchmark",
    "received_power",
    "received_power_grid",
    "require_coverable",
    "sample_scenario",
    "solve_dual_er",
    "solve_hover",
    "solve_single_er",
    "state_at",
    "static_benchmark",
    "stationary_offsets",
    "theta_search_range",
    "tight_cover_power",
    "tight_cover_power_dx",
    "trajectory_table",
    "unit_gain_power_grid",
    "upper_bound_energy",
    "validate_scenario",
    "__version__",
]
