"""Experiment orchestration: configs, scheme runs, sweeps, CSV emission.

Configuration is a flat ``key = value`` text file with ``#`` comments;
command-line overrides (handled in :mod:`.cli`) take precedence over the
file, which takes precedence over built-in defaults.  All numeric output
uses 12 significant digits with ``\\n`` line endings so a fixed config
always reproduces byte-identical CSVs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

from .benchmarks import omni_benchmark, static_benchmark
from .energy import EnergyReport, integrate_energy, upper_bound_energy
from .gridsearch import GridSpec, brute_force_hover
from .hover import HoverSolution, solve_hover
from .model import RadioParams, Scenario, UavLimits
from .trajectory import Trajectory, build_trajectory, trajectory_table

__all__ = [
    "ALL_SCHEMES",
    "PointResult",
    "RunConfig",
    "SweepSpec",
    "d_values",
    "format_number",
    "parse_config_file",
    "run_point",
    "t_values",
    "write_results_csv",
    "write_solver_csv",
    "write_trajectory_csv",
]

ALL_SCHEMES = ("proposed", "upper_bound", "omni", "static")

RESULTS_HEADER = "scheme,D_m,T_s,E1_J,E2_J,common_J,normalized_W"
SOLVER_HEADER = "D_m,x_bar_m,h_bar_m,theta_bar_rad,case,value_W"
TRAJECTORY_HEADER = "t_s,x_m,h_m,theta_rad"


@dataclass(frozen=True)
class SweepSpec:
    """Inclusive arithmetic progression start, start+step, ..., <= stop."""

    start: float
    stop: float
    step: float

    def __post_init__(self) -> None:
        if self.step <= 0:
            raise ValueError(f"sweep step must be positive, got {self.step}")
        if self.start > self.stop:
            raise ValueError(f"sweep start {self.start} exceeds stop {self.stop}")

    def values(self) -> list[float]:
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(count)]


@dataclass(frozen=True)
class RunConfig:
    """Everything one experiment run needs, in engineer units at the edge."""

    d: float = 30.0
    t: float = 20.0
    d_sweep: SweepSpec = SweepSpec(2.0, 30.0, 1.0)
    t_sweep: SweepSpec = SweepSpec(10.0, 200.0, 10.0)
    beta0_db: float = -30.0
    p_dbm: float = 40.0
    g0: float = 2.2846
    h_min: float = 10.0
    h_max: float = 30.0
    v_max: float = 5.0
    theta_min: float = math.pi / 6.0
    theta_max: float = math.pi / 2.0
    schemes: tuple[str, ...] = ALL_SCHEMES
    dt: float | None = None
    traj_step: float | None = None
    out_dir: str = "out"
    figures: bool = True
    oracle: bool = False
    oracle_grid: int = 80
    scenarios: int = 10
    seed: int = 20240901

    def __post_init__(self) -> None:
        unknown = set(self.schemes) - set(ALL_SCHEMES)
        if unknown:
            raise ValueError(
                f"unknown scheme(s) {sorted(unknown)}; choose from {ALL_SCHEMES}"
            )
        if not self.schemes:
            raise ValueError("at least one scheme must be selected")

    def limits(self) -> UavLimits:
        return UavLimits(
            h_min=self.h_min,
            h_max=self.h_max,
            v_max=self.v_max,
            theta_min=self.theta_min,
            theta_max=self.theta_max,
        )

    def radio(self) -> RadioParams:
        return RadioParams.from_db(beta0_db=self.beta0_db, p_dbm=self.p_dbm, g0=self.g0)

    def scenario(self, d: float | None = None, t: float | None = None) -> Scenario:
        return Scenario(d=self.d if d is None else d, t=self.t if t is None else t)


_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off"}


def _parse_bool(raw: str, key: str) -> bool:
    low = raw.strip().lower()
    if low in _BOOL_TRUE:
        return True
    if low in _BOOL_FALSE:
        return False
    raise ValueError(f"config key '{key}' expects a boolean, got '{raw}'")


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Read a flat ``key = value`` file into raw string pairs.

    Blank lines and ``#`` comments (full-line or trailing) are ignored.
    Duplicate keys keep the last occurrence.
    """
    pairs: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got '{line.strip()}'")
        key, _, raw = stripped.partition("=")
        pairs[key.strip()] = raw.strip()
    return pairs


_FLOAT_KEYS = {
    "d", "t", "beta0_db", "p_dbm", "g0", "h_min", "h_max", "v_max",
    "theta_min", "theta_max",
    "d_start", "d_stop", "d_step", "t_start", "t_stop", "t_step",
}
_OPT_FLOAT_KEYS = {"dt", "traj_step"}
_INT_KEYS = {"oracle_grid", "scenarios", "seed"}
_BOOL_KEYS = {"figures", "oracle"}
_STR_KEYS = {"out_dir"}


def config_from_pairs(pairs: dict[str, str], base: RunConfig | None = None) -> RunConfig:
    """Apply raw string key/value pairs on top of a base configuration."""
    cfg = base if base is not None else RunConfig()
    updates: dict[str, object] = {}
    sweep_parts: dict[str, float] = {}
    for key, raw in pairs.items():
        if key in _FLOAT_KEYS:
            value = float(raw)
            if key[1:] in ("_start", "_stop", "_step"):
                sweep_parts[key] = value
            else:
                updates[key] = value
        elif key in _OPT_FLOAT_KEYS:
            updates[key] = None if raw.lower() in ("", "none", "auto") else float(raw)
        elif key in _INT_KEYS:
            updates[key] = int(raw)
        elif key in _BOOL_KEYS:
            updates[key] = _parse_bool(raw, key)
        elif key in _STR_KEYS:
            updates[key] = raw
        elif key == "schemes":
            names = tuple(s.strip() for s in raw.split(",") if s.strip())
            updates[key] = names
        else:
            known = sorted(
                _FLOAT_KEYS | _OPT_FLOAT_KEYS | _INT_KEYS | _BOOL_KEYS | _STR_KEYS
                | {"schemes"}
            )
            raise ValueError(f"unknown config key '{key}' (known keys: {', '.join(known)})")

    for prefix, attr in (("d", "d_sweep"), ("t", "t_sweep")):
        parts = {
            part: sweep_parts[f"{prefix}_{part}"]
            for part in ("start", "stop", "step")
            if f"{prefix}_{part}" in sweep_parts
        }
        if parts:
            current: SweepSpec = getattr(cfg, attr)
            updates[attr] = SweepSpec(
                start=parts.get("start", current.start),
                stop=parts.get("stop", current.stop),
                step=parts.get("step", current.step),
            )
    return replace(cfg, **updates)


def load_config(path: str | Path | None, overrides: dict[str, str] | None = None) -> RunConfig:
    """Defaults, then config file (if given), then overrides."""
    cfg = RunConfig()
    if path is not None:
        cfg = config_from_pairs(parse_config_file(path), cfg)
    if overrides:
        cfg = config_from_pairs(overrides, cfg)
    return cfg


def d_values(cfg: RunConfig) -> list[float]:
    return cfg.d_sweep.values()


def t_values(cfg: RunConfig) -> list[float]:
    return cfg.t_sweep.values()


@dataclass(frozen=True)
class PointResult:
    """All scheme outcomes at one (spacing, period) point."""

    d: float
    t: float
    solution: HoverSolution
    trajectory: Trajectory
    reports: dict[str, EnergyReport] = field(default_factory=dict)
    oracle_gap: float | None = None


def run_point(cfg: RunConfig, d: float | None = None, t: float | None = None) -> PointResult:
    """Run the configured schemes for a single (spacing, period) pair."""
    scenario = cfg.scenario(d, t)
    limits = cfg.limits()
    radio = cfg.radio()
    sol = solve_hover(scenario, limits, radio)
    traj = build_trajectory(sol, scenario, limits)

    reports: dict[str, EnergyReport] = {}
    for scheme in cfg.schemes:
        if scheme == "proposed":
            reports[scheme] = integrate_energy(traj, scenario, limits, radio, dt=cfg.dt)
        elif scheme == "upper_bound":
            e = upper_bound_energy(sol, scenario)
            reports[scheme] = EnergyReport.from_energies(e, e, scenario.t)
        elif scheme == "omni":
            reports[scheme] = omni_benchmark(scenario, limits, radio, dt=cfg.dt).report
        elif scheme == "static":
            reports[scheme] = static_benchmark(scenario, limits, radio).report

    gap = None
    if cfg.oracle:
        n = cfg.oracle_grid
        ref = brute_force_hover(scenario, limits, radio, GridSpec(n, n, n))
        gap = (sol.value - ref.value) / ref.value if ref.value > 0 else 0.0
    return PointResult(
        d=scenario.d, t=scenario.t, solution=sol, trajectory=traj, reports=reports,
        oracle_gap=gap,
    )


def format_number(value: float) -> str:
    """Fixed CSV float formatting: 12 significant digits."""
    return format(float(value), ".12g")


def _write_lines(path: Path, lines: Iterable[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in lines:
            fh.write(line + "\n")


def write_results_csv(path: str | Path, points: Sequence[PointResult], schemes: Sequence[str]) -> None:
    lines = [RESULTS_HEADER]
    for pt in points:
        for scheme in schemes:
            rep = pt.reports[scheme]
            lines.append(
                ",".join(
                    [
                        scheme,
                        format_number(pt.d),
                        format_number(pt.t),
                        format_number(rep.e1),
                        format_number(rep.e2),
                        format_number(rep.common),
                        format_number(rep.normalized_common),
                    ]
                )
            )
    _write_lines(Path(path), lines)


def write_solver_csv(path: str | Path, points: Sequence[PointResult]) -> None:
    lines = [SOLVER_HEADER]
    for pt in points:
        sol = pt.solution
        lines.append(
            ",".join(
                [
                    format_number(pt.d),
                    format_number(sol.x_bar),
                    format_number(sol.h_bar),
                    format_number(sol.theta_bar),
                    sol.case_tag.value,
                    format_number(sol.value),
                ]
            )
        )
    _write_lines(Path(path), lines)


def write_trajectory_csv(
    path: str | Path, rows: Sequence[tuple[float, float, float, float]]
) -> None:
    lines = [TRAJECTORY_HEADER]
    for t, x, h, theta in rows:
        lines.append(
            ",".join([format_number(t), format_number(x), format_number(h), format_number(theta)])
        )
    _write_lines(Path(path), lines)


def sample_trajectory(cfg: RunConfig, pt: PointResult) -> list[tuple[float, float, float, float]]:
    """Trajectory sample rows for a solved point at the configured step."""
    step = cfg.traj_step if cfg.traj_step is not None else pt.t / 500.0
    return trajectory_table(pt.trajectory, cfg.scenario(pt.d, pt.t), cfg.limits(), cfg.radio(), step)
