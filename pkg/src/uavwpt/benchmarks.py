"""Reference schemes the adaptive design is compared against.

Two baselines bracket the design space from below:

* an isotropic-antenna UAV (no beam to steer) flying the same
  hover-fly-hover shape at minimum altitude, its hover offset picked by a
  grid search over half the receiver spacing;
* a static hover at the midpoint with beam and altitude fixed for the
  whole period, the beam forced wide enough (or the platform high
  enough) to keep both receivers illuminated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .energy import EnergyReport, integrate_energy
from .hover import _raise_until_covered
from .model import RadioParams, Scenario, UavLimits, UavState, covers_er
from .trajectory import Segment, SegmentKind, Trajectory

__all__ = [
    "BenchmarkResult",
    "StaticInfeasible",
    "omni_benchmark",
    "static_benchmark",
    "unit_gain_power_grid",
]


class StaticInfeasible(ValueError):
    """No fixed hover inside the limits can illuminate both receivers."""


@dataclass(frozen=True)
class BenchmarkResult:
    scheme: str
    trajectory: Trajectory
    report: EnergyReport
    params: dict[str, float]


def unit_gain_power_grid(x, h: float, theta, er_x: float, radio: RadioParams):
    """Isotropic propagation law: channel gain over squared distance.

    Shares the array signature of the directional power evaluation so it
    can be swapped into the energy integrator; ``theta`` is ignored.
    """
    x = np.asarray(x, dtype=float)
    dist_sq = (x - er_x) ** 2 + h * h
    return radio.beta0 * radio.p_tx / dist_sq


def _symmetric_plan(
    x_h: float, h: float, beamwidth: float, period: float, v_max: float
) -> Trajectory:
    """Hover-fly-hover between mirror points at a fixed beamwidth."""
    if x_h == 0.0:
        seg = Segment(SegmentKind.HOVER, 0.0, period, 0.0, 0.0, h, beamwidth)
        return Trajectory(segments=(seg,), total_duration=period)
    t_fly = 2.0 * x_h / v_max
    t_hover = period / 2.0 - x_h / v_max
    segs = (
        Segment(SegmentKind.HOVER, 0.0, t_hover, -x_h, -x_h, h, beamwidth),
        Segment(SegmentKind.FLY, t_hover, t_hover + t_fly, -x_h, x_h, h, beamwidth),
        Segment(SegmentKind.HOVER, t_hover + t_fly, period, x_h, x_h, h, beamwidth),
    )
    return Trajectory(segments=segs, total_duration=period)


def omni_benchmark(
    scenario: Scenario,
    limits: UavLimits,
    radio: RadioParams,
    n_grid: int = 2048,
    dt: float | None = None,
) -> BenchmarkResult:
    """Isotropic-antenna baseline at minimum altitude.

    The hover offset is chosen on an ``n_grid``-point grid over
    [0, spacing/2] by closed-form energy (hover terms plus the arctan
    antiderivative of the flight term), skipping offsets whose flying
    time exceeds the period; the reported energies then come from the
    shared integrator on the winning plan.
    """
    a = scenario.d / 2.0
    h = limits.h_min
    period = scenario.t
    v = limits.v_max
    c = radio.beta0 * radio.p_tx

    xs = np.linspace(0.0, a, n_grid)
    feasible = 2.0 * xs / v <= period
    if not feasible.any():
        raise ValueError("period too short for any hover offset, including zero")
    t_hover = period / 2.0 - xs / v
    hover_near = c / ((a - xs) ** 2 + h * h)
    hover_far = c / ((a + xs) ** 2 + h * h)
    fly = (c / (v * h)) * (np.arctan((xs + a) / h) - np.arctan((a - xs) / h))
    # Mirror symmetry makes both receivers' totals equal.
    energy = t_hover * (hover_near + hover_far) + fly
    energy = np.where(feasible, energy, -np.inf)
    best = int(np.argmax(energy))
    x_h = float(xs[best])

    traj = _symmetric_plan(x_h, h, limits.theta_min, period, v)
    report = integrate_energy(traj, scenario, limits, radio, dt=dt, power_fn=unit_gain_power_grid)
    return BenchmarkResult("omni", traj, report, {"hover_offset": x_h, "h": h})


def static_benchmark(
    scenario: Scenario, limits: UavLimits, radio: RadioParams
) -> BenchmarkResult:
    """Fixed midpoint hover covering both receivers for the whole period.

    If the narrowest beam already reaches both from minimum altitude the
    corner state is optimal; otherwise the beam is opened just enough at
    the highest useful altitude.  Raises :class:`StaticInfeasible` when
    even the widest beam at maximum altitude cannot cover both.
    """
    a = scenario.d / 2.0
    if math.tan(limits.theta_min) * limits.h_min >= a:
        h, theta = limits.h_min, limits.theta_min
    else:
        theta = max(limits.theta_min, math.atan2(a, limits.h_max))
        h = min(limits.h_max, a / math.tan(limits.theta_min))
        if theta > limits.theta_max:
            raise StaticInfeasible(
                f"widest beam at {limits.h_max} m altitude cannot span "
                f"receivers {scenario.d} m apart"
            )
        h = _raise_until_covered(0.0, h, theta, a)
    state = UavState(0.0, h, theta)
    if not (covers_er(state, scenario.er1_x) and covers_er(state, scenario.er2_x)):
        raise StaticInfeasible(
            f"no fixed hover at midpoint covers both receivers "
            f"(spacing {scenario.d} m, limits {limits})"
        )
    traj = _symmetric_plan(0.0, h, theta, scenario.t, limits.v_max)
    report = integrate_energy(traj, scenario, limits, radio)
    return BenchmarkResult("static", traj, report, {"h": h, "theta": theta})
