"""Received-energy accounting along a trajectory.

Hover dwells contribute power times duration in closed form.  Flight
legs are integrated with a composite trapezoid whose nodes sit on a
global ``k * dt`` time grid, so splitting a leg at any grid instant and
summing the parts reproduces the whole to machine precision.  The
integrand is only piecewise smooth: received power jumps wherever a
receiver enters or leaves the beam and wherever the greedy in-flight
schedule switches between its two beam candidates.  All such instants
are located first (clamp boundaries and the midpoint analytically,
schedule switches by scan plus bisection) and inserted as quadrature
breakpoints, which restores clean second-order convergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .hover import HoverSolution
from .model import RadioParams, Scenario, UavLimits, received_power_grid
from .trajectory import Segment, SegmentKind, Trajectory, candidate_beams, flight_beamwidths

__all__ = [
    "EnergyReport",
    "PowerFn",
    "default_fly_dt",
    "hover_energy",
    "integrate_energy",
    "upper_bound_energy",
]

# Same signature as model.received_power_grid; benchmarks substitute their
# own propagation law through this hook.
PowerFn = Callable[[np.ndarray, float, np.ndarray, float, RadioParams], np.ndarray]

_trapezoid = getattr(np, "trapezoid", np.trapz)


@dataclass(frozen=True)
class EnergyReport:
    """Per-receiver energies over one charging period."""

    e1: float
    e2: float
    common: float
    normalized_common: float

    @classmethod
    def from_energies(cls, e1: float, e2: float, period: float) -> "EnergyReport":
        common = min(e1, e2)
        return cls(e1=e1, e2=e2, common=common, normalized_common=common / period)


def default_fly_dt(fly_duration: float) -> float:
    """Default quadrature step: 1 ms, refined for very short flights."""
    if fly_duration <= 0.0:
        return 1e-3
    return min(1e-3, fly_duration / 1000.0)


def hover_energy(
    seg: Segment, scenario: Scenario, radio: RadioParams, power_fn: PowerFn | None = None
) -> tuple[float, float]:
    """Closed-form energy pair delivered during one hover segment."""
    fn = power_fn if power_fn is not None else received_power_grid
    q1 = float(fn(seg.x_start, seg.h, seg.beamwidth, scenario.er1_x, radio))
    q2 = float(fn(seg.x_start, seg.h, seg.beamwidth, scenario.er2_x, radio))
    return q1 * seg.duration, q2 * seg.duration


def _beam_edge_positions(seg: Segment, scenario: Scenario, limits: UavLimits) -> list[float]:
    """Positions inside a flight leg where the integrand can jump.

    For a scheduled leg these are the midpoint (where the near/far roles
    swap) and the points where a receiver sits exactly on the edge of a
    clamped beam; for a fixed-beamwidth leg, the edges of that beam.
    """
    lo, hi = sorted((seg.x_start, seg.x_end))
    events: list[float] = []
    if seg.beamwidth is None:
        if lo < 0.0 < hi:
            events.append(0.0)
        bounds: tuple[float, ...] = (limits.theta_min, limits.theta_max)
    else:
        bounds = (seg.beamwidth,)
    for er_x in scenario.er_positions:
        for bound in bounds:
            reach = seg.h * math.tan(bound)
            for candidate in (er_x - reach, er_x + reach):
                if lo < candidate < hi:
                    events.append(candidate)
    return sorted(set(events))


def _schedule_switch_positions(
    seg: Segment,
    pieces: list[float],
    scenario: Scenario,
    limits: UavLimits,
    radio: RadioParams,
    n_scan: int = 512,
) -> list[float]:
    """Positions where the greedy schedule flips between its candidates.

    Scans each smooth piece for sign changes of the candidate power gap
    and bisects each bracket down to adjacent floats, so the returned
    position is within one ulp of the actual flip; outside the pieces'
    interiors the candidate set itself changes, which the beam-edge
    events already cover.
    """

    def gap(x: np.ndarray) -> np.ndarray:
        _, _, p1, p2, two_ok = candidate_beams(x, seg.h, scenario, limits, radio)
        return np.where(two_ok, p1 - p2, np.inf)

    roots: list[float] = []
    for left, right in zip(pieces[:-1], pieces[1:]):
        xs = np.linspace(left, right, n_scan)
        vals = gap(xs)
        finite = np.isfinite(vals)
        sign = np.sign(vals)
        flips = np.nonzero(finite[:-1] & finite[1:] & (sign[:-1] * sign[1:] < 0))[0]
        for i in flips:
            a, b = float(xs[i]), float(xs[i + 1])
            fa = float(vals[i])
            while True:
                m = 0.5 * (a + b)
                if m <= a or m >= b:
                    break
                fm = float(gap(np.asarray(m)))
                if fa * fm <= 0:
                    b = m
                else:
                    a, fa = m, fm
            roots.append(b)
    return roots


def _piece_nodes(t_lo: float, t_hi: float, dt: float) -> np.ndarray:
    """Trapezoid nodes for [t_lo, t_hi] anchored to the global k*dt grid."""
    k_first = math.floor(t_lo / dt) + 1
    k_last = math.ceil(t_hi / dt) - 1
    interior = np.arange(k_first, k_last + 1, dtype=float) * dt
    interior = interior[(interior > t_lo) & (interior < t_hi)]
    return np.concatenate(([t_lo], interior, [t_hi]))


def _pull_endpoints_inside(xs: np.ndarray) -> np.ndarray:
    """Nudge a piece's endpoint samples marginally into its interior.

    Piece boundaries sit on integrand jumps, and mapping a breakpoint
    through the time grid and back can land the endpoint float on either
    side of its jump.  Sampling a hair inside the piece -- a relative
    1e-9 shift, far above float round-trip error yet invisible to the
    smooth integrand -- makes every piece see its own one-sided limit,
    so integrals stay additive under splits and mirrored legs remain
    mirrors.
    """
    if xs.size < 2:
        return xs
    lo, hi = float(xs[0]), float(xs[-1])
    delta = 1e-9 * max(abs(lo), abs(hi), 1.0)
    if abs(hi - lo) <= 4.0 * delta:
        return xs
    out = xs.copy()
    sign = 1.0 if hi > lo else -1.0
    out[0] = lo + sign * delta
    out[-1] = hi - sign * delta
    return out


def _fly_energy(
    seg: Segment,
    scenario: Scenario,
    limits: UavLimits,
    radio: RadioParams,
    dt: float,
    power_fn: PowerFn | None,
) -> tuple[float, float]:
    """Quadrature over one flight leg, split at every integrand jump."""
    breaks = [seg.t_start, seg.t_end]
    if power_fn is None:
        speed = seg.speed
        positions = _beam_edge_positions(seg, scenario, limits)
        if seg.beamwidth is None:
            piece_edges = sorted(set([seg.x_start, seg.x_end] + positions))
            switches = _schedule_switch_positions(seg, piece_edges, scenario, limits, radio)
        else:
            switches = []
        for x_ev in positions + switches:
            breaks.append(seg.t_start + (x_ev - seg.x_start) / speed)
        breaks = sorted(set(breaks))

    e1 = e2 = 0.0
    for t_lo, t_hi in zip(breaks[:-1], breaks[1:]):
        if t_hi - t_lo <= 0.0:
            continue
        ts = _piece_nodes(t_lo, t_hi, dt)
        xs = _pull_endpoints_inside(seg.x_start + seg.speed * (ts - seg.t_start))
        if seg.beamwidth is not None:
            thetas = np.full_like(xs, seg.beamwidth)
        else:
            thetas = flight_beamwidths(xs, seg.h, scenario, limits, radio)
        fn = power_fn if power_fn is not None else received_power_grid
        q1 = fn(xs, seg.h, thetas, scenario.er1_x, radio)
        q2 = fn(xs, seg.h, thetas, scenario.er2_x, radio)
        e1 += float(_trapezoid(q1, ts))
        e2 += float(_trapezoid(q2, ts))
    return e1, e2


def integrate_energy(
    traj: Trajectory,
    scenario: Scenario,
    limits: UavLimits,
    radio: RadioParams,
    dt: float | None = None,
    power_fn: PowerFn | None = None,
) -> EnergyReport:
    """Total per-receiver energy delivered over the whole trajectory.

    ``dt`` bounds the quadrature cell width on flight legs (default
    :func:`default_fly_dt`); hover dwells are exact regardless.
    ``power_fn`` swaps in an alternative propagation law with the same
    array signature as the built-in received-power evaluation.
    """
    if dt is None:
        dt = default_fly_dt(traj.fly_duration)
    if dt <= 0.0:
        raise ValueError(f"quadrature step must be positive, got {dt}")
    e1 = e2 = 0.0
    for seg in traj.segments:
        if seg.kind is SegmentKind.HOVER:
            d1, d2 = hover_energy(seg, scenario, radio, power_fn)
        else:
            d1, d2 = _fly_energy(seg, scenario, limits, radio, dt, power_fn)
        e1 += d1
        e2 += d2
    return EnergyReport.from_energies(e1, e2, traj.total_duration)


def upper_bound_energy(sol: HoverSolution, scenario: Scenario) -> float:
    """Energy of the relaxed placement held for the whole period."""
    return sol.value * scenario.t
