"""Hover-fly-hover trajectory construction and in-flight beam scheduling.

The placement solver fixes two mirror hover points; the flyable plan is:
hover at the left point, fly straight to the right point at maximum speed
(flying time is pure loss, so the transfer is as short as allowed), hover
again, with the two hover dwells equal.  Altitude stays constant
throughout.  When the optimal offset is zero the whole plan collapses to a
single midpoint hover.

During flight the beamwidth follows a greedy schedule: at each position
the two candidates are the narrowest beam reaching the nearer receiver and
the narrowest beam reaching both; after clamping into the antenna limits
the candidate delivering more total power wins, the near-only beam taking
ties.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .hover import HoverSolution
from .model import RadioParams, Scenario, UavLimits, UavState, received_power_grid

__all__ = [
    "DurationTooShort",
    "Segment",
    "SegmentKind",
    "TimeOutOfRange",
    "Trajectory",
    "build_trajectory",
    "candidate_beams",
    "flight_beamwidth",
    "flight_beamwidths",
    "state_at",
    "trajectory_table",
]


class DurationTooShort(ValueError):
    """The charging period cannot even fit the minimum flying time."""


class TimeOutOfRange(ValueError):
    """Requested time lies outside the trajectory's domain (0, T]."""


class SegmentKind(enum.Enum):
    HOVER = "hover"
    FLY = "fly"


@dataclass(frozen=True)
class Segment:
    """One piece of a trajectory.

    ``beamwidth`` is the fixed half-beamwidth for hover segments (and for
    externally built constant-beam flights); ``None`` selects the greedy
    in-flight schedule.
    """

    kind: SegmentKind
    t_start: float
    t_end: float
    x_start: float
    x_end: float
    h: float
    beamwidth: float | None

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    @property
    def speed(self) -> float:
        if self.duration == 0.0:
            return 0.0
        return (self.x_end - self.x_start) / self.duration


@dataclass(frozen=True)
class Trajectory:
    """Ordered segments tiling the charging period (0, T] without gaps."""

    segments: tuple[Segment, ...]
    total_duration: float

    @property
    def fly_duration(self) -> float:
        return sum(s.duration for s in self.segments if s.kind is SegmentKind.FLY)


def build_trajectory(sol: HoverSolution, scenario: Scenario, limits: UavLimits) -> Trajectory:
    """Assemble the hover-fly-hover plan realizing a hover solution.

    Raises
    ------
    DurationTooShort
        If the period is shorter than the flying time ``2*x_bar / v_max``.
    """
    period = scenario.t
    if sol.x_bar == 0.0:
        hover = Segment(
            kind=SegmentKind.HOVER,
            t_start=0.0,
            t_end=period,
            x_start=0.0,
            x_end=0.0,
            h=sol.h_bar,
            beamwidth=sol.theta_bar,
        )
        return Trajectory(segments=(hover,), total_duration=period)

    t_fly = 2.0 * sol.x_bar / limits.v_max
    if period < t_fly:
        raise DurationTooShort(
            f"period {period} s is shorter than the {t_fly} s needed to fly "
            f"between the hover points"
        )
    t_hover = period / 2.0 - sol.x_bar / limits.v_max

    segments: list[Segment] = []
    if t_hover > 0.0:
        segments.append(
            Segment(SegmentKind.HOVER, 0.0, t_hover, -sol.x_bar, -sol.x_bar, sol.h_bar, sol.theta_bar)
        )
    segments.append(
        Segment(SegmentKind.FLY, t_hover, t_hover + t_fly, -sol.x_bar, sol.x_bar, sol.h_bar, None)
    )
    if t_hover > 0.0:
        segments.append(
            Segment(SegmentKind.HOVER, t_hover + t_fly, period, sol.x_bar, sol.x_bar, sol.h_bar, sol.theta_bar)
        )
    return Trajectory(segments=tuple(segments), total_duration=period)


def _nudge_to_cover(theta: np.ndarray, h: float, offset: np.ndarray, cap: float) -> np.ndarray:
    """Bump beamwidths up by ulps until the targeted offset is covered.

    The candidates put a receiver exactly on the beam edge, where
    ``tan(arctan(offset/h)) * h`` can round a hair below ``offset`` and
    the exact coverage predicate would flap node to node.  Bumping stops
    at ``cap``; an offset genuinely beyond the widest beam stays
    uncovered.
    """
    theta = np.array(theta, dtype=float, copy=True)
    for _ in range(8):
        need = (np.tan(theta) * h < offset) & (theta < cap)
        if not need.any():
            break
        theta = np.where(need, np.nextafter(theta, np.inf), theta)
    return np.minimum(theta, cap)


def candidate_beams(
    x: np.ndarray, h: float, scenario: Scenario, limits: UavLimits, radio: RadioParams
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Both greedy beam candidates and their total powers, vectorized.

    Returns ``(theta1, theta2, p1, p2, two_ok)``: the clamped near-edge
    and far-edge candidates, each candidate's total received power over
    both receivers, and whether candidate two still covers both after
    clamping.
    """
    x = np.asarray(x, dtype=float)
    d1 = np.abs(x - scenario.er1_x)
    d2 = np.abs(x - scenario.er2_x)
    off1 = np.minimum(d1, d2)
    off2 = np.maximum(d1, d2)
    theta1 = np.clip(np.arctan2(off1, h), limits.theta_min, limits.theta_max)
    theta1 = _nudge_to_cover(theta1, h, off1, limits.theta_max)
    theta2 = np.clip(np.arctan2(off2, h), limits.theta_min, limits.theta_max)
    theta2 = _nudge_to_cover(theta2, h, off2, limits.theta_max)

    p1 = received_power_grid(x, h, theta1, scenario.er1_x, radio) + received_power_grid(
        x, h, theta1, scenario.er2_x, radio
    )
    p2 = received_power_grid(x, h, theta2, scenario.er1_x, radio) + received_power_grid(
        x, h, theta2, scenario.er2_x, radio
    )
    two_ok = np.tan(theta2) * h >= off2
    return theta1, theta2, p1, p2, two_ok


def flight_beamwidth(
    x: float, h: float, scenario: Scenario, limits: UavLimits, radio: RadioParams
) -> float:
    """Greedy in-flight half-beamwidth at position ``x`` and altitude ``h``.

    Candidate one aims the beam edge at the nearer receiver, candidate two
    at the farther one (covering both); both are clamped into the antenna
    limits, candidate two is dropped if clamping makes it lose dual
    coverage, and the one with more total received power wins (ties to
    candidate one).
    """
    return float(flight_beamwidths(np.asarray([x]), h, scenario, limits, radio)[0])


def flight_beamwidths(
    x: np.ndarray, h: float, scenario: Scenario, limits: UavLimits, radio: RadioParams
) -> np.ndarray:
    """Vectorized :func:`flight_beamwidth` over an array of positions."""
    theta1, theta2, p1, p2, two_ok = candidate_beams(x, h, scenario, limits, radio)
    return np.where(two_ok & (p2 > p1), theta2, theta1)


def state_at(
    traj: Trajectory, t: float, scenario: Scenario, limits: UavLimits, radio: RadioParams
) -> UavState:
    """UAV state at time ``t`` in the domain (0, T].

    Hover/fly boundary instants resolve to the hover state.
    """
    if not 0.0 < t <= traj.total_duration:
        raise TimeOutOfRange(
            f"t = {t} outside the trajectory domain (0, {traj.total_duration}]"
        )
    for seg in traj.segments:
        if seg.kind is SegmentKind.HOVER and seg.t_start <= t <= seg.t_end:
            return UavState(seg.x_start, seg.h, seg.beamwidth)
    for seg in traj.segments:
        if seg.kind is SegmentKind.FLY and seg.t_start <= t <= seg.t_end:
            x = seg.x_start + seg.speed * (t - seg.t_start)
            theta = (
                seg.beamwidth
                if seg.beamwidth is not None
                else flight_beamwidth(x, seg.h, scenario, limits, radio)
            )
            return UavState(x, seg.h, theta)
    raise TimeOutOfRange(f"t = {t} not covered by any segment")  # pragma: no cover


def trajectory_table(
    traj: Trajectory,
    scenario: Scenario,
    limits: UavLimits,
    radio: RadioParams,
    step: float,
) -> list[tuple[float, float, float, float]]:
    """Sample the trajectory at a fixed step into (t, x, h, theta) rows.

    Samples run from ``step`` to the period end, with the final instant
    always included.
    """
    if step <= 0:
        raise ValueError(f"sampling step must be positive, got {step}")
    period = traj.total_duration
    times = [k * step for k in range(1, int(math.floor(period / step + 1e-9)) + 1)]
    if not times or times[-1] < period - 1e-9 * period:
        times.append(period)
    rows = []
    for t in times:
        s = state_at(traj, min(t, period), scenario, limits, radio)
        rows.append((t, s.x, s.h, s.theta))
    return rows
