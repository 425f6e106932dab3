"""Geometry and radio model for a UAV charging two ground receivers.

The setup is one-dimensional: two energy receivers (ERs) sit on the ground
at x = -d/2 and x = +d/2, and the transmitting UAV moves along the x axis
at altitude ``h`` with a downward-pointing directional antenna of
half-beamwidth ``theta``.  A receiver is *covered* when it falls inside the
conical footprint, i.e. ``tan(theta) * h >= |x - er_x|`` (boundary
inclusive).  Inside the beam the antenna gain is ``g0 / theta**2`` and the
channel follows free-space path loss ``beta0 / dist**2``, so the received
RF power from a transmit power ``p_tx`` is::

    q = beta0 * g0 * p_tx / (theta**2 * ((x - er_x)**2 + h**2))

and exactly zero outside the footprint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BORESIGHT_GAIN_DEFAULT",
    "RadioParams",
    "RegimeViolation",
    "Scenario",
    "UavLimits",
    "UavState",
    "antenna_gain_toward",
    "covers_er",
    "db_to_linear",
    "dbm_to_watts",
    "default_limits",
    "default_radio",
    "received_power",
    "received_power_grid",
    "validate_scenario",
]

# Classic aperture rule of thumb: gain ~ 30000 / (hpbw_deg)^2 for a square
# beam.  With the half-beamwidth expressed in radians this collapses to the
# constant below; it is configurable through RadioParams.g0.
BORESIGHT_GAIN_DEFAULT = 2.2846


def db_to_linear(value_db: float) -> float:
    """Convert a power ratio in dB to linear scale."""
    return 10.0 ** (value_db / 10.0)


def dbm_to_watts(value_dbm: float) -> float:
    """Convert a power level in dBm to watts."""
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class Scenario:
    """Problem instance: receiver spacing and charging duration.

    Attributes
    ----------
    d : float
        Distance in meters between the two receivers (placed at ±d/2).
    t : float
        Total charging duration in seconds.
    """

    d: float
    t: float

    def __post_init__(self) -> None:
        if self.d <= 0:
            raise ValueError(f"receiver spacing must be positive, got {self.d}")
        if self.t <= 0:
            raise ValueError(f"charging duration must be positive, got {self.t}")

    @property
    def er1_x(self) -> float:
        return -self.d / 2.0

    @property
    def er2_x(self) -> float:
        return self.d / 2.0

    @property
    def er_positions(self) -> tuple[float, float]:
        return (self.er1_x, self.er2_x)


@dataclass(frozen=True)
class UavLimits:
    """Flight envelope and antenna limits."""

    h_min: float  # lowest allowed altitude [m]
    h_max: float  # highest allowed altitude [m]
    v_max: float  # maximum horizontal speed [m/s]
    theta_min: float  # narrowest half-beamwidth [rad]
    theta_max: float  # widest half-beamwidth [rad], at most pi/2

    def __post_init__(self) -> None:
        if not 0 < self.h_min <= self.h_max:
            raise ValueError(f"need 0 < h_min <= h_max, got [{self.h_min}, {self.h_max}]")
        if self.v_max <= 0:
            raise ValueError(f"v_max must be positive, got {self.v_max}")
        if not 0 < self.theta_min <= self.theta_max <= math.pi / 2 + 1e-12:
            raise ValueError(
                f"need 0 < theta_min <= theta_max <= pi/2, got [{self.theta_min}, {self.theta_max}]"
            )


@dataclass(frozen=True)
class RadioParams:
    """Link-budget constants (all linear scale)."""

    beta0: float  # channel power gain at 1 m reference distance
    p_tx: float  # transmit power [W]
    g0: float = BORESIGHT_GAIN_DEFAULT  # beamwidth-normalized antenna gain constant

    def __post_init__(self) -> None:
        if self.beta0 <= 0 or self.p_tx <= 0 or self.g0 <= 0:
            raise ValueError("beta0, p_tx and g0 must all be positive")

    @classmethod
    def from_db(cls, beta0_db: float, p_dbm: float, g0: float = BORESIGHT_GAIN_DEFAULT) -> "RadioParams":
        """Build from the usual dB / dBm figures."""
        return cls(beta0=db_to_linear(beta0_db), p_tx=dbm_to_watts(p_dbm), g0=g0)


@dataclass(frozen=True)
class UavState:
    """Instantaneous UAV state: position along x, altitude, half-beamwidth."""

    x: float
    h: float
    theta: float

    def __post_init__(self) -> None:
        if self.h <= 0:
            raise ValueError(f"altitude must be positive, got {self.h}")
        if not 0 < self.theta <= math.pi / 2 + 1e-12:
            raise ValueError(f"half-beamwidth must lie in (0, pi/2], got {self.theta}")


def default_limits() -> UavLimits:
    """Reference flight envelope: h in [10, 30] m, v <= 5 m/s, theta in [pi/6, pi/2]."""
    return UavLimits(h_min=10.0, h_max=30.0, v_max=5.0, theta_min=math.pi / 6, theta_max=math.pi / 2)


def default_radio() -> RadioParams:
    """Reference link budget: beta0 = -30 dB, p_tx = 40 dBm, default gain constant."""
    return RadioParams.from_db(beta0_db=-30.0, p_dbm=40.0)


class RegimeViolation(ValueError):
    """The scenario falls outside the two-receiver operating regime.

    ``which`` is one of:

    * ``"beam_cannot_cover_both"`` — even the widest beam from the highest
      altitude misses one receiver (tan(theta_max) < d / (2*h_max)); the
      midpoint-coverage branch of the solver can never fire.
    * ``"beam_always_covers_both"`` — even the narrowest beam from the
      lowest altitude covers both receivers (tan(theta_min) > d / h_min);
      the single-receiver branch degenerates.
    """

    def __init__(self, which: str, message: str):
        super().__init__(message)
        self.which = which


def require_coverable(scenario: Scenario, limits: UavLimits) -> None:
    """Reject scenarios where no state can illuminate both receivers.

    This is the only condition that makes the planning problem genuinely
    unsolvable; the solver applies it on entry.

    Raises
    ------
    RegimeViolation
        With ``which == "beam_cannot_cover_both"``.
    """
    d = scenario.d
    if math.tan(limits.theta_max) < d / (2.0 * limits.h_max):
        raise RegimeViolation(
            "beam_cannot_cover_both",
            f"tan(theta_max) = {math.tan(limits.theta_max):.6g} < d/(2*h_max) = "
            f"{d / (2 * limits.h_max):.6g}: no state covers both receivers",
        )


def validate_scenario(scenario: Scenario, limits: UavLimits) -> None:
    """Check the two-receiver operating-regime assumptions.

    Stricter than :func:`require_coverable`: it additionally flags the
    degenerate regime where even the narrowest beam from the lowest
    altitude covers both receivers, i.e. the beam constraint never binds
    anywhere.  The solver still handles that regime (it reduces to the
    midpoint hover), so solving only requires :func:`require_coverable`.

    Raises
    ------
    RegimeViolation
        If either regime inequality fails; ``.which`` names the failing one.
    """
    require_coverable(scenario, limits)
    d = scenario.d
    if math.tan(limits.theta_min) > d / limits.h_min:
        raise RegimeViolation(
            "beam_always_covers_both",
            f"tan(theta_min) = {math.tan(limits.theta_min):.6g} > d/h_min = "
            f"{d / limits.h_min:.6g}: every feasible state covers both receivers",
        )


def covers_er(state: UavState, er_x: float) -> bool:
    """True when the receiver at ``er_x`` lies inside the beam footprint.

    The boundary is inclusive: a receiver exactly on the footprint edge
    counts as covered.
    """
    return math.tan(state.theta) * state.h >= abs(state.x - er_x)


def antenna_gain_toward(state: UavState, er_x: float, radio: RadioParams) -> float:
    """Antenna gain seen by the receiver at ``er_x`` (0 outside the beam)."""
    if not covers_er(state, er_x):
        return 0.0
    return radio.g0 / state.theta**2


def received_power_grid(x, h, theta, er_x, radio: RadioParams):
    """Received RF power, broadcasting over array-valued ``x``/``h``/``theta``.

    This is the same expression as :func:`received_power` but accepts numpy
    arrays (any mutually broadcastable shapes) so grid searches and
    quadrature can evaluate it in bulk.
    """
    offset = np.abs(np.asarray(x, dtype=float) - er_x)
    covered = np.tan(theta) * h >= offset
    dist_sq = offset**2 + np.asarray(h, dtype=float) ** 2
    power = radio.beta0 * radio.g0 * radio.p_tx / (np.asarray(theta, dtype=float) ** 2 * dist_sq)
    return np.where(covered, power, 0.0)


def received_power(state: UavState, er_x: float, radio: RadioParams) -> float:
    """Received RF power in watts at the receiver located at ``er_x``."""
    if not covers_er(state, er_x):
        return 0.0
    dist_sq = (state.x - er_x) ** 2 + state.h**2
    return radio.beta0 * radio.g0 * radio.p_tx / (state.theta**2 * dist_sq)
