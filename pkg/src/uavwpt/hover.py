"""Optimal two-point hover placement for charging a symmetric receiver pair.

With the speed constraint relaxed, the best charging policy splits the
period between the mirror states ``(-x_bar, h_bar, theta_bar)`` and
``(+x_bar, h_bar, theta_bar)``, so the whole problem reduces to picking one
triple that maximizes the per-receiver average power.  The solver compares
three candidate families and keeps the best:

* **single-receiver corner** — park right above one receiver at the lowest
  altitude with the narrowest beam, ignoring the far receiver; the value
  has a closed form (``solve_single_er``).
* **dual-coverage边 tight states** — cover both receivers with the beam edge
  exactly on the far one, which pins the altitude to
  ``(x_bar + d/2) / tan(theta)`` and leaves a 2-D problem over
  ``(x_bar, theta)``; for each beamwidth the offset optimum is either an
  interval endpoint or a stationary point of a quartic, and a dense 1-D
  line search over beamwidth with golden-section refinement finishes the
  job (``solve_dual_er``).
* **midpoint slack state** — hover at the midpoint at the lowest altitude
  with the narrowest beam when that already covers both receivers; at
  small spacing this strictly beats every tight state
  (``midpoint_slack_candidate``).

Everything here is average-power based and independent of the charging
duration; energies come out downstream by multiplying by dwell times.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import RadioParams, Scenario, UavLimits, UavState, received_power, require_coverable

__all__ = [
    "CaseTag",
    "EmptyInterval",
    "HoverSolution",
    "ThetaSearchRange",
    "best_offset",
    "midpoint_slack_candidate",
    "offset_bounds",
    "solve_dual_er",
    "solve_hover",
    "solve_single_er",
    "stationary_offsets",
    "theta_search_range",
    "tight_cover_power",
    "tight_cover_power_dx",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


class EmptyInterval(ValueError):
    """No feasible hover offset exists for the requested beamwidth."""


class CaseTag(enum.Enum):
    """Which candidate family produced a hover solution."""

    SINGLE_ER = "single_er"
    DUAL_ER_EQUALITY = "dual_er_equality"
    DUAL_ER_SLACK = "dual_er_slack"


@dataclass(frozen=True)
class HoverSolution:
    """Optimal symmetric hover placement.

    ``x_bar`` is the canonical nonnegative hover offset (the mirror point
    ``-x_bar`` is implied), ``value`` the per-receiver average power in
    watts achieved when the period is split evenly between the two mirror
    hover states.
    """

    x_bar: float
    h_bar: float
    theta_bar: float
    value: float
    case_tag: CaseTag

    def hover_states(self) -> tuple[UavState, UavState]:
        """The two mirror hover states, left one first."""
        left = UavState(-self.x_bar, self.h_bar, self.theta_bar)
        right = UavState(self.x_bar, self.h_bar, self.theta_bar)
        return (left, right)


@dataclass(frozen=True)
class ThetaSearchRange:
    """Beamwidth interval searched by the dual-coverage branch."""

    lo: float
    hi: float


def theta_search_range(scenario: Scenario, limits: UavLimits) -> ThetaSearchRange:
    """Beamwidths for which a tight dual-coverage state exists.

    Below ``arctan(d / (2*h_max))`` even the highest altitude cannot put
    the beam edge on the far receiver; above ``arctan(d / h_min)`` the
    tight altitude would dip below the floor even at the largest offset.
    Intersected with the antenna limits.  Nonempty whenever the scenario
    passes :func:`~uavwpt.model.validate_scenario`.
    """
    d = scenario.d
    lo = max(limits.theta_min, math.atan(d / (2.0 * limits.h_max)))
    hi = min(limits.theta_max, math.atan(d / limits.h_min))
    return ThetaSearchRange(lo=lo, hi=hi)


def solve_single_er(scenario: Scenario, limits: UavLimits, radio: RadioParams) -> HoverSolution:
    """Best placement that serves one receiver at a time.

    Power toward a single receiver is maximized directly above it, as low
    and as narrow as allowed; with the even time split each receiver then
    collects half of that peak power on average.  The value is scored
    through the model power law, so if the narrowest beam happens to reach
    the far receiver too (tiny spacings), its contribution counts.
    """
    state = UavState(scenario.d / 2.0, limits.h_min, limits.theta_min)
    q_near = received_power(state, scenario.er2_x, radio)
    q_far = received_power(state, scenario.er1_x, radio)
    return HoverSolution(
        x_bar=scenario.d / 2.0,
        h_bar=limits.h_min,
        theta_bar=limits.theta_min,
        value=0.5 * (q_near + q_far),
        case_tag=CaseTag.SINGLE_ER,
    )


def tight_cover_power(x_bar, theta, scenario: Scenario, radio: RadioParams):
    """Per-receiver average power of the tight dual-coverage state.

    The altitude is eliminated through ``h = (x_bar + d/2) / tan(theta)``
    (beam edge exactly on the far receiver).  Accepts scalars or
    broadcastable numpy arrays for ``x_bar`` and ``theta``.
    """
    a = scenario.d / 2.0
    tan_sq = np.tan(theta) ** 2
    c = radio.beta0 * radio.g0 * radio.p_tx
    near = 1.0 / ((x_bar - a) ** 2 + (x_bar + a) ** 2 / tan_sq)
    far = np.sin(theta) ** 2 / (x_bar + a) ** 2
    return c / (2.0 * np.asarray(theta, dtype=float) ** 2) * (near + far)


def tight_cover_power_dx(x_bar, theta, scenario: Scenario, radio: RadioParams):
    """Partial derivative of :func:`tight_cover_power` in the offset."""
    a = scenario.d / 2.0
    tan_sq = np.tan(theta) ** 2
    c = radio.beta0 * radio.g0 * radio.p_tx
    den = (x_bar - a) ** 2 + (x_bar + a) ** 2 / tan_sq
    return -(c / np.asarray(theta, dtype=float) ** 2) * (
        (x_bar - a + (x_bar + a) / tan_sq) / den**2
        + np.sin(theta) ** 2 / (x_bar + a) ** 3
    )


def offset_bounds(theta: float, scenario: Scenario, limits: UavLimits) -> tuple[float, float]:
    """Feasible hover offsets for a tight dual-coverage state at ``theta``.

    Derived from keeping the tight altitude inside ``[h_min, h_max]`` and
    the offset inside ``[0, d/2]``.

    Raises
    ------
    EmptyInterval
        If no offset is feasible at this beamwidth.
    """
    a = scenario.d / 2.0
    tan_t = math.tan(theta)
    x_lo = max(0.0, limits.h_min * tan_t - a)
    x_hi = min(a, limits.h_max * tan_t - a)
    if x_lo > x_hi:
        raise EmptyInterval(
            f"no feasible offset at theta={theta:.6g} (bounds [{x_lo:.6g}, {x_hi:.6g}])"
        )
    return (x_lo, x_hi)


def stationary_offsets(
    theta: float,
    x_lo: float,
    x_hi: float,
    scenario: Scenario,
    radio: RadioParams,
    n_scan: int = 2048,
) -> list[float]:
    """Interior zeros of the offset derivative on ``[x_lo, x_hi]``.

    The derivative's numerator is a quartic, so at most four real roots
    exist; a dense sign-change scan over ``n_scan`` uniform points followed
    by bisection to ``1e-10 * d`` absolute is robust for these smooth
    coefficients and never misses a simple root at this density.
    """
    if x_hi <= x_lo:
        return []
    xs = np.linspace(x_lo, x_hi, n_scan)
    deriv = np.asarray(tight_cover_power_dx(xs, theta, scenario, radio))
    tol = 1e-10 * scenario.d

    roots: list[float] = [float(x) for x, dv in zip(xs, deriv) if dv == 0.0]
    signs = np.sign(deriv)
    (brackets,) = np.nonzero(signs[:-1] * signs[1:] < 0)
    for i in brackets:
        lo, hi = float(xs[i]), float(xs[i + 1])
        f_lo = float(tight_cover_power_dx(lo, theta, scenario, radio))
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            f_mid = float(tight_cover_power_dx(mid, theta, scenario, radio))
            if f_mid == 0.0:
                lo = hi = mid
                break
            if f_lo * f_mid < 0:
                hi = mid
            else:
                lo, f_lo = mid, f_mid
        roots.append(0.5 * (lo + hi))

    roots.sort()
    merged: list[float] = []
    for r in roots:
        if not merged or r - merged[-1] > 10 * tol:
            merged.append(r)
    return merged


def best_offset(
    theta: float, scenario: Scenario, limits: UavLimits, radio: RadioParams
) -> tuple[float, float]:
    """Best hover offset (and its value) for a fixed beamwidth.

    For ``theta <= pi/4`` the derivative is strictly negative on the whole
    feasible interval, so the lower endpoint wins outright; otherwise the
    maximum is taken over the interval endpoints and the stationary
    points, ties going to the smaller offset.
    """
    x_lo, x_hi = offset_bounds(theta, scenario, limits)
    if theta <= math.pi / 4:
        return (x_lo, float(tight_cover_power(x_lo, theta, scenario, radio)))

    candidates = [x_lo, *stationary_offsets(theta, x_lo, x_hi, scenario, radio), x_hi]
    candidates.sort()
    best_x, best_val = candidates[0], -math.inf
    for x in candidates:
        val = float(tight_cover_power(x, theta, scenario, radio))
        if val > best_val:
            best_x, best_val = x, val
    return (best_x, best_val)


def _golden_max(f, a: float, b: float, tol: float) -> float:
    """Golden-section search for the maximizer of ``f`` on ``[a, b]``."""
    span = b - a
    if span <= tol:
        return 0.5 * (a + b)
    n_steps = int(math.ceil(math.log(tol / span) / math.log(_INV_PHI)))
    c = a + _INV_PHI_SQ * span
    d = a + _INV_PHI * span
    yc, yd = f(c), f(d)
    for _ in range(n_steps - 1):
        span *= _INV_PHI
        if yc > yd:
            b, d, yd = d, c, yc
            c = a + _INV_PHI_SQ * span
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            d = a + _INV_PHI * span
            yd = f(d)
    return 0.5 * (a + d) if yc > yd else 0.5 * (c + b)


def _raise_until_covered(x_bar: float, h: float, theta: float, far_offset: float) -> float:
    """Nudge an altitude up by ulps until the far receiver is covered.

    Tight states put the beam edge exactly on the far receiver; plain
    rounding of ``(x_bar + d/2) / tan(theta)`` can leave it half an ulp
    outside, which would zero the far receiver's power entirely.  A few
    ulps stay far inside every feasibility tolerance.
    """
    for _ in range(64):
        if math.tan(theta) * h >= far_offset:
            return h
        h = math.nextafter(h, math.inf)
    raise ArithmeticError(
        f"could not restore beam-edge coverage at theta={theta!r}, h={h!r}"
    )


def solve_dual_er(
    scenario: Scenario,
    limits: UavLimits,
    radio: RadioParams,
    *,
    n_theta: int = 4096,
    n_scan: int = 2048,
    theta_tol: float = 1e-7,
) -> HoverSolution | None:
    """Best tight dual-coverage placement via a beamwidth line search.

    Evaluates :func:`best_offset` on a uniform ``n_theta``-point grid over
    the feasible beamwidth range, then refines around the best grid point
    with golden-section search down to ``theta_tol`` radians.  Returns
    None when no tight state is feasible (cannot happen for validated
    scenarios).
    """
    search = theta_search_range(scenario, limits)
    if search.lo > search.hi:
        return None
    thetas = np.linspace(search.lo, search.hi, n_theta) if search.hi > search.lo else np.array([search.lo])

    a = scenario.d / 2.0
    best_val, best_x, best_theta = -math.inf, math.nan, math.nan

    # Narrow beams first: the offset optimum is the lower interval endpoint,
    # which vectorizes to a single array pass.
    narrow = thetas[thetas <= math.pi / 4]
    if narrow.size:
        tan_n = np.tan(narrow)
        x_lo = np.maximum(0.0, limits.h_min * tan_n - a)
        x_hi = np.minimum(a, limits.h_max * tan_n - a)
        feasible = x_lo <= x_hi
        if np.any(feasible):
            vals = np.asarray(tight_cover_power(x_lo[feasible], narrow[feasible], scenario, radio))
            i = int(np.argmax(vals))
            best_val = float(vals[i])
            best_x = float(x_lo[feasible][i])
            best_theta = float(narrow[feasible][i])

    # Wide beams: per-beamwidth candidates are both interval endpoints plus
    # the interior stationary points; the sign scan and bisection run as
    # array operations across a block of beamwidths at once (same grid,
    # scan density, and tolerance as the scalar best_offset).
    wide = thetas[thetas > math.pi / 4]
    tol = 1e-10 * scenario.d
    u_scan = np.linspace(0.0, 1.0, n_scan)
    for block_start in range(0, wide.size, 128):
        th = wide[block_start : block_start + 128]
        tan_w = np.tan(th)
        x_lo = np.maximum(0.0, limits.h_min * tan_w - a)
        x_hi = np.minimum(a, limits.h_max * tan_w - a)
        feas = x_lo <= x_hi
        if not feas.any():
            continue
        th, x_lo, x_hi = th[feas], x_lo[feas], x_hi[feas]
        m = th.size

        xs = x_lo[:, None] + (x_hi - x_lo)[:, None] * u_scan[None, :]
        deriv = np.asarray(tight_cover_power_dx(xs, th[:, None], scenario, radio))
        signs = np.sign(deriv)
        rows, cols = np.nonzero(signs[:, :-1] * signs[:, 1:] < 0)
        zr, zc = np.nonzero(deriv == 0.0)

        lo = xs[rows, cols]
        hi = xs[rows, cols + 1]
        f_lo = deriv[rows, cols]
        th_r = th[rows]
        while True:
            active = hi - lo > tol
            if not active.any():
                break
            mid = 0.5 * (lo + hi)
            f_mid = np.asarray(tight_cover_power_dx(mid, th_r, scenario, radio))
            hit = active & (f_mid == 0.0)
            go_left = active & ~hit & (f_lo * f_mid < 0)
            go_right = active & ~hit & ~go_left
            lo = np.where(hit, mid, np.where(go_right, mid, lo))
            hi = np.where(hit, mid, np.where(go_left, mid, hi))
            f_lo = np.where(go_right, f_mid, f_lo)
        root_x = 0.5 * (lo + hi)

        idx = np.arange(m)
        cand_row = np.concatenate([idx, idx, zr, rows])
        cand_x = np.concatenate([x_lo, x_hi, xs[zr, zc], root_x])
        cand_val = np.asarray(tight_cover_power(cand_x, th[cand_row], scenario, radio))

        row_val = np.full(m, -math.inf)
        row_x = np.full(m, math.nan)
        order = np.lexsort((cand_x, cand_row))
        for j in order:
            r = cand_row[j]
            if cand_val[j] > row_val[r]:
                row_val[r] = cand_val[j]
                row_x[r] = cand_x[j]
        i = int(np.argmax(row_val))
        if row_val[i] > best_val:
            best_val = float(row_val[i])
            best_x = float(row_x[i])
            best_theta = float(th[i])

    if not math.isfinite(best_val):
        return None

    def valued(theta: float) -> float:
        try:
            return best_offset(theta, scenario, limits, radio)[1]
        except EmptyInterval:
            return -math.inf

    i = int(np.searchsorted(thetas, best_theta))
    bracket_lo = float(thetas[max(i - 1, 0)])
    bracket_hi = float(thetas[min(i + 1, len(thetas) - 1)])
    refined_theta = _golden_max(valued, bracket_lo, bracket_hi, theta_tol)
    refined_val = valued(refined_theta)
    if refined_val > best_val:
        best_val, best_theta = refined_val, refined_theta
        best_x = best_offset(refined_theta, scenario, limits, radio)[0]

    h_bar = (best_x + a) / math.tan(best_theta)
    h_bar = min(max(h_bar, limits.h_min), limits.h_max)
    h_bar = _raise_until_covered(best_x, h_bar, best_theta, best_x + a)
    return HoverSolution(
        x_bar=best_x,
        h_bar=h_bar,
        theta_bar=best_theta,
        value=best_val,
        case_tag=CaseTag.DUAL_ER_EQUALITY,
    )


def midpoint_slack_candidate(
    scenario: Scenario, limits: UavLimits, radio: RadioParams
) -> HoverSolution | None:
    """Midpoint hover at the floor with the narrowest beam, if it covers both.

    Only exists when ``h_min * tan(theta_min) >= d/2``; by symmetry its
    per-receiver average power equals the power toward either receiver.
    """
    state = UavState(0.0, limits.h_min, limits.theta_min)
    q1 = received_power(state, scenario.er1_x, radio)
    q2 = received_power(state, scenario.er2_x, radio)
    if q1 <= 0.0 or q2 <= 0.0:
        return None
    return HoverSolution(
        x_bar=0.0,
        h_bar=limits.h_min,
        theta_bar=limits.theta_min,
        value=0.5 * (q1 + q2),
        case_tag=CaseTag.DUAL_ER_SLACK,
    )


def solve_hover(scenario: Scenario, limits: UavLimits, radio: RadioParams) -> HoverSolution:
    """Globally best symmetric hover placement.

    Requires only that some state can cover both receivers (the one
    condition that makes planning impossible), then compares the
    single-receiver corner, the dual-coverage line search, and the
    midpoint slack candidate; ties break in that order.  When even the
    narrowest beam covers both receivers everywhere, the beam constraint
    never binds and the comparison reduces to corner versus midpoint,
    which stays exact because every candidate is scored through the model
    power law.
    """
    require_coverable(scenario, limits)
    best = solve_single_er(scenario, limits, radio)
    dual = solve_dual_er(scenario, limits, radio)
    if dual is not None and dual.value > best.value:
        best = dual
    slack = midpoint_slack_candidate(scenario, limits, radio)
    if slack is not None and slack.value > best.value:
        best = slack
    return best
