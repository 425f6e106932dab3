"""Exhaustive hover search and random scenario sampling.

The grid search scores every (offset, altitude, beamwidth) lattice point
through the same power evaluation the rest of the package uses, keeping
it an independent check on the analytic solver: it knows nothing about
candidate structure, only the model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import RadioParams, Scenario, UavLimits, received_power_grid

__all__ = ["GridResult", "GridSpec", "brute_force_hover", "sample_scenario"]


@dataclass(frozen=True)
class GridSpec:
    """Lattice resolution per axis (offset, altitude, beamwidth)."""

    n_x: int = 80
    n_h: int = 80
    n_theta: int = 80

    def __post_init__(self) -> None:
        if min(self.n_x, self.n_h, self.n_theta) < 2:
            raise ValueError(f"need at least 2 points per axis, got {self}")


@dataclass(frozen=True)
class GridResult:
    x: float
    h: float
    theta: float
    value: float


def brute_force_hover(
    scenario: Scenario,
    limits: UavLimits,
    radio: RadioParams,
    grid: GridSpec = GridSpec(),
    x_chunk: int = 16,
) -> GridResult:
    """Best symmetric hover pair on a rectangular lattice.

    Evaluates min received power of the mirrored pair (equivalently half
    the sum at one hover point) at every lattice state over
    [0, spacing/2] x [h_min, h_max] x [theta_min, theta_max] and returns
    the first maximizer in (offset, altitude, beamwidth) order.
    Offsets are chunked to bound peak memory at fine resolutions.
    """
    xs = np.linspace(0.0, scenario.d / 2.0, grid.n_x)
    hs = np.linspace(limits.h_min, limits.h_max, grid.n_h)
    thetas = np.linspace(limits.theta_min, limits.theta_max, grid.n_theta)

    best_val = -math.inf
    best_idx: tuple[int, int, int] | None = None
    for start in range(0, grid.n_x, x_chunk):
        xb = xs[start : start + x_chunk]
        x3 = xb[:, None, None]
        h3 = hs[None, :, None]
        th3 = thetas[None, None, :]
        q1 = received_power_grid(x3, h3, th3, scenario.er1_x, radio)
        q2 = received_power_grid(x3, h3, th3, scenario.er2_x, radio)
        vals = 0.5 * (q1 + q2)
        flat = int(np.argmax(vals))
        val = float(vals.flat[flat])
        if val > best_val:
            i, j, k = np.unravel_index(flat, vals.shape)
            best_val = val
            best_idx = (start + int(i), int(j), int(k))
    assert best_idx is not None
    i, j, k = best_idx
    return GridResult(x=float(xs[i]), h=float(hs[j]), theta=float(thetas[k]), value=best_val)


def sample_scenario(
    rng: np.random.Generator,
    d_range: tuple[float, float] = (5.0, 50.0),
) -> tuple[Scenario, UavLimits]:
    """Draw a random well-posed scenario and matching platform limits.

    Covers spacings from a few meters to tens of meters with varied
    altitude bands and beam ranges while guaranteeing the coverage
    preconditions hold: the widest beam can span both receivers from the
    ceiling and the narrowest can reach one from the floor.  The lower
    beam limit is capped at 0.6 rad so the narrow-beam regime stays
    represented without degenerating into near-horizon beams.
    """
    d = float(rng.uniform(*d_range))
    t = float(rng.uniform(10.0, 200.0))
    h_min = float(rng.uniform(5.0, 15.0))
    h_max = h_min + float(rng.uniform(5.0, 30.0))
    v_max = float(rng.uniform(1.0, 10.0))
    theta_min_hi = min(0.6, math.atan2(d, h_min))
    theta_min = float(rng.uniform(0.15, theta_min_hi))
    theta_max_lo = max(theta_min, math.atan2(d, 2.0 * h_max))
    theta_max = float(rng.uniform(theta_max_lo, math.pi / 2.0))
    scenario = Scenario(d=d, t=t)
    limits = UavLimits(
        h_min=h_min, h_max=h_max, v_max=v_max, theta_min=theta_min, theta_max=theta_max
    )
    return scenario, limits
