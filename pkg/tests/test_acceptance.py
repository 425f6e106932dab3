"""End-to-end acceptance checks, one test per shipping criterion.

Each test prints a single ``criterion N: PASS/FAIL`` line with its
measured numbers and asserts the stated tolerance, so the verbose test
listing doubles as the acceptance report.  Criterion 3's final clause
(at least 99% of the upper bound by a 200 s period at 30 m spacing) is
known to fall short at 98.57% with this model and platform envelope; the
test states the measured ratio and fails rather than masking it (see
the decision ledger next to this repository for the analysis).
"""

import math
import time

import numpy as np
import pytest

from uavwpt import (
    Scenario,
    build_trajectory,
    default_limits,
    default_radio,
    integrate_energy,
    solve_hover,
    upper_bound_energy,
)
from uavwpt.energy import hover_energy
from uavwpt.experiments import RunConfig, run_point
from uavwpt.gridsearch import GridSpec, brute_force_hover, sample_scenario
from uavwpt.hover import (
    CaseTag,
    EmptyInterval,
    offset_bounds,
    theta_search_range,
    tight_cover_power,
    tight_cover_power_dx,
)
from uavwpt.trajectory import DurationTooShort, SegmentKind, trajectory_table

LIMITS = default_limits()
RADIO = default_radio()


def _report(n: int, ok: bool, detail: str) -> None:
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")


def test_criterion_1_spacing_sweep_structure():
    # sweeping the spacing from 2 m to 30 m must walk through the three
    # solution families in order: midpoint hover with slack, midpoint
    # hover with the beam edges tight on both receivers, then a
    # single-receiver corner hover; the family switches sit at 12 m and
    # 15 m, each allowed to shift by one metre
    t0 = time.perf_counter()
    tags = []
    for d in range(2, 31):
        sol = solve_hover(Scenario(d=float(d), t=20.0), LIMITS, RADIO)
        tags.append((d, sol.case_tag))
    elapsed = time.perf_counter() - t0

    order = [CaseTag.DUAL_ER_SLACK, CaseTag.DUAL_ER_EQUALITY, CaseTag.SINGLE_ER]
    ranks = [order.index(tag) for _, tag in tags]
    monotone = all(a <= b for a, b in zip(ranks, ranks[1:]))
    first_tight = next(d for d, tag in tags if tag is not CaseTag.DUAL_ER_SLACK)
    first_single = next(d for d, tag in tags if tag is CaseTag.SINGLE_ER)
    ok = (
        monotone
        and 11 <= first_tight <= 13
        and 14 <= first_single <= 16
        and elapsed < 10.0
    )
    detail = (
        f"families in order={monotone}, tight from {first_tight} m, "
        f"corner from {first_single} m, {elapsed:.2f} s < 10 s"
    )
    _report(1, ok, detail)
    assert monotone, f"solution families out of order: {tags}"
    assert 11 <= first_tight <= 13, detail
    assert 14 <= first_single <= 16, detail
    assert elapsed < 10.0, detail


def test_criterion_2_benchmarks_bracket_the_design():
    # close spacings: the plan, the static hover and the relaxed upper
    # bound agree within 1%; wide spacings: the plan strictly beats both
    # baselines
    t0 = time.perf_counter()
    cfg = RunConfig(figures=False)
    worst_close = 0.0
    dominance_ok = True
    for d in range(2, 31):
        pt = run_point(cfg, d=float(d), t=20.0)
        proposed = pt.reports["proposed"].common
        static = pt.reports["static"].common
        omni = pt.reports["omni"].common
        upper = pt.reports["upper_bound"].common
        if d <= 12:
            worst_close = max(
                worst_close,
                abs(proposed - static) / upper,
                abs(proposed - upper) / upper,
            )
        if d >= 15:
            dominance_ok = dominance_ok and proposed > static and proposed > omni
    elapsed = time.perf_counter() - t0

    ok = worst_close < 0.01 and dominance_ok and elapsed < 30.0
    detail = (
        f"close-spacing spread {worst_close * 100:.3f}% < 1%, "
        f"strict dominance from 15 m={dominance_ok}, {elapsed:.2f} s < 30 s"
    )
    _report(2, ok, detail)
    assert worst_close < 0.01, detail
    assert dominance_ok, detail
    assert elapsed < 30.0, detail


def test_criterion_3_longer_periods_close_on_the_bound():
    # at 30 m spacing the delivered energy must grow with the period and
    # beat both baselines at every period; the final clause asks for 99%
    # of the relaxed bound by 200 s, which this design measurably misses
    # (the flight transient costs a fixed energy deficit, so the ratio
    # reaches 99% only near a 287 s period) -- recorded, not hidden
    t0 = time.perf_counter()
    cfg = RunConfig(figures=False)
    periods = [10.0, 20.0, 50.0, 100.0, 200.0]
    commons, uppers, statics, omnis = [], [], [], []
    for t in periods:
        pt = run_point(cfg, d=30.0, t=t)
        commons.append(pt.reports["proposed"].common)
        uppers.append(pt.reports["upper_bound"].common)
        statics.append(pt.reports["static"].common)
        omnis.append(pt.reports["omni"].common)
    elapsed = time.perf_counter() - t0

    nondecreasing = all(b >= a * (1.0 - 1e-12) for a, b in zip(commons, commons[1:]))
    beats = all(c > s and c > o for c, s, o in zip(commons, statics, omnis))
    ratio = commons[-1] / uppers[-1]
    ok = nondecreasing and beats and ratio >= 0.99 and elapsed < 30.0
    detail = (
        f"nondecreasing={nondecreasing}, beats both baselines={beats}, "
        f"final ratio {ratio:.4f} vs 0.99, {elapsed:.2f} s < 30 s"
    )
    _report(3, ok, detail)
    assert nondecreasing, detail
    assert beats, detail
    assert elapsed < 30.0, detail
    assert ratio >= 0.99, (
        f"delivered/upper-bound ratio at a 200 s period is {ratio:.6f} < 0.99; "
        "the hover-fly-hover transient costs a period-independent deficit, so "
        "this clause is unattainable under the default envelope (see the "
        "decision ledger)"
    )


def test_criterion_4_solver_never_trails_the_grid():
    # on 10 random well-posed scenarios the analytic solver must come
    # within 0.5% of an 80^3 exhaustive lattice (it should in fact win)
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240901)
    worst = math.inf
    for _ in range(10):
        sc, lim = sample_scenario(rng)
        sol = solve_hover(sc, lim, RADIO)
        ref = brute_force_hover(sc, lim, RADIO, GridSpec(80, 80, 80))
        gap = (sol.value - ref.value) / ref.value if ref.value > 0 else 0.0
        worst = min(worst, gap)
    elapsed = time.perf_counter() - t0

    ok = worst >= -0.005 and elapsed < 60.0
    detail = f"worst gap {worst * 100:+.4f}% >= -0.5%, {elapsed:.2f} s < 60 s"
    _report(4, ok, detail)
    assert worst >= -0.005, detail
    assert elapsed < 60.0, detail


def test_criterion_5_analytic_derivative_matches_finite_differences():
    # the closed-form offset derivative of the tight-coverage power must
    # agree with a central difference to 1e-6 relative at 100 interior
    # points on each of 10 random scenarios
    rng = np.random.default_rng(424242)
    worst = 0.0
    scen_count = 0
    while scen_count < 10:
        sc, lim = sample_scenario(rng)
        try:
            rg = theta_search_range(sc, lim)
        except EmptyInterval:
            continue
        scen_count += 1
        for _ in range(100):
            theta = rng.uniform(rg.lo, rg.hi)
            try:
                x_lo, x_hi = offset_bounds(theta, sc, lim)
            except EmptyInterval:
                continue
            if x_hi <= x_lo:
                continue
            span = x_hi - x_lo
            x = rng.uniform(x_lo + 0.05 * span, x_hi - 0.05 * span)
            ana = float(tight_cover_power_dx(x, theta, sc, RADIO))
            step = 3e-6 * max(1.0, abs(x))
            fd = (
                float(tight_cover_power(x + step, theta, sc, RADIO))
                - float(tight_cover_power(x - step, theta, sc, RADIO))
            ) / (2.0 * step)
            rel = abs(ana - fd) / max(abs(ana), abs(fd), 1e-300)
            worst = max(worst, rel)

    ok = worst < 1e-6
    detail = f"worst relative mismatch {worst:.3e} < 1e-6"
    _report(5, ok, detail)
    assert worst < 1e-6, detail


def test_criterion_6_narrow_beams_push_toward_the_midpoint():
    # whenever the beam half-width is at most pi/4 the tight-coverage
    # power strictly decreases in the hover offset, checked on 200 draws
    rng = np.random.default_rng(99)
    checked = 0
    max_deriv = -math.inf
    while checked < 200:
        sc, lim = sample_scenario(rng)
        try:
            rg = theta_search_range(sc, lim)
        except EmptyInterval:
            continue
        hi = min(rg.hi, math.pi / 4.0)
        if hi <= rg.lo:
            continue
        theta = rng.uniform(rg.lo, hi)
        try:
            x_lo, x_hi = offset_bounds(theta, sc, lim)
        except EmptyInterval:
            continue
        if x_hi <= x_lo:
            continue
        x = rng.uniform(x_lo, x_hi)
        max_deriv = max(max_deriv, float(tight_cover_power_dx(x, theta, sc, RADIO)))
        checked += 1

    ok = max_deriv < 0.0
    detail = f"largest offset derivative {max_deriv:.3e} < 0 over 200 draws"
    _report(6, ok, detail)
    assert max_deriv < 0.0, detail


def test_criterion_7_quadrature_stable_under_dt_halving():
    # on five corner-hover scenarios with real flight legs, halving the
    # 1 ms quadrature step moves the flight energy by less than 1e-4
    worst = 0.0
    for d in (16.0, 20.0, 24.0, 27.0, 30.0):
        sc = Scenario(d=d, t=20.0)
        sol = solve_hover(sc, LIMITS, RADIO)
        traj = build_trajectory(sol, sc, LIMITS)
        assert any(seg.kind is SegmentKind.FLY for seg in traj.segments)
        hover_part = sum(
            hover_energy(seg, sc, RADIO)[0]
            for seg in traj.segments
            if seg.kind is SegmentKind.HOVER
        )
        fly_coarse = integrate_energy(traj, sc, LIMITS, RADIO, dt=1e-3).e1 - hover_part
        fly_fine = integrate_energy(traj, sc, LIMITS, RADIO, dt=5e-4).e1 - hover_part
        worst = max(worst, abs(fly_coarse - fly_fine) / abs(fly_fine))

    ok = worst < 1e-4
    detail = f"worst flight-energy shift {worst:.3e} < 1e-4 over 5 scenarios"
    _report(7, ok, detail)
    assert worst < 1e-4, detail


def test_criterion_8_randomized_plan_invariants():
    # 50 random feasible scenarios end to end: both receivers collect the
    # same energy to 1e-6, every sampled state respects the platform
    # envelope, position never moves faster than the speed limit, and the
    # relaxed bound dominates the delivered energy
    rng = np.random.default_rng(20240901)
    checked = 0
    attempts = 0
    worst_split = 0.0
    while checked < 50:
        attempts += 1
        assert attempts < 400, "scenario sampling unexpectedly starved"
        sc, lim = sample_scenario(rng)
        sol = solve_hover(sc, lim, RADIO)
        try:
            traj = build_trajectory(sol, sc, lim)
        except DurationTooShort:
            continue  # period too short to reach the hover offset; redraw
        rep = integrate_energy(traj, sc, lim, RADIO)

        split = abs(rep.e1 - rep.e2) / max(rep.e1, rep.e2, 1e-300)
        worst_split = max(worst_split, split)
        assert split < 1e-6, f"receiver energies diverge by {split:.3e}"

        rows = trajectory_table(traj, sc, lim, RADIO, sc.t / 100.0)
        half = sc.d / 2.0
        for t, x, h, theta in rows:
            assert -half - 1e-9 <= x <= half + 1e-9
            assert lim.h_min * (1.0 - 1e-9) <= h <= lim.h_max * (1.0 + 1e-9)
            assert lim.theta_min * (1.0 - 1e-9) <= theta <= lim.theta_max * (1.0 + 1e-9)
        for (t_a, x_a, _, _), (t_b, x_b, _, _) in zip(rows, rows[1:]):
            assert abs(x_b - x_a) <= lim.v_max * (t_b - t_a) * (1.0 + 1e-9) + 1e-12

        upper = upper_bound_energy(sol, sc)
        assert rep.common <= upper * (1.0 + 1e-12)
        checked += 1

    ok = True
    detail = (
        f"50 scenarios ({attempts} draws): worst energy split {worst_split:.3e} "
        f"< 1e-6, states in envelope, speed bounded, bound dominates"
    )
    _report(8, ok, detail)
