"""Command-line front end.

Subcommands:

* ``solve``   – one scenario: print the hover solution and energy totals,
  write the point CSVs and a trajectory figure.
* ``sweep-d`` – sweep receiver spacing, write sweep CSVs and figures.
* ``sweep-t`` – sweep charging period at fixed spacing.
* ``verify``  – cross-check the solver against the exhaustive grid on
  random scenarios; nonzero exit if any gap falls below tolerance.

Precedence for every setting: command-line flag, then config file, then
the ``UAVWPT_OUT`` environment variable (default output directory only),
then built-in defaults.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .benchmarks import StaticInfeasible
from .experiments import (
    ALL_SCHEMES,
    RunConfig,
    config_from_pairs,
    format_number,
    parse_config_file,
    run_point,
    sample_trajectory,
    write_results_csv,
    write_solver_csv,
    write_trajectory_csv,
)
from .gridsearch import GridSpec, brute_force_hover, sample_scenario
from .hover import solve_hover
from .model import RegimeViolation
from .trajectory import DurationTooShort

__all__ = ["main"]

ORACLE_GAP_TOLERANCE = -0.005  # solver may trail the coarse grid by at most 0.5%

_FLAG_TO_KEY = {
    "D": "d",
    "T": "t",
    "beta0_db": "beta0_db",
    "p_dbm": "p_dbm",
    "g0": "g0",
    "h_min": "h_min",
    "h_max": "h_max",
    "v_max": "v_max",
    "theta_min": "theta_min",
    "theta_max": "theta_max",
    "d_start": "d_start",
    "d_stop": "d_stop",
    "d_step": "d_step",
    "t_start": "t_start",
    "t_stop": "t_stop",
    "t_step": "t_step",
    "dt": "dt",
    "traj_step": "traj_step",
    "schemes": "schemes",
    "out": "out_dir",
    "grid": "oracle_grid",
    "scenarios": "scenarios",
    "seed": "seed",
}


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="flat key = value config file")
    parser.add_argument("--out", metavar="DIR", help="output directory")
    parser.add_argument("--dt", type=float, metavar="SECONDS", help="flight quadrature step")
    parser.add_argument(
        "--schemes", metavar="LIST",
        help=f"comma-separated subset of {','.join(ALL_SCHEMES)}",
    )
    parser.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    parser.add_argument("--oracle", action="store_true",
                        help="cross-check each solved point against the grid search")
    group = parser.add_argument_group("scenario overrides")
    group.add_argument("--D", type=float, help="receiver spacing (m)")
    group.add_argument("--T", type=float, help="charging period (s)")
    group.add_argument("--beta0-db", type=float, help="reference channel gain (dB)")
    group.add_argument("--p-dbm", type=float, help="transmit power (dBm)")
    group.add_argument("--g0", type=float, help="boresight gain factor")
    group.add_argument("--h-min", type=float, help="minimum altitude (m)")
    group.add_argument("--h-max", type=float, help="maximum altitude (m)")
    group.add_argument("--v-max", type=float, help="maximum speed (m/s)")
    group.add_argument("--theta-min", type=float, help="minimum half-beamwidth (rad)")
    group.add_argument("--theta-max", type=float, help="maximum half-beamwidth (rad)")
    group.add_argument("--traj-step", type=float, help="trajectory CSV sampling step (s)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uavwpt",
        description="UAV hover placement and trajectory planning for two-receiver "
        "wireless power transfer",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one scenario and report energies")
    _add_common_flags(p_solve)

    p_sd = sub.add_parser("sweep-d", help="sweep receiver spacing")
    _add_common_flags(p_sd)
    p_sd.add_argument("--d-start", type=float, help="sweep start (m)")
    p_sd.add_argument("--d-stop", type=float, help="sweep stop (m)")
    p_sd.add_argument("--d-step", type=float, help="sweep step (m)")

    p_st = sub.add_parser("sweep-t", help="sweep charging period")
    _add_common_flags(p_st)
    p_st.add_argument("--t-start", type=float, help="sweep start (s)")
    p_st.add_argument("--t-stop", type=float, help="sweep stop (s)")
    p_st.add_argument("--t-step", type=float, help="sweep step (s)")

    p_ver = sub.add_parser("verify", help="compare solver against exhaustive grid search")
    _add_common_flags(p_ver)
    p_ver.add_argument("--scenarios", type=int, help="number of random scenarios")
    p_ver.add_argument("--grid", type=int, help="grid points per axis")
    p_ver.add_argument("--seed", type=int, help="random seed")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    base = RunConfig(out_dir=os.environ.get("UAVWPT_OUT", "out"))
    cfg = base
    if args.config:
        cfg = config_from_pairs(parse_config_file(args.config), cfg)
    pairs: dict[str, str] = {}
    for dest, key in _FLAG_TO_KEY.items():
        value = getattr(args, dest, None)
        if value is not None:
            pairs[key] = str(value)
    if args.no_figures:
        pairs["figures"] = "false"
    if args.oracle:
        pairs["oracle"] = "true"
    return config_from_pairs(pairs, cfg)


def _print_point(pt, cfg: RunConfig) -> None:
    sol = pt.solution
    print(
        f"hover solution: case={sol.case_tag.value} "
        f"x_bar={format_number(sol.x_bar)} m "
        f"h_bar={format_number(sol.h_bar)} m "
        f"theta_bar={format_number(sol.theta_bar)} rad "
        f"value={format_number(sol.value)} W"
    )
    for scheme in cfg.schemes:
        rep = pt.reports[scheme]
        print(
            f"{scheme}: E1={format_number(rep.e1)} J E2={format_number(rep.e2)} J "
            f"common={format_number(rep.common)} J "
            f"normalized={format_number(rep.normalized_common)} W"
        )
    if pt.oracle_gap is not None:
        print(f"grid-search gap: {pt.oracle_gap * 100.0:+.4f}%")


def _cmd_solve(cfg: RunConfig) -> int:
    out = Path(cfg.out_dir)
    pt = run_point(cfg)
    _print_point(pt, cfg)
    write_results_csv(out / "results.csv", [pt], cfg.schemes)
    write_solver_csv(out / "solver.csv", [pt])
    rows = sample_trajectory(cfg, pt)
    write_trajectory_csv(out / "trajectory.csv", rows)
    if cfg.figures:
        from .figures import save_trajectory

        save_trajectory(rows, out / "trajectory.png")
    print(f"wrote {out / 'results.csv'}, {out / 'solver.csv'}, {out / 'trajectory.csv'}")
    return 0


def _cmd_sweep_d(cfg: RunConfig) -> int:
    out = Path(cfg.out_dir)
    points = [run_point(cfg, d=d, t=cfg.t) for d in cfg.d_sweep.values()]
    write_results_csv(out / "results.csv", points, cfg.schemes)
    write_solver_csv(out / "solver.csv", points)
    if cfg.figures:
        from .figures import save_energy_vs_spacing, save_hover_vs_spacing

        save_hover_vs_spacing(points, out / "hover_vs_spacing.png")
        save_energy_vs_spacing(points, cfg.schemes, out / "energy_vs_spacing.png")
    for pt in points:
        if pt.oracle_gap is not None and pt.oracle_gap < ORACLE_GAP_TOLERANCE:
            print(f"D={pt.d}: solver below grid search by {-pt.oracle_gap*100:.3f}%",
                  file=sys.stderr)
            return 1
    print(f"wrote {out / 'results.csv'} and {out / 'solver.csv'} "
          f"({len(points)} spacing values)")
    return 0


def _cmd_sweep_t(cfg: RunConfig) -> int:
    out = Path(cfg.out_dir)
    points = [run_point(cfg, d=cfg.d, t=t) for t in cfg.t_sweep.values()]
    write_results_csv(out / "results.csv", points, cfg.schemes)
    write_solver_csv(out / "solver.csv", points[:1])
    if cfg.figures:
        from .figures import save_energy_vs_duration

        save_energy_vs_duration(points, cfg.schemes, out / "energy_vs_duration.png")
    print(f"wrote {out / 'results.csv'} and {out / 'solver.csv'} "
          f"({len(points)} period values)")
    return 0


def _cmd_verify(cfg: RunConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    n = cfg.oracle_grid
    worst = 0.0
    failed = 0
    for i in range(cfg.scenarios):
        scenario, limits = sample_scenario(rng)
        radio = cfg.radio()
        sol = solve_hover(scenario, limits, radio)
        ref = brute_force_hover(scenario, limits, radio, GridSpec(n, n, n))
        gap = (sol.value - ref.value) / ref.value if ref.value > 0 else 0.0
        worst = min(worst, gap)
        status = "ok" if gap >= ORACLE_GAP_TOLERANCE else "FAIL"
        if status == "FAIL":
            failed += 1
        print(
            f"scenario {i + 1:2d}: D={scenario.d:7.3f} m "
            f"solver={format_number(sol.value)} W grid={format_number(ref.value)} W "
            f"gap={gap * 100.0:+8.4f}% {status}"
        )
    print(f"worst gap {worst * 100.0:+.4f}% over {cfg.scenarios} scenarios "
          f"({n}^3 grid); tolerance {ORACLE_GAP_TOLERANCE * 100.0:.1f}%")
    return 1 if failed else 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "solve":
            return _cmd_solve(cfg)
        if args.command == "sweep-d":
            return _cmd_sweep_d(cfg)
        if args.command == "sweep-t":
            return _cmd_sweep_t(cfg)
        if args.command == "verify":
            return _cmd_verify(cfg)
    except (RegimeViolation, DurationTooShort, StaticInfeasible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled command {args.command}")  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
