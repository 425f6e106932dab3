"""Matplotlib rendering of sweep results and trajectories to image files.

Everything draws through the Agg backend so runs stay headless; callers
pass the in-memory sweep results rather than re-reading the CSVs.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .experiments import PointResult

__all__ = [
    "save_energy_vs_duration",
    "save_energy_vs_spacing",
    "save_hover_vs_spacing",
    "save_trajectory",
]

_SCHEME_STYLE = {
    "proposed": dict(color="tab:blue", marker="o", label="adaptive hover-fly-hover"),
    "upper_bound": dict(color="tab:gray", marker=".", linestyle="--", label="upper bound"),
    "omni": dict(color="tab:orange", marker="s", label="isotropic antenna"),
    "static": dict(color="tab:green", marker="^", label="static hover"),
}


def _finish(ax, xlabel: str, ylabel: str, path: Path) -> None:
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend()
    path.parent.mkdir(parents=True, exist_ok=True)
    ax.figure.tight_layout()
    ax.figure.savefig(path, dpi=150)
    plt.close(ax.figure)


def save_hover_vs_spacing(points: Sequence[PointResult], path: str | Path) -> Path:
    """Hover offset, altitude, and beamwidth against receiver spacing."""
    path = Path(path)
    ds = [pt.d for pt in points]
    fig, axes = plt.subplots(3, 1, sharex=True, figsize=(6.0, 7.0))
    axes[0].plot(ds, [pt.solution.x_bar for pt in points], "o-", color="tab:blue")
    axes[0].plot(ds, [pt.d / 2 for pt in points], ":", color="tab:gray", label="half spacing")
    axes[0].set_ylabel("hover offset (m)")
    axes[0].legend()
    axes[1].plot(ds, [pt.solution.h_bar for pt in points], "o-", color="tab:green")
    axes[1].set_ylabel("altitude (m)")
    axes[2].plot(ds, [pt.solution.theta_bar for pt in points], "o-", color="tab:red")
    axes[2].set_ylabel("half-beamwidth (rad)")
    axes[2].set_xlabel("receiver spacing (m)")
    for ax in axes:
        ax.grid(True, alpha=0.3)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_energy_vs_spacing(
    points: Sequence[PointResult], schemes: Sequence[str], path: str | Path
) -> Path:
    """Min received energy against receiver spacing, one line per scheme."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for scheme in schemes:
        ax.plot(
            [pt.d for pt in points],
            [pt.reports[scheme].common for pt in points],
            **_SCHEME_STYLE.get(scheme, {}),
        )
    _finish(ax, "receiver spacing (m)", "min received energy (J)", path)
    return path


def save_energy_vs_duration(
    points: Sequence[PointResult], schemes: Sequence[str], path: str | Path
) -> Path:
    """Normalized min received energy against charging period."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for scheme in schemes:
        ax.plot(
            [pt.t for pt in points],
            [pt.reports[scheme].normalized_common for pt in points],
            **_SCHEME_STYLE.get(scheme, {}),
        )
    _finish(ax, "charging period (s)", "min received energy / period (W)", path)
    return path


def save_trajectory(
    rows: Sequence[tuple[float, float, float, float]], path: str | Path
) -> Path:
    """Position and beamwidth timelines for one sampled trajectory."""
    path = Path(path)
    ts = [r[0] for r in rows]
    fig, axes = plt.subplots(2, 1, sharex=True, figsize=(6.0, 5.0))
    axes[0].plot(ts, [r[1] for r in rows], color="tab:blue")
    axes[0].set_ylabel("position (m)")
    axes[1].plot(ts, [r[3] for r in rows], color="tab:red")
    axes[1].set_ylabel("half-beamwidth (rad)")
    axes[1].set_xlabel("time (s)")
    for ax in axes:
        ax.grid(True, alpha=0.3)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
