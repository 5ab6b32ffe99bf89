"""Figures written next to the CSV/JSON reports.

Everything renders through the Agg backend.  SVG output is made
reproducible by fixing the hash salt and dropping the date stamp.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .fractal import BoxCount, IntervalUnion, PointCloud  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 10,
    "axes.titlesize": 11,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "svg.hashsalt": "traintrack",
    "svg.fonttype": "none",
}


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    metadata = {"Date": None} if path.suffix == ".svg" else None
    if path.suffix == ".png":
        metadata = {"Software": None}
    fig.savefig(path, metadata=metadata, bbox_inches=None)
    plt.close(fig)
    return path


def plot_point_cloud(cloud: PointCloud, path: str | Path, size: float = 4.0) -> Path:
    """Scatter of a planar cloud with a viewport fixed by its bounding box."""
    with matplotlib.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(size, size))
        pts = cloud.points
        if pts.shape[1] == 1:
            pts = np.hstack([pts, np.zeros_like(pts)])
        x, y = pts[:, 0], pts[:, 1]
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        pad = 0.05 * float(max(hi - lo)) or 1.0
        ax.scatter(x, y, s=1.5, c=range(len(pts)), cmap="viridis", linewidths=0)
        ax.set_xlim(lo[0] - pad, hi[0] + pad)
        ax.set_ylim(lo[1] - pad, hi[1] + pad)
        ax.set_aspect("equal")
        ax.set_title(f"{cloud.letter}, depth {cloud.depth} ({len(cloud)} points)")
        return _save(fig, path)


def plot_survivors(unions: Sequence[IntervalUnion], path: str | Path) -> Path:
    """One row of intervals per depth, depth 0 at the top."""
    with matplotlib.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6, 0.25 * len(unions) + 1))
        for n, union in enumerate(unions):
            ax.broken_barh([(lo, hi - lo) for lo, hi in union], (n - 0.35, 0.7), color="k")
        ax.set_xlim(0, 1)
        ax.set_ylim(len(unions) - 0.5, -0.5)
        ax.set_xlabel("x")
        ax.set_ylabel("n")
        ax.set_title("T^n([0, 1])")
        return _save(fig, path)


def plot_box_counting(result: BoxCount, path: str | Path, label: str = "") -> Path:
    with matplotlib.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4, 3))
        xs = [math.log(1 / e) for e in result.scales]
        ys = [math.log(c) for c in result.counts]
        ax.plot(xs, ys, "o", ms=4)
        ax.plot(xs, [result.dimension * x + result.intercept for x in xs], "-",
                label=f"slope {result.dimension:.3f}")
        ax.set_xlabel("log(1/eps)")
        ax.set_ylabel("log N(eps)")
        if label:
            ax.set_title(label)
        ax.legend(frameon=False)
        fig.tight_layout()
        return _save(fig, path)
