"""Two-arm spiral dataset and evaluation grids."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .numerics import Rng


@dataclass(frozen=True)
class SpiralParams:
    n_per_class: int = 200
    turns: float = 1.75
    r_max: float = 1.0
    noise_sigma: float = 0.05
    seed: int = 0


@dataclass
class SpiralDataset:
    points: np.ndarray  # (2n, 2)
    labels: np.ndarray  # (2n,), 0.0 / 1.0
    params: SpiralParams


def make_spiral(n_per_class: int = 200, turns: float = 1.75, r_max: float = 1.0,
                noise_sigma: float = 0.05, seed: int = 0) -> SpiralDataset:
    """Arm ``c`` at index ``i``: radius ``r_max*t``, angle ``2*pi*turns*t + c*pi``,
    with ``t = i/(n-1)``, plus Normal(0, noise_sigma^2) jitter per coordinate.

    Arm 0 fills rows ``0..n-1``, arm 1 rows ``n..2n-1``. Noise is drawn from the
    ``data`` stream of ``seed``, x then y per point, arm 0 first.
    """
    if int(n_per_class) != n_per_class or n_per_class < 2:
        raise ValueError(f"n_per_class must be an integer >= 2, got {n_per_class}")
    if not (noise_sigma >= 0 and math.isfinite(noise_sigma)):
        raise ValueError(f"noise_sigma must be finite and >= 0, got {noise_sigma}")
    if not (r_max > 0 and math.isfinite(r_max) and math.isfinite(turns)):
        raise ValueError("r_max must be positive and turns finite")
    n = int(n_per_class)
    params = SpiralParams(n, float(turns), float(r_max), float(noise_sigma), int(seed))
    t = np.arange(n) / (n - 1)
    r = r_max * t
    pts = []
    for c in (0, 1):
        theta = 2.0 * math.pi * turns * t + c * math.pi
        pts.append(np.column_stack([r * np.cos(theta), r * np.sin(theta)]))
    points = np.vstack(pts)
    if noise_sigma > 0:
        rng = Rng(seed).derive("data")
        points = points + rng.normal(2 * 2 * n, noise_sigma).reshape(2 * n, 2)
    labels = np.repeat([0.0, 1.0], n)
    return SpiralDataset(points, labels, params)


def grid_points(x_min: float, x_max: float, y_min: float, y_max: float, resolution: int) -> np.ndarray:
    """Row-major ``resolution**2`` points; rows run top (y_max) to bottom."""
    if not (x_min < x_max and y_min < y_max):
        raise ValueError("grid bounds must satisfy min < max")
    if int(resolution) != resolution or resolution < 2:
        raise ValueError(f"resolution must be an integer >= 2, got {resolution}")
    xs = np.linspace(x_min, x_max, resolution)
    ys = np.linspace(y_max, y_min, resolution)
    gx, gy = np.meshgrid(xs, ys)
    return np.column_stack([gx.ravel(), gy.ravel()])


def save_csv(ds: SpiralDataset, path) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["x", "y", "label"])
        for (x, y), lab in zip(ds.points, ds.labels):
            w.writerow([f"{x:.17g}", f"{y:.17g}", int(lab)])


def load_csv(path, params: SpiralParams | None = None) -> SpiralDataset:
    rows = list(csv.DictReader(Path(path).open(newline="")))
    if not rows or set(rows[0]) != {"x", "y", "label"}:
        raise ValueError(f"{path}: expected header x,y,label")
    points = np.array([[float(r["x"]), float(r["y"])] for r in rows])
    labels = np.array([float(int(r["label"])) for r in rows])
    if params is None:
        params = SpiralParams(n_per_class=len(rows) // 2)
    return SpiralDataset(points, labels, params)
