"""Probability-grid files: ``<base>.csv`` (x,y,p) and ``<base>.pgm`` (plain P2)."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..data import grid_points
from ..network import Mlp, predict_proba


def probability_grid(m: Mlp, bounds, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(points, probs)``; ``probs`` has shape (resolution, resolution), top row first."""
    x_min, x_max, y_min, y_max = bounds
    pts = grid_points(x_min, x_max, y_min, y_max, resolution)
    return pts, predict_proba(m, pts).reshape(resolution, resolution)


def write_grid_csv(path, points, probs) -> None:
    lines = ["x,y,p"]
    lines.extend(f"{x:.17g},{y:.17g},{p:.17g}" for (x, y), p in zip(points, np.ravel(probs)))
    Path(path).write_text("\n".join(lines) + "\n")


def to_gray(probs) -> np.ndarray:
    return np.rint(255.0 * np.asarray(probs)).astype(int)


def write_pgm(path, probs) -> None:
    gray = to_gray(probs)
    h, w = gray.shape
    rows = [" ".join(str(v) for v in row) for row in gray]
    Path(path).write_text(f"P2\n{w} {h}\n255\n" + "\n".join(rows) + "\n")


def read_pgm(path) -> np.ndarray:
    tokens = Path(path).read_text().split()
    if tokens[0] != "P2":
        raise ValueError(f"{path}: not a plain PGM")
    w, h = int(tokens[1]), int(tokens[2])
    return np.array([int(t) for t in tokens[4:4 + w * h]]).reshape(h, w)


def export_grid(m: Mlp, bounds, resolution: int, out_base) -> np.ndarray:
    """Write both grid files for ``m`` and return the probability grid."""
    out_base = Path(out_base)
    out_base.parent.mkdir(parents=True, exist_ok=True)
    pts, probs = probability_grid(m, bounds, resolution)
    write_grid_csv(out_base.with_name(out_base.name + ".csv"), pts, probs)
    write_pgm(out_base.with_name(out_base.name + ".pgm"), probs)
    return probs
