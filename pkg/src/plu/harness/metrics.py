"""Scan-line counts of decision-boundary crossings on a probability grid."""

import numpy as np


def sign_changes(line) -> int:
    """Number of flips of ``p >= 0.5`` between neighbouring entries."""
    side = np.asarray(line) >= 0.5
    return int(np.count_nonzero(side[1:] != side[:-1]))


def central_row_changes(grid) -> int:
    grid = np.asarray(grid)
    return sign_changes(grid[grid.shape[0] // 2])


def central_col_changes(grid) -> int:
    grid = np.asarray(grid)
    return sign_changes(grid[:, grid.shape[1] // 2])


def scan_complexity(grid) -> int:
    """Crossings along the central row plus the central column."""
    return central_row_changes(grid) + central_col_changes(grid)


def max_row_changes(grid) -> int:
    return max(sign_changes(row) for row in np.asarray(grid))
