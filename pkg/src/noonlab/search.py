"""Deterministic 1-D minimization: uniform grid scan, then golden-section refinement."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5) - 1) / 2


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-8) -> tuple[float, float]:
    """Minimize a unimodal f on [a, b]; returns (x, f(x)) with the bracket narrowed below tol."""
    a, b = min(a, b), max(a, b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def scan_then_refine(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    step: float,
    tol: float | None = None,
    map_fn=map,
) -> tuple[float, float]:
    """Minimize f over [lo, hi].

    Points where f is not finite count as outside the domain. The grid has
    spacing <= step and includes both ends; the golden-section pass searches
    the two cells around the best grid point and is kept only if it improves
    on the grid value.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
        raise ValueError(f"invalid search range [{lo}, {hi}]")
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    if tol is None:
        tol = step * 1e-4
    if hi == lo:
        grid = np.array([lo])
    else:
        grid = np.linspace(lo, hi, int(math.ceil((hi - lo) / step)) + 1)
    values = np.array(list(map_fn(f, grid)), dtype=float)
    finite = np.isfinite(values)
    if not finite.any():
        raise ValueError(f"objective has no valid point in [{lo}, {hi}]")
    masked = np.where(finite, values, np.inf)
    i = int(np.argmin(masked))
    best_x, best_v = float(grid[i]), float(values[i])
    if len(grid) == 1:
        return best_x, best_v
    left = grid[max(i - 1, 0)]
    right = grid[min(i + 1, len(grid) - 1)]

    def guarded(x):
        v = f(x)
        return v if math.isfinite(v) else math.inf

    x, v = golden_section(guarded, float(left), float(right), tol)
    if v < best_v:
        return float(x), float(v)
    return best_x, best_v
