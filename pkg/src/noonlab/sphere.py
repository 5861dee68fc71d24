"""Husimi Q function of N-photon states on the spin-N/2 sphere.

Coherent states are taken in the state's own basis:

    |theta, phi> = sum_n sqrt(C(N, n)) cos(theta/2)^(N-n) sin(theta/2)^n e^(i n phi) |N-n; n>

so theta = 0 is the pole where the diagonal J component equals +N/2
(J1 for input-mode states, J3 for path-mode states).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.stats import binom

from .states import Basis, TwoModeState


@dataclass(frozen=True)
class SphereGrid:
    """Q values on theta in [0, pi] (inclusive) x phi in [0, 2 pi) (uniform), row-major by theta."""

    n_total: int
    basis: Basis
    theta: np.ndarray
    phi: np.ndarray
    values: np.ndarray

    @property
    def theta_count(self) -> int:
        return len(self.theta)

    @property
    def phi_count(self) -> int:
        return len(self.phi)

    def integral(self) -> float:
        """Trapezoid in theta with sin(theta) weight, rectangle rule in phi."""
        per_theta = self.values.sum(axis=1) * (2 * math.pi / self.phi_count)
        return float(np.trapezoid(per_theta * np.sin(self.theta), self.theta))


def _coherent_weights(n: int, theta: np.ndarray) -> np.ndarray:
    """sqrt(C(N,k)) cos^(N-k) sin^k for each theta (rows) and k (columns)."""
    k = np.arange(n + 1)
    p = np.sin(np.asarray(theta, dtype=float)[:, None] / 2) ** 2
    return np.sqrt(binom.pmf(k[None, :], n, p))


def su2_coherent_overlap(state: TwoModeState, theta: float, phi: float) -> complex:
    """<theta, phi | psi> in the state's tagged basis."""
    n = state.n_total
    w = _coherent_weights(n, np.array([theta]))[0]
    phases = np.exp(-1j * np.arange(n + 1) * phi)
    return complex(np.sum(w * phases * state.amplitudes))


def grid_axes(theta_count: int, phi_count: int) -> tuple[np.ndarray, np.ndarray]:
    if theta_count < 2 or phi_count < 2:
        raise ValueError(f"grid needs at least 2x2 points, got {theta_count}x{phi_count}")
    theta = np.linspace(0.0, math.pi, theta_count)
    phi = np.arange(phi_count) * (2 * math.pi / phi_count)
    return theta, phi


def husimi_grid(state: TwoModeState, theta_count: int = 181, phi_count: int = 361) -> SphereGrid:
    """Q(theta, phi) = (N+1)/(4 pi) |<theta, phi|psi>|^2 on an equirectangular grid."""
    n = state.n_total
    theta, phi = grid_axes(theta_count, phi_count)
    weights = _coherent_weights(n, theta) * state.amplitudes[None, :]
    phases = np.exp(-1j * np.outer(np.arange(n + 1), phi))
    overlap = weights @ phases
    q = (n + 1) / (4 * math.pi) * np.abs(overlap) ** 2
    q.setflags(write=False)
    return SphereGrid(n, state.basis, theta, phi, q)


def _ramp(t: np.ndarray) -> np.ndarray:
    # black -> red -> yellow -> white
    r = np.clip(3 * t, 0, 1)
    g = np.clip(3 * t - 1, 0, 1)
    b = np.clip(3 * t - 2, 0, 1)
    return np.stack([r, g, b], axis=-1)


def heatmap_bytes(grid: SphereGrid) -> bytes:
    """Binary P6 pixmap, width = phi_count, height = theta_count, theta = 0 on top."""
    vals = np.asarray(grid.values, dtype=float)
    top = vals.max()
    t = vals / top if top > 0 else np.zeros_like(vals)
    pixels = np.rint(_ramp(t) * 255).astype(np.uint8)
    header = f"P6\n{grid.phi_count} {grid.theta_count}\n255\n".encode("ascii")
    return header + pixels.tobytes()


def render_heatmap(grid: SphereGrid, path) -> Path:
    path = Path(path)
    path.write_bytes(heatmap_bytes(grid))
    return path


def grid_csv_lines(grid: SphereGrid):
    yield "theta,phi,q"
    for i, th in enumerate(grid.theta):
        row = grid.values[i]
        for j, ph in enumerate(grid.phi):
            yield f"{th:.17g},{ph:.17g},{row[j]:.17g}"


def write_grid_csv(grid: SphereGrid, path) -> Path:
    path = Path(path)
    with open(path, "w", newline="\n") as fh:
        for line in grid_csv_lines(grid):
            fh.write(line + "\n")
    return path
