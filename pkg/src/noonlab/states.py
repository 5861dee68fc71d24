"""N-photon two-mode states over the Fock basis |N-n; n>.

Two independent constructions of the interference state |eta> live here:
``build_eta_state`` runs the three-term recursion of the operator relation
a^dag b |eta> = eta (a^dag a / N) b^dag a |eta>, while
``build_projection_state`` projects the product of a coherent state and a
downconverted (squeezed vacuum) state onto the N-photon sector. Each serves
as an oracle for the other.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-12


class Basis(str, enum.Enum):
    """Which two modes the Fock labels refer to.

    INPUT: modes a, b in front of the first beam splitter (J1 diagonal).
    PATH: the two interferometer arms (J3 diagonal).
    """

    INPUT = "input"
    PATH = "path"


def check_sector(n: int) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise ValueError(f"photon number must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise ValueError(f"photon number must be >= 1, got {n}")
    return n


@dataclass(frozen=True)
class TwoModeState:
    """Normalized amplitudes c_n over |N-n; n>, n = photons in the second slot."""

    n_total: int
    basis: Basis
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = check_sector(self.n_total)
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (n + 1,):
            raise ValueError(f"expected {n + 1} amplitudes, got shape {amps.shape}")
        norm = np.linalg.norm(amps)
        if not np.isfinite(norm) or abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm={norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "n_total", n)
        object.__setattr__(self, "basis", Basis(self.basis))
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.n_total + 1

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def from_amplitudes(n: int, amplitudes, basis: Basis = Basis.INPUT) -> TwoModeState:
    """Normalize raw amplitudes and wrap them; no phase convention applied."""
    amps = np.asarray(amplitudes, dtype=complex)
    norm = np.linalg.norm(amps)
    if norm == 0 or not np.isfinite(norm):
        raise ValueError("cannot normalize a zero or non-finite amplitude vector")
    return TwoModeState(n, basis, amps / norm)


def fock_state(n: int, photons_second: int, basis: Basis = Basis.INPUT) -> TwoModeState:
    """|N - k; k> in the given basis."""
    n = check_sector(n)
    if not 0 <= photons_second <= n:
        raise ValueError(f"photon count {photons_second} outside 0..{n}")
    amps = np.zeros(n + 1, dtype=complex)
    amps[photons_second] = 1.0
    return TwoModeState(n, basis, amps)


def fix_global_phase(amplitudes: np.ndarray) -> np.ndarray:
    """Rotate so the largest-magnitude amplitude is positive real (first one on ties)."""
    amps = np.asarray(amplitudes, dtype=complex)
    k = int(np.argmax(np.abs(amps)))
    if amps[k] == 0:
        return amps
    return amps * (abs(amps[k]) / amps[k])


@dataclass(frozen=True)
class SourceParams:
    """Coherent amplitude alpha and downconversion pair amplitude gamma."""

    alpha: float
    gamma: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise ValueError(f"alpha must be a finite real >= 0, got {self.alpha!r}")
        if not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise ValueError(f"gamma must be a finite real >= 0, got {self.gamma!r}")

    def eta(self, n: int) -> float:
        n = check_sector(n)
        if self.alpha == 0:
            return math.inf if self.gamma > 0 else math.nan
        return n * self.gamma / self.alpha**2

    @classmethod
    def from_eta(cls, n: int, eta: float, alpha: float = 1.0) -> SourceParams:
        return cls(alpha=alpha, gamma=eta * alpha**2 / check_sector(n))


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not math.isfinite(eta) or eta < 0:
        raise ValueError(f"eta must be a finite real >= 0, got {eta!r}")
    return eta


def build_eta_state(n: int, eta: float) -> TwoModeState:
    """The N-photon interference state |eta> in the input-mode basis.

    Solves sqrt(m+1) sqrt(N-m) c_{m+1} = eta (N-m)/N sqrt(N-m+1) sqrt(m) c_{m-1}
    upward from c_0 = 1, c_1 = 0. Only even photon numbers in mode b appear.
    The active amplitudes are rescaled by their running maximum whenever the
    newest one grows past 1e100, so large eta*N stays finite in double
    precision; decaying tails simply underflow.
    """
    n = check_sector(n)
    eta = _check_eta(eta)
    c = np.zeros(n + 1)
    c[0] = 1.0
    for m in range(1, n):
        ratio = eta * (n - m) / n * math.sqrt((n - m + 1) * m / ((m + 1) * (n - m)))
        c[m + 1] = ratio * c[m - 1]
        if c[m + 1] > 1e100:
            c[: m + 2] /= c[: m + 2].max()
    c /= np.linalg.norm(c)
    return TwoModeState(n, Basis.INPUT, c.astype(complex))


def build_projection_state(n: int, params: SourceParams) -> TwoModeState:
    """N-photon component of |alpha>_a (x) |gamma>_b, input-mode basis.

    The coherent factor is alpha^k / sqrt(k!). The downconverted factor over
    |2m> follows from b|gamma> = -gamma b^dag |gamma>:
    d_{m+1} = -gamma sqrt(2m+1)/sqrt(2m+2) d_m, d_0 = 1.
    Evaluated in log-magnitude form with explicit signs.

    With this sign for gamma the result equals ``build_eta_state`` with the
    pair amplitudes c_{2k} multiplied by (-1)^k; see ``flip_pair_sign``.
    """
    n = check_sector(n)
    alpha, gamma = float(params.alpha), float(params.gamma)
    if alpha == 0 and n % 2:
        raise ValueError("alpha = 0 leaves the odd-N sector empty")
    logs = np.full(n + 1, -np.inf)
    signs = np.zeros(n + 1)
    log_d, sign_d = 0.0, 1.0
    for k in range(0, n + 1, 2):
        m = k // 2
        if m > 0:
            if gamma == 0:
                break
            log_d += math.log(gamma) + 0.5 * (math.log(2 * m - 1) - math.log(2 * m))
            sign_d = -sign_d
        coherent = n - k
        if alpha == 0 and coherent > 0:
            continue
        log_a = coherent * math.log(alpha) if coherent else 0.0
        logs[k] = log_a - 0.5 * math.lgamma(coherent + 1) + log_d
        signs[k] = sign_d
    top = np.max(logs)
    amps = signs * np.exp(logs - top)
    amps /= np.linalg.norm(amps)
    return TwoModeState(n, Basis.INPUT, fix_global_phase(amps))


def flip_pair_sign(state: TwoModeState) -> TwoModeState:
    """Multiply c_n by i^n.

    For the even-n states built here this is (-1)^(n/2), the map between the
    -gamma convention of the downconverted mode and eta >= 0 in the
    recursion. Equals exp(-i (pi/2) J1) up to a global phase.
    """
    phase = 1j ** np.arange(state.dim)
    return TwoModeState(state.n_total, state.basis, fix_global_phase(state.amplitudes * phase))


def distance_up_to_phase(a: TwoModeState, b: TwoModeState) -> float:
    """max_n |a_n - e^(i chi) b_n| with chi aligning b to a."""
    if a.n_total != b.n_total:
        raise ValueError("states live in different sectors")
    if a.basis is not b.basis:
        raise ValueError("states are tagged with different bases")
    overlap = np.vdot(b.amplitudes, a.amplitudes)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.abs(a.amplitudes - phase * b.amplitudes).max())


def eta_residual(state: TwoModeState, eta: float) -> float:
    """|| a^dag b psi - eta (a^dag a / N) b^dag a psi || in the N-photon sector."""
    if state.basis is not Basis.INPUT:
        raise ValueError("eta_residual needs an input-mode state")
    n = state.n_total
    c = state.amplitudes
    k = np.arange(n + 1)
    # a^dag b: |N-k; k> -> sqrt((N-k+1) k) |N-k+1; k-1>
    lowered = np.zeros(n + 1, dtype=complex)
    lowered[:-1] = np.sqrt((n - k[1:] + 1) * k[1:]) * c[1:]
    # b^dag a: |N-k; k> -> sqrt((N-k) (k+1)) |N-k-1; k+1>
    raised = np.zeros(n + 1, dtype=complex)
    raised[1:] = np.sqrt((n - k[:-1]) * (k[:-1] + 1)) * c[:-1]
    rhs = float(eta) * (n - k) / n * raised
    return float(np.linalg.norm(lowered - rhs))


def noon_state(n: int) -> TwoModeState:
    """(|N;0> + |0;N>)/sqrt(2) in the path basis."""
    n = check_sector(n)
    amps = np.zeros(n + 1, dtype=complex)
    amps[0] = amps[n] = 1 / math.sqrt(2)
    return TwoModeState(n, Basis.PATH, amps)


def approx_noon_pattern(n: int) -> np.ndarray:
    """Unnormalized amplitudes 1, 1/(3 sqrt 2), 1/(3 sqrt 2), 1 at n = 0, 2, N-2, N."""
    n = check_sector(n)
    if n < 5:
        raise ValueError(f"approximate noon pattern needs N >= 5 (indices collide), got {n}")
    amps = np.zeros(n + 1, dtype=complex)
    small = 1 / (3 * math.sqrt(2))
    amps[0] = amps[n] = 1.0
    amps[2] = amps[n - 2] = small
    return amps


def approx_noon_state(n: int) -> TwoModeState:
    """Normalized noon state with a small admixture of |N-2;2> and |2;N-2>."""
    return from_amplitudes(n, approx_noon_pattern(n), Basis.PATH)


def approx_noon_printed(n: int) -> np.ndarray:
    """The pattern with the printed (2/9)^(1/4) prefactor; norm^2 = 19 sqrt(2)/27, not 1."""
    return (2 / 9) ** 0.25 * approx_noon_pattern(n)
