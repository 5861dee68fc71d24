"""Spin-N/2 algebra of two-mode N-photon states.

Operators in the input-mode basis, with A = a^dag b:

    J1 = (a^dag a - b^dag b) / 2            diagonal, (N - 2n)/2
    J2 = (i/2) (a^dag b - a b^dag)
    J3 = (1/2) (a^dag b + a b^dag)

This labelling is right-handed ([J1, J2] = i J3 cyclically) and is the one
under which the eta recursion state satisfies the nonlinear squeezing
relation with J2 as the squeezed (phase) quadrature.

The input-to-path change of basis is exp(-i (pi/2) J2), the inverse of
R = exp(+i (pi/2) J2), which obeys R J1 R^dag = J3. Path-basis operators are
the rotated input operators, so J3 is diagonal there.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np

from .states import Basis, TwoModeState, check_sector

HERMITIAN_TOL = 1e-14
IMAG_TOL = 1e-12


class Axis(str, enum.Enum):
    J1 = "J1"
    J2 = "J2"
    J3 = "J3"


@dataclass(frozen=True)
class SpinOperator:
    """(N+1)x(N+1) Hermitian matrix tagged with its sector and basis."""

    n_total: int
    basis: Basis
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        d = self.n_total + 1
        if m.shape != (d, d):
            raise ValueError(f"operator shape {m.shape} does not match sector N={self.n_total}")
        if np.abs(m - m.conj().T).max() > HERMITIAN_TOL * max(1.0, np.abs(m).max()):
            raise ValueError("operator is not Hermitian")
        m.setflags(write=False)
        object.__setattr__(self, "basis", Basis(self.basis))
        object.__setattr__(self, "matrix", m)

    def squared(self) -> SpinOperator:
        return SpinOperator(self.n_total, self.basis, self.matrix @ self.matrix)


def _match(a, b) -> None:
    if a.n_total != b.n_total:
        raise ValueError(f"sector mismatch: N={a.n_total} vs N={b.n_total}")
    if Basis(a.basis) is not Basis(b.basis):
        raise ValueError(f"basis mismatch: {Basis(a.basis).value} vs {Basis(b.basis).value}")


def _hop(n: int) -> np.ndarray:
    """Matrix of a^dag b in the input basis: |N-k; k> -> sqrt((N-k+1) k) |N-k+1; k-1>."""
    k = np.arange(1, n + 1)
    return np.diag(np.sqrt((n - k + 1.0) * k), 1)


@functools.lru_cache(maxsize=64)
def _input_matrices(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    hop = _hop(n)
    j1 = np.diag((n - 2.0 * np.arange(n + 1)) / 2).astype(complex)
    j2 = 0.5j * (hop - hop.T)
    j3 = (0.5 * (hop + hop.T)).astype(complex)
    for m in (j1, j2, j3):
        m.setflags(write=False)
    return j1, j2, j3


@functools.lru_cache(maxsize=64)
def _path_matrices(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # a rotation by -pi/2 about J2 takes J1 -> -J3, J3 -> J1, J2 -> J2
    j1, j2, j3 = _input_matrices(n)
    return -j3, j2, j1


def j_operators(n: int, basis: Basis = Basis.INPUT) -> tuple[SpinOperator, SpinOperator, SpinOperator]:
    """(J1, J2, J3) for the N-photon sector in the requested basis."""
    n = check_sector(n)
    basis = Basis(basis)
    mats = _input_matrices(n) if basis is Basis.INPUT else _path_matrices(n)
    return tuple(SpinOperator(n, basis, m) for m in mats)


def identity(n: int, basis: Basis = Basis.INPUT) -> SpinOperator:
    n = check_sector(n)
    return SpinOperator(n, basis, np.eye(n + 1, dtype=complex))


def _check_pair(op: SpinOperator, state: TwoModeState) -> None:
    _match(op, state)


def expectation(op: SpinOperator, state: TwoModeState) -> float:
    _check_pair(op, state)
    val = np.vdot(state.amplitudes, op.matrix @ state.amplitudes)
    if abs(val.imag) > IMAG_TOL * max(1.0, abs(val.real)):
        raise ArithmeticError(f"expectation has imaginary part {val.imag!r}")
    return float(val.real)


def variance(op: SpinOperator, state: TwoModeState) -> float:
    _check_pair(op, state)
    v = op.matrix @ state.amplitudes
    mean = np.vdot(state.amplitudes, v).real
    second = np.vdot(v, v).real
    return max(float(second - mean * mean), 0.0)


@functools.lru_cache(maxsize=64)
def _eigh(n: int, basis: Basis, axis: Axis) -> tuple[np.ndarray, np.ndarray]:
    mats = _input_matrices(n) if basis is Basis.INPUT else _path_matrices(n)
    gen = mats[("J1", "J2", "J3").index(axis.value)]
    if np.count_nonzero(gen - np.diag(np.diag(gen))) == 0:
        w = np.diag(gen).real.copy()
        v = np.eye(n + 1, dtype=complex)
    else:
        w, v = np.linalg.eigh(gen)
    w.setflags(write=False)
    v.setflags(write=False)
    return w, v


def rotation_matrix(n: int, basis: Basis, axis: Axis | str, angle: float) -> np.ndarray:
    """exp(-i angle J_axis) from the eigendecomposition of the generator."""
    angle = float(angle)
    if not math.isfinite(angle):
        raise ValueError(f"rotation angle must be finite, got {angle!r}")
    w, v = _eigh(check_sector(n), Basis(basis), Axis(axis))
    return (v * np.exp(-1j * angle * w)) @ v.conj().T


@dataclass(frozen=True)
class RotationSpec:
    axis: Axis
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "axis", Axis(self.axis))
        if not math.isfinite(self.angle):
            raise ValueError(f"rotation angle must be finite, got {self.angle!r}")


def rotate(state: TwoModeState, spec: RotationSpec) -> TwoModeState:
    """Active rotation exp(-i angle J_axis) |psi>; the basis tag is kept."""
    u = rotation_matrix(state.n_total, state.basis, spec.axis, spec.angle)
    out = u @ state.amplitudes
    return TwoModeState(state.n_total, state.basis, out / np.linalg.norm(out))


def basis_change_matrix(n: int, source: Basis, target: Basis) -> np.ndarray:
    """Unitary taking amplitudes in ``source`` to amplitudes in ``target``."""
    source, target = Basis(source), Basis(target)
    d = check_sector(n) + 1
    if source is target:
        return np.eye(d, dtype=complex)
    # input -> path is R^dag = exp(-i (pi/2) J2); J2 has the same matrix in both bases
    angle = math.pi / 2 if target is Basis.PATH else -math.pi / 2
    return rotation_matrix(n, Basis.INPUT, Axis.J2, angle)


def change_basis(state: TwoModeState, target: Basis) -> TwoModeState:
    target = Basis(target)
    if target is state.basis:
        return state
    out = basis_change_matrix(state.n_total, state.basis, target) @ state.amplitudes
    return TwoModeState(state.n_total, target, out / np.linalg.norm(out))


def squeezing_relation_residual(state: TwoModeState, eta: float) -> float:
    """|| (1 + K eta) J2 psi + i (1 - K eta) J3 psi ||, K = 1/2 + J1/N.

    The sign in front of i is the one that follows from the eta recursion
    with a right-handed J algebra.
    """
    if state.basis is not Basis.INPUT:
        raise ValueError("squeezing_relation_residual needs an input-mode state")
    n = state.n_total
    j1, j2, j3 = _input_matrices(n)
    k = 0.5 + np.diag(j1).real / n
    psi = state.amplitudes
    left = (1 + k * eta) * (j2 @ psi)
    right = 1j * (1 - k * eta) * (j3 @ psi)
    return float(np.linalg.norm(left + right))


def commutator_defect(n: int, basis: Basis = Basis.INPUT) -> float:
    """max entrywise |[Ja, Jb] - i Jc| over the three cyclic pairs."""
    j = [op.matrix for op in j_operators(n, basis)]
    worst = 0.0
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        comm = j[a] @ j[b] - j[b] @ j[a]
        worst = max(worst, float(np.abs(comm - 1j * j[c]).max()))
    return worst


def casimir_defect(n: int, basis: Basis = Basis.INPUT) -> float:
    """max entrywise |J1^2 + J2^2 + J3^2 - j(j+1) I|, j = N/2."""
    j = [op.matrix for op in j_operators(n, basis)]
    total = sum(m @ m for m in j)
    spin = n / 2
    return float(np.abs(total - spin * (spin + 1) * np.eye(n + 1)).max())
