"""Observables, large-N predictions and eta scans for the |eta> family."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import Optional, Sequence

import numpy as np

from .schwinger import change_basis, expectation, j_operators, variance
from .search import scan_then_refine
from .states import Basis, TwoModeState, build_eta_state, check_sector

NOON_ETA_TOL = 1e-9


class LinearizationError(ValueError):
    """Raised when <J1> is too small for linear error propagation to mean anything."""


class Regime(str, enum.Enum):
    DAWN = "Dawn"
    MORNING = "Morning"
    NOON = "Noon"
    AFTERNOON = "Afternoon"
    EVENING = "Evening"


class Objective(str, enum.Enum):
    MIN_PHASE_VAR = "min-phase-var"
    MAX_QFI = "max-qfi"
    MAX_NOON_FIDELITY = "max-noon-fidelity"


@dataclass(frozen=True)
class ClassicalPrediction:
    """Leading-order large-N values; None outside a formula's domain."""

    eta: float
    j1_mean_pred: Optional[float]
    j2_var_pred: Optional[float]
    j3_branch: Optional[float]
    squeeze_factor_pred: Optional[float]


@dataclass(frozen=True)
class EtaSweepRecord:
    eta: float
    j1_mean: float
    j2_var: float
    j3_var: float
    squeeze_ratio: float
    noon_fidelity: float
    qfi: float
    phase_var_linearized: float
    regime: Regime

    @staticmethod
    def columns() -> list[str]:
        return [f.name for f in fields(EtaSweepRecord)]

    def row(self) -> tuple:
        return astuple(self)


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not math.isfinite(eta) or eta < 0:
        raise ValueError(f"eta must be a finite real >= 0, got {eta!r}")
    return eta


def noon_fidelity(state: TwoModeState) -> float:
    """max_chi |<NOON_chi|psi>|^2 = (|c_0| + |c_N|)^2 / 2 in the path basis.

    Input-mode states are moved to the path basis first.
    """
    path = change_basis(state, Basis.PATH)
    c = path.amplitudes
    f = (abs(c[0]) + abs(c[-1])) ** 2 / 2
    return float(min(max(f, 0.0), 1.0))


def classical_predictions(n: int, eta: float) -> ClassicalPrediction:
    n = check_sector(n)
    eta = _check_eta(eta)
    j1 = (n / 2) * (2 / eta - 1) if eta > 0 else None
    if eta >= 1:
        j2 = (eta - 1) / eta * n / 4
        branch = n * math.sqrt(eta - 1) / eta
    else:
        j2 = branch = None
    squeeze = (1 + eta) / (1 - eta) if eta < 1 else None
    return ClassicalPrediction(eta, j1, j2, branch, squeeze)


def phase_error_linearized(state: TwoModeState) -> float:
    """Error-propagation phase variance Delta J2^2 / <J1>^2 at phi = 0.

    Undefined (LinearizationError) when |<J1>| does not exceed its own
    spread Delta J1, or is below 1e-9 N; e.g. the noon point eta = 2.
    """
    j1, j2, _ = j_operators(state.n_total, state.basis)
    mean = expectation(j1, state)
    spread = math.sqrt(variance(j1, state))
    if abs(mean) <= max(1e-9 * state.n_total, spread):
        raise LinearizationError(f"<J1> = {mean:.6g} is not resolved from zero (Delta J1 = {spread:.6g})")
    return variance(j2, state) / mean**2


def qfi(state: TwoModeState) -> float:
    """Pure-state quantum Fisher information 4 Delta J3^2 for phase shifts about J3."""
    _, _, j3 = j_operators(state.n_total, state.basis)
    return 4 * variance(j3, state)


def regime_classify(n: int, eta: float) -> Regime:
    n = check_sector(n)
    eta = _check_eta(eta)
    if abs(eta - 2) <= NOON_ETA_TOL:
        return Regime.NOON
    if eta < 1:
        return Regime.DAWN
    if eta < 2:
        return Regime.MORNING
    if eta <= 4 * n:
        return Regime.AFTERNOON
    return Regime.EVENING


def sweep_record(n: int, eta: float) -> EtaSweepRecord:
    state = build_eta_state(n, eta)
    j1, j2, j3 = j_operators(n, Basis.INPUT)
    v2 = variance(j2, state)
    v3 = variance(j3, state)
    ratio = math.sqrt(v3 / v2) if v2 > 0 else math.nan
    path = change_basis(state, Basis.PATH)
    try:
        phase = phase_error_linearized(state)
    except LinearizationError:
        phase = math.nan
    return EtaSweepRecord(
        eta=float(eta),
        j1_mean=expectation(j1, state),
        j2_var=v2,
        j3_var=v3,
        squeeze_ratio=ratio,
        noon_fidelity=noon_fidelity(path),
        qfi=qfi(path),
        phase_var_linearized=phase,
        regime=regime_classify(n, eta),
    )


def _pool_map(fn, items, workers: int):
    if workers <= 1 or len(items) <= 1:
        return list(map(fn, items))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def sweep(n: int, eta_grid: Sequence[float], workers: int = 1) -> list[EtaSweepRecord]:
    """One record per grid value; each record is computed independently."""
    n = check_sector(n)
    grid = [_check_eta(e) for e in eta_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("eta grid must be strictly increasing")
    return _pool_map(lambda e: sweep_record(n, e), grid, workers)


def objective_value(n: int, objective: Objective, eta: float) -> float:
    """The objective in its natural sign; nan where it is undefined."""
    state = build_eta_state(n, eta)
    objective = Objective(objective)
    if objective is Objective.MIN_PHASE_VAR:
        try:
            return phase_error_linearized(state)
        except LinearizationError:
            return math.nan
    path = change_basis(state, Basis.PATH)
    if objective is Objective.MAX_QFI:
        return qfi(path)
    return noon_fidelity(path)


def find_optimal_eta(
    n: int,
    objective: Objective,
    eta_range: tuple[float, float],
    tolerance: float = 0.01,
    workers: int = 1,
) -> tuple[float, float]:
    """Best eta in ``eta_range`` for the objective: grid scan at ``tolerance``, then golden section."""
    n = check_sector(n)
    objective = Objective(objective)
    lo, hi = (_check_eta(x) for x in eta_range)
    sign = 1.0 if objective is Objective.MIN_PHASE_VAR else -1.0

    def cost(eta):
        v = objective_value(n, objective, eta)
        return sign * v if math.isfinite(v) else math.inf

    def batch(f, xs):
        return _pool_map(f, list(xs), workers)

    eta_star, best = scan_then_refine(cost, lo, hi, tolerance, map_fn=batch)
    return eta_star, sign * best


def loglog_slope(ns: Sequence[float], values: Sequence[float]) -> float:
    """Least-squares slope of log(values) against log(ns)."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def parity_contrast(n: int, eta: float) -> tuple[float, float]:
    """Delta J2^2 of |eta> and its ratio to the shot-noise value N/4."""
    n = check_sector(n)
    state = build_eta_state(n, eta)
    _, j2, _ = j_operators(n, Basis.INPUT)
    v = variance(j2, state)
    return v, v / (n / 4)
