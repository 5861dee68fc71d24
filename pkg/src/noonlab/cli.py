"""noonlab command line: state, sweep, qfunc, verify, optimum.

Exit codes: 0 success, 1 I/O failure, 2 invalid arguments, 3 a verification
check failed.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import analysis, io, schwinger, sphere, states
from .analysis import Objective
from .states import Basis

EXIT_IO = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3

ORACLE_ALPHAS = (0.5, 1.5)


class UsageError(Exception):
    pass


def _float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return x


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    return [_float(t) for t in text.split(",") if t.strip()]


def _grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 181x361, got {text!r}") from None


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like lo:hi, got {text!r}") from None
    return _float(lo), _float(hi)


def _workers() -> int:
    raw = os.environ.get("NOONLAB_THREADS")
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise UsageError(f"NOONLAB_THREADS must be a positive integer, got {raw!r}")
    return n


def _check_n(n: int) -> None:
    if n < 1:
        raise UsageError(f"--n must be >= 1, got {n}")


def _check_eta(eta: float) -> None:
    if eta < 0:
        raise UsageError(f"--eta must be >= 0, got {eta}")


@contextmanager
def _output(path):
    if path is None or str(path) == "-":
        yield sys.stdout
        return
    with open(Path(path), "w", newline="\n") as fh:
        yield fh


def cmd_state(args) -> int:
    _check_n(args.n)
    _check_eta(args.eta)
    state = states.build_eta_state(args.n, args.eta)
    path_state = schwinger.change_basis(state, Basis.PATH)
    j1, j2, j3 = schwinger.j_operators(args.n, Basis.INPUT)
    summary = {
        "j1_mean": schwinger.expectation(j1, state),
        "j2_var": schwinger.variance(j2, state),
        "j3_var": schwinger.variance(j3, state),
        "noon_fidelity": analysis.noon_fidelity(path_state),
        "regime": analysis.regime_classify(args.n, args.eta).value,
    }
    out = schwinger.change_basis(state, Basis(args.basis))
    with _output(args.out) as fh:
        fh.write(io.state_to_json(out, summary))
    return 0


def cmd_sweep(args) -> int:
    _check_n(args.n)
    if not 0 <= args.eta_min < args.eta_max:
        raise UsageError(f"need 0 <= eta-min < eta-max, got {args.eta_min}, {args.eta_max}")
    if args.steps < 2:
        raise UsageError(f"--steps must be >= 2, got {args.steps}")
    workers = _workers()
    grid = np.linspace(args.eta_min, args.eta_max, args.steps)
    records = analysis.sweep(args.n, grid, workers=workers)
    with _output(args.out) as fh:
        for line in io.sweep_csv_lines(records):
            fh.write(line + "\n")
    return 0


def cmd_qfunc(args) -> int:
    _check_n(args.n)
    _check_eta(args.eta)
    tc, pc = args.grid
    if tc < 2 or pc < 2:
        raise UsageError(f"--grid needs at least 2 points per axis, got {tc}x{pc}")
    state = schwinger.change_basis(states.build_eta_state(args.n, args.eta), Basis(args.basis))
    grid = sphere.husimi_grid(state, tc, pc)
    with _output(args.out) as fh:
        for line in sphere.grid_csv_lines(grid):
            fh.write(line + "\n")
    if args.ppm:
        sphere.render_heatmap(grid, args.ppm)
    return 0


def verification_checks(n: int, eta: float) -> list[tuple[str, float, float]]:
    """(check name, measured value, tolerance) for one (n, eta) pair."""
    built = states.build_eta_state(n, eta)
    oracle = 0.0
    for alpha in ORACLE_ALPHAS:
        proj = states.build_projection_state(n, states.SourceParams.from_eta(n, eta, alpha))
        oracle = max(oracle, states.distance_up_to_phase(built, states.flip_pair_sign(proj)))
    norm = abs(np.linalg.norm(built.amplitudes) - 1.0)
    return [
        ("oracle_equivalence", oracle, 1e-10),
        ("eta_residual", states.eta_residual(built, eta), 1e-10),
        ("squeezing_residual", schwinger.squeezing_relation_residual(built, eta), 1e-10 if n <= 30 else 1e-8),
        ("commutator", schwinger.commutator_defect(n), commutator_tolerance(n)),
        ("casimir", schwinger.casimir_defect(n), 1e-10),
        ("normalization", norm, 1e-12),
    ]


def commutator_tolerance(n: int) -> float:
    """1e-12, widened as N^2 beyond N = 100 where rounding of sqrt entries dominates."""
    return 1e-12 * max(1.0, (n / 100) ** 2)


def cmd_verify(args) -> int:
    if not args.n or not args.eta:
        raise UsageError("--n and --eta need at least one value each")
    for n in args.n:
        _check_n(n)
    for eta in args.eta:
        _check_eta(eta)
    ok = True
    print(f"{'check':<20} {'n':>5} {'eta':>10} {'value':>12} {'tol':>9} result")
    for n in args.n:
        for eta in args.eta:
            for name, value, tol in verification_checks(n, eta):
                passed = value <= tol
                ok &= passed
                print(f"{name:<20} {n:>5} {eta:>10.6g} {value:>12.3e} {tol:>9.1e} {'PASS' if passed else 'FAIL'}")
    return 0 if ok else EXIT_VERIFY


def cmd_optimum(args) -> int:
    if not args.n:
        raise UsageError("--n needs at least one value")
    for n in args.n:
        _check_n(n)
    lo, hi = args.eta_range
    if not 0 <= lo <= hi:
        raise UsageError(f"--eta-range needs 0 <= lo <= hi, got {lo}:{hi}")
    if args.tolerance <= 0:
        raise UsageError(f"--tolerance must be positive, got {args.tolerance}")
    workers = _workers()
    rows = []
    for n in args.n:
        try:
            eta_star, value = analysis.find_optimal_eta(n, args.objective, (lo, hi), args.tolerance, workers)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rows.append((n, eta_star, value))
    with _output(args.out) as fh:
        fh.write("n,eta_star,objective_value\n")
        for n, eta_star, value in rows:
            fh.write(f"{n},{io.fmt(eta_star)},{io.fmt(value)}\n")
    if len(rows) >= 3:
        slope = analysis.loglog_slope([r[0] for r in rows], [r[2] for r in rows])
        print(f"loglog_slope,{io.fmt(slope)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="noonlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("state", help="write |eta> as JSON with a summary of observables")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--eta", type=_float, required=True)
    s.add_argument("--basis", choices=[b.value for b in Basis], default="input")
    s.add_argument("--out", default=None, help="output file (default: stdout)")
    s.set_defaults(func=cmd_state)

    s = sub.add_parser("sweep", help="CSV of observables on a linear eta grid (endpoints included)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--eta-min", type=_float, required=True)
    s.add_argument("--eta-max", type=_float, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("qfunc", help="Husimi Q grid as CSV, optionally a PPM heatmap")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--eta", type=_float, required=True)
    s.add_argument("--basis", choices=[b.value for b in Basis], default="path")
    s.add_argument("--grid", type=_grid, default=(181, 361), help="THETAxPHI point counts, e.g. 181x361")
    s.add_argument("--out", default=None, help="grid CSV (default: stdout)")
    s.add_argument("--ppm", default=None, help="also write a binary P6 heatmap here")
    s.set_defaults(func=cmd_qfunc)

    s = sub.add_parser("verify", help="residual and algebra checks over n x eta")
    s.add_argument("--n", type=_int_list, required=True, help="comma-separated, e.g. 2,4,8")
    s.add_argument("--eta", type=_float_list, required=True, help="comma-separated, e.g. 0.5,1,2")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("optimum", help="optimal eta per N; log-log slope for 3+ values of N")
    s.add_argument("--n", type=_int_list, required=True)
    s.add_argument("--objective", choices=[o.value for o in Objective], required=True)
    s.add_argument("--eta-range", type=_range, required=True, help="lo:hi, e.g. 0.05:1.5")
    s.add_argument("--tolerance", type=_float, default=0.01, help="grid step before refinement")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_optimum)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"noonlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"noonlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
