"""Minimum linearized phase variance over eta for a range of N, with the log-log slope."""

import argparse

from noonlab.analysis import Objective, find_optimal_eta, loglog_slope


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", default="20,40,80,160,320")
    ap.add_argument("--eta-min", type=float, default=0.05)
    ap.add_argument("--eta-max", type=float, default=1.5)
    args = ap.parse_args()
    ns = [int(t) for t in args.n.split(",")]
    best = []
    print("n,eta_star,min_phase_var,n_pow_1.5_times_var")
    for n in ns:
        eta, v = find_optimal_eta(n, Objective.MIN_PHASE_VAR, (args.eta_min, args.eta_max), 0.01)
        best.append(v)
        print(f"{n},{eta:.4f},{v:.6e},{v * n**1.5:.4f}")
    print(f"# slope {loglog_slope(ns, best):.4f} (SQL -1, Heisenberg -2)")


if __name__ == "__main__":
    main()
