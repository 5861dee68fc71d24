"""Noon fidelity at eta = 2 and the location of the fidelity peak, as N grows."""

import argparse
import math

from noonlab.analysis import Objective, find_optimal_eta, noon_fidelity
from noonlab.states import build_eta_state


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", default="10,20,40,60,100,200,400")
    args = ap.parse_args()
    target = math.sqrt(8 / 9)
    print("n,fidelity_eta2,deviation,n_times_deviation,peak_eta,peak_fidelity")
    for n in (int(t) for t in args.n.split(",")):
        f = noon_fidelity(build_eta_state(n, 2.0))
        peak, best = find_optimal_eta(n, Objective.MAX_NOON_FIDELITY, (1.5, 2.5), 0.01)
        print(f"{n},{f:.6f},{target - f:.6f},{n * (target - f):.4f},{peak:.4f},{best:.6f}")


if __name__ == "__main__":
    main()
