"""Husimi heatmaps (PPM) of |eta> in the path basis, one per regime."""

import argparse
from pathlib import Path

from noonlab.analysis import regime_classify
from noonlab.schwinger import change_basis
from noonlab.sphere import husimi_grid, render_heatmap
from noonlab.states import Basis, build_eta_state


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--outdir", default="gallery")
    args = ap.parse_args()
    n = args.n
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for eta in (0.5, 1.5, 2.0, 3.0, 8.0 * n):
        regime = regime_classify(n, eta).value
        grid = husimi_grid(change_basis(build_eta_state(n, eta), Basis.PATH), 181, 361)
        path = render_heatmap(grid, out / f"{regime.lower()}_n{n}_eta{eta:g}.ppm")
        print(f"{regime:<10} eta={eta:<8g} -> {path}")


if __name__ == "__main__":
    main()
