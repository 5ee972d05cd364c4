"""Four-state model with two order-2 EPs: denominators, secular shifts and the rigidity sweep.

    python3 scripts/two_ep_example.py --out results/
"""
import argparse
from pathlib import Path

import numpy as np

from eprigidity.ep import ep_minor, ep_vectors, secular_shift
from eprigidity.models import example_4x4
from eprigidity.oracle import oracle_eigen_numpy
from eprigidity.sweep import log_range, run_sweep, to_csv, to_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--params", type=float, nargs=7, default=[1, 2, 3, 4, 5, 6, 7],
                    metavar=("A1", "A2", "A3", "B1", "B2", "C1", "OMEGA"))
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    mod = example_4x4(*args.params)
    h, g = mod.h_at_ep, mod.golden
    for (w, _), key in zip(mod.ep_points, ("A_12", "A_34")):
        r, l = ep_vectors(h, w)
        a = ep_minor(h, w, r, l)
        print(f"EP at {w.real:g}: |A| computed {a:.12g}, closed form {g[key]:.12g}")
    print(f"\n{'eps':>8}  {'EP':>3}  {'|delta|':>10}  {'err vs oracle':>13}  {'err/|delta|':>11}")
    for eps in (1e-4, 1e-6, 1e-8, 1e-10):
        ov = oracle_eigen_numpy(mod.at(eps))[0]
        for w, n in mod.ep_points:
            pred = secular_shift(h, mod.h_prime, eps, w, n)
            d = abs(pred[0] - w)
            err = max(np.min(np.abs(ov - p)) for p in pred)
            print(f"{eps:8.0e}  {w.real:3g}  {d:10.3e}  {err:13.3e}  {err / d:11.2e}")
    recs = run_sweep(mod, log_range(1e-2, 1e-12, 11))
    (args.out / "two_ep.csv").write_text(to_csv(recs))
    (args.out / "two_ep.svg").write_text(to_svg(recs, title="two order-2 EPs"))
    print(f"\nwrote {args.out / 'two_ep.csv'} and {args.out / 'two_ep.svg'}")


if __name__ == "__main__":
    main()
