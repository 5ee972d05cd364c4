"""Convergence of the general asymptote and equipartition over a random near-EP ensemble.

Fits the deviation at each eps to C * eps^(1/n) and reports the spread of C
per EP order, which shows how small eps must be for a given accuracy.

    python3 scripts/ensemble_convergence.py --models 60 --out results/ensemble.csv
"""
import argparse
import csv
from pathlib import Path

import numpy as np

from eprigidity.ep import analyze_cluster, build_cluster
from eprigidity.models import random_near_ep
from eprigidity.spectral import eigensystem


def deviations(mod, eps):
    h = mod.at(eps)
    es = eigensystem(h)
    vals = np.array(es.values)
    idx = sorted(int(i) for i in np.argsort(np.abs(vals - mod.omega_ep), kind="stable")[: mod.order])
    rep = analyze_cluster(es, build_cluster(h, idx, es.values, h_at_ep=mod.h_at_ep))
    return rep.general_deviation, rep.equipartition_deviation


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--models", type=int, default=60)
    ap.add_argument("--orders", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--max-dim", type=int, default=10)
    ap.add_argument("--spread", type=float, default=1.0)
    ap.add_argument("--eps", type=float, nargs="+", default=[1e-4, 1e-6, 1e-8, 1e-10])
    ap.add_argument("--out", type=Path, default=Path("results/ensemble.csv"))
    args = ap.parse_args()
    args.out.parent.mkdir(parents=True, exist_ok=True)
    rows = []
    for seed in range(args.models):
        rng = np.random.default_rng(1000 + seed)
        n = args.orders[seed % len(args.orders)]
        m = int(rng.integers(n, args.max_dim + 1))
        mod = random_near_ep(m, n, seed=seed, spectator_spread=args.spread)
        for eps in args.eps:
            gen, eq = deviations(mod, eps)
            rows.append({"seed": seed, "m": m, "n": n, "eps": eps, "general_dev": gen, "equipartition_dev": eq})
    with open(args.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    print(f"{'n':>2}  {'eps':>7}  {'median gen':>10}  {'max gen':>9}  {'median eq':>9}  {'max eq':>9}  {'C gen':>12}")
    for n in args.orders:
        for eps in args.eps:
            sub = [r for r in rows if r["n"] == n and r["eps"] == eps]
            g = np.array([r["general_dev"] for r in sub])
            e = np.array([r["equipartition_dev"] for r in sub])
            c = g / eps ** (1 / n)
            print(f"{n:2d}  {eps:7.0e}  {np.median(g):10.2e}  {g.max():9.2e}  {np.median(e):9.2e}  {e.max():9.2e}"
                  f"  {np.median(c):5.2f}-{c.max():5.2f}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
