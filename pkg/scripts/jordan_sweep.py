"""Rigidity of perturbed Jordan blocks against the closed form and the truncated asymptote.

    python3 scripts/jordan_sweep.py --n 2 3 4 --out results/
"""
import argparse
from pathlib import Path

import numpy as np

from eprigidity.models import jordan_block
from eprigidity.sweep import log_range, run_sweep, to_csv, to_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--points", type=int, default=13)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    eps = log_range(1e-2, 1e-14, args.points)
    for n in args.n:
        recs = run_sweep(jordan_block(n), eps)
        (args.out / f"jordan{n}.csv").write_text(to_csv(recs))
        (args.out / f"jordan{n}.svg").write_text(to_svg(recs, title=f"Jordan block n={n}"))
        print(f"n={n}")
        print(f"  {'eps':>9}  {'|r| exact':>12}  {'ratio trunc':>12}  {'route diff':>10}")
        for e in eps:
            row = [r for r in recs if r.eps == e]
            r = max(row, key=lambda r: abs(r.ratio_truncated - 1))
            print(f"  {e:9.1e}  {r.r_exact:12.5e}  {r.ratio_truncated:12.9f}  {r.route_disagreement:10.1e}")
        if n == 2:
            closed = [abs(r.r_exact / (2 * np.sqrt(r.eps) / (1 + r.eps)) - 1) for r in recs]
            print(f"  max rel error against 2 sqrt(eps)/(1+eps): {max(closed):.2e}")


if __name__ == "__main__":
    main()
