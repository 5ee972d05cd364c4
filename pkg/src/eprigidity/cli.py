"""Command-line front end: ``eprigidity {analyze,sweep,generate}``.

Exit codes: 0 success, 1 bad input (parse error, bad arguments or
parameters), 2 numerical failure (an identity check beyond tolerance or a
routine that could not converge).
"""
import argparse
import json
import math
import sys

import numpy as np

from . import io as mio
from .config import DEFAULT
from .errors import DimensionError, EPRigidityError, IdentityError
from .ep import ep_report
from .models import FAMILIES
from .sweep import log_range, run_sweep, to_csv, to_svg

EXIT_OK, EXIT_PARSE, EXIT_NUMERIC = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise mio.ParseError(message, "arguments")


def _jsonable(v):
    if isinstance(v, (complex, np.complexfloating)):
        return [_jsonable(v.real), _jsonable(v.imag)]
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def _cfmt(z) -> str:
    return f"{z.real:+.10e}{z.imag:+.10e}j"


# ------------------------------------------------------------------- checks


def identity_failures(report, tol, use_oracle=False) -> list:
    """``(operation, residual)`` for every run-time identity beyond ``tol.identity``."""
    es = report.eigensystem
    bad = []
    for i, p in enumerate(es.pairs):
        if not p.defective and math.isfinite(p.disagreement) and p.disagreement > tol.identity:
            bad.append((f"rigidity routes, eigenvalue {i}", p.disagreement))
    for rep in report.clusters:
        cl = rep.cluster
        if not cl.auto and cl.xi_residual > tol.identity:
            bad.append((f"xi triple identity, cluster {cl.indices}", cl.xi_residual))
    if use_oracle:
        bad.extend(_oracle_failures(es, tol))
    return bad


def _oracle_failures(es, tol) -> list:
    from .oracle import EIGEN_CAP, oracle_eigen_numpy

    h = es.matrix
    if h.shape[0] > EIGEN_CAP:
        return []
    ov = list(oracle_eigen_numpy(h)[0])
    scale = max(1.0, float(np.linalg.norm(h)))
    groups = {}
    for i, p in enumerate(es.pairs):
        groups.setdefault(p.group or (i,), []).append(p.value)
    bad = []
    for key, members in groups.items():
        center = complex(np.mean(members))
        ov.sort(key=lambda w: abs(w - center))
        ref = complex(np.mean(ov[: len(members)]))
        del ov[: len(members)]
        # coincident roots are compared through their mean, which is well conditioned
        err = abs(ref - center) / scale
        if err > tol.identity:
            bad.append((f"oracle eigenvalue, indices {list(key)}", err))
    return bad


# ------------------------------------------------------------------ analyze


def _analysis_dict(report, mf):
    es = report.eigensystem
    pairs = [
        {
            "index": i,
            "omega": p.value,
            "r_exact": p.rigidity_exact,
            "r_direct": p.rigidity_direct,
            "route_disagreement": p.disagreement,
            "petermann": p.petermann,
            "defective": p.defective,
            "right": p.right,
            "left": p.left,
        }
        for i, p in enumerate(es.pairs)
    ]
    clusters = []
    for rep in report.clusters:
        cl = rep.cluster
        clusters.append(
            {
                "indices": cl.indices,
                "order": cl.order,
                "center": cl.center,
                "omega_ep": cl.omega_ep,
                "xi": cl.xi,
                "minor_denominator": cl.minor_denominator,
                "self_overlap": cl.self_overlap,
                "spectators": cl.spectators,
                "states": [
                    {
                        "index": s.index,
                        "r_exact": s.r_exact,
                        "pred_truncated": s.pred_truncated,
                        "pred_general": s.pred_general,
                        "ratio_truncated": s.ratio_truncated,
                        "ratio_general": s.ratio_general,
                        "equipartition_dev": s.equipartition.deviation,
                        "overlap_ratio": s.overlap_ratio,
                    }
                    for s in rep.states
                ],
            }
        )
    return _jsonable(
        {
            "dim": mf.dim,
            "pairs": pairs,
            "clusters": clusters,
            "skipped": [{"indices": g, "reason": r} for g, r in report.skipped],
        }
    )


def _analysis_table(report) -> str:
    es = report.eigensystem
    lines = [f"{'i':>3}  {'omega':<36}{'|r| exact':>14}{'|r| direct':>14}{'disagree':>11}{'K':>12}"]
    for i, p in enumerate(es.pairs):
        flag = "  EP" if p.defective else ""
        lines.append(
            f"{i:>3}  {_cfmt(p.value):<36}{abs(p.rigidity_exact):>14.6e}{abs(p.rigidity_direct):>14.6e}"
            f"{p.disagreement:>11.2e}{p.petermann:>12.4e}{flag}"
        )
    for rep in report.clusters:
        cl = rep.cluster
        lines.append("")
        lines.append(
            f"EP cluster {cl.indices}: order {cl.order}, omega_EP {_cfmt(cl.omega_ep)}, "
            f"xi {cl.xi:.6e}, |A_EP| {cl.minor_denominator:.6e}, spectators {len(cl.spectators)}"
        )
        lines.append(f"  {'i':>3}{'ratio trunc':>14}{'ratio general':>16}{'equipart dev':>14}")
        for s in rep.states:
            lines.append(
                f"  {s.index:>3}{s.ratio_truncated:>14.6f}{s.ratio_general:>16.6f}{s.equipartition.deviation:>14.3e}"
            )
    for g, reason in report.skipped:
        lines.append(f"skipped cluster {g}: {reason}")
    return "\n".join(lines) + "\n"


def _analysis_csv(report) -> str:
    cols = ["index", "omega_re", "omega_im", "r_exact", "r_direct", "route_disagreement", "petermann", "defective"]
    rows = [",".join(cols)]
    for i, p in enumerate(report.eigensystem.pairs):
        vals = [
            str(i),
            format(p.value.real, ".17g"),
            format(p.value.imag, ".17g"),
            format(abs(p.rigidity_exact), ".17g"),
            format(abs(p.rigidity_direct), ".17g"),
            format(p.disagreement, ".17g"),
            format(p.petermann, ".17g"),
            str(int(p.defective)),
        ]
        rows.append(",".join(vals))
    return "\n".join(rows) + "\n"


def cmd_analyze(args, out) -> int:
    tol = DEFAULT.with_(identity=args.tol_identity)
    mf = mio.read(args.file)
    h, h_at_ep = mf.entries, None
    if args.eps is not None:
        model = mf.to_model()
        h, h_at_ep = model.at(args.eps), model.h_at_ep
    report = ep_report(h, h_at_ep=h_at_ep, cluster_tol=args.tol_cluster, tol=tol)
    if args.format == "json":
        out.write(json.dumps(_analysis_dict(report, mf), indent=2) + "\n")
    elif args.format == "csv":
        out.write(_analysis_csv(report))
    else:
        out.write(_analysis_table(report))
    return _report_failures(identity_failures(report, tol, args.oracle))


def _report_failures(bad) -> int:
    if not bad:
        return EXIT_OK
    for op, res in bad:
        print(f"identity failure in {op}: residual {res:.3e}", file=sys.stderr)
    return EXIT_NUMERIC


# -------------------------------------------------------------------- sweep


def _eps_list(args):
    vals = []
    for chunk in args.eps or []:
        vals.extend(float(x) for x in chunk.split(",") if x.strip())
    if args.log_range:
        lo, hi, count = args.log_range
        vals.extend(log_range(float(lo), float(hi), int(count)))
    if not vals:
        raise mio.ParseError("give --eps and/or --log-range", "arguments")
    if any(not (v > 0 and math.isfinite(v)) for v in vals):
        raise mio.ParseError("eps values must be positive and finite", "arguments")
    return vals


def cmd_sweep(args, out) -> int:
    tol = DEFAULT.with_(identity=args.tol_identity)
    model = mio.read(args.file).to_model()
    eps = _eps_list(args)
    records = run_sweep(model, eps, tol=tol, jobs=args.jobs)
    if args.format == "json":
        out.write(json.dumps(_jsonable([vars(r) for r in records]), indent=2) + "\n")
    else:
        out.write(to_csv(records))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(to_svg(records, title=f"{model.family} sweep"))
    bad = [
        (f"rigidity routes, eps {r.eps:g}, eigenvalue {r.index}", r.route_disagreement)
        for r in records
        if math.isfinite(r.route_disagreement) and r.route_disagreement > tol.identity
    ]
    return _report_failures(bad)


# ----------------------------------------------------------------- generate


def _param_value(text):
    for conv in (int, float, complex):
        try:
            return conv(text)
        except ValueError:
            pass
    raise mio.ParseError(f"cannot read parameter value {text!r}", "arguments")


def cmd_generate(args, out) -> int:
    if args.family not in FAMILIES:
        raise mio.ParseError(f"unknown family {args.family!r}; choose from {sorted(FAMILIES)}", "arguments")
    params = {}
    for item in args.param or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise mio.ParseError(f"expected key=value, got {item!r}", "arguments")
        params[key.strip()] = _param_value(val.strip())
    if args.family == "random":
        params.setdefault("seed", args.seed)
    try:
        model = FAMILIES[args.family](**params)
    except TypeError as exc:
        raise mio.ParseError(str(exc), "arguments") from None
    text = mio.dumps(mio.from_model(model))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


# --------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eprigidity", description="Phase rigidity near exceptional points.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--tol-cluster", type=float, default=None, help="eigenvalue clustering distance")
        sp.add_argument("--tol-identity", type=float, default=DEFAULT.identity, help="identity check tolerance")
        sp.add_argument("--oracle", action="store_true", help="cross-check eigenvalues in extended precision")

    a = sub.add_parser("analyze", help="eigensystem and EP report for one matrix file")
    a.add_argument("file")
    a.add_argument("--eps", type=float, default=None, help="analyze hAtEP + eps * hPrime from the model block")
    a.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common(a)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sweep", help="rigidity and asymptotes over a range of eps")
    s.add_argument("file")
    s.add_argument("--eps", action="append", help="comma-separated eps values (repeatable)")
    s.add_argument("--log-range", nargs=3, metavar=("LO", "HI", "COUNT"))
    s.add_argument("--svg", help="write a log-log plot here")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--jobs", type=int, default=1)
    common(s)
    s.set_defaults(func=cmd_sweep)

    g = sub.add_parser("generate", help="write a model as a MatrixFile")
    g.add_argument("family", help=f"one of {', '.join(sorted(FAMILIES))}")
    g.add_argument("--param", action="append", help="key=value generator parameter (repeatable)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except mio.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionError as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except IdentityError as exc:
        print(f"identity failure in {exc.operation or 'unknown'}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except EPRigidityError as exc:
        print(f"numerical failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
