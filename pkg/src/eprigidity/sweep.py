"""Epsilon sweeps over a near-EP model and their CSV / SVG rendering."""
import io as _io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .config import DEFAULT, Tolerances
from .ep import analyze_cluster, build_cluster
from .models import NearEPModel
from .spectral import eigensystem
from .svg import PALETTE, Series, loglog

# bump when columns change; tests/golden/sweep_header.csv pins the header
SCHEMA_VERSION = 1


@dataclass
class SweepRecord:
    eps: float
    index: int
    cluster: int  # -1 for eigenvalues outside every EP cluster
    omega_re: float
    omega_im: float
    r_direct: float
    r_exact: float
    route_disagreement: float
    pred_truncated: float
    pred_general: float
    ratio_truncated: float
    ratio_general: float
    equipartition_dev: float
    petermann: float


COLUMNS = [f.name for f in fields(SweepRecord)]
NAN = float("nan")


def cluster_indices(values, ep_points):
    """For each ``(omega, n)`` the n eigenvalue indices nearest ``omega``, disjoint."""
    vals = np.asarray(values)
    taken = set()
    out = []
    for omega, n in ep_points:
        order = [int(i) for i in np.argsort(np.abs(vals - omega), kind="stable") if int(i) not in taken]
        pick = sorted(order[:n])
        taken.update(pick)
        out.append(pick)
    return out


def sweep_point(model: NearEPModel, eps, tol: Tolerances = DEFAULT) -> list:
    h = model.at(eps)
    es = eigensystem(h, tol=tol)
    membership = {}
    for c, idx in enumerate(cluster_indices(es.values, model.ep_points)):
        cl = build_cluster(h, idx, es.values, h_at_ep=model.h_at_ep, tol=tol)
        for st in analyze_cluster(es, cl).states:
            membership[st.index] = (c, st)
    records = []
    for i, pair in enumerate(es.pairs):
        c, st = membership.get(i, (-1, None))
        records.append(
            SweepRecord(
                eps=float(eps),
                index=i,
                cluster=c,
                omega_re=pair.value.real,
                omega_im=pair.value.imag,
                r_direct=abs(pair.rigidity_direct),
                r_exact=abs(pair.rigidity_exact),
                route_disagreement=pair.disagreement,
                pred_truncated=st.pred_truncated if st else NAN,
                pred_general=st.pred_general if st else NAN,
                ratio_truncated=st.ratio_truncated if st else NAN,
                ratio_general=st.ratio_general if st else NAN,
                equipartition_dev=st.equipartition.deviation if st else NAN,
                petermann=pair.petermann,
            )
        )
    return records


def run_sweep(model: NearEPModel, eps_values, tol: Tolerances = DEFAULT, jobs=1) -> list:
    """Records for every (eps, eigenvalue), in the order of ``eps_values``."""
    eps_values = [float(e) for e in eps_values]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(lambda e: sweep_point(model, e, tol), eps_values))
    else:
        chunks = [sweep_point(model, e, tol) for e in eps_values]
    return [r for chunk in chunks for r in chunk]


def log_range(lo, hi, count) -> list:
    """``count`` log-spaced values from ``lo`` down to ``hi`` (both inclusive)."""
    if lo <= 0 or hi <= 0 or count < 1:
        raise ValueError("log range needs positive bounds and count >= 1")
    if count == 1:
        return [float(lo)]
    return [float(x) for x in np.logspace(math.log10(lo), math.log10(hi), count)]


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def to_csv(records) -> str:
    buf = _io.StringIO()
    buf.write(",".join(COLUMNS) + "\n")
    for r in records:
        buf.write(",".join(_fmt(getattr(r, c)) for c in COLUMNS) + "\n")
    return buf.getvalue()


def to_svg(records, title="") -> str:
    """Log-log plot of exact |r| (markers) and the general prediction (dashed) per clustered eigenvalue."""
    series = []
    for k, idx in enumerate(sorted({r.index for r in records if r.cluster >= 0})):
        rows = sorted((r for r in records if r.index == idx), key=lambda r: r.eps)
        xs = [r.eps for r in rows]
        color = PALETTE[k % len(PALETTE)]
        series.append(Series(f"|r_{idx}| exact", xs, [r.r_exact for r in rows], markers=True, color=color))
        series.append(Series(f"|r_{idx}| general", xs, [r.pred_general for r in rows], dashed=True, color=color))
    return loglog(series, title=title, xlabel="eps", ylabel="|r|")
