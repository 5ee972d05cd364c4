"""Exceptional-point analysis.

Given a matrix near (or at) an EP of order ``n``:

* a complex Schur form with the quasi-degenerate cluster leading,
* the self-orthogonal EP eigenvector pair and ``xi = ||N^(n-1)||_2``,
* the truncated and general asymptotic rigidities,
* the equipartition of ``<L_i|R_i>`` over the cluster directions,
* the overlap relation of the truncated system,
* first-order secular predictions of the split eigenvalues.

When the exact EP matrix is unknown, :func:`ep_report` lets the perturbed
matrix stand in for it, with the cluster mean as the EP eigenvalue. That is
correct to leading order only and the error shows up in the reported ratios.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .adjugate import adjugate, minor
from .charpoly import eval_p_prime, faddeev_leverrier, taylor_coeff
from .config import DEFAULT
from .errors import ConvergenceError, IdentityError, NotDefectiveError, VanishingTraceError
from .linalg import as_matrix, dagger, det, hessenberg, two_norm, unit
from .spectral import (
    eigensystem,
    eigenvalues,
    eigvec_from_adjugate,
    refine_multiple_root,
    single_linkage,
)

EPS = np.finfo(float).eps


# ---------------------------------------------------------------------- Schur


@dataclass(frozen=True)
class SchurForm:
    q: np.ndarray
    t: np.ndarray
    ordering: tuple  # ordering[k]: position the k-th diagonal entry had before reordering

    def residual(self, h) -> float:
        return float(np.linalg.norm(dagger(self.q) @ h @ self.q - self.t))


def _givens(x, y):
    """Unitary ``G`` with ``G @ [x, y] = [r, 0]``."""
    nrm = math.hypot(abs(x), abs(y))
    if nrm == 0.0:
        return np.eye(2, dtype=np.complex128)
    u0, u1 = x / nrm, y / nrm
    return np.array([[np.conj(u0), np.conj(u1)], [-u1, u0]])


def _wilkinson(a, b, c, d):
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    mu1 = 0.5 * (a + d) + disc
    mu2 = 0.5 * (a + d) - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def _qr_triangularize(q, t, maxiter_per_eig):
    m = t.shape[0]
    hi = m - 1
    its = 0
    budget = maxiter_per_eig * max(m, 1)
    tnorm = max(np.linalg.norm(t), np.finfo(float).tiny)
    while hi > 0:
        lo = hi
        while lo > 0:
            ref = abs(t[lo, lo]) + abs(t[lo - 1, lo - 1])
            if ref == 0.0:
                ref = tnorm
            if abs(t[lo, lo - 1]) <= EPS * ref:
                t[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            its = 0
            continue
        its += 1
        budget -= 1
        if budget < 0:
            raise ConvergenceError(
                f"shifted QR did not converge; active block rows {lo}..{hi} undeflated",
                state={"lo": lo, "hi": hi, "t": t.copy()},
            )
        if its % 11 == 0:
            # exceptional shift to break cycles
            shift = t[hi, hi] + 0.75 * abs(t[hi, hi - 1]) * (1 + 1j)
        else:
            shift = _wilkinson(t[hi - 1, hi - 1], t[hi - 1, hi], t[hi, hi - 1], t[hi, hi])
        x, y = t[lo, lo] - shift, t[lo + 1, lo]
        for k in range(lo, hi):
            g = _givens(x, y)
            t[[k, k + 1], :] = g @ t[[k, k + 1], :]
            t[:, [k, k + 1]] = t[:, [k, k + 1]] @ dagger(g)
            q[:, [k, k + 1]] = q[:, [k, k + 1]] @ dagger(g)
            if k > lo:
                t[k + 1, k - 1] = 0.0
            if k < hi - 1:
                x, y = t[k + 1, k], t[k + 2, k]
    return q, t


def _swap(q, t, k):
    """Exchange diagonal entries k and k+1 by a unitary rotation."""
    t11, t12, t22 = t[k, k], t[k, k + 1], t[k + 1, k + 1]
    v = np.array([t12, t22 - t11])
    nv = np.linalg.norm(v)
    if nv == 0.0:
        return
    v = v / nv
    # first column spans the eigenvector of t22 inside the 2x2 block
    g = np.array([[v[0], -np.conj(v[1])], [v[1], np.conj(v[0])]])
    t[[k, k + 1], :] = dagger(g) @ t[[k, k + 1], :]
    t[:, [k, k + 1]] = t[:, [k, k + 1]] @ g
    q[:, [k, k + 1]] = q[:, [k, k + 1]] @ g
    t[k + 1, k] = 0.0


def reorder(form: SchurForm, selected) -> SchurForm:
    """Move the diagonal positions in ``selected`` to the leading block.

    Relative order inside and outside the selection is kept.
    """
    q, t = form.q.copy(), form.t.copy()
    order = list(form.ordering)
    chosen = set(selected)
    sel = [i in chosen for i in range(len(order))]
    dest = 0
    for i in range(len(order)):
        if not sel[i]:
            continue
        for k in range(i - 1, dest - 1, -1):
            _swap(q, t, k)
            order[k], order[k + 1] = order[k + 1], order[k]
            sel[k], sel[k + 1] = sel[k + 1], sel[k]
        dest += 1
    return SchurForm(q=q, t=np.triu(t), ordering=tuple(order))


def schur(h, center=None, count=None, tol=DEFAULT) -> SchurForm:
    """Complex Schur form ``Q^H h Q = T`` by Hessenberg reduction and shifted QR.

    With ``center`` and ``count`` given, the ``count`` diagonal entries
    nearest ``center`` are moved to the top-left block.
    """
    h = as_matrix(h)
    q, t = hessenberg(h)
    q, t = _qr_triangularize(q, t, tol.qr_maxiter_per_eig)
    form = SchurForm(q=q, t=np.triu(t), ordering=tuple(range(h.shape[0])))
    if center is not None:
        count = 1 if count is None else count
        dist = np.abs(np.diag(form.t) - center)
        form = reorder(form, sorted(np.argsort(dist, kind="stable")[:count]))
    return form


# ------------------------------------------------------------------- clusters


def cluster_eigenvalues(values, tol) -> list:
    """Single-linkage clusters (index lists, singletons included)."""
    if tol <= 0:
        raise ValueError("cluster tolerance must be positive")
    return single_linkage(np.asarray(values, dtype=np.complex128), tol)


def default_cluster_tol(eps, scale=1.0, n_guess=2) -> float:
    """``max(1e-6, 10 eps^(1/n)) * scale``: spread of an order-n cluster grows like eps^(1/n)."""
    return max(1e-6, 10.0 * eps ** (1.0 / n_guess)) * scale


@dataclass
class EPCluster:
    indices: list
    order: int
    center: complex  # mean of the perturbed cluster eigenvalues
    omega_ep: complex
    r_ep: np.ndarray
    l_ep: np.ndarray
    xi: float
    minor_denominator: float
    spectators: list
    schur: SchurForm
    h_at_ep: np.ndarray
    values: list = field(default_factory=list)
    self_overlap: float = float("nan")
    xi_residual: float = float("nan")
    auto: bool = False

    @property
    def truncated(self) -> bool:
        return not self.spectators


def ep_vectors(h_ep, omega_ep, tol=DEFAULT, check=True):
    """Unit ``(R_EP, L_EP)`` at a defective eigenvalue from the adjugate.

    With ``check`` the pair must be self-orthogonal to
    ``tol.self_orthogonality``; otherwise :class:`NotDefectiveError`.
    """
    h_ep = as_matrix(h_ep)
    m = h_ep.shape[0]
    adj = adjugate(omega_ep * np.eye(m) - h_ep).adj
    r = eigvec_from_adjugate(h_ep, omega_ep, "right", adj=adj, tol=tol)
    l = eigvec_from_adjugate(h_ep, omega_ep, "left", adj=adj, tol=tol)
    overlap = abs(np.vdot(l, r))
    if check and overlap > tol.self_orthogonality:
        raise NotDefectiveError(
            f"|<L_EP|R_EP>| = {overlap:.3e} at w={omega_ep:.6g}: eigenvalue is not defective"
        )
    return r, l


def xi_triple(t, n, omega_ep=None):
    """``(||N^(n-1)||_2, |prod N_k,k+1|, |p_n1(N)|)`` for the leading n x n block."""
    block = np.asarray(t, dtype=np.complex128)[:n, :n]
    if omega_ep is None:
        omega_ep = np.mean(np.diag(block))
    nil = block - omega_ep * np.eye(n)
    norm = two_norm(np.linalg.matrix_power(nil, n - 1))
    prod = abs(np.prod(np.diag(nil, 1)))
    mnr = abs(minor(nil, n, 1)) if n > 1 else 1.0
    return norm, prod, mnr


def xi(t, n, omega_ep=None, tol=1e-10) -> float:
    """``||N^(n-1)||_2`` for the triangular EP block, checked against the
    superdiagonal product and the corner minor."""
    norm, prod, mnr = xi_triple(t, n, omega_ep)
    scale = max(norm, prod, mnr, np.finfo(float).tiny)
    resid = max(abs(norm - prod), abs(norm - mnr), abs(prod - mnr)) / scale
    if resid > tol:
        raise IdentityError(
            f"xi identity violated: norm={norm:.6e}, product={prod:.6e}, minor={mnr:.6e}",
            residual=resid,
            operation="xi",
        )
    return norm


def asymptotic_rigidity_truncated(omega_i, omega_ep, n, xi_value) -> float:
    if xi_value <= 0:
        raise ValueError("xi must be positive")
    return float(abs(n * (omega_i - omega_ep) ** (n - 1)) / xi_value)


def ep_basis(r_ep, l_ep, completion=None) -> np.ndarray:
    """Orthonormal basis with ``R_EP`` first and ``L_EP`` last.

    The middle is filled by Gram-Schmidt over canonical vectors taken in
    ``completion`` order (default ``0..m-1``).
    """
    r = unit(r_ep)
    l = unit(l_ep - r * np.vdot(r, l_ep))
    m = r.shape[0]
    basis = [r, l]
    order = range(m) if completion is None else completion
    for k in order:
        if len(basis) == m:
            break
        e = np.zeros(m, dtype=np.complex128)
        e[k] = 1.0
        for _ in range(2):
            for b in basis:
                e = e - b * np.vdot(b, e)
        ne = np.linalg.norm(e)
        if ne > 1e-8:
            basis.append(e / ne)
    cols = [basis[0]] + basis[2:] + [basis[1]]
    return np.column_stack(cols)


def ep_minor(h_ep, omega_ep, r_ep, l_ep, completion=None) -> float:
    """``|p_{L_EP R_EP}(w_EP I - H_EP)|`` in a basis adapted to the EP pair."""
    h_ep = as_matrix(h_ep)
    m = h_ep.shape[0]
    u = ep_basis(r_ep, l_ep, completion)
    x = dagger(u) @ (omega_ep * np.eye(m) - h_ep) @ u
    # strike the L_EP row (last) and the R_EP column (first)
    return abs(det(x[:-1, 1:]))


def asymptotic_rigidity_general(h_ep, omega_ep, r_ep, l_ep, omega_i, cp, denominator=None) -> float:
    """``|p'(w_i)| / |p_{L_EP R_EP}(w_EP I - H_EP)|`` with ``p`` the full charpoly."""
    if denominator is None:
        denominator = ep_minor(h_ep, omega_ep, r_ep, l_ep)
    return float(abs(eval_p_prime(cp, omega_i)) / denominator)


# ------------------------------------------------------- geometric relations


@dataclass(frozen=True)
class Equipartition:
    products: np.ndarray  # R_k L_k^* for the n cluster directions
    target: complex  # <L|R> / n
    deviation: float  # max_k |products_k - target| / |target|


def _check_member(cluster: EPCluster, value):
    if cluster.values:
        gap = min(abs(value - v) for v in cluster.values)
        if gap > 1e-9 * max(1.0, abs(value)):
            raise ValueError(f"eigenvalue {value:.6g} is not a member of the cluster at {cluster.center:.6g}")


def equipartition_check(cluster: EPCluster, right, left, value=None) -> Equipartition:
    """Per-direction overlap products in the Schur basis of the EP matrix."""
    if value is not None:
        _check_member(cluster, value)
    n = cluster.order
    q = cluster.schur.q
    rq = dagger(q) @ unit(right)
    lq = dagger(q) @ unit(left)
    products = rq[:n] * np.conj(lq[:n])
    target = np.vdot(lq, rq) / n
    if target == 0:
        return Equipartition(products, complex(target), float("inf"))
    dev = float(np.max(np.abs(products - target)) / abs(target))
    return Equipartition(products, complex(target), dev)


def overlap_relation_check(cluster: EPCluster, right, left, value=None) -> complex:
    """``<L_i|R_i> / (n <L_EP|R_i> <L_i|L_EP>)`` for a truncated system.

    The ``<L_i|L_EP>`` factor aligns the arbitrary phase of the unit left
    vector with the EP one; its modulus tends to 1.
    """
    if value is not None:
        _check_member(cluster, value)
    if not cluster.truncated:
        raise ValueError("the overlap relation is only established for truncated systems")
    r, l = unit(right), unit(left)
    denom = cluster.order * np.vdot(cluster.l_ep, r) * np.vdot(l, cluster.l_ep)
    if abs(denom) <= 1e-300 or abs(np.vdot(l, r)) <= 1e-300:
        raise ValueError("overlap relation is 0/0 exactly at the EP; needs eps > 0")
    return complex(np.vdot(l, r) / denom)


def secular_shift(h_ep, h_prime, eps, omega_ep, order, cp_ep=None) -> list:
    """First-order predictions ``w_EP + delta * zeta`` (zeta^n = 1).

    ``delta^n = eps tr[H' adj(w_EP I - H_EP)] / prod_k (w_EP - w_k)`` from
    ``det(wI - H - eps H') ~ p(w) - eps tr[H' adj(wI - H)]``; the spectator
    product is the n-th Taylor coefficient of ``p`` at ``w_EP``.
    """
    h_ep = as_matrix(h_ep)
    h_prime = as_matrix(h_prime)
    m = h_ep.shape[0]
    cp_ep = faddeev_leverrier(h_ep) if cp_ep is None else cp_ep
    adj = adjugate(omega_ep * np.eye(m) - h_ep).adj
    trace = complex(np.trace(h_prime @ adj))
    if abs(trace) <= 1e-12 * max(np.linalg.norm(h_prime) * np.linalg.norm(adj), np.finfo(float).tiny):
        raise VanishingTraceError(
            "tr[H' adj(w_EP - H_EP)] vanishes: the perturbation does not lift the EP at first order"
        )
    spect = taylor_coeff(cp_ep, omega_ep, order)
    if spect == 0:
        raise VanishingTraceError("spectator product vanishes: EP order is higher than stated")
    delta = (eps * trace / spect) ** (1.0 / order)
    roots = np.exp(2j * np.pi * np.arange(order) / order)
    return [complex(omega_ep + delta * z) for z in roots]


# ------------------------------------------------------------------- reports


@dataclass
class StateReport:
    index: int
    omega: complex
    r_exact: float
    r_direct: float
    pred_truncated: float
    pred_general: float
    ratio_truncated: float
    ratio_general: float
    equipartition: Equipartition
    overlap_ratio: complex = complex("nan")


@dataclass
class EPReport:
    cluster: EPCluster
    states: list

    @property
    def equipartition_deviation(self) -> float:
        return max(s.equipartition.deviation for s in self.states)

    @property
    def general_deviation(self) -> float:
        return max(abs(s.ratio_general - 1.0) for s in self.states)


@dataclass
class AnalysisReport:
    eigensystem: object
    clusters: list
    skipped: list = field(default_factory=list)  # (indices, reason)


def _safe_ratio(a, b):
    return a / b if b != 0 else float("nan")


def build_cluster(h, indices, values, h_at_ep=None, tol=DEFAULT) -> EPCluster:
    """EP data for the perturbed eigenvalues ``values[indices]``."""
    h = as_matrix(h)
    auto = h_at_ep is None
    h_ep = h if auto else as_matrix(h_at_ep)
    members = [complex(values[i]) for i in indices]
    n = len(members)
    center = complex(np.mean(members))
    if auto:
        omega_ep = center
        others = [complex(values[i]) for i in range(len(values)) if i not in set(indices)]
    else:
        cp_ep = faddeev_leverrier(h_ep)
        ep_vals = np.array(eigenvalues(h_ep, cp_ep))
        near = np.argsort(np.abs(ep_vals - center), kind="stable")
        omega_ep = refine_multiple_root(cp_ep, ep_vals[near[:n]].mean(), n)
        others = [complex(v) for v in ep_vals[near[n:]]]
    r_ep, l_ep = ep_vectors(h_ep, omega_ep, tol=tol, check=not auto)
    form = schur(h_ep, center=omega_ep, count=n, tol=tol)
    norm, prod, mnr = xi_triple(form.t, n, omega_ep)
    scale = max(norm, prod, mnr, np.finfo(float).tiny)
    return EPCluster(
        indices=list(indices),
        order=n,
        center=center,
        omega_ep=complex(omega_ep),
        r_ep=r_ep,
        l_ep=l_ep,
        xi=norm,
        minor_denominator=ep_minor(h_ep, omega_ep, r_ep, l_ep),
        spectators=others,
        schur=form,
        h_at_ep=h_ep,
        values=members,
        self_overlap=float(abs(np.vdot(l_ep, r_ep))),
        xi_residual=float(max(abs(norm - prod), abs(norm - mnr)) / scale),
        auto=auto,
    )


def analyze_cluster(es, cluster: EPCluster) -> EPReport:
    states = []
    for idx in cluster.indices:
        pair = es.pairs[idx]
        r_exact = abs(pair.rigidity)
        trunc = (
            asymptotic_rigidity_truncated(pair.value, cluster.omega_ep, cluster.order, cluster.xi)
            if cluster.xi > 0
            else float("nan")
        )
        gen = float(abs(eval_p_prime(es.charpoly, pair.value)) / cluster.minor_denominator)
        if pair.defective:
            # exactly at the EP every ratio is 0/0
            trunc = gen = float("nan")
            eq = Equipartition(np.full(cluster.order, np.nan + 0j), 0j, float("nan"))
        else:
            eq = equipartition_check(cluster, pair.right, pair.left)
        ov = complex("nan")
        if cluster.truncated and not pair.defective:
            try:
                ov = overlap_relation_check(cluster, pair.right, pair.left)
            except ValueError:
                pass
        states.append(
            StateReport(
                index=idx,
                omega=pair.value,
                r_exact=r_exact,
                r_direct=abs(pair.rigidity_direct),
                pred_truncated=trunc,
                pred_general=gen,
                ratio_truncated=_safe_ratio(r_exact, trunc),
                ratio_general=_safe_ratio(r_exact, gen),
                equipartition=eq,
                overlap_ratio=ov,
            )
        )
    return EPReport(cluster=cluster, states=states)


def ep_report(h, h_at_ep=None, cluster_tol=None, tol=DEFAULT) -> AnalysisReport:
    """Eigensystem plus a report for every quasi-degenerate cluster.

    ``cluster_tol`` defaults to ``1e-3 * max(1, ||h||_F)``. Clusters whose
    EP data cannot be built (semisimple degeneracies, for instance) are
    listed in ``skipped`` with the reason.
    """
    h = as_matrix(h)
    es = eigensystem(h, tol=tol)
    values = es.values
    scale = max(1.0, float(np.linalg.norm(h)))
    ctol = 1e-3 * scale if cluster_tol is None else cluster_tol
    out = AnalysisReport(eigensystem=es, clusters=[])
    for group in cluster_eigenvalues(values, ctol):
        if len(group) < 2:
            continue
        if any(es.pairs[i].semisimple_degenerate for i in group):
            out.skipped.append((group, "semisimple degeneracy (not an EP)"))
            continue
        try:
            cluster = build_cluster(h, group, values, h_at_ep=h_at_ep, tol=tol)
        except (NotDefectiveError, IdentityError) as exc:
            out.skipped.append((group, str(exc)))
            continue
        out.clusters.append(analyze_cluster(es, cluster))
    return out
