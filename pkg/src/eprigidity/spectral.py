"""Eigenvalues, left/right eigenvectors and the phase rigidity.

Eigenvalues come from the characteristic polynomial (Aberth-Ehrlich plus
Newton polishing). Eigenvectors come from a row/column of
``adj(w_i I - H)``, with shifted inverse iteration as an independent route.
The rigidity is evaluated twice: as the normalized overlap ``<L|R>`` and as
the ratio ``p'(w_i) / A_{R L}(w_i I - H)``, which stays well conditioned as
an exceptional point is approached.

Left eigenvectors are stored as the column ``L`` with ``L^H H = w L^H``.
"""
import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .adjugate import adjugate, adjugate_element
from .charpoly import CharPoly, eval_p_prime, eval_with_bound, faddeev_leverrier, taylor_coeff
from .config import DEFAULT, Tolerances
from .errors import (
    AllPivotsNullError,
    ConvergenceError,
    DegenerateDenominatorError,
    EPRigidityError,
    SingularMatrixError,
)
from .linalg import as_matrix, dagger, fix_phase, lu_factor, lu_solve, unit

EPS = np.finfo(float).eps


# ---------------------------------------------------------------- eigenvalues


def _sort_key(z):
    return (round(z.real, 12), round(z.imag, 12))


def root_scale(cp) -> float:
    """Fujiwara-style radius ``max_k |a_k|^(1/k)`` of the roots about 0."""
    c = cp.coeffs if isinstance(cp, CharPoly) else np.asarray(cp)
    n = len(c) - 1
    return max((abs(c[k]) ** (1.0 / k) for k in range(1, n + 1)), default=0.0)


def aberth_roots(coeffs, maxiter=None, polish_steps=None) -> np.ndarray:
    """All roots of a monic polynomial (highest power first), by multiplicity."""
    maxiter = DEFAULT.root_maxiter if maxiter is None else maxiter
    polish_steps = DEFAULT.newton_polish_steps if polish_steps is None else polish_steps
    c = np.asarray(coeffs, dtype=np.complex128)
    n = len(c) - 1
    if n == 0:
        return np.zeros(0, dtype=np.complex128)
    if n == 1:
        return np.array([-c[1]])
    center = -c[1] / n
    shifted = [taylor_coeff(c, center, n - k) for k in range(n + 1)]
    radius = root_scale(shifted)
    if radius == 0.0:
        return np.full(n, center, dtype=np.complex128)
    scale = max(root_scale(c), abs(center))
    z = center + radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    frozen = np.zeros(n, dtype=bool)
    for _ in range(maxiter):
        for i in range(n):
            if frozen[i]:
                continue
            p, dp, bound = eval_with_bound(c, z[i])
            if abs(p) <= bound:
                frozen[i] = True
                continue
            diff = z[i] - np.delete(z, i)
            diff = diff[diff != 0]
            s = np.sum(1.0 / diff)
            if dp == 0:
                corr = radius * 1e-3 * cmath.exp(1j * i)
            else:
                ratio = p / dp
                corr = ratio / (1.0 - ratio * s)
            z[i] -= corr
            if abs(corr) <= 4 * EPS * max(abs(z[i]), EPS * scale):
                frozen[i] = True
        if frozen.all():
            break
    else:
        bad = [complex(z[i]) for i in np.flatnonzero(~frozen)]
        raise ConvergenceError(
            f"Aberth iteration did not converge in {maxiter} sweeps; unconverged estimates {bad}",
            state=z.copy(),
        )
    return _newton_polish(c, z, polish_steps)


def _newton_polish(c, z, steps) -> np.ndarray:
    z = z.copy()
    n = len(z)
    for i in range(n):
        others = np.delete(z, i)
        gap = np.min(np.abs(others - z[i])) if n > 1 else np.inf
        p, dp, bound = eval_with_bound(c, z[i])
        for _ in range(steps):
            if abs(p) <= bound or dp == 0:
                break
            step = p / dp
            if abs(step) > gap / 3:
                break
            cand = z[i] - step
            pc, dpc, bc = eval_with_bound(c, cand)
            if abs(pc) >= abs(p):
                break
            z[i], p, dp, bound = cand, pc, dpc, bc
    return z


def eigenvalues(h, cp=None) -> list:
    """All eigenvalues of ``h`` (with multiplicity), sorted by (re, im)."""
    cp = faddeev_leverrier(h) if cp is None else cp
    roots = aberth_roots(cp.coeffs)
    return sorted((complex(r) for r in roots), key=_sort_key)


def coincident_groups(cp, values, h_norm=None, safety=None):
    """Group roots that are numerically one multiple root.

    Roots within a generous linking distance are candidates. A candidate
    group of size ``k`` around ``c`` is accepted when its spread is within the
    radius at which rounding alone can split a ``k``-fold root,
    ``(noise / |p^(k)(c)/k!|)^(1/k)``, where ``noise`` is the larger of the
    Horner evaluation bound and the backward-error change of ``p(c)``,
    ``safety * eps * ||H|| * ||adj(cI - H)||``. Returns index lists
    (singletons included).
    """
    vals = np.asarray(values, dtype=np.complex128)
    n = len(vals)
    scale = max(1.0, root_scale(cp))
    h_norm = scale if h_norm is None else h_norm
    safety = 100.0 * max(n, 1) if safety is None else safety
    link = 2.0 * (safety * EPS) ** (1.0 / max(n, 1)) * scale

    def accepted(g):
        center = vals[g].mean()
        spread = np.max(np.abs(vals[g] - center))
        _, _, bound = eval_with_bound(cp, center)
        backward = safety * EPS * h_norm * float(np.linalg.norm(cp.adj(center)))
        noise = max(16.0 * bound, backward, EPS * EPS)
        lead = abs(taylor_coeff(cp, center, len(g)))
        radius = (noise / lead) ** (1.0 / len(g)) if lead > 0 else np.inf
        return spread <= radius

    out = []
    # rejected candidates are re-split at a shorter link until accepted or single
    stack = [(g, link) for g in single_linkage(vals, link)]
    while stack:
        g, lk = stack.pop()
        if len(g) == 1 or accepted(g):
            out.append(g)
            continue
        sub = single_linkage(vals[g], lk / 4)
        stack.extend(([g[i] for i in s], lk / 4) for s in sub)
    return sorted(out, key=lambda g: g[0])


def refine_multiple_root(cp, z0, k, steps=8) -> complex:
    """Polish the center of a ``k``-fold root as a simple root of ``p^(k-1)``."""
    z = complex(z0)
    if k < 2:
        return z
    for _ in range(steps):
        f = taylor_coeff(cp, z, k - 1)
        df = k * taylor_coeff(cp, z, k)
        if df == 0 or f == 0:
            break
        step = f / df
        z -= step
        if abs(step) <= 4 * EPS * max(abs(z), 1.0):
            break
    return complex(z)


def single_linkage(vals, tol):
    n = len(vals)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= tol:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


# --------------------------------------------------------------- eigenvectors


def _null_floor(x, tol: Tolerances):
    m = x.shape[0]
    return tol.null_pivot * max(1.0, float(np.linalg.norm(x))) ** (m - 1)


def eigvec_from_adjugate(h, omega, side="right", pivot="auto", adj=None, tol=DEFAULT):
    """Eigenvector from one column (right) or row (left) of ``adj(wI - H)``.

    ``pivot`` is the 1-based column ``s`` (right) or row ``t`` (left); with
    ``"auto"`` the one of largest norm is used. Raises
    :class:`AllPivotsNullError` when every candidate is numerically zero.
    """
    h = as_matrix(h)
    m = h.shape[0]
    if m == 1:
        return np.ones(1, dtype=np.complex128)
    x = omega * np.eye(m) - h
    a = adjugate(x).adj if adj is None else adj
    cand = a if side == "right" else np.conj(a).T  # columns are candidates
    norms = np.linalg.norm(cand, axis=0)
    if pivot == "auto":
        j = int(np.argmax(norms))
    else:
        j = int(pivot) - 1
    if norms[j] <= _null_floor(x, tol):
        raise AllPivotsNullError(
            f"adjugate of (wI - H) at w={omega:.6g} has no usable {side} pivot "
            f"(max norm {norms.max():.3e}); geometric multiplicity > 1?"
        )
    return fix_phase(cand[:, j])


def eigvec_inverse_iteration(h, omega, side="right", seed=0, tol=DEFAULT):
    """Shifted inverse iteration from a seeded random start."""
    h = as_matrix(h)
    m = h.shape[0]
    a = h if side == "right" else dagger(h)
    w = omega if side == "right" else np.conj(omega)
    rng = np.random.default_rng(seed)
    x = unit(rng.standard_normal(m) + 1j * rng.standard_normal(m))
    scale = max(1.0, float(np.linalg.norm(h)))
    # nudge the shift off the eigenvalue so the factorization exists
    eta = 1e-10 * scale
    for _ in range(8):
        try:
            lu, perm = lu_factor(a - (w + eta * (1 + 1j) / np.sqrt(2)) * np.eye(m))
            break
        except SingularMatrixError:
            eta *= 10
    else:
        raise ConvergenceError("inverse iteration could not factor the shifted matrix")
    for _ in range(tol.inviter_maxiter):
        y = fix_phase(lu_solve(lu, perm, x))
        if np.linalg.norm(y - x) <= tol.inviter_tol * 10:
            return y
        x = y
    raise ConvergenceError(
        f"inverse iteration at w={omega:.6g} did not converge in {tol.inviter_maxiter} steps",
        state=x,
    )


# ------------------------------------------------------------------- rigidity


def rigidity_direct(left, right) -> complex:
    """``<L|R> / (|L| |R|)``."""
    left = np.asarray(left, dtype=np.complex128)
    right = np.asarray(right, dtype=np.complex128)
    return complex(np.vdot(left, right) / (np.linalg.norm(left) * np.linalg.norm(right)))


def rigidity_exact(h, omega, right, left, cp=None, adj=None, tol=DEFAULT) -> complex:
    """``p'(w_i) / A_{R L}(w_i I - H)``; equal to :func:`rigidity_direct` exactly."""
    h = as_matrix(h)
    m = h.shape[0]
    if m == 1:
        return 1.0 + 0j
    cp = faddeev_leverrier(h) if cp is None else cp
    x = omega * np.eye(m) - h
    pp = eval_p_prime(cp, omega)
    a = adjugate_element(right, left, x, adj=adj)
    floor = tol.degenerate * max(1.0, float(np.linalg.norm(h))) ** (m - 1)
    if abs(a) <= floor and abs(pp) <= floor or a == 0:
        raise DegenerateDenominatorError(
            f"|p'|={abs(pp):.3e} and |A|={abs(a):.3e} both vanish at w={omega:.6g}; "
            "use the asymptotic EP formulas"
        )
    return complex(pp / a)


# ---------------------------------------------------------------- eigensystem


@dataclass
class Eigenpair:
    value: complex
    right: np.ndarray
    left: np.ndarray
    rigidity: complex
    petermann: float
    rigidity_direct: complex = complex("nan")
    rigidity_exact: complex = complex("nan")
    disagreement: float = float("nan")
    defective: bool = False
    semisimple_degenerate: bool = False
    group: tuple = ()
    route: str = "adjugate"


@dataclass
class Eigensystem:
    matrix: np.ndarray
    pairs: list
    charpoly: CharPoly
    residuals: list = field(default_factory=list)

    @property
    def values(self):
        return [p.value for p in self.pairs]

    def biorthogonality(self) -> float:
        """Largest ``|<L_i|R_j>|`` over pairs with distinct values."""
        worst = 0.0
        for i, a in enumerate(self.pairs):
            for j, b in enumerate(self.pairs):
                if i != j and a.group != b.group:
                    worst = max(worst, abs(np.vdot(a.left, b.right)))
        return worst


def _petermann(r) -> float:
    mag = abs(r)
    if mag == 0.0:
        return math.inf
    return max(1.0, mag**-2)


def _simple_pair(h, cp, omega, tol, index):
    m = h.shape[0]
    route = "adjugate"
    adj = adjugate(omega * np.eye(m) - h).adj if m > 1 else None
    try:
        right = eigvec_from_adjugate(h, omega, "right", adj=adj, tol=tol)
        left = eigvec_from_adjugate(h, omega, "left", adj=adj, tol=tol)
    except AllPivotsNullError:
        route = "inverse-iteration"
        right = eigvec_inverse_iteration(h, omega, "right", tol=tol)
        left = eigvec_inverse_iteration(h, omega, "left", tol=tol)
    direct = rigidity_direct(left, right)
    exact = rigidity_exact(h, omega, right, left, cp=cp, adj=adj, tol=tol)
    dis = abs(exact - direct) / max(abs(exact), abs(direct), EPS)
    return Eigenpair(
        value=omega,
        right=right,
        left=left,
        rigidity=exact,
        petermann=_petermann(exact),
        rigidity_direct=direct,
        rigidity_exact=exact,
        disagreement=dis,
        group=(index,),
        route=route,
    )


def _degenerate_pairs(h, cp, center, group, tol):
    m = h.shape[0]
    x = center * np.eye(m) - h
    u, s, vh = np.linalg.svd(x)
    floor = 1e-8 * max(1.0, float(s[0]))
    nullity = int(np.sum(s <= floor))
    k = len(group)
    if nullity <= 1:
        # defective: one eigenpair for the whole group, r = 0 at the EP
        right = eigvec_from_adjugate(h, center, "right", tol=tol)
        left = eigvec_from_adjugate(h, center, "left", tol=tol)
        direct = rigidity_direct(left, right)
        return [
            Eigenpair(
                value=center,
                right=right,
                left=left,
                rigidity=0j,
                petermann=math.inf,
                rigidity_direct=direct,
                rigidity_exact=0j,
                disagreement=abs(direct),
                defective=True,
                group=tuple(group),
                route="ep",
            )
            for _ in group
        ]
    if nullity < k:
        raise AllPivotsNullError(
            f"eigenvalue {center:.6g} has algebraic multiplicity {k} and geometric "
            f"multiplicity {nullity}; mixed Jordan structure is not supported"
        )
    # semisimple: biorthogonal bases of the right and left eigenspaces
    vr = np.conj(vh[-k:]).T
    wl = u[:, -k:]
    mix = dagger(wl) @ vr
    duals = wl @ np.linalg.inv(mix).conj().T
    pairs = []
    for j in range(k):
        right = fix_phase(vr[:, j])
        # carry the phase applied to the right vector over to its dual
        left = duals[:, j] * np.vdot(vr[:, j], right)
        r = rigidity_direct(left, right)
        pairs.append(
            Eigenpair(
                value=center,
                right=right,
                left=unit(left),
                rigidity=r,
                petermann=_petermann(r),
                rigidity_direct=r,
                semisimple_degenerate=True,
                group=tuple(group),
                route="null-space",
            )
        )
    return pairs


def eigensystem(h, tol=DEFAULT) -> Eigensystem:
    h = as_matrix(h)
    m = h.shape[0]
    cp = faddeev_leverrier(h)
    values = np.array(eigenvalues(h, cp))
    pairs = []
    for g in coincident_groups(cp, values, h_norm=float(np.linalg.norm(h))):
        try:
            if len(g) == 1:
                pairs.append(_simple_pair(h, cp, complex(values[g[0]]), tol, g[0]))
            else:
                center = refine_multiple_root(cp, values[g].mean(), len(g))
                pairs.extend(_degenerate_pairs(h, cp, center, g, tol))
        except EPRigidityError as exc:
            exc.args = (f"eigenvalue #{g[0]} ({values[g[0]]:.6g}): {exc.args[0]}",) + exc.args[1:]
            exc.eigenvalue_index = g[0]
            raise
    pairs.sort(key=lambda p: _sort_key(p.value))
    scale = max(1.0, float(np.linalg.norm(h)))
    residuals = [
        (
            float(np.linalg.norm(h @ p.right - p.value * p.right)) / scale,
            float(np.linalg.norm(dagger(p.left) @ h - p.value * dagger(p.left))) / scale,
        )
        for p in pairs
    ]
    return Eigensystem(matrix=h, pairs=pairs, charpoly=cp, residuals=residuals)
