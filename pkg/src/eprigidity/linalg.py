"""Dense complex linear algebra used by every other module.

Matrices are plain ``complex128`` numpy arrays of shape ``(m, m)``; vectors
are 1-d arrays. Nothing here keeps state, so all functions are safe to call
concurrently.
"""
import numpy as np

from .config import DEFAULT
from .errors import ConvergenceError, DimensionError, SingularMatrixError


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex128 array, validating shape and finiteness."""
    x = np.array(a, dtype=np.complex128)
    if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("matrix has non-finite entries")
    return x


def as_vector(v, dim=None) -> np.ndarray:
    x = np.array(v, dtype=np.complex128).reshape(-1)
    if dim is not None and x.shape[0] != dim:
        raise DimensionError(f"vector has length {x.shape[0]}, expected {dim}")
    return x


def matmul(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"matmul of shapes {a.shape} and {b.shape}")
    return a @ b


def dagger(a) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def frob(a) -> float:
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


def two_norm(x, tol=None, maxiter=None) -> float:
    """Largest singular value by power iteration on ``X^H X``.

    Stops once the Rayleigh quotient changes by less than ``tol`` (relative)
    on two consecutive steps. Works for rectangular input too.
    """
    tol = DEFAULT.norm_tol if tol is None else tol
    maxiter = DEFAULT.norm_maxiter if maxiter is None else maxiter
    x = np.asarray(x, dtype=np.complex128)
    if x.size == 0 or not np.any(x):
        return 0.0
    # scale out the magnitude so the iteration runs on O(1) numbers
    s = np.max(np.abs(x))
    y = x / s
    g = dagger(y) @ y
    rng = np.random.default_rng(12345)
    n = g.shape[0]
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    # bias towards the heaviest column so diagonal cases converge in one step
    v += 4.0 * np.sqrt(np.real(np.diag(g)))
    v /= np.linalg.norm(v)
    lam = 0.0
    quiet = 0
    for _ in range(maxiter):
        w = g @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            # start vector landed in the null space; rotate it
            v = np.roll(v, 1) + 1e-3
            v /= np.linalg.norm(v)
            continue
        new = float(np.real(np.vdot(v, w)))
        v = w / nw
        if abs(new - lam) <= tol * abs(new):
            quiet += 1
            if quiet >= 2:
                return float(s * np.sqrt(max(new, 0.0)))
        else:
            quiet = 0
        lam = new
    raise ConvergenceError(
        f"two_norm: power iteration did not settle in {maxiter} steps", state=s * np.sqrt(lam)
    )


def lu_factor(a, pivot_threshold=None):
    """Partial-pivoted LU, ``P a = L U`` packed into one array.

    Returns ``(lu, perm)`` where ``perm[k]`` is the original row now at
    position ``k``. Raises :class:`SingularMatrixError` when a pivot falls
    below ``pivot_threshold`` times the largest row norm of ``a``.
    """
    pivot_threshold = DEFAULT.pivot_threshold if pivot_threshold is None else pivot_threshold
    lu = np.array(a, dtype=np.complex128)
    m = lu.shape[0]
    perm = np.arange(m)
    scale = np.max(np.linalg.norm(lu, axis=1)) if m else 0.0
    floor = pivot_threshold * scale
    for k in range(m):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        piv = lu[p, k]
        if abs(piv) <= floor or piv == 0:
            raise SingularMatrixError(
                f"pivot {abs(piv):.3e} at step {k} below threshold {floor:.3e}", pivot=piv, index=k
            )
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1 :, k] /= piv
        lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    return lu, perm


def lu_solve(lu, perm, b) -> np.ndarray:
    m = lu.shape[0]
    y = np.array(b, dtype=np.complex128)[perm]
    for k in range(m):
        y[k + 1 :] -= lu[k + 1 :, k] * y[k]
    for k in range(m - 1, -1, -1):
        y[k] = (y[k] - lu[k, k + 1 :] @ y[k + 1 :]) / lu[k, k]
    return y


def solve(a, b, pivot_threshold=None, full_output=False):
    """Solve ``a x = b``. With ``full_output`` also return ``||a x - b||``."""
    a = as_matrix(a)
    b = as_vector(b, a.shape[0])
    lu, perm = lu_factor(a, pivot_threshold)
    x = lu_solve(lu, perm, b)
    if full_output:
        return x, float(np.linalg.norm(a @ x - b))
    return x


def det(a) -> complex:
    """Determinant by partial-pivoted elimination (no singularity error)."""
    return complex(batched_det(np.asarray(a, dtype=np.complex128)[None])[0])


def batched_det(stack) -> np.ndarray:
    """Determinants of a stack ``(b, k, k)`` by vectorized partial-pivot LU."""
    u = np.array(stack, dtype=np.complex128)
    nb, k, _ = u.shape
    if k == 0:
        return np.ones(nb, dtype=np.complex128)
    out = np.ones(nb, dtype=np.complex128)
    rows = np.arange(nb)
    for j in range(k):
        p = j + np.argmax(np.abs(u[:, j:, j]), axis=1)
        swap = p != j
        if np.any(swap):
            top = u[rows, j].copy()
            u[rows, j] = u[rows, p]
            u[rows, p] = top
            out[swap] = -out[swap]
        piv = u[:, j, j]
        out *= piv
        nz = piv != 0
        if j + 1 < k and np.any(nz):
            f = np.zeros((nb, k - j - 1), dtype=np.complex128)
            f[nz] = u[nz, j + 1 :, j] / piv[nz, None]
            u[:, j + 1 :, j + 1 :] -= f[:, :, None] * u[:, None, j, j + 1 :]
    return out


def householder(x):
    """Reflector ``I - 2 v v^H`` mapping ``x`` onto a multiple of ``e1``.

    Returns ``None`` when ``x[1:]`` is already zero.
    """
    alpha = np.linalg.norm(x[1:])
    if alpha == 0.0:
        return None
    nx = np.linalg.norm(x)
    phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
    v = x.astype(np.complex128).copy()
    v[0] += phase * nx
    v /= np.linalg.norm(v)
    return v


def hessenberg(a):
    """Unitary reduction to upper Hessenberg form: ``Q^H a Q = Hess``."""
    h = as_matrix(a).copy()
    m = h.shape[0]
    q = np.eye(m, dtype=np.complex128)
    for k in range(m - 2):
        v = householder(h[k + 1 :, k])
        if v is None:
            continue
        h[k + 1 :, k:] -= 2.0 * np.outer(v, np.conj(v) @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, np.conj(v))
        q[:, k + 1 :] -= 2.0 * np.outer(q[:, k + 1 :] @ v, np.conj(v))
        h[k + 2 :, k] = 0.0
    return q, h


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ValueError("cannot normalize a zero vector")
    return v / n


def fix_phase(v) -> np.ndarray:
    """Unit-normalize and rotate so the largest-magnitude entry is real positive.

    Ties go to the lowest index.
    """
    v = unit(v)
    mags = np.abs(v)
    k = int(np.argmax(mags >= mags.max() * (1 - 1e-12)))
    return v * (np.conj(v[k]) / abs(v[k]))


def vector_angle(u, v) -> float:
    """Angle between the complex lines spanned by ``u`` and ``v``."""
    uu, vv = unit(u), unit(v)
    # sine of the angle from the orthogonal residual; accurate for tiny angles
    resid = np.linalg.norm(vv - uu * np.vdot(uu, vv))
    return float(np.arcsin(min(1.0, resid)))


def null_space_dim(a, rtol=1e-8) -> int:
    """Numerical nullity of ``a`` (singular values below ``rtol * max(1, ||a||)``)."""
    s = np.linalg.svd(np.asarray(a, dtype=np.complex128), compute_uv=False)
    scale = max(1.0, float(s[0]) if s.size else 0.0)
    return int(np.sum(s <= rtol * scale))


def random_unitary(m, rng) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
