"""Brute-force reference computations in extended precision.

Nothing here touches the main code path: determinants and adjugates come
from memoized cofactor (Laplace) expansion, eigenvalues from mpmath's
Hessenberg-QR at 40 significant digits, eigenvectors from the SVD null
space of ``wI - H``. Slow by design; dimensions are capped.
"""
from functools import lru_cache
from itertools import combinations

import mpmath
import numpy as np

DPS = 40
DET_CAP = 10
EIGEN_CAP = 16


class OracleCapError(ValueError):
    pass


def _check_square(x, cap):
    a = np.asarray(x, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"oracle needs a square matrix, got shape {a.shape}")
    if a.shape[0] > cap:
        raise OracleCapError(f"dimension {a.shape[0]} exceeds oracle cap {cap}")
    return a


def _wide_entries(a):
    m = a.shape[0]
    return [[mpmath.mpc(complex(a[i, j])) for j in range(m)] for i in range(m)]


def to_complex(w) -> complex:
    return complex(w)


def _laplace_det(rows):
    """Determinant of a list-of-lists of mpc by memoized first-row expansion."""
    m = len(rows)
    if m == 0:
        return mpmath.mpc(1)

    @lru_cache(maxsize=None)
    def sub(depth, cols):
        # det of rows[depth:] restricted to the column tuple ``cols``
        if not cols:
            return mpmath.mpc(1)
        total = mpmath.mpc(0)
        for pos, c in enumerate(cols):
            entry = rows[depth][c]
            if entry == 0:
                continue
            term = entry * sub(depth + 1, cols[:pos] + cols[pos + 1 :])
            total = total - term if pos % 2 else total + term
        return total

    return sub(0, tuple(range(m)))


def oracle_det(x):
    """Extended-precision determinant (``mpmath.mpc``)."""
    a = _check_square(x, DET_CAP)
    with mpmath.workdps(DPS):
        return _laplace_det(_wide_entries(a))


def oracle_adjugate(x):
    """Extended-precision adjugate as a list of lists of ``mpmath.mpc``."""
    a = _check_square(x, DET_CAP)
    m = a.shape[0]
    with mpmath.workdps(DPS):
        e = _wide_entries(a)
        if m == 1:
            return [[mpmath.mpc(1)]]
        out = [[None] * m for _ in range(m)]
        for k in range(m):
            for l in range(m):
                # adj_kl = (-1)^(k+l) * minor with row l and column k removed
                rows = [[e[i][j] for j in range(m) if j != k] for i in range(m) if i != l]
                d = _laplace_det(rows)
                out[k][l] = d if (k + l) % 2 == 0 else -d
        return out


def oracle_charpoly(x):
    """Coefficients 1, a_1..a_n of det(wI - H) from signed sums of principal minors."""
    a = _check_square(x, DET_CAP)
    m = a.shape[0]
    with mpmath.workdps(DPS):
        e = _wide_entries(a)
        coeffs = [mpmath.mpc(1)]
        for k in range(1, m + 1):
            s = mpmath.mpc(0)
            for idx in combinations(range(m), k):
                s += _laplace_det([[e[i][j] for j in idx] for i in idx])
            coeffs.append(s if k % 2 == 0 else -s)
        return coeffs


def wide_matrix_to_numpy(rows) -> np.ndarray:
    return np.array([[complex(v) for v in r] for r in rows], dtype=np.complex128)


def oracle_eigen(x):
    """Eigenvalues with unit right/left null vectors of ``wI - H``.

    Returns ``(values, rights, lefts)``: ``values`` is a list of ``mpc``
    sorted by (re, im); ``rights[i]``/``lefts[i]`` are lists of ``mpc``
    with ``H R = w R`` and ``L^H H = w L^H``.
    """
    a = _check_square(x, EIGEN_CAP)
    m = a.shape[0]
    with mpmath.workdps(DPS):
        mat = mpmath.matrix(_wide_entries(a))
        vals = mpmath.eig(mat, left=False, right=False)
        vals = sorted(vals, key=lambda z: (float(mpmath.re(z)), float(mpmath.im(z))))
        rights, lefts = [], []
        for w in vals:
            shifted = w * mpmath.eye(m) - mat
            u, s, v = mpmath.svd_c(shifted)
            k = min(range(m), key=lambda i: s[i])
            rights.append([mpmath.conj(v[k, j]) for j in range(m)])
            lefts.append([u[j, k] for j in range(m)])
        return vals, rights, lefts


def oracle_eigen_numpy(x):
    """:func:`oracle_eigen` rounded to complex128 arrays (vectors as columns)."""
    vals, rights, lefts = oracle_eigen(x)
    return (
        np.array([complex(v) for v in vals]),
        np.array([[complex(c) for c in r] for r in rights]).T,
        np.array([[complex(c) for c in l] for l in lefts]).T,
    )
