"""Minors, adjugates and the normalized adjugate element A_vw(X).

Indices in the public functions are 1-based to match the usual matrix
notation ``p_kl``; array access inside is 0-based.
"""
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .charpoly import faddeev_leverrier
from .errors import DimensionError
from .linalg import as_matrix, as_vector, batched_det, det

Method = Literal["cofactor", "faddeev", "both"]


@dataclass(frozen=True)
class AdjugateResult:
    adj: np.ndarray
    method: str
    cross_check_residual: float = float("nan")


def minor(x, k, l) -> complex:
    """Determinant of ``x`` with row ``k`` and column ``l`` removed (1-based)."""
    x = as_matrix(x)
    m = x.shape[0]
    if m < 2:
        raise DimensionError("minors need dim >= 2")
    if not (1 <= k <= m and 1 <= l <= m):
        raise IndexError(f"minor index ({k}, {l}) outside 1..{m}")
    sub = np.delete(np.delete(x, k - 1, axis=0), l - 1, axis=1)
    return det(sub)


def all_minors(x) -> np.ndarray:
    """Array ``P`` with ``P[k, l] = p_{k+1, l+1}(x)``; one batched LU pass."""
    x = as_matrix(x)
    m = x.shape[0]
    if m < 2:
        raise DimensionError("minors need dim >= 2")
    idx = np.arange(m)
    keep = np.array([idx[idx != k] for k in range(m)])  # (m, m-1)
    # stack[k, l] = x[keep[k]][:, keep[l]]
    stack = x[keep[:, None, :, None], keep[None, :, None, :]]
    return batched_det(stack.reshape(m * m, m - 1, m - 1)).reshape(m, m)


def _cofactor_adj(x) -> np.ndarray:
    p = all_minors(x)
    m = x.shape[0]
    sign = (-1.0) ** np.add.outer(np.arange(m), np.arange(m))
    # adj_kl = (-1)^(k+l) p_lk
    return sign * p.T


def adjugate(x, method: Method = "cofactor") -> AdjugateResult:
    """Adjugate of ``x``; ``x @ adj == adj @ x == det(x) I``.

    ``cofactor`` takes every entry from an LU minor. ``faddeev`` reads the
    constant term of the Faddeev-LeVerrier adjugate polynomial of ``-x``.
    ``both`` returns the cofactor result and records the relative
    disagreement between the two.
    """
    x = as_matrix(x)
    if x.shape[0] < 2:
        raise DimensionError("adjugate needs dim >= 2")
    if method == "cofactor":
        return AdjugateResult(_cofactor_adj(x), "cofactor")
    # adj(wI - H) at w = 0 with H = -x is adj(x)
    fl = faddeev_leverrier(-x).adj(0.0)
    if method == "faddeev":
        return AdjugateResult(fl, "faddeev")
    if method == "both":
        co = _cofactor_adj(x)
        scale = max(np.linalg.norm(co), np.linalg.norm(fl), np.finfo(float).tiny)
        return AdjugateResult(co, "both", float(np.linalg.norm(co - fl) / scale))
    raise ValueError(f"unknown adjugate method {method!r}")


def adjugate_element(v, w, x, adj=None) -> complex:
    """``A_vw(x) = v_hat^H adj(x) w_hat`` with unit-normalized ``v`` and ``w``.

    The cofactor sign is ``(-1)^(k+l)``. Pass ``adj`` to reuse an adjugate
    that is already at hand.
    """
    x = as_matrix(x)
    m = x.shape[0]
    v = as_vector(v, m)
    w = as_vector(w, m)
    nv, nw = np.linalg.norm(v), np.linalg.norm(w)
    if nv == 0.0 or nw == 0.0:
        raise ValueError("adjugate_element needs nonzero vectors")
    a = adjugate(x).adj if adj is None else adj
    return complex(np.vdot(v / nv, a @ (w / nw)))
