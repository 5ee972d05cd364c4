"""Characteristic polynomial p(w) = det(wI - H) and its near-EP asymptotics.

Coefficients are stored highest power first: ``coeffs[0] = 1`` and
``p(w) = sum_k coeffs[k] * w**(n - k)``. The Faddeev-LeVerrier recursion
produces them together with the matrices ``B_k`` of the adjugate polynomial
``adj(wI - H) = sum_k w**k B_k``.

The recursion divides only by the integers ``1..n`` but it does lose digits
as the dimension grows; beyond m ~ 20 cross-check against :mod:`.oracle`.
"""
from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix


@dataclass(frozen=True)
class CharPoly:
    dim: int
    coeffs: np.ndarray  # a_0..a_n, a_0 = 1
    adj_mats: np.ndarray  # (n, n, n); adj_mats[k] multiplies w**k

    def __call__(self, w):
        return eval_p(self, w)

    def adj(self, w) -> np.ndarray:
        """``adj(wI - H)`` evaluated from the stored matrix polynomial."""
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for b in self.adj_mats[::-1]:
            out = out * w + b
        return out


def faddeev_leverrier(h) -> CharPoly:
    h = as_matrix(h)
    n = h.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    # C_0 = I, C_k = H C_{k-1} + a_k I, a_k = -tr(H C_{k-1}) / k
    c = eye.copy()
    mats = [c]
    for k in range(1, n + 1):
        hc = h @ c
        coeffs[k] = -np.trace(hc) / k
        if k < n:
            c = hc + coeffs[k] * eye
            mats.append(c)
    # adj(wI - H) = sum_{k=0}^{n-1} w^(n-1-k) C_k
    adj_mats = np.array(mats[::-1])
    return CharPoly(dim=n, coeffs=coeffs, adj_mats=adj_mats)


def newton_coeffs_from_traces(traces) -> np.ndarray:
    """Coefficients a_1..a_n from power traces t_k = tr H^k (Newton's identities)."""
    t = np.asarray(traces, dtype=np.complex128)
    n = t.shape[0]
    a = np.zeros(n + 1, dtype=np.complex128)
    a[0] = 1.0
    for k in range(1, n + 1):
        a[k] = -np.dot(a[k - 1 :: -1][:k], t[:k]) / k
    return a[1:]


def power_traces(h, n=None) -> np.ndarray:
    h = as_matrix(h)
    n = h.shape[0] if n is None else n
    out = np.zeros(n, dtype=np.complex128)
    hk = np.eye(h.shape[0], dtype=np.complex128)
    for k in range(n):
        hk = hk @ h
        out[k] = np.trace(hk)
    return out


def _coeffs(cp):
    return cp.coeffs if isinstance(cp, CharPoly) else np.asarray(cp, dtype=np.complex128)


def eval_p(cp, w) -> complex:
    acc = 0j
    for a in _coeffs(cp):
        acc = acc * w + a
    return acc


def eval_p_prime(cp, w) -> complex:
    c = _coeffs(cp)
    n = c.shape[0] - 1
    acc = 0j
    for k in range(n):
        acc = acc * w + (n - k) * c[k]
    return acc


def eval_with_bound(cp, w):
    """Horner value of p and p' plus a running rounding-error bound for p."""
    c = _coeffs(cp)
    p = 0j
    dp = 0j
    bound = 0.0
    aw = abs(w)
    for a in c:
        dp = dp * w + p
        p = p * w + a
        bound = bound * aw + abs(p)
    return p, dp, np.finfo(float).eps * bound


def taylor_coeff(cp, w, order) -> complex:
    """``p^(order)(w) / order!`` by repeated synthetic division."""
    c = list(_coeffs(cp))
    val = 0j
    for _ in range(order + 1):
        acc = 0j
        quot = []
        for a in c:
            acc = acc * w + a
            quot.append(acc)
        val = quot.pop()
        c = quot
    return val


def asymptotic_p_prime(omega_i, omega_ep, n, spectators=()) -> complex:
    """Leading behaviour of p'(w_i) for a member of an order-n cluster.

    ``n (w_i - w_EP)^(n-1) prod_k (w_EP - w_k)`` over the spectator
    eigenvalues ``w_k`` (repeat them by multiplicity). The factor order
    ``w_EP - w_k`` keeps the sign of the exact derivative; written the other
    way round only the magnitude would agree.
    """
    if n < 2:
        raise ValueError("EP order must be at least 2")
    val = n * (omega_i - omega_ep) ** (n - 1)
    for wk in spectators:
        val *= omega_ep - wk
    return complex(val)


def cayley_hamilton_residual(cp: CharPoly, h) -> float:
    """``||p(H)||_F``, which vanishes in exact arithmetic."""
    h = as_matrix(h)
    acc = np.zeros_like(h)
    eye = np.eye(h.shape[0], dtype=np.complex128)
    for a in cp.coeffs:
        acc = acc @ h + a * eye
    return float(np.linalg.norm(acc))

