"""Deterministic matrix families near exceptional points.

Every generator returns a :class:`NearEPModel`: the matrix exactly at the EP,
a unit-norm perturbation direction and the EP data, so that
``model.at(eps) = h_at_ep + eps * h_prime``.
"""
from dataclasses import dataclass, field

import numpy as np

from .linalg import two_norm


@dataclass
class NearEPModel:
    h_at_ep: np.ndarray
    h_prime: np.ndarray
    omega_ep: complex
    order: int
    truncated: bool
    family: str = "custom"
    params: dict = field(default_factory=dict)
    # every EP of the unperturbed matrix as (eigenvalue, order); the first is omega_ep
    ep_points: list = field(default_factory=list)
    golden: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.ep_points:
            self.ep_points = [(complex(self.omega_ep), int(self.order))]

    @property
    def dim(self) -> int:
        return self.h_at_ep.shape[0]

    def at(self, eps) -> np.ndarray:
        return self.h_at_ep + eps * self.h_prime


def _unit_matrix(m, row, col) -> np.ndarray:
    e = np.zeros((m, m), dtype=np.complex128)
    e[row - 1, col - 1] = 1.0
    return e


def _normalized(hp) -> np.ndarray:
    hp = np.asarray(hp, dtype=np.complex128)
    return hp / two_norm(hp)


def jordan_block(n, omega_ep=0.0, h_prime=None) -> NearEPModel:
    """Order-n Jordan block; the default perturbation ``E_{n,1}`` gives roots ``eps^(1/n)``."""
    if n < 2:
        raise ValueError("Jordan block EP needs n >= 2")
    h = omega_ep * np.eye(n, dtype=np.complex128) + np.diag(np.ones(n - 1), 1)
    hp = _unit_matrix(n, n, 1) if h_prime is None else _normalized(h_prime)
    return NearEPModel(
        h_at_ep=h,
        h_prime=hp,
        omega_ep=complex(omega_ep),
        order=n,
        truncated=True,
        family="jordan",
        params={"n": n, "omega_ep": complex(omega_ep)},
    )


def example_3x3(a, b, c, d, h_prime=None) -> NearEPModel:
    """Order-2 EP at 0 with one spectator at ``d``::

        [[0, a, b],
         [0, 0, c],
         [0, 0, d]]
    """
    if a == 0:
        raise ValueError("a = 0: the EP at 0 is not of order 2")
    if d == 0:
        raise ValueError("d = 0: the spectator is degenerate with the EP")
    h = np.array([[0, a, b], [0, 0, c], [0, 0, d]], dtype=np.complex128)
    hp = _unit_matrix(3, 2, 1) if h_prime is None else _normalized(h_prime)
    return NearEPModel(
        h_at_ep=h,
        h_prime=hp,
        omega_ep=0j,
        order=2,
        truncated=False,
        family="example3x3",
        params={"a": complex(a), "b": complex(b), "c": complex(c), "d": complex(d)},
    )


def predicted_rigidity_3x3(omega_i, a, c, d) -> float:
    """``|2 w_i / a| |d| / sqrt(|c|^2 + |d|^2)`` for the 3x3 family."""
    return float(abs(2 * omega_i / a) * abs(d) / np.hypot(abs(c), abs(d)))


def example_4x4(a1=1, a2=2, a3=3, b1=4, b2=5, c1=6, omega=7, h_prime=None) -> NearEPModel:
    """Two order-2 EPs, at 0 and at ``omega``::

        [[0, a1, a2,    a3   ],
         [0, 0,  b1,    b2   ],
         [0, 0,  omega, c1   ],
         [0, 0,  0,     omega]]

    ``golden`` holds the closed-form eigenvector pairs, adjugates and
    adjugate elements of both EPs.
    """
    if a1 == 0 or c1 == 0 or omega == 0:
        raise ValueError("a1, c1 and omega must be nonzero for two order-2 EPs")
    w = omega
    h = np.array(
        [[0, a1, a2, a3], [0, 0, b1, b2], [0, 0, w, c1], [0, 0, 0, w]], dtype=np.complex128
    )
    hp = _unit_matrix(4, 4, 1) if h_prime is None else _normalized(h_prime)
    s12 = b1 * c1 - b2 * w
    s34 = a1 * b1 + a2 * w
    golden = {
        "r_12": np.array([1, 0, 0, 0], dtype=np.complex128),
        # <L| as a row; the stored left vector is its conjugate
        "lrow_12": np.array([0, w, -b1, s12 / w], dtype=np.complex128),
        "r_34": np.array([s34 / w, b1, w, 0], dtype=np.complex128),
        "lrow_34": np.array([0, 0, 0, 1], dtype=np.complex128),
        "adj_minus_h_row1": np.array([0, a1 * w**2, -a1 * b1 * w, a1 * s12], dtype=np.complex128),
        "adj_omega_minus_h_col4": np.array([s34 * c1, w * b1 * c1, w**2 * c1, 0], dtype=np.complex128),
        "A_12": abs(a1 * w) * np.sqrt(abs(w) ** 2 + abs(b1) ** 2 + abs(s12) ** 2 / abs(w) ** 2),
        "A_34": abs(c1 * w) * np.sqrt(abs(w) ** 2 + abs(b1) ** 2 + abs(s34) ** 2 / abs(w) ** 2),
    }
    return NearEPModel(
        h_at_ep=h,
        h_prime=hp,
        omega_ep=0j,
        order=2,
        truncated=False,
        family="example4x4",
        params={k: complex(v) for k, v in dict(a1=a1, a2=a2, a3=a3, b1=b1, b2=b2, c1=c1, omega=omega).items()},
        ep_points=[(0j, 2), (complex(w), 2)],
        golden=golden,
    )


def _phase(rng, size=None):
    return np.exp(2j * np.pi * rng.random(size))


def random_near_ep(m, n, seed=0, spectator_spread=1.0) -> NearEPModel:
    """Seeded upper-triangular model with an order-n EP block in the top-left.

    Superdiagonal of the EP block has moduli in [0.5, 1.5]; spectators sit at
    distance ``spectator_spread * (1 + U[0, 1])`` from the EP and couple
    through random strictly-upper entries. ``h_prime`` is dense with
    unit spectral norm.
    """
    if not 2 <= n <= m:
        raise ValueError(f"need 2 <= n <= m, got n={n}, m={m}")
    rng = np.random.default_rng(seed)
    omega_ep = complex(0.5 * (rng.standard_normal() + 1j * rng.standard_normal()))
    h = np.zeros((m, m), dtype=np.complex128)
    upper = np.triu_indices(m, 1)
    h[upper] = (rng.standard_normal(len(upper[0])) + 1j * rng.standard_normal(len(upper[0]))) / np.sqrt(2)
    sup = (0.5 + rng.random(n - 1)) * _phase(rng, n - 1)
    h[np.arange(n - 1), np.arange(1, n)] = sup
    diag = np.full(m, omega_ep, dtype=np.complex128)
    k = m - n
    if k:
        dist = spectator_spread * (1.0 + rng.random(k))
        diag[n:] = omega_ep + dist * _phase(rng, k)
    h[np.arange(m), np.arange(m)] = diag
    hp = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return NearEPModel(
        h_at_ep=h,
        h_prime=_normalized(hp),
        omega_ep=omega_ep,
        order=n,
        truncated=(n == m),
        family="random",
        params={"m": m, "n": n, "seed": seed, "spectator_spread": spectator_spread},
    )


FAMILIES = {
    "jordan": jordan_block,
    "example3x3": example_3x3,
    "example4x4": example_4x4,
    "random": random_near_ep,
}
