"""Numerical knobs shared by the main path.

All defaults live here so the CLI can override them in one place.
"""
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # LU: |pivot| < pivot_threshold * max row norm counts as singular
    pivot_threshold: float = 1e-14
    # power iteration for the spectral norm
    norm_tol: float = 1e-13
    norm_maxiter: int = 10_000
    # Aberth-Ehrlich root finder
    root_maxiter: int = 500
    newton_polish_steps: int = 3
    # inverse iteration
    inviter_tol: float = 1e-14
    inviter_maxiter: int = 50
    # shifted QR for the Schur form
    qr_maxiter_per_eig: int = 60
    # adjugate-vector pivot is "null" below this times max(1, ||X||)^(m-1)
    null_pivot: float = 1e-12
    # |p'| and |A| both below this (relative) -> 0/0 in the exact rigidity
    degenerate: float = 1e-13
    # self-orthogonality check for EP vector pairs
    self_orthogonality: float = 1e-8
    # relative tolerance for exact identities checked at run time
    identity: float = 1e-8

    def with_(self, **changes) -> "Tolerances":
        return replace(self, **changes)


DEFAULT = Tolerances()
