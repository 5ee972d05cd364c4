"""Exception types raised by the numerical routines."""


class EPRigidityError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(EPRigidityError, ValueError):
    pass


class SingularMatrixError(EPRigidityError):
    """A pivot fell below the singularity threshold during LU factorization."""

    def __init__(self, msg, pivot=None, index=None):
        super().__init__(msg)
        self.pivot = pivot
        self.index = index


class ConvergenceError(EPRigidityError):
    """An iterative method hit its iteration cap.

    ``state`` carries whatever the method had when it gave up (root
    estimates, deflation position, last iterate).
    """

    def __init__(self, msg, state=None):
        super().__init__(msg)
        self.state = state


class AllPivotsNullError(EPRigidityError):
    """Every row/column of the adjugate vanished: geometric multiplicity > 1."""


class DegenerateDenominatorError(EPRigidityError):
    """Both p'(w) and the adjugate element vanish; the exact ratio is 0/0."""


class NotDefectiveError(EPRigidityError):
    """The EP eigenvector pair is not self-orthogonal."""


class IdentityError(EPRigidityError):
    """An exact algebraic identity failed beyond its tolerance."""

    def __init__(self, msg, residual=None, operation=None):
        super().__init__(msg)
        self.residual = residual
        self.operation = operation


class VanishingTraceError(EPRigidityError):
    """The perturbation does not lift the EP at first order."""
