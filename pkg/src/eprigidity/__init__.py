"""Phase rigidity and Petermann factors near exceptional points."""
from .adjugate import adjugate, adjugate_element, all_minors, minor
from .charpoly import (
    CharPoly,
    asymptotic_p_prime,
    eval_p,
    eval_p_prime,
    faddeev_leverrier,
    taylor_coeff,
)
from .config import DEFAULT, Tolerances
from .ep import (
    analyze_cluster,
    asymptotic_rigidity_general,
    asymptotic_rigidity_truncated,
    build_cluster,
    ep_minor,
    ep_report,
    ep_vectors,
    equipartition_check,
    overlap_relation_check,
    schur,
    secular_shift,
    xi,
    xi_triple,
)
from .errors import (
    AllPivotsNullError,
    ConvergenceError,
    DegenerateDenominatorError,
    DimensionError,
    EPRigidityError,
    IdentityError,
    NotDefectiveError,
    SingularMatrixError,
    VanishingTraceError,
)
from .models import NearEPModel, example_3x3, example_4x4, jordan_block, random_near_ep
from .spectral import (
    Eigenpair,
    Eigensystem,
    eigensystem,
    eigenvalues,
    eigvec_from_adjugate,
    eigvec_inverse_iteration,
    rigidity_direct,
    rigidity_exact,
)

__version__ = "0.1.0"
