"""Moment and range analysis for distributions on the tangent lines of a
planar symmetric convex body.

The package computes the even p-moments of tangentially supported
distributions, tests them for membership in the restrictions of
homogeneous polynomials (the Radon transform range condition), runs the
exact-rational elimination identities that tie consecutive moments
together, and reconstructs rho^2 pointwise to certify whether the body is
an ellipse.
"""

__version__ = "0.1.0"

from .algebra import (
    HankelCertificate,
    coefficient_matrix,
    conjugated_shift,
    difference_residual,
    hankel_certificate,
    identity_suite,
    krylov_spans,
    moment_hankel,
    nilpotent_part,
    recurrence_coeffs,
    recurrence_residual,
    shift_matrix,
)
from .circle import (
    DEFAULT_GRID_SIZE,
    CircleFunction,
    TrigPoly,
    fourier_energy,
    theta_grid,
    trig_from_samples,
)
from .errors import (
    CertificateError,
    DegeneratePointError,
    HypothesisViolatedError,
    InternalConsistencyError,
    InvalidParameterError,
    NotInModelError,
    PositivityError,
    ReconstructionFailedError,
    SingularLineError,
    SingularMatrixError,
)
from .geometry import (
    SupportFunction,
    TangentialData,
    disk,
    evenness_defect,
    fit_quadratic_form,
    make_ellipse,
    perturb,
)
from .moments import (
    DEFAULT_MAX_HALF_ORDER,
    falling_factorial,
    falling_factorial_table,
    moment,
    moment_oracle,
)
from .radon import (
    LineParam,
    disk_sinogram,
    mollified_moment,
    radon_disk_density,
    second_p_derivative_moments,
    tangential_disk_data,
)
from .rangetest import MembershipReport, is_homogeneous_restriction, range_check
from .reconstruct import (
    MomentSequence,
    ReconstructionReport,
    reconstruct,
    reconstruct_from_data,
    solve_rho2,
    synthesize_moments,
)

__all__ = [
    "__version__",
    "CertificateError",
    "CircleFunction",
    "DEFAULT_GRID_SIZE",
    "DEFAULT_MAX_HALF_ORDER",
    "DegeneratePointError",
    "HankelCertificate",
    "HypothesisViolatedError",
    "InternalConsistencyError",
    "InvalidParameterError",
    "LineParam",
    "MembershipReport",
    "MomentSequence",
    "NotInModelError",
    "PositivityError",
    "ReconstructionFailedError",
    "ReconstructionReport",
    "SingularLineError",
    "SingularMatrixError",
    "SupportFunction",
    "TangentialData",
    "TrigPoly",
    "coefficient_matrix",
    "conjugated_shift",
    "difference_residual",
    "disk",
    "disk_sinogram",
    "evenness_defect",
    "falling_factorial",
    "falling_factorial_table",
    "fit_quadratic_form",
    "fourier_energy",
    "hankel_certificate",
    "identity_suite",
    "is_homogeneous_restriction",
    "krylov_spans",
    "make_ellipse",
    "moment",
    "moment_hankel",
    "moment_oracle",
    "mollified_moment",
    "nilpotent_part",
    "perturb",
    "radon_disk_density",
    "range_check",
    "reconstruct",
    "reconstruct_from_data",
    "recurrence_coeffs",
    "recurrence_residual",
    "second_p_derivative_moments",
    "shift_matrix",
    "solve_rho2",
    "synthesize_moments",
    "tangential_disk_data",
    "theta_grid",
    "trig_from_samples",
]
