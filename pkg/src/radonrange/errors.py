"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """An argument is outside the domain an operation supports."""


class SingularLineError(InvalidParameterError):
    """The requested line is tangent to the disk, where the chord integral
    is not defined pointwise."""


class PositivityError(InvalidParameterError):
    """A support-function candidate is not strictly positive on the grid."""


class CertificateError(RuntimeError):
    """Certification failed: rho^2 is quadratic but not the squared support
    function of any body (the recovered quadratic form is not positive
    definite)."""


class InternalConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree.

    Raised only by self-checking code paths; it signals a bug, never bad
    input data.
    """


class HypothesisViolatedError(ValueError):
    """Input data violate a hypothesis of the certificate (the top density
    q_{m-1} vanishes identically)."""


class SingularMatrixError(ArithmeticError):
    """Exact elimination hit a structurally singular matrix."""


class DegeneratePointError(ArithmeticError):
    """The pointwise linear system for rho^2 is singular at this direction."""


class NotInModelError(RuntimeError):
    """Moment data are inconsistent with every tangentially supported
    distribution (power-consistency failed or rho^2 came out nonpositive)."""


class ReconstructionFailedError(RuntimeError):
    """Too many directions were degenerate to assemble a reconstruction."""
