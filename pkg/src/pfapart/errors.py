"""Exception types shared across the package."""


class PfapartError(Exception):
    """Base class for all package specific errors."""


class PoleError(PfapartError):
    """A Pochhammer or measure evaluation hit a pole (division by an exact zero)."""


class DomainError(PfapartError):
    """A parameter lies outside the domain where the quantity is defined."""


class ConvergenceError(PfapartError):
    """An infinite series failed to converge within the configured term cap."""


class QuadratureError(PfapartError):
    """Adaptive contour quadrature failed to stabilize within the node cap."""


class SingularMatrixError(PfapartError):
    """A linear solve encountered a singular or numerically singular matrix."""


class OddOrderError(PfapartError):
    """A Pfaffian was requested for a matrix of odd order."""


class AsymmetryError(PfapartError):
    """A matrix violated the antisymmetry tolerance."""


class TailError(PfapartError):
    """A truncated partition sum could not meet the requested tail bound."""


class ConvergenceWarning(UserWarning):
    """Emitted when a truncated evaluation is returned with reduced accuracy."""
