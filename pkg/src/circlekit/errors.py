"""Exception types shared across the package."""


class CirclekitError(Exception):
    """Base class for all library errors."""


class AliasingError(CirclekitError):
    """Spectral tail of a result exceeds the configured tolerance.

    Raised when a nonlinear operation (composition, localization) produces
    samples whose trigonometric interpolant is no longer trustworthy at the
    current grid size.  Raise the grid size to fix.
    """


class ConvergenceError(CirclekitError):
    """An iterative solve (Newton inversion) failed to converge."""


class GeometryError(CirclekitError):
    """Intervals or covers violate a required containment or ordering."""


class MassError(CirclekitError):
    """No bump with values in [0, 1] can reach the requested integral."""


class NeighbourhoodError(CirclekitError):
    """A group element lies outside the admissible neighbourhood of the identity."""


class DerivativeError(CirclekitError):
    """A map that must be orientation preserving has a non-positive derivative."""


class BranchError(CirclekitError):
    """A matrix logarithm was requested outside the principal-branch domain."""


class TruncationError(CirclekitError):
    """A module computation needs states above the configured truncation level."""
