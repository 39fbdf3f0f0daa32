"""
Exception hierarchy for shellscatter.

Configuration problems derive from ConfigError (and ValueError, so they
surface as ordinary validation errors inside pydantic validators). Everything
else is a numerical condition raised by the services layer.
"""


class ShellScatterError(Exception):
    """Base class for all errors raised by shellscatter."""
    pass


class ConfigError(ShellScatterError, ValueError):
    """Raised when a shell configuration or its input is invalid."""
    pass


class LengthMismatchError(ConfigError):
    """Raised when radii and alphas have different lengths."""
    pass


class NonpositiveRadiusError(ConfigError):
    """Raised when a shell radius is not strictly positive."""
    pass


class NonincreasingRadiiError(ConfigError):
    """Raised when shell radii are not strictly increasing."""
    pass


class ShellCountError(ConfigError):
    """Raised when an operation needs a specific number of shells."""
    pass


class ZeroArgumentError(ShellScatterError, ValueError):
    """Raised when a special function is evaluated at z = 0."""
    pass


class OrderTooLargeError(ShellScatterError, ValueError):
    """Raised when a Bessel order lies outside 0..64."""
    pass


class MatrixShapeError(ShellScatterError, ValueError):
    """Raised when a matrix is not square or exceeds the supported size."""
    pass


class SingularMatrixError(ShellScatterError):
    """Raised when a linear solve meets a pivot below the threshold."""
    pass


class InvalidEnergyError(ShellScatterError, ValueError):
    """Raised when a wavenumber k or decay constant kappa is not positive."""
    pass


class InvalidGridError(ShellScatterError, ValueError):
    """Raised when a wavenumber grid is empty, unordered or nonpositive."""
    pass


class BranchResidualError(ShellScatterError):
    """Raised when a negative-energy boundary matrix is not real."""
    pass


class NearSingularBoundaryError(ShellScatterError):
    """Raised when det K(k^2 + i0) is numerically indistinguishable from zero."""
    pass


class GridTooCoarseError(ShellScatterError):
    """Raised when phase unwrapping cannot resolve a jump even after refinement."""
    pass


class ThresholdCriticalError(ShellScatterError):
    """Raised when a scattering length is requested at a critical configuration."""
    pass


class DegenerateBasisError(ShellScatterError):
    """Raised when the local Riccati-Bessel basis is singular."""
    pass


class GridCollisionError(ShellScatterError):
    """Raised when two shells fall within one Numerov step of each other."""
    pass


class ArgumentOverflowError(ShellScatterError):
    """Raised when a complex argument lies too far off the real axis for unscaled evaluation."""
    pass
