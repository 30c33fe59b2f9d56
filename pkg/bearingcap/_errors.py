__all__ = (
    "BearingCapError",
    "GeometryError",
    "InvalidGeometry",
    "ZeroRadius",
    "DegeneratePair",
    "OverlapError",
    "TangencyNotFound",
    "RayMissesRaceway",
    "DomainError",
    "SingularPoint",
    "NumericalError",
    "QuadratureFailure",
    "SolverDivergence",
    "ZeroCapacitance",
    "ConfigError",
)


class BearingCapError(Exception):
    """Base class for all errors raised by bearingcap."""


class GeometryError(BearingCapError, ValueError):
    """The electrode geometry is invalid, touching, or intersecting."""


class InvalidGeometry(GeometryError):
    """A geometry or section violates its invariants."""


class ZeroRadius(GeometryError):
    """A contact radius of zero was passed to the effective radius."""


class DegeneratePair(GeometryError):
    """Two radii whose curvatures cancel (an infinite effective radius)."""


class OverlapError(GeometryError):
    """The two equipotential circles overlap, no Apollonian solution exists."""


class TangencyNotFound(GeometryError):
    """No ray from the ball center meets the raceway tangentially."""


class RayMissesRaceway(GeometryError):
    """A ray from the ball center never reaches the raceway surface."""


class DomainError(BearingCapError, ValueError):
    """An argument lies outside the domain of a closed-form expression."""


class SingularPoint(DomainError):
    """The potential was evaluated on a line charge."""


class NumericalError(BearingCapError, ArithmeticError):
    """A numerical method failed to reach its target."""


class QuadratureFailure(NumericalError):
    """Adaptive quadrature did not converge within its subdivision budget."""


class SolverDivergence(NumericalError):
    """The iterative linear solve missed its residual target."""


class ZeroCapacitance(BearingCapError, ValueError):
    """A series branch of the bearing network contains a zero capacitance."""


class ConfigError(BearingCapError):
    """A configuration file could not be read or validated."""
