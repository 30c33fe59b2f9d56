"""Capacitance of unloaded rolling element contacts."""

from ._errors import (
    BearingCapError,
    ConfigError,
    DegeneratePair,
    DomainError,
    GeometryError,
    InvalidGeometry,
    NumericalError,
    OverlapError,
    QuadratureFailure,
    RayMissesRaceway,
    SingularPoint,
    SolverDivergence,
    TangencyNotFound,
    ZeroCapacitance,
    ZeroRadius,
)
from .geometry import (
    EPSILON_0,
    BearingContactGeometry,
    DimensionlessSection,
    EffectiveRadii,
    RingSide,
    SectionPlane,
    preset,
    to_dimensionless,
)
from .result import CapacitanceResult, Method

__version__ = "0.1.0"
