"""Run configuration, decoded from TOML or YAML into typed structs.

A minimal sweep config::

    methods = ["A2D", "B", "C", "D", "F"]
    reference = "F"

    [geometry]
    preset = "bearing-6205-c3"
    ring = "outer"

    [grid]
    start_um = 0.1
    stop_um = 5.0
    points = 24
"""

from __future__ import annotations

import os
from typing import Annotated, List, Literal, Union

import msgspec
import numpy as np

from ._errors import ConfigError
from .fem2d import MeshSpec, SolverSpec
from .geometry import (
    EPSILON_0,
    PRESETS,
    BearingContactGeometry,
    RingSide,
    SectionPlane,
    preset,
)
from .quadrature import QuadratureSpec
from .result import Method

__all__ = (
    "GeometryConfig",
    "GridConfig",
    "QuadratureConfig",
    "FemConfig",
    "NetworkConfig",
    "SweepConfig",
    "load",
    "decode",
    "encode",
)


def __dir__():
    return __all__


PositiveFloat = Annotated[float, msgspec.Meta(gt=0)]
OptionalLength = Union[PositiveFloat, None]

#: Quadrature tolerances, as `QuadratureSpec`
QuadratureConfig = QuadratureSpec


class GeometryConfig(msgspec.Struct, frozen=True, kw_only=True, forbid_unknown_fields=True, omit_defaults=True):
    """The contact: a preset, optionally with individual dimensions overridden.

    With ``preset = ""`` every dimension must be given. Lengths in mm.
    """

    preset: str = "bearing-6205-c3"
    ring: RingSide = RingSide.OUTER
    ball_radius: OptionalLength = None
    groove_radius: OptionalLength = None
    raceway_radius: OptionalLength = None
    groove_width: OptionalLength = None
    ring_width: OptionalLength = None

    def build(self, gap: float, permittivity_rel: float) -> BearingContactGeometry:
        overrides = {
            name: value
            for name in (
                "ball_radius",
                "groove_radius",
                "raceway_radius",
                "groove_width",
                "ring_width",
            )
            if (value := getattr(self, name)) is not None
        }
        if self.preset:
            base = preset(
                self.preset, self.ring, gap=gap, permittivity_rel=permittivity_rel
            )
            # rebuilt rather than replaced so the invariants are checked again
            return BearingContactGeometry(**{**msgspec.structs.asdict(base), **overrides})
        missing = [
            name
            for name in ("ball_radius", "groove_radius", "raceway_radius", "groove_width", "ring_width")
            if name not in overrides
        ]
        if missing:
            raise ConfigError(
                f"geometry without a preset needs {', '.join(missing)}"
            )
        return BearingContactGeometry(
            ring_side=self.ring,
            gap=gap,
            permittivity=permittivity_rel * EPSILON_0,
            **overrides,
        )


class GridConfig(msgspec.Struct, frozen=True, kw_only=True, forbid_unknown_fields=True, omit_defaults=True):
    """Lubrication gaps of a sweep, in micrometers."""

    start_um: PositiveFloat = 0.1
    stop_um: PositiveFloat = 5.0
    points: Annotated[int, msgspec.Meta(ge=1)] = 24
    spacing: Literal["log", "linear"] = "log"

    def __post_init__(self):
        if self.stop_um < self.start_um:
            raise ValueError(
                f"stop_um must be >= start_um, got {self.stop_um} < {self.start_um}"
            )

    def gaps_um(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.start_um])
        if self.spacing == "log":
            return np.geomspace(self.start_um, self.stop_um, self.points)
        return np.linspace(self.start_um, self.stop_um, self.points)


class FemConfig(msgspec.Struct, frozen=True, kw_only=True, forbid_unknown_fields=True, omit_defaults=True):
    """Finite element settings.

    ``refinement`` is the level used for sweep cells, ``levels`` the finest
    level of a convergence study. ``dump_mesh`` writes the sweep meshes next
    to the report.
    """

    refinement: Annotated[int, msgspec.Meta(ge=0)] = 3
    levels: Annotated[int, msgspec.Meta(ge=2)] = 4
    mesh: MeshSpec = MeshSpec()
    solver: SolverSpec = SolverSpec()
    dump_mesh: bool = False


class NetworkConfig(msgspec.Struct, frozen=True, kw_only=True, forbid_unknown_fields=True, omit_defaults=True):
    """Whole-bearing aggregation.

    ``loaded`` are externally supplied capacitances of the loaded elements,
    F, added in parallel.
    """

    n_elements: Annotated[int, msgspec.Meta(ge=1)] = 9
    n_unloaded: Annotated[int, msgspec.Meta(ge=0)] = 5
    gap_um: PositiveFloat = 0.5
    method: Method = Method.E
    loaded: List[Annotated[float, msgspec.Meta(ge=0)]] = []

    def __post_init__(self):
        if self.n_unloaded > self.n_elements:
            raise ValueError(
                f"n_unloaded must be <= n_elements, got {self.n_unloaded} > "
                f"{self.n_elements}"
            )


class SweepConfig(msgspec.Struct, frozen=True, kw_only=True, forbid_unknown_fields=True, omit_defaults=True):
    """A complete run.

    Parameters
    ----------
    geometry : GeometryConfig
        The contact.
    plane : SectionPlane
        Section plane of the 2D methods.
    grid : GridConfig
        Lubrication gaps.
    methods : list of Method
        Methods to evaluate at every gap.
    reference : Method
        Method the deviations are measured against; added to ``methods`` if
        missing.
    permittivity_rel : float
        Relative permittivity of the lubricant. Default is 2.2.
    jobs : int
        Worker threads. Default is 1.
    """

    geometry: GeometryConfig = GeometryConfig()
    plane: SectionPlane = SectionPlane.SECTION_I
    grid: GridConfig = GridConfig()
    methods: List[Method] = msgspec.field(
        default_factory=lambda: [Method.A2D, Method.B, Method.C, Method.D, Method.F]
    )
    reference: Method = Method.F
    permittivity_rel: PositiveFloat = 2.2
    jobs: Annotated[int, msgspec.Meta(ge=1)] = 1
    quadrature: QuadratureConfig = QuadratureConfig()
    fem: FemConfig = FemConfig()
    network: NetworkConfig = NetworkConfig()

    def __post_init__(self):
        if self.geometry.preset and self.geometry.preset not in PRESETS:
            raise ValueError(
                f"unknown geometry preset {self.geometry.preset!r}, choose from "
                f"{sorted(PRESETS)}"
            )

    @property
    def all_methods(self) -> List[Method]:
        """``methods`` with the reference appended if missing."""
        if self.reference in self.methods:
            return list(self.methods)
        return [*self.methods, self.reference]

    def contact(self, gap_um: float) -> BearingContactGeometry:
        return self.geometry.build(gap_um * 1e-3, self.permittivity_rel)


def _format(path: Union[str, os.PathLike], format: Union[str, None]) -> str:
    if format is not None:
        fmt = format.lower()
    else:
        suffix = os.path.splitext(os.fspath(path))[1].lower()
        fmt = "yaml" if suffix in (".yaml", ".yml") else "toml"
    if fmt not in ("toml", "yaml"):
        raise ConfigError(f"unsupported config format {format!r}")
    return fmt


def decode(buf: Union[bytes, str], format: str = "toml") -> SweepConfig:
    """Decode a config document.

    Raises
    ------
    ConfigError
        If the document is malformed or does not match the schema.
    """
    if format == "yaml":
        from msgspec import yaml as backend
    else:
        from msgspec import toml as backend
    try:
        return backend.decode(buf, type=SweepConfig)
    except (msgspec.ValidationError, msgspec.DecodeError) as exc:
        raise ConfigError(f"invalid {format} config: {exc}") from None


def load(path: Union[str, os.PathLike], format: Union[str, None] = None) -> SweepConfig:
    """Read a config file; YAML for ``.yaml``/``.yml`` suffixes, else TOML."""
    fmt = _format(path, format)
    try:
        with open(path, "rb") as f:
            buf = f.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {os.fspath(path)!r}: {exc.strerror}") from None
    try:
        return decode(buf, fmt)
    except ConfigError as exc:
        raise ConfigError(f"{os.fspath(path)}: {exc}") from None


def encode(config: SweepConfig, format: str = "toml") -> bytes:
    """Serialize a config, e.g. to store the resolved run next to its report."""
    if format == "yaml":
        from msgspec import yaml as backend
    else:
        from msgspec import toml as backend
    return backend.encode(config)
