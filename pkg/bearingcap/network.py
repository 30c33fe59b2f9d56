"""Whole-bearing capacitance from single contact capacitances.

Every unloaded rolling element connects the inner ring to the outer ring
through its two contacts in series; the conductive cage puts all elements in
parallel. Loaded elements are outside the contact models here and enter as
externally supplied capacitances.
"""

from __future__ import annotations

import logging
from typing import Annotated, List

import msgspec

from ._errors import DomainError, ZeroCapacitance
from .config import SweepConfig
from .geometry import RingSide
from .result import CapacitanceResult
from .sweep import evaluate

__all__ = ("BearingNetworkSpec", "series", "aggregate_bearing", "network_from_config")

logger = logging.getLogger(__name__)


def __dir__():
    return __all__


class BearingNetworkSpec(msgspec.Struct, frozen=True, kw_only=True):
    """Element counts and contact capacitances of one bearing.

    Parameters
    ----------
    n_elements : int
        Number of rolling elements.
    n_unloaded : int
        Elements outside the load zone, ``0 <= n_unloaded <= n_elements``.
    contact_inner, contact_outer : CapacitanceResult
        Absolute contact capacitances of one unloaded element.
    loaded : list of float, optional
        Capacitances of loaded elements, F, at most
        ``n_elements - n_unloaded`` of them.
    """

    n_elements: Annotated[int, msgspec.Meta(ge=1)]
    n_unloaded: Annotated[int, msgspec.Meta(ge=0)]
    contact_inner: CapacitanceResult
    contact_outer: CapacitanceResult
    loaded: List[float] = []

    def __post_init__(self):
        if not 0 <= self.n_unloaded <= self.n_elements:
            raise DomainError(
                f"n_unloaded must lie in [0, {self.n_elements}], got {self.n_unloaded}"
            )
        if len(self.loaded) > self.n_elements - self.n_unloaded:
            raise DomainError(
                f"{len(self.loaded)} loaded capacitances for "
                f"{self.n_elements - self.n_unloaded} loaded elements"
            )
        for name in ("contact_inner", "contact_outer"):
            if getattr(self, name).per_length:
                raise DomainError(f"{name} must be an absolute capacitance, not per length")


def series(c1: float, c2: float) -> float:
    """Two capacitances in series.

    Raises
    ------
    ZeroCapacitance
        If either is zero.
    """
    if c1 == 0 or c2 == 0:
        raise ZeroCapacitance(
            f"series connection with a zero capacitance (c1={c1}, c2={c2})"
        )
    return c1 * c2 / (c1 + c2)


def aggregate_bearing(spec: BearingNetworkSpec) -> float:
    """Total capacitance between inner and outer ring, F."""
    if spec.n_unloaded:
        branch = series(spec.contact_inner.value, spec.contact_outer.value)
    else:
        branch = 0.0
    total = spec.n_unloaded * branch + sum(spec.loaded)
    logger.debug(
        "bearing total: %d x %.6e F + %d loaded = %.6e F",
        spec.n_unloaded,
        branch,
        len(spec.loaded),
        total,
    )
    return total


def network_from_config(config: SweepConfig) -> BearingNetworkSpec:
    """Contact capacitances of both rings by ``config.network.method``."""
    net = config.network
    if net.method.per_length:
        raise DomainError(
            f"bearing totals need a 3D method, got {net.method.value}"
        )
    contacts = {}
    for side in (RingSide.INNER, RingSide.OUTER):
        geometry = msgspec.structs.replace(config.geometry, ring=side)
        geom = geometry.build(net.gap_um * 1e-3, config.permittivity_rel)
        contacts[side] = evaluate(net.method, geom, config.plane, config)
    return BearingNetworkSpec(
        n_elements=net.n_elements,
        n_unloaded=net.n_unloaded,
        contact_inner=contacts[RingSide.INNER],
        contact_outer=contacts[RingSide.OUTER],
        loaded=list(net.loaded),
    )
