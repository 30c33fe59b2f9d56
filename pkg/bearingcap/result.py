from __future__ import annotations

import enum
from typing import Dict, Union

import msgspec

__all__ = ("Method", "CapacitanceResult")


def __dir__():
    return __all__


class Method(enum.Enum):
    """Capacitance models.

    - ``A2D``: effective radius over a plane, closed form per length
    - ``A3D``: effective radii with Taylor heights, surface integral
    - ``B``: parallel plate capacitors on the true section
    - ``C``: gaps normal to the ball, raceway area elements
    - ``D``: gaps normal to the ball, ball area elements
    - ``D3D``: ``D`` over the 3D groove, without the rim
    - ``E``: ``D3D`` plus the rim beside the groove
    - ``F``: exact line-charge solution of the section
    - ``G``: finite elements on the section
    """

    A2D = "A2D"
    A3D = "A3D"
    B = "B"
    C = "C"
    D = "D"
    D3D = "D3D"
    E = "E"
    F = "F"
    G = "G"

    @property
    def per_length(self) -> bool:
        return self not in (Method.A3D, Method.D3D, Method.E)


class CapacitanceResult(msgspec.Struct, frozen=True):
    """A capacitance and how it was obtained.

    Parameters
    ----------
    value : float
        The capacitance, F/m if ``per_length`` else F.
    per_length : bool
        Whether ``value`` is per unit length.
    method : Method
        The model that produced the value.
    diagnostics : dict
        Error estimates, evaluation counts and similar.
    """

    value: float
    per_length: bool
    method: Method
    diagnostics: Dict[str, Union[float, int, str]] = {}

    def to_pico(self) -> float:
        """The value in pF/m or pF."""
        return self.value * 1e12

    @property
    def unit(self) -> str:
        return "F/m" if self.per_length else "F"
