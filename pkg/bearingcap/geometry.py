"""Contact geometry of a ball on a raceway, and its dimensionless sections.

All lengths are in millimeters, the permittivity in F/m. Groove and raceway
radii are stored positive; the signed convention of the dimensionless
sections is produced only by `to_dimensionless`.
"""

from __future__ import annotations

import enum
from typing import Annotated, Union

import msgspec

from ._errors import DegeneratePair, InvalidGeometry, ZeroRadius

__all__ = (
    "EPSILON_0",
    "RingSide",
    "SectionPlane",
    "BearingContactGeometry",
    "DimensionlessSection",
    "EffectiveRadii",
    "effective_radius",
    "to_dimensionless",
    "section_from_radii",
    "preset",
    "PRESETS",
)


def __dir__():
    return __all__


#: Vacuum permittivity, F/m
EPSILON_0 = 8.8541878128e-12

PositiveFloat = Annotated[float, msgspec.Meta(gt=0)]


class RingSide(enum.Enum):
    INNER = "inner"
    OUTER = "outer"


class SectionPlane(enum.Enum):
    """The two orthogonal cut planes through the contact.

    ``SECTION_I`` contains the groove curvature, ``SECTION_II`` the curvature
    of the raceway revolution.
    """

    SECTION_I = "section-i"
    SECTION_II = "section-ii"


class BearingContactGeometry(msgspec.Struct, frozen=True, kw_only=True):
    """One ball-raceway contact.

    Parameters
    ----------
    ball_radius : float
        Rolling element radius, mm.
    groove_radius : float
        Groove curvature radius in section plane I, mm. Stored positive.
    raceway_radius : float
        Radius of revolution of the groove bottom in section plane II, mm.
        Stored positive.
    ring_side : RingSide
        Whether the contact is on the inner or outer ring.
    groove_width : float
        Chord width of the groove, mm.
    ring_width : float
        Axial width of the ring, mm.
    gap : float
        Minimal lubricant film between ball and raceway, mm.
    permittivity : float
        Absolute permittivity of the lubricant, F/m.
    """

    ball_radius: PositiveFloat
    groove_radius: PositiveFloat
    raceway_radius: PositiveFloat
    ring_side: RingSide
    groove_width: PositiveFloat
    ring_width: PositiveFloat
    gap: PositiveFloat
    permittivity: PositiveFloat = 2.2 * EPSILON_0

    def __post_init__(self):
        # Meta constraints only apply on decode
        for name in ("ball_radius", "groove_radius", "raceway_radius", "groove_width"):
            if not getattr(self, name) > 0:
                raise InvalidGeometry(f"{name} must be > 0, got {getattr(self, name)} mm")
        if not self.groove_radius > self.ball_radius:
            raise InvalidGeometry(
                f"groove_radius must exceed ball_radius, got "
                f"{self.groove_radius} <= {self.ball_radius} mm"
            )
        if not self.groove_width < 2 * self.groove_radius:
            raise InvalidGeometry(
                f"groove_width must be < 2 * groove_radius, got "
                f"{self.groove_width} >= {2 * self.groove_radius} mm"
            )
        if self.ring_width < self.groove_width:
            raise InvalidGeometry(
                f"ring_width must be >= groove_width, got "
                f"{self.ring_width} < {self.groove_width} mm"
            )
        if not self.gap > 0:
            raise InvalidGeometry(f"gap must be > 0, got {self.gap} mm")
        if not self.permittivity > 0:
            raise InvalidGeometry(
                f"permittivity must be > 0, got {self.permittivity} F/m"
            )

    @property
    def conformity(self) -> float:
        """Race conformity, the groove radius over the ball diameter."""
        return self.groove_radius / (2 * self.ball_radius)

    @property
    def pitch_radius(self) -> float:
        """Distance of the ball center from the bearing axis, mm."""
        if self.ring_side is RingSide.INNER:
            return self.raceway_radius + self.ball_radius + self.gap
        return self.raceway_radius - self.ball_radius - self.gap

    def signed_partner_radius(self, plane: SectionPlane) -> float:
        """The raceway radius in ``plane`` with convex positive, concave negative."""
        if plane is SectionPlane.SECTION_I:
            return -self.groove_radius
        if self.ring_side is RingSide.INNER:
            return self.raceway_radius
        return -self.raceway_radius

    def effective_radii(self) -> EffectiveRadii:
        return EffectiveRadii(
            r_x=effective_radius(
                self.ball_radius, self.signed_partner_radius(SectionPlane.SECTION_II)
            ),
            r_y=effective_radius(
                self.ball_radius, self.signed_partner_radius(SectionPlane.SECTION_I)
            ),
        )

    def with_gap(self, gap: float) -> BearingContactGeometry:
        return BearingContactGeometry(**{**msgspec.structs.asdict(self), "gap": gap})


class EffectiveRadii(msgspec.Struct, frozen=True):
    """Hertzian effective radii in section plane II (``r_x``) and I (``r_y``), mm."""

    r_x: float
    r_y: float

    def __post_init__(self):
        if not (self.r_x > 0 and self.r_y > 0):
            raise InvalidGeometry(
                f"effective radii must be positive, got r_x={self.r_x}, "
                f"r_y={self.r_y} mm"
            )


class DimensionlessSection(msgspec.Struct, frozen=True, kw_only=True):
    """One section plane scaled by the ball radius.

    The raceway circle has radius ``|tau|`` and its center sits at ``-sigma``
    on the axis through the contact point, which lies at ``1 + alpha``.

    Parameters
    ----------
    tau : float
        Signed raceway radius. Negative for the convex inner raceway in
        section plane II.
    alpha : float
        Minimal gap.
    plane : SectionPlane
        The section plane.
    beta : float, optional
        Groove chord width, only used in section plane I.
    ring_side : RingSide, optional
        The ring the section belongs to.
    """

    tau: float
    alpha: float
    plane: SectionPlane
    beta: Union[float, None] = None
    ring_side: Union[RingSide, None] = None

    def __post_init__(self):
        if not self.alpha > 0:
            raise InvalidGeometry(f"alpha must be > 0, got {self.alpha}")
        sigma = self.sigma
        if self.plane is SectionPlane.SECTION_I:
            if not (self.tau > 0 and sigma > 0):
                raise InvalidGeometry(
                    f"section plane I needs tau > 0 and sigma > 0, got "
                    f"tau={self.tau}, sigma={sigma}"
                )
            if self.beta is None or not 0 < self.beta < 2 * abs(self.tau):
                raise InvalidGeometry(
                    f"section plane I needs 0 < beta < 2|tau|, got "
                    f"beta={self.beta}, tau={self.tau}"
                )
        elif self.tau < 0:
            if not sigma < 0:
                raise InvalidGeometry(f"inner section needs sigma < 0, got {sigma}")
        elif not (self.tau > 0 and sigma > 0):
            raise InvalidGeometry(
                f"outer section needs tau > 0 and sigma > 0, got "
                f"tau={self.tau}, sigma={sigma}"
            )

    @property
    def sigma(self) -> float:
        """Signed distance between the ball center and the raceway center."""
        return self.tau - 1 - self.alpha

    @property
    def convex_pair(self) -> bool:
        """True if both electrodes are convex (inner ring, section plane II)."""
        return self.tau < 0

    def raceway_center(self) -> tuple[float, float]:
        return (-self.sigma, 0.0)

    def to_dimensional(self, ball_radius: float) -> tuple[float, float]:
        """Return ``(raceway_radius, gap)`` in mm for the given ball radius."""
        return abs(self.tau) * ball_radius, self.alpha * ball_radius

    def with_alpha(self, alpha: float) -> DimensionlessSection:
        return DimensionlessSection(**{**msgspec.structs.asdict(self), "alpha": alpha})


def effective_radius(r1: float, r2: float) -> float:
    """Hertzian effective radius ``1 / (1/r1 + 1/r2)`` of two signed radii.

    Convex radii are positive, concave negative. Pass ``math.inf`` for a
    plane partner.

    Raises
    ------
    ZeroRadius
        If either radius is zero.
    DegeneratePair
        If the curvatures cancel, i.e. the equivalent radius is infinite.
    """
    if r1 == 0 or r2 == 0:
        raise ZeroRadius(f"radii must be nonzero, got r1={r1}, r2={r2}")
    curvature = 1 / r1 + 1 / r2
    if curvature == 0:
        raise DegeneratePair(f"curvatures of r1={r1} and r2={r2} cancel")
    return 1 / curvature


def to_dimensionless(
    geom: BearingContactGeometry, plane: SectionPlane
) -> DimensionlessSection:
    """Scale one section plane of ``geom`` by its ball radius."""
    r = geom.ball_radius
    alpha = geom.gap / r
    if plane is SectionPlane.SECTION_I:
        return DimensionlessSection(
            tau=geom.groove_radius / r,
            alpha=alpha,
            beta=geom.groove_width / r,
            plane=plane,
            ring_side=geom.ring_side,
        )
    sign = -1.0 if geom.ring_side is RingSide.INNER else 1.0
    return DimensionlessSection(
        tau=sign * geom.raceway_radius / r,
        alpha=alpha,
        plane=plane,
        ring_side=geom.ring_side,
    )


def section_from_radii(
    body_radius: float,
    counter_radius: float,
    gap: float,
    *,
    width: Union[float, None] = None,
) -> DimensionlessSection:
    """A section for a cylinder in a concave counter surface.

    Useful for undeflected cylindrical roller or plain bearing sections.
    Without ``width`` the section is closed (section plane II convention).
    """
    tau = counter_radius / body_radius
    alpha = gap / body_radius
    if width is None:
        return DimensionlessSection(tau=tau, alpha=alpha, plane=SectionPlane.SECTION_II)
    return DimensionlessSection(
        tau=tau, alpha=alpha, beta=width / body_radius, plane=SectionPlane.SECTION_I
    )


#: Dimensional data of a 6205 deep groove ball bearing, mm
PRESETS = {
    "bearing-6205-c3": {
        "ball_radius": 4.0,
        "ring_width": 15.0,
        "inner": {"groove_radius": 4.16, "raceway_radius": 15.25, "groove_width": 5.03},
        "outer": {"groove_radius": 4.24, "raceway_radius": 23.25, "groove_width": 4.82},
    },
}


def preset(
    name: str,
    ring_side: RingSide,
    *,
    gap: float = 0.001,
    permittivity_rel: float = 2.2,
) -> BearingContactGeometry:
    """Build a contact from a named preset."""
    try:
        data = PRESETS[name]
    except KeyError:
        raise InvalidGeometry(
            f"unknown geometry preset {name!r}, choose from {sorted(PRESETS)}"
        ) from None
    ring = data[ring_side.value]
    return BearingContactGeometry(
        ball_radius=data["ball_radius"],
        ring_width=data["ring_width"],
        ring_side=ring_side,
        gap=gap,
        permittivity=permittivity_rel * EPSILON_0,
        **ring,
    )


