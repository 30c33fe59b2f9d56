"""Semi-analytic capacitances: the gap as a parallel connection of plate capacitors.

Each area element ``dA`` facing a gap ``h`` contributes ``eps dA / h``. The
models differ in the geometry of the gap and in where the area elements
sit:

- model A uses the Hertzian effective radii against a plane, with the
  Taylor or the exact circle height,
- model B measures vertical gaps between the true section arcs,
- models C and D measure gaps along rays from the ball center and take the
  area elements on the raceway (C) or on the ball (D),
- model E is model D over the 3D groove plus the rim beside it.

2D models return capacitances per length (F/m) of the symmetric section;
3D models return absolute capacitances (F).
"""

from __future__ import annotations

import enum
import logging
import math
from typing import Union

import msgspec

from . import analytic2d
from ._errors import GeometryError, RayMissesRaceway
from .geometry import BearingContactGeometry, DimensionlessSection, SectionPlane
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate1d, integrate2d
from .raycast import RacewaySurface, section_ray_distance, tangency_angle
from .result import CapacitanceResult, Method

__all__ = (
    "HeightProfile",
    "GapKind",
    "GapProfile",
    "effective_profile",
    "true_profile",
    "ray_limit",
    "cap2d_model_a",
    "cap2d_model_b",
    "cap2d_true_taylor",
    "cap2d_model_c",
    "cap2d_model_d",
    "cap3d_model_a",
    "cap3d_model_e",
)

logger = logging.getLogger(__name__)

# mm -> m, for absolute capacitances from eps [F/m] times lengths [mm]
MM = 1e-3


def __dir__():
    return __all__


class HeightProfile(enum.Enum):
    TAYLOR = "taylor"
    EXACT = "exact"


class GapKind(enum.Enum):
    TAYLOR_EFFECTIVE = "taylor-effective"
    EXACT_EFFECTIVE = "exact-effective"
    TRUE_SECTION = "true-section"
    TAYLOR_SECTION = "taylor-section"


class GapProfile(msgspec.Struct, frozen=True, kw_only=True):
    """Gap height between two electrodes as a function of the lateral coordinate.

    Parameters
    ----------
    kind : GapKind
        How the height is computed.
    gap : float
        Height at the contact center.
    radius : float
        Effective radius, for the effective and Taylor kinds.
    tau : float, optional
        Signed raceway radius, for the true section kind (ball radius 1).
    domain : tuple
        Interval of validity of the lateral coordinate.
    """

    kind: GapKind
    gap: float
    radius: float
    domain: tuple[float, float]
    tau: Union[float, None] = None

    def __call__(self, x: float) -> float:
        if self.kind is GapKind.EXACT_EFFECTIVE:
            R = self.radius
            # R - sqrt(R^2 - x^2) without cancellation
            return self.gap + x * x / (R + math.sqrt(R * R - x * x))
        if self.kind is GapKind.TRUE_SECTION:
            tau = self.tau
            ball = x * x / (1 + math.sqrt(1 - x * x))
            race = x * x / (abs(tau) + math.sqrt(tau * tau - x * x))
            # ball drops away by `ball`; a concave raceway follows by `race`,
            # a convex one drops away too
            return self.gap + ball - math.copysign(race, tau)
        return self.gap + x * x / (2 * self.radius)


def effective_profile(R: float, s: float, height: HeightProfile, half_width: float) -> GapProfile:
    """Gap of a cylinder of radius ``R`` over a plane, in the units of ``R``."""
    if not (R > 0 and s > 0):
        raise GeometryError(f"need R > 0 and s > 0, got R={R}, s={s}")
    if height is HeightProfile.EXACT:
        if not 0 < half_width <= R:
            raise GeometryError(
                f"exact heights need 0 < half_width <= R, got {half_width} (R={R})"
            )
        kind = GapKind.EXACT_EFFECTIVE
    else:
        if not half_width > 0:
            raise GeometryError(f"half_width must be > 0, got {half_width}")
        kind = GapKind.TAYLOR_EFFECTIVE
    return GapProfile(kind=kind, gap=s, radius=R, domain=(-half_width, half_width))


def true_profile(section: DimensionlessSection, height: HeightProfile = HeightProfile.EXACT) -> GapProfile:
    """Vertical gap between the true section arcs, scaled by the ball radius.

    The Taylor variant expands it to second order, which gives the effective
    radius ``1 / (1 - 1/tau)``.
    """
    if section.plane is SectionPlane.SECTION_I:
        limit = section.beta / 2
    else:
        limit = 1.0
    if limit > 1 or limit > abs(section.tau):
        raise GeometryError(
            f"section arcs end before the integration limit {limit} "
            f"(tau={section.tau})"
        )
    radius = 1 / (1 - 1 / section.tau)
    kind = GapKind.TRUE_SECTION if height is HeightProfile.EXACT else GapKind.TAYLOR_SECTION
    return GapProfile(
        kind=kind, gap=section.alpha, radius=radius, tau=section.tau, domain=(-limit, limit)
    )


def _result(method, value, quad, **extra) -> CapacitanceResult:
    diagnostics = {"abs_error": quad.abs_error, "evaluations": quad.evaluations}
    diagnostics.update(extra)
    return CapacitanceResult(
        value=value, per_length=method.per_length, method=method, diagnostics=diagnostics
    )


def _integrate_profile(
    profile: GapProfile, spec: QuadratureSpec, symmetric: bool
):
    lo, hi = profile.domain

    def integrand(x):
        return 1 / profile(x)

    if symmetric and lo == -hi:
        quad = integrate1d(integrand, 0.0, hi, spec)
        return 2 * quad.value, quad
    quad = integrate1d(integrand, lo, hi, spec, points=(0.0,))
    return quad.value, quad


def cap2d_model_a(
    R: float,
    s: float,
    eps: float,
    height: HeightProfile = HeightProfile.TAYLOR,
    half_width: float = math.inf,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> CapacitanceResult:
    """Capacitance per length of plate capacitors over a cylinder on a plane.

    Parameters
    ----------
    R : float
        Effective radius.
    s : float
        Minimal gap, in the units of ``R``.
    eps : float
        Permittivity, F/m.
    height : HeightProfile
        Second-order Taylor or exact circle height.
    half_width : float
        Half width of the integration window, in the units of ``R``. May be
        infinite for Taylor heights; at most ``R`` for exact heights.
    spec : QuadratureSpec
        Quadrature tolerances.
    """
    profile = effective_profile(R, s, height, half_width)
    if math.isinf(half_width):
        quad = integrate1d(lambda x: 1 / profile(x), 0.0, math.inf, spec)
        value = 2 * quad.value
    else:
        value, quad = _integrate_profile(profile, spec, symmetric=True)
    return _result(Method.A2D, eps * value, quad, height=height.value)


def cap2d_model_b(
    section: DimensionlessSection,
    eps: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    *,
    height: HeightProfile = HeightProfile.EXACT,
    symmetric: bool = True,
) -> CapacitanceResult:
    """Parallel plate capacitors between the true section arcs.

    The window is the groove width in section plane I and the ball diameter
    in section plane II. With ``height=TAYLOR`` the vertical gap is replaced
    by its second-order expansion.
    """
    profile = true_profile(section, height)
    value, quad = _integrate_profile(profile, spec, symmetric)
    return _result(Method.B, eps * value, quad, height=height.value)


def cap2d_true_taylor(
    section: DimensionlessSection, eps: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> tuple[CapacitanceResult, CapacitanceResult, float]:
    """Model B with Taylor and with exact heights on the true section.

    Returns
    -------
    taylor, exact : CapacitanceResult
    deviation : float
        ``(taylor - exact) / exact``; positive since the parabola stays below
        the circle arcs.
    """
    taylor = cap2d_model_b(section, eps, spec, height=HeightProfile.TAYLOR)
    exact = cap2d_model_b(section, eps, spec, height=HeightProfile.EXACT)
    return taylor, exact, (taylor.value - exact.value) / exact.value


def ray_limit(section: DimensionlessSection) -> float:
    """Upper ray angle of models C and D.

    The groove edge in section plane I, ``pi/2`` for an outer raceway and the
    tangent ray for an inner one in section plane II.
    """
    if section.plane is SectionPlane.SECTION_I:
        return analytic2d.theta_limit(section)
    if section.tau > 0:
        return math.pi / 2
    return tangency_angle(section)


def cap2d_model_c(
    section: DimensionlessSection, eps: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> CapacitanceResult:
    """Gaps along rays from the ball center, area elements on the raceway.

    The raceway arc is parametrized by its own angle ``psi`` about its center,
    so that the arc element is ``|tau| d psi``.
    """
    theta1 = ray_limit(section)
    tau, sigma = section.tau, section.sigma
    if section.plane is SectionPlane.SECTION_II and tau < 0:
        # tangent point, where the discriminant of the ray vanishes
        t1 = math.sqrt(sigma * sigma - tau * tau)
    else:
        t1 = section_ray_distance(section, theta1)
    x1, y1 = t1 * math.cos(theta1), t1 * math.sin(theta1)
    psi1 = abs(math.atan2(y1 / tau, (x1 + sigma) / tau))

    def integrand(psi):
        x = -sigma + tau * math.cos(psi)
        y = tau * math.sin(psi)
        r = math.hypot(x, y)
        return 1 / (r - 1)

    quad = integrate1d(integrand, 0.0, psi1, spec)
    value = 2 * abs(tau) * quad.value
    return _result(Method.C, eps * value, quad, theta1=theta1)


def cap2d_model_d(
    section: DimensionlessSection, eps: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> CapacitanceResult:
    """Gaps along rays from the ball center, area elements on the ball."""
    theta1 = ray_limit(section)

    def integrand(theta):
        return 1 / (section_ray_distance(section, theta) - 1)

    quad = integrate1d(integrand, 0.0, theta1, spec)
    return _result(Method.D, eps * 2 * quad.value, quad, theta1=theta1)


def cap3d_model_a(
    geom: BearingContactGeometry,
    eps: Union[float, None] = None,
    limits: Union[tuple[float, float], None] = None,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> CapacitanceResult:
    """Plate capacitors over the Taylor-expanded effective-radii gap, F.

    Parameters
    ----------
    geom : BearingContactGeometry
        The contact; its effective radii and gap are used.
    eps : float, optional
        Permittivity, F/m. Defaults to the permittivity of ``geom``.
    limits : tuple, optional
        Half extents ``(x, y)`` of the integration rectangle, mm, in the
        rolling and axial direction. Defaults to the ball radius and half the
        groove width.
    spec : QuadratureSpec
        Quadrature tolerances.
    """
    radii = geom.effective_radii()
    if eps is None:
        eps = geom.permittivity
    if limits is None:
        limits = (geom.ball_radius, geom.groove_width / 2)
    x_max, y_max = limits
    if not (x_max > 0 and y_max > 0):
        raise GeometryError(f"integration limits must be > 0, got {limits}")
    s, two_rx, two_ry = geom.gap, 2 * radii.r_x, 2 * radii.r_y

    def integrand(x, y):
        return 1 / (s + x * x / two_rx + y * y / two_ry)

    quad = integrate2d(integrand, (0.0, x_max), (0.0, y_max), spec)
    return _result(Method.A3D, 4 * eps * quad.value * MM, quad, x_max=x_max, y_max=y_max)


def cap3d_model_e(
    geom: BearingContactGeometry,
    eps: Union[float, None] = None,
    include_rim: bool = True,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> CapacitanceResult:
    """Gaps along rays from the ball center over the ball surface, F.

    The ball patch is ``r**2 cos(phi) dphi dtheta`` with ``theta`` in the
    axial plane and ``phi`` in the rolling direction. Rays up to the groove
    edge reach the torus; with ``include_rim`` the rays beyond it reach the
    flat rim until the ring side. ``phi`` runs up to ``pi/2`` on the outer
    ring and up to the tangent ray on the inner ring.
    """
    if eps is None:
        eps = geom.permittivity
    surface = RacewaySurface(geom)
    r = geom.ball_radius
    phi_max = surface.section_ii_limit()

    def groove(phi, theta):
        try:
            t, _ = surface.groove_hit(theta, phi)
        except RayMissesRaceway:
            return 0.0
        return math.cos(phi) / (t - r)

    def rim(phi, theta):
        try:
            t, _ = surface.rim_hit(theta, phi)
        except RayMissesRaceway:
            return 0.0
        return math.cos(phi) / (t - r)

    quad = integrate2d(
        groove, (0.0, phi_max), lambda phi: (0.0, surface.groove_edge_theta(phi)), spec
    )
    total = quad.value
    diagnostics = {"groove": 4 * eps * r * r * quad.value * MM}
    if include_rim:
        rim_quad = integrate2d(
            rim,
            (0.0, phi_max),
            lambda phi: (surface.groove_edge_theta(phi), surface.rim_end_theta(phi)),
            spec,
        )
        total += rim_quad.value
        diagnostics["rim"] = 4 * eps * r * r * rim_quad.value * MM
        quad = msgspec.structs.replace(
            quad,
            abs_error=quad.abs_error + rim_quad.abs_error,
            evaluations=quad.evaluations + rim_quad.evaluations,
        )
    method = Method.E if include_rim else Method.D3D
    value = 4 * eps * r * r * total * MM
    logger.debug("model %s for %s ring: %.9e F", method.value, geom.ring_side.value, value)
    return _result(method, value, quad, **diagnostics)
