"""Distances from the ball center to the raceway along radial rays.

In a section plane the raceway is a circle and the distance is a root of a
quadratic. In 3D the groove is a torus (the groove circle revolved about the
bearing axis) flanked by the flat rim, a cylinder about the same axis. Torus
hits are bracketed and refined with Brent's method; rim hits are quadratic.

3D coordinates are in mm with the ball center at the origin: ``zeta`` points
from the ball center to the contact point, ``eta`` along the bearing axis and
``xi`` in the rolling direction. A ray is given by the angle ``theta`` in the
``(eta, zeta)`` plane and the latitude ``phi`` towards ``xi``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import optimize

from ._errors import GeometryError, RayMissesRaceway, TangencyNotFound
from .geometry import BearingContactGeometry, DimensionlessSection, RingSide

__all__ = (
    "section_ray_distance",
    "tangency_angle",
    "RacewaySurface",
    "ray_direction",
)

# Absolute tolerance of torus hits, mm
RAY_XTOL = 1e-15


def __dir__():
    return __all__


def section_ray_distance(section: DimensionlessSection, theta: float) -> float:
    """Distance from the ball center to the raceway circle along angle ``theta``.

    Raises
    ------
    RayMissesRaceway
        If the ray passes a convex raceway.
    """
    b = -section.sigma * math.cos(theta)
    c = section.sigma**2 - section.tau**2
    disc = b * b - c
    if section.tau > 0:
        # ball enclosed by the raceway circle, c < 0
        return b + math.sqrt(disc)
    if disc < 0 or b <= 0:
        raise RayMissesRaceway(
            f"ray at theta={theta} misses the raceway (tau={section.tau})"
        )
    return b - math.sqrt(disc)


def tangency_angle(section: DimensionlessSection) -> float:
    """Angle at which a ray from the ball center touches a convex raceway.

    Raises
    ------
    TangencyNotFound
        If the raceway is concave, or encloses the ball center.
    """
    if section.tau >= 0:
        raise TangencyNotFound(
            f"a concave raceway (tau={section.tau}) has no tangent ray"
        )
    ratio = section.tau / section.sigma
    if not 0 < ratio < 1:
        raise TangencyNotFound(
            f"no tangent ray for tau={section.tau}, sigma={section.sigma}"
        )
    return math.asin(ratio)


def ray_direction(theta, phi):
    """Unit vector ``(xi, eta, zeta)`` of a ray, vectorized over numpy arrays."""
    cp = np.cos(phi)
    return np.sin(phi), cp * np.sin(theta), cp * np.cos(theta)


class RacewaySurface:
    """The groove torus and rim cylinder of one ring, seen from the ball center.

    Parameters
    ----------
    geom : BearingContactGeometry
        The contact.
    """

    def __init__(self, geom: BearingContactGeometry):
        self.geom = geom
        self.ball_radius = geom.ball_radius
        self.groove_radius = geom.groove_radius
        self.half_groove = geom.groove_width / 2
        self.half_ring = geom.ring_width / 2
        # +1 if the raceway faces away from the bearing axis
        self.sign = 1.0 if geom.ring_side is RingSide.OUTER else -1.0
        self.pitch = geom.pitch_radius
        groove_offset = geom.groove_radius - geom.ball_radius - geom.gap
        self.center_radius = self.pitch - self.sign * groove_offset
        self.edge_radius = self.center_radius + self.sign * math.sqrt(
            geom.groove_radius**2 - self.half_groove**2
        )
        self.t_max = geom.ball_radius + 2 * geom.groove_radius

    def __repr__(self):
        return f"RacewaySurface({self.geom!r})"

    def _axis_distance(self, xi, zeta):
        return np.hypot(xi, self.pitch + self.sign * zeta)

    def _tube_excess(self, t, u):
        xi, eta, zeta = (t * c for c in u)
        rho = self._axis_distance(xi, zeta)
        return np.hypot(rho - self.center_radius, eta) - self.groove_radius

    def groove_hit(self, theta: float, phi: float) -> tuple[float, float]:
        """Distance to the groove torus and axial coordinate of the hit, mm.

        The hit may lie beyond the groove edge; callers compare the returned
        ``eta`` with the groove half width.

        Raises
        ------
        RayMissesRaceway
            If the ray leaves the groove tube through the wall facing away
            from the raceway.
        """
        u = tuple(float(c) for c in ray_direction(theta, phi))
        t = optimize.brentq(
            self._tube_excess, self.ball_radius, self.t_max, args=(u,), xtol=RAY_XTOL
        )
        xi, eta, zeta = (t * c for c in u)
        if self.sign * (self._axis_distance(xi, zeta) - self.center_radius) <= 0:
            raise RayMissesRaceway(
                f"ray at theta={theta}, phi={phi} leaves the groove tube on the "
                f"far wall"
            )
        return t, abs(eta)

    def groove_gaps(self, theta: np.ndarray, phi: float, iterations: int = 60) -> np.ndarray:
        """Vectorized groove gap ``t - ball_radius`` by bisection, mm."""
        u = ray_direction(np.asarray(theta, dtype=float), phi)
        lo = np.full(np.shape(theta), self.ball_radius)
        hi = np.full(np.shape(theta), self.t_max)
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            outside = self._tube_excess(mid, u) >= 0
            hi = np.where(outside, mid, hi)
            lo = np.where(outside, lo, mid)
        return 0.5 * (lo + hi) - self.ball_radius

    def rim_hit(self, theta: float, phi: float) -> tuple[float, float]:
        """Distance to the rim cylinder and axial coordinate of the hit, mm.

        Raises
        ------
        RayMissesRaceway
            If the ray misses the rim cylinder or hits it beyond the ring side.
        """
        u_xi, u_eta, u_zeta = (float(c) for c in ray_direction(theta, phi))
        a = u_xi**2 + u_zeta**2
        b = 2 * self.pitch * self.sign * u_zeta
        c = self.pitch**2 - self.edge_radius**2
        disc = b * b - 4 * a * c
        if a == 0 or disc < 0:
            raise RayMissesRaceway(f"ray at theta={theta}, phi={phi} misses the rim")
        root = math.sqrt(disc)
        roots = sorted(r for r in ((-b - root) / (2 * a), (-b + root) / (2 * a)) if r > 0)
        if not roots:
            raise RayMissesRaceway(f"ray at theta={theta}, phi={phi} misses the rim")
        t = roots[0]
        eta = abs(t * u_eta)
        if eta > self.half_ring:
            raise RayMissesRaceway(
                f"ray at theta={theta}, phi={phi} passes the ring side "
                f"(eta={eta:.6g} mm > {self.half_ring} mm)"
            )
        return t, eta

    def _boundary_theta(self, excess) -> float:
        hi = math.pi / 2
        if excess(hi) <= 0:
            return hi
        if excess(0.0) >= 0:
            return 0.0
        return optimize.brentq(excess, 0.0, hi, xtol=1e-13)

    def groove_edge_theta(self, phi: float) -> float:
        """Ray angle ``theta`` reaching the groove edge at latitude ``phi``."""

        def excess(theta):
            try:
                return self.groove_hit(theta, phi)[1] - self.half_groove
            except RayMissesRaceway:
                return self.t_max

        return self._boundary_theta(excess)

    def rim_end_theta(self, phi: float) -> float:
        """Ray angle ``theta`` reaching the ring side through the rim."""

        def excess(theta):
            try:
                return self.rim_hit(theta, phi)[1] - self.half_ring
            except RayMissesRaceway:
                return self.t_max

        return self._boundary_theta(excess)

    def section_ii_limit(self) -> float:
        """Latitude limit ``phi``: tangency on the inner ring, ``pi/2`` on the outer."""
        if self.sign > 0:
            return math.pi / 2
        ratio = self.geom.raceway_radius / self.pitch
        if not 0 < ratio < 1:
            raise GeometryError(f"raceway does not fit below the ball, ratio={ratio}")
        return math.asin(ratio)
