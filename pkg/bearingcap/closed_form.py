"""Exact per-length capacitances of cylinder electrode pairs.

These serve as building blocks of the common semi-analytic model and as
oracles for the numerical models. All three formulas are evaluated through
``arccosh(1 + x)`` with ``x`` formed from the gap directly, which is the same
quantity as the printed logarithms but keeps full precision for gaps many
orders of magnitude below the radii.
"""

from __future__ import annotations

import math

from ._errors import DomainError, GeometryError

__all__ = (
    "cap_plane_cylinder",
    "cap_eccentric_cylinders",
    "cap_external_cylinders",
    "cap_true_geometry",
    "eccentricity",
    "plane_cylinder_asymptote",
)


def __dir__():
    return __all__


# Relative distance to touching below which a pair is rejected
TOUCH_GUARD = 1e-12


def _arccosh1p(x: float) -> float:
    """``arccosh(1 + x)`` for ``x >= 0`` without cancellation at small ``x``."""
    return math.log1p(x + math.sqrt(x * (2 + x)))


def cap_plane_cylinder(R: float, s: float, eps: float) -> float:
    """Capacitance per length of a cylinder of radius ``R`` at gap ``s`` over a plane.

    Parameters
    ----------
    R : float
        Cylinder radius, mm.
    s : float
        Minimal gap, mm.
    eps : float
        Permittivity, F/m.

    Returns
    -------
    float
        Capacitance per length, F/m.
    """
    if not R > 0:
        raise DomainError(f"R must be > 0, got {R} mm")
    if not s > 0:
        raise DomainError(f"s must be > 0, got {s} mm")
    return 2 * math.pi * eps / _arccosh1p(s / R)


def plane_cylinder_asymptote(R: float, s: float, eps: float) -> float:
    """Leading term ``pi * eps * sqrt(2R/s)`` of `cap_plane_cylinder` for ``s << R``."""
    return math.pi * eps * math.sqrt(2 * R / s)


def eccentricity(r1: float, r2: float, s: float) -> float:
    """Center distance of a cylinder of radius ``r1`` inside one of radius ``r2``.

    ``r1`` and ``r2`` are magnitudes and ``s`` the minimal gap, so the
    result is the magnitude relation behind ``e = s - r2 - r1``.
    """
    if not 0 < r1 < r2:
        raise GeometryError(f"need 0 < r1 < r2, got r1={r1}, r2={r2} mm")
    if not 0 < s <= r2 - r1:
        raise GeometryError(f"need 0 < s <= r2 - r1, got s={s} mm")
    return r2 - r1 - s


def cap_eccentric_cylinders(r1: float, r2: float, e: float, eps: float) -> float:
    """Capacitance per length of a cylinder ``r1`` inside a cylinder ``r2``.

    Parameters
    ----------
    r1, r2 : float
        Inner and outer radius, mm, with ``r2 > r1 > 0``.
    e : float
        Distance between the centers, mm, with ``0 <= e < r2 - r1``.
    eps : float
        Permittivity, F/m.

    Raises
    ------
    GeometryError
        If the cylinders touch or intersect.
    """
    if not 0 < r1 < r2:
        raise GeometryError(f"need 0 < r1 < r2, got r1={r1}, r2={r2} mm")
    if e < 0:
        raise GeometryError(f"eccentricity must be >= 0, got {e} mm")
    gap = (r2 - r1) - e
    if gap <= TOUCH_GUARD * r1:
        raise GeometryError(
            f"cylinders touch or intersect: r2 - r1 - e = {gap} mm"
        )
    x = gap * (r2 - r1 + e) / (2 * r1 * r2)
    return 2 * math.pi * eps / _arccosh1p(x)


def cap_external_cylinders(r1: float, r2: float, s: float, eps: float) -> float:
    """Capacitance per length of two separated convex cylinders at gap ``s``.

    The center distance is ``r1 + r2 + s``.
    """
    if not (r1 > 0 and r2 > 0):
        raise GeometryError(f"radii must be > 0, got r1={r1}, r2={r2} mm")
    if s <= TOUCH_GUARD * min(r1, r2):
        raise GeometryError(f"cylinders touch or intersect: s = {s} mm")
    x = s * (2 * (r1 + r2) + s) / (2 * r1 * r2)
    return 2 * math.pi * eps / _arccosh1p(x)


def cap_true_geometry(ball_radius: float, partner_radius: float, s: float, eps: float) -> float:
    """Capacitance per length of the full circular section of a contact.

    ``partner_radius`` is signed: negative for a concave raceway enclosing the
    ball, positive for a convex one (inner ring, section plane II).
    """
    if partner_radius < 0:
        r2 = -partner_radius
        return cap_eccentric_cylinders(
            ball_radius, r2, eccentricity(ball_radius, r2, s), eps
        )
    return cap_external_cylinders(ball_radius, partner_radius, s, eps)
