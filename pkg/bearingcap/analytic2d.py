"""Exact 2D capacitance of two eccentric circle-section electrodes.

The field of a line charge ``+q`` at ``rho = kappa`` and ``-q`` at
``rho = 1/kappa`` (both on the axis ``theta = 0`` through the contact point)
has the unit ball circle and the raceway circle as equipotentials. Charges
are integrated over the symmetric window ``-theta1 <= theta <= theta1`` of
the ball surface.

Coordinates are scaled by the ball radius, see `DimensionlessSection`.
"""

from __future__ import annotations

import logging
import math

import msgspec

from ._errors import GeometryError, OverlapError, SingularPoint
from .geometry import DimensionlessSection, SectionPlane

__all__ = (
    "ApollonianSolution",
    "kappa",
    "kappa_from",
    "potential",
    "field_on_ball",
    "charge_per_length",
    "theta_limit",
    "capacitance_model_f",
    "capacitance_window",
    "solve_apollonian",
    "circles_intersect",
)

logger = logging.getLogger(__name__)

# Relative discriminant below which the equipotential circles count as touching
DISCRIMINANT_GUARD = 1e-12


def __dir__():
    return __all__


class ApollonianSolution(msgspec.Struct, frozen=True):
    """The line-charge solution for one section, at ``q = 1`` C/m.

    Parameters
    ----------
    kappa : float
        Position of the positive line charge, ``|kappa| < 1``.
    theta1 : float
        Upper limit of the charge window, rad.
    phi_ball : float
        Potential of the ball surface per unit line charge and ``eps = 1``.
    phi_race : float
        Potential of the raceway surface per unit line charge and ``eps = 1``.
    section : DimensionlessSection
        The section this solution belongs to.
    """

    kappa: float
    theta1: float
    phi_ball: float
    phi_race: float
    section: DimensionlessSection

    def capacitance(self, eps: float) -> float:
        return eps * 2 * _half_charge(self.kappa, self.theta1) / (
            self.phi_ball - self.phi_race
        )


def kappa_from(tau: float, sigma: float) -> float:
    """Line charge position for raw ``tau`` and ``sigma``.

    Both roots of ``sigma k**2 - (tau**2 - sigma**2 - 1) k + sigma = 0`` are
    reciprocal; the one inside the ball is returned. It is computed as the
    reciprocal of the large root to avoid cancellation.

    Raises
    ------
    OverlapError
        If the discriminant is negative or vanishes, i.e. the electrode
        circles touch or overlap.
    """
    a = tau * tau - sigma * sigma - 1
    disc = a * a - 4 * sigma * sigma
    if disc <= DISCRIMINANT_GUARD * max(a * a, 1.0):
        raise OverlapError(
            f"equipotential circles touch or overlap for tau={tau}, "
            f"sigma={sigma} (discriminant {disc:.3e})"
        )
    if sigma == 0:
        return 0.0
    big = (a + math.copysign(math.sqrt(disc), a)) / (2 * sigma)
    return 1 / big


def kappa(section: DimensionlessSection) -> float:
    """Line charge position for ``section``, with ``|kappa| < 1``."""
    return kappa_from(section.tau, section.sigma)


def potential(
    section: DimensionlessSection,
    kappa: float,
    rho: float,
    theta: float,
    q: float,
    eps: float,
) -> float:
    """Electric potential at polar point ``(rho, theta)``, V.

    Raises
    ------
    SingularPoint
        On either line charge.
    """
    c = math.cos(theta)
    num = rho * rho - 2 * rho * c / kappa + 1 / (kappa * kappa)
    den = rho * rho - 2 * rho * c * kappa + kappa * kappa
    if num <= 0 or den <= 0:
        raise SingularPoint(
            f"potential is singular at rho={rho}, theta={theta} (kappa={kappa})"
        )
    return q / (4 * math.pi * eps) * math.log(num / den)


def field_on_ball(
    section: DimensionlessSection, kappa: float, theta: float, q: float, eps: float
) -> float:
    """Radial electric displacement on the ball surface ``rho = 1``.

    In units scaled by the ball radius, so its integral over
    ``[0, theta1]`` is the charge per length of one half window. The
    displacement does not depend on ``eps``.
    """
    c = math.cos(theta)
    return q * (1 - kappa * kappa) / (2 * math.pi * (1 - 2 * kappa * c + kappa * kappa))


def _half_charge(kappa: float, theta1: float) -> float:
    """``(1/pi) arctan((1+k)/(1-k) tan(theta1/2))`` on the continuous branch."""
    half = theta1 / 2
    return math.atan2((1 + kappa) * math.sin(half), (1 - kappa) * math.cos(half)) / math.pi


def charge_per_length(
    section: DimensionlessSection,
    kappa: float,
    theta1: float,
    q: float,
    eps: float,
) -> float:
    """Charge per length on the ball between ``theta = 0`` and ``theta1``, C/m.

    This is the half window; it reaches ``q/2`` at ``theta1 = pi``. The
    symmetric window ``[-theta1, theta1]`` carries twice this value.
    """
    if not 0 < theta1 <= math.pi:
        raise GeometryError(f"theta1 must lie in (0, pi], got {theta1}")
    return q * _half_charge(kappa, theta1)


def theta_limit(section: DimensionlessSection) -> float:
    """Polar angle of the groove edge seen from the ball center.

    In section plane II the limit is ``pi/2``, the half of the ball facing
    the ring.
    """
    if section.plane is SectionPlane.SECTION_II:
        return math.pi / 2
    tau = abs(section.tau)
    half = section.beta / 2
    if not section.beta < 2 * tau:
        raise GeometryError(
            f"groove width beta={section.beta} must be < 2|tau|={2 * tau}"
        )
    return math.atan2(half, math.sqrt(tau * tau - half * half) - section.sigma)


def _potential_difference(section: DimensionlessSection, k: float) -> float:
    """``Phi_ball - Phi_race`` times ``2 pi eps / q``."""
    d = section.tau - section.sigma
    return math.log(abs((d - k) / (d * k - 1)))


def capacitance_model_f(
    section: DimensionlessSection, eps: float, theta1: float
) -> float:
    """Capacitance per length of the symmetric window ``[-theta1, theta1]``, F/m.

    Equals ``2 * charge_per_length / (Phi_ball - Phi_race)``.

    Raises
    ------
    OverlapError
        If the electrode circles touch or overlap.
    """
    if not 0 < theta1 <= math.pi:
        raise GeometryError(f"theta1 must lie in (0, pi], got {theta1}")
    k = kappa(section)
    half = theta1 / 2
    arc = math.atan2((1 + k) * math.sin(half), (1 - k) * math.cos(half))
    return 4 * eps * arc / _potential_difference(section, k)


def capacitance_window(
    section: DimensionlessSection, eps: float, theta0: float, theta1: float
) -> float:
    """Capacitance per length of the band ``theta0 <= |theta| <= theta1``.

    This is the edge area left over when the inner part up to ``theta0`` is
    excluded, e.g. a flattened contact.
    """
    if not 0 <= theta0 < theta1:
        raise GeometryError(
            f"need 0 <= theta0 < theta1, got theta0={theta0}, theta1={theta1}"
        )
    if theta0 == 0:
        return capacitance_model_f(section, eps, theta1)
    return capacitance_model_f(section, eps, theta1) - capacitance_model_f(
        section, eps, theta0
    )


def solve_apollonian(
    section: DimensionlessSection, theta1: float | None = None
) -> ApollonianSolution:
    """Bundle the line-charge solution of ``section`` at ``q = 1``, ``eps = 1``."""
    k = kappa(section)
    if theta1 is None:
        theta1 = theta_limit(section)
    d = section.tau - section.sigma
    scale = 1 / (2 * math.pi)
    phi_ball = scale * math.log(abs(1 / k)) if k != 0 else math.inf
    phi_race = scale * math.log(abs((d - 1 / k) / (d - k))) if k != 0 else math.inf
    logger.debug(
        "apollonian solution tau=%g sigma=%g kappa=%.12g theta1=%.6g",
        section.tau,
        section.sigma,
        k,
        theta1,
    )
    return ApollonianSolution(
        kappa=k, theta1=theta1, phi_ball=phi_ball, phi_race=phi_race, section=section
    )


def circles_intersect(section: DimensionlessSection) -> bool:
    """Whether the ball circle and the full raceway circle touch or cross.

    A plain circle predicate, independent of the line-charge solution.
    """
    d = abs(section.sigma)
    r = abs(section.tau)
    if section.tau < 0:
        # two separate circles
        return d <= r + 1
    # ball inside raceway circle
    return d + 1 >= r
