from bearingcap.geometry import (
    EPSILON_0,
    RingSide,
    SectionPlane,
    preset,
    to_dimensionless,
)

EPS = 2.2 * EPSILON_0


def contact(ring, gap_um=1.0):
    """The 6205-C3 contact of ``ring`` at lubrication gap ``gap_um``."""
    return preset("bearing-6205-c3", RingSide(ring), gap=gap_um * 1e-3)


def section(ring, plane, gap_um=1.0):
    """A section plane (``"section-i"``/``"section-ii"``) of `contact`."""
    return to_dimensionless(contact(ring, gap_um), SectionPlane(plane))
