import math

import msgspec
import pytest

from bearingcap import geometry
from bearingcap._errors import DegeneratePair, InvalidGeometry, ZeroRadius
from bearingcap.geometry import (
    BearingContactGeometry,
    DimensionlessSection,
    RingSide,
    SectionPlane,
    effective_radius,
    preset,
    section_from_radii,
    to_dimensionless,
)

from utils import contact


def test_module_dir():
    assert set(dir(geometry)) == set(geometry.__all__)


class TestEffectiveRadius:
    @pytest.mark.parametrize(
        "r1, r2, expected, tol",
        [
            (4.0, -4.16, 104.0, 1e-9),
            (4.0, 15.25, 3.17, 0.005),
            (4.0, -4.24, 70.67, 0.005),
            (4.0, -23.25, 4.83, 0.005),
        ],
    )
    def test_bearing_radii(self, r1, r2, expected, tol):
        assert effective_radius(r1, r2) == pytest.approx(expected, abs=tol)

    def test_plane_partner(self):
        assert effective_radius(3.0, math.inf) == 3.0

    def test_symmetric(self):
        assert effective_radius(4.0, 15.25) == effective_radius(15.25, 4.0)

    @pytest.mark.parametrize("r1, r2", [(0.0, 1.0), (1.0, 0.0)])
    def test_zero_radius(self, r1, r2):
        with pytest.raises(ZeroRadius):
            effective_radius(r1, r2)

    def test_cancelling_curvatures(self):
        with pytest.raises(DegeneratePair):
            effective_radius(4.0, -4.0)


class TestBearingContactGeometry:
    def test_preset_effective_radii(self):
        inner = contact("inner").effective_radii()
        outer = contact("outer").effective_radii()
        assert inner.r_y == pytest.approx(104.0, rel=1e-9)
        assert inner.r_x == pytest.approx(3.17, abs=0.005)
        assert outer.r_y == pytest.approx(70.67, abs=0.005)
        assert outer.r_x == pytest.approx(4.83, abs=0.005)

    def test_conformity(self):
        assert contact("inner").conformity == pytest.approx(0.52)
        assert contact("outer").conformity == pytest.approx(0.53)

    def test_pitch_radius(self):
        inner = contact("inner", gap_um=2.0)
        outer = contact("outer", gap_um=2.0)
        assert inner.pitch_radius == pytest.approx(15.25 + 4.0 + 0.002)
        assert outer.pitch_radius == pytest.approx(23.25 - 4.0 - 0.002)

    def test_signed_partner_radius(self):
        inner = contact("inner")
        outer = contact("outer")
        assert inner.signed_partner_radius(SectionPlane.SECTION_I) == -4.16
        assert inner.signed_partner_radius(SectionPlane.SECTION_II) == 15.25
        assert outer.signed_partner_radius(SectionPlane.SECTION_II) == -23.25

    @pytest.mark.parametrize(
        "changes, match",
        [
            ({"groove_radius": 3.9}, "groove_radius"),
            ({"groove_width": 9.0}, "groove_width"),
            ({"ring_width": 4.0}, "ring_width"),
            ({"gap": -0.001}, "gap"),
            ({"ball_radius": 0.0}, "ball_radius"),
            ({"ball_radius": -4.0}, "ball_radius"),
            ({"raceway_radius": 0.0}, "raceway_radius"),
            ({"groove_width": 0.0}, "groove_width"),
        ],
    )
    def test_invalid(self, changes, match):
        data = msgspec.structs.asdict(contact("inner"))
        data.update(changes)
        with pytest.raises(InvalidGeometry, match=match):
            BearingContactGeometry(**data)

    def test_with_gap(self):
        geom = contact("outer").with_gap(0.004)
        assert geom.gap == 0.004
        assert geom.groove_radius == 4.24
        with pytest.raises(InvalidGeometry):
            geom.with_gap(0.0)

    def test_decoded_constraints(self):
        data = msgspec.json.encode(contact("outer"))
        bad = data.replace(b'"ball_radius":4.0', b'"ball_radius":-4.0')
        with pytest.raises(msgspec.ValidationError, match="ball_radius"):
            msgspec.json.decode(bad, type=BearingContactGeometry)

    def test_unknown_preset(self):
        with pytest.raises(InvalidGeometry, match="unknown geometry preset"):
            preset("bearing-6000", RingSide.INNER)


class TestDimensionlessSection:
    def test_outer_section_i(self):
        sec = to_dimensionless(contact("outer", gap_um=4.0), SectionPlane.SECTION_I)
        assert sec.tau == pytest.approx(1.06)
        assert sec.alpha == pytest.approx(0.001)
        assert sec.beta == pytest.approx(1.205)
        assert sec.sigma == pytest.approx(0.059)
        assert sec.ring_side is RingSide.OUTER

    def test_inner_section_i(self):
        sec = to_dimensionless(contact("inner", gap_um=4.0), SectionPlane.SECTION_I)
        assert sec.tau == pytest.approx(1.04)
        assert sec.beta == pytest.approx(1.2575)

    def test_inner_section_ii(self):
        sec = to_dimensionless(contact("inner", gap_um=4.0), SectionPlane.SECTION_II)
        assert sec.tau == pytest.approx(-3.8125)
        assert sec.sigma == pytest.approx(-4.8135)
        assert sec.convex_pair

    def test_outer_section_ii(self):
        sec = to_dimensionless(contact("outer"), SectionPlane.SECTION_II)
        assert sec.tau == pytest.approx(5.8125)
        assert not sec.convex_pair

    def test_contact_point(self):
        sec = to_dimensionless(contact("outer"), SectionPlane.SECTION_I)
        cx, cy = sec.raceway_center()
        assert cy == 0
        assert cx + sec.tau == pytest.approx(1 + sec.alpha)

    def test_to_dimensional(self):
        sec = to_dimensionless(contact("inner", gap_um=2.0), SectionPlane.SECTION_II)
        radius, gap = sec.to_dimensional(4.0)
        assert radius == pytest.approx(15.25)
        assert gap == pytest.approx(0.002)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"tau": 1.06, "alpha": 0.0, "beta": 1.2, "plane": SectionPlane.SECTION_I},
            {"tau": 1.06, "alpha": 0.1, "beta": 1.2, "plane": SectionPlane.SECTION_I},
            {"tau": 1.06, "alpha": 0.001, "plane": SectionPlane.SECTION_I},
            {"tau": 1.06, "alpha": 0.001, "beta": 2.2, "plane": SectionPlane.SECTION_I},
            {"tau": 1.0005, "alpha": 0.001, "plane": SectionPlane.SECTION_II},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidGeometry):
            DimensionlessSection(**kwargs)

    def test_gap_larger_than_groove_clearance(self):
        with pytest.raises(InvalidGeometry):
            to_dimensionless(contact("inner", gap_um=200.0), SectionPlane.SECTION_I)

    def test_with_alpha(self):
        sec = to_dimensionless(contact("outer"), SectionPlane.SECTION_I)
        assert sec.with_alpha(0.002).alpha == 0.002
        with pytest.raises(InvalidGeometry):
            sec.with_alpha(-1.0)


class TestSectionFromRadii:
    def test_closed(self):
        sec = section_from_radii(10.0, 10.5, 0.01)
        assert sec.plane is SectionPlane.SECTION_II
        assert sec.tau == pytest.approx(1.05)
        assert sec.alpha == pytest.approx(0.001)

    def test_open(self):
        sec = section_from_radii(10.0, 10.5, 0.01, width=12.0)
        assert sec.plane is SectionPlane.SECTION_I
        assert sec.beta == pytest.approx(1.2)
