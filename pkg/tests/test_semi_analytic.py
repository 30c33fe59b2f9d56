import math

import numpy as np
import pytest

from bearingcap import semi_analytic
from bearingcap._errors import GeometryError
from bearingcap.analytic2d import capacitance_model_f, theta_limit
from bearingcap.closed_form import cap_plane_cylinder, plane_cylinder_asymptote
from bearingcap.geometry import DimensionlessSection, SectionPlane, to_dimensionless
from bearingcap.quadrature import QuadratureSpec, trapezoid2d
from bearingcap.raycast import RacewaySurface, tangency_angle
from bearingcap.result import Method
from bearingcap.semi_analytic import (
    GapKind,
    HeightProfile,
    cap2d_model_a,
    cap2d_model_b,
    cap2d_model_c,
    cap2d_model_d,
    cap2d_true_taylor,
    cap3d_model_a,
    cap3d_model_e,
    effective_profile,
    ray_limit,
    true_profile,
)

from utils import EPS, contact, section

# looser tolerances keep the nested 3D ray integrals fast
FAST = QuadratureSpec(rel_tol=1e-6)

GAPS_UM = [0.1, 0.5, 1.0, 2.0, 5.0]


def effective_radius_of(ring, plane):
    radii = contact(ring).effective_radii()
    return radii.r_y if plane == "section-i" else radii.r_x


def test_module_dir():
    assert set(dir(semi_analytic)) == set(semi_analytic.__all__)


class TestGapProfile:
    def test_taylor_below_exact(self):
        taylor = effective_profile(3.17, 1e-3, HeightProfile.TAYLOR, 3.17)
        exact = effective_profile(3.17, 1e-3, HeightProfile.EXACT, 3.17)
        assert taylor.kind is GapKind.TAYLOR_EFFECTIVE
        assert exact.kind is GapKind.EXACT_EFFECTIVE
        assert taylor(0.0) == exact(0.0) == 1e-3
        for x in np.linspace(0.1, 3.17, 10):
            assert taylor(x) < exact(x)
        assert exact(3.17) == pytest.approx(3.17 + 1e-3)

    def test_exact_window_limited_by_radius(self):
        with pytest.raises(GeometryError):
            effective_profile(3.17, 1e-3, HeightProfile.EXACT, 4.0)
        with pytest.raises(GeometryError):
            effective_profile(3.17, 0.0, HeightProfile.TAYLOR, 1.0)

    @pytest.mark.parametrize(
        "ring, plane",
        [("inner", "section-i"), ("outer", "section-i"), ("inner", "section-ii"), ("outer", "section-ii")],
    )
    def test_true_section(self, ring, plane):
        sec = section(ring, plane)
        exact = true_profile(sec)
        taylor = true_profile(sec, HeightProfile.TAYLOR)
        assert exact.kind is GapKind.TRUE_SECTION
        assert exact(0.0) == taylor(0.0) == sec.alpha
        # the Taylor radius is the effective radius in units of the ball radius
        assert taylor.radius * 4.0 == pytest.approx(effective_radius_of(ring, plane))
        lo, hi = exact.domain
        assert lo == -hi
        for x in np.linspace(0.05, hi, 8):
            assert exact(x) == pytest.approx(exact(-x))
            assert taylor(x) < exact(x)

    def test_true_section_vertical_gap(self):
        sec = section("outer", "section-ii")
        x = 0.5
        ball = 1 - math.sqrt(1 - x * x)
        race = sec.tau - math.sqrt(sec.tau**2 - x * x)
        assert true_profile(sec)(x) == pytest.approx(sec.alpha + ball - race, rel=1e-12)

    def test_small_convex_raceway(self):
        sec = DimensionlessSection(tau=-0.5, alpha=0.01, plane=SectionPlane.SECTION_II)
        with pytest.raises(GeometryError):
            true_profile(sec)


class TestModelA:
    def test_infinite_taylor_is_asymptote(self):
        R, s = 3.17, 1e-3
        result = cap2d_model_a(R, s, EPS)
        assert result.method is Method.A2D
        assert result.per_length
        assert result.value == pytest.approx(plane_cylinder_asymptote(R, s, EPS), rel=1e-8)

    def test_close_to_closed_form(self):
        R, s = 70.67, 1e-4
        assert cap2d_model_a(R, s, EPS).value == pytest.approx(
            cap_plane_cylinder(R, s, EPS), rel=1e-5
        )

    @pytest.mark.parametrize(
        "ring, plane",
        [("inner", "section-i"), ("outer", "section-i"), ("inner", "section-ii"), ("outer", "section-ii")],
    )
    def test_taylor_overestimates_exact(self, ring, plane):
        R = effective_radius_of(ring, plane)
        devs = []
        for gap_um in (0.1, 1.0, 4.0):
            s = gap_um * 1e-3
            taylor = cap2d_model_a(R, s, EPS, HeightProfile.TAYLOR, R).value
            exact = cap2d_model_a(R, s, EPS, HeightProfile.EXACT, R).value
            devs.append((taylor - exact) / exact)
        assert all(0 < d < 0.01 for d in devs)
        assert devs == sorted(devs)

    def test_diagnostics(self):
        result = cap2d_model_a(3.17, 1e-3, EPS, HeightProfile.EXACT, 3.17)
        assert result.diagnostics["height"] == "exact"
        assert result.diagnostics["evaluations"] > 0


class TestModelB:
    def test_symmetric_matches_full_window(self):
        sec = section("inner", "section-i")
        half = cap2d_model_b(sec, EPS)
        full = cap2d_model_b(sec, EPS, symmetric=False)
        assert half.value == pytest.approx(full.value, rel=1e-8)

    def test_true_geometry_taylor_deviation(self):
        for ring in ("inner", "outer"):
            geom = contact(ring, gap_um=5.0)
            R = geom.effective_radii().r_y
            taylor = cap2d_model_a(R, geom.gap, EPS, HeightProfile.TAYLOR, R).value
            exact = cap2d_model_a(R, geom.gap, EPS, HeightProfile.EXACT, R).value
            effective = (taylor - exact) / exact
            t, e, true = cap2d_true_taylor(to_dimensionless(geom, SectionPlane.SECTION_I), EPS)
            assert t.value > e.value
            assert true == pytest.approx((t.value - e.value) / e.value)
            assert true >= 2 * effective > 0

    def test_true_taylor_vanishes_for_small_gaps(self):
        devs = [cap2d_true_taylor(section("outer", "section-ii", g), EPS)[2] for g in (5.0, 0.5, 0.01)]
        assert devs[0] > devs[1] > devs[2] > 0
        assert devs[2] < 1e-3


class TestRayModels:
    def test_ray_limit(self):
        sec = section("outer", "section-i")
        assert ray_limit(sec) == theta_limit(sec)
        assert ray_limit(section("outer", "section-ii")) == math.pi / 2
        inner = section("inner", "section-ii")
        assert ray_limit(inner) == pytest.approx(math.asin(inner.tau / inner.sigma))
        assert ray_limit(inner) < math.pi / 2

    @pytest.mark.parametrize(
        "ring, plane",
        [
            ("inner", "section-i"),
            ("outer", "section-i"),
            ("inner", "section-ii"),
            ("outer", "section-ii"),
        ],
    )
    def test_bracket_model_f(self, ring, plane):
        for gap_um in GAPS_UM:
            sec = section(ring, plane, gap_um)
            f = capacitance_model_f(sec, EPS, theta_limit(sec))
            d = cap2d_model_d(sec, EPS).value
            c = cap2d_model_c(sec, EPS).value
            assert d <= f <= c

    def test_model_c_reaches_tangent_ray(self):
        # the default sweep grid, where the tangent ray sits on a zero discriminant
        for gap_um in np.geomspace(0.1, 5.0, 24):
            sec = section("inner", "section-ii", float(gap_um))
            result = cap2d_model_c(sec, EPS)
            assert result.diagnostics["theta1"] == tangency_angle(sec)
            assert result.value > capacitance_model_f(sec, EPS, theta_limit(sec))

    def test_concentric_rays(self):
        # rays are normal to both electrodes, the plate sums have closed forms
        sec = DimensionlessSection(tau=2.0, alpha=1 - 1e-12, plane=SectionPlane.SECTION_II)
        theta1 = math.pi / 2
        d = cap2d_model_d(sec, EPS).value
        c = cap2d_model_c(sec, EPS).value
        assert d == pytest.approx(2 * theta1 * EPS / 1.0, rel=1e-8)
        assert c == pytest.approx(2 * theta1 * 2.0 * EPS / 1.0, rel=1e-8)

    def test_results_carry_limits(self):
        sec = section("outer", "section-i")
        assert cap2d_model_d(sec, EPS).diagnostics["theta1"] == theta_limit(sec)
        assert cap2d_model_c(sec, EPS).method is Method.C


class TestModelComparison:
    def test_model_b_below_model_f(self):
        for gap_um in GAPS_UM:
            sec = section("outer", "section-i", gap_um)
            f = capacitance_model_f(sec, EPS, theta_limit(sec))
            assert cap2d_model_b(sec, EPS).value < f

    def test_model_a_above_model_f(self):
        # the plane model sees the whole cylinder, model F only the groove
        devs = []
        for gap_um in GAPS_UM:
            geom = contact("outer", gap_um)
            sec = to_dimensionless(geom, SectionPlane.SECTION_I)
            a = cap_plane_cylinder(geom.effective_radii().r_y, geom.gap, EPS)
            f = capacitance_model_f(sec, EPS, theta_limit(sec))
            devs.append((a - f) / f)
        assert all(d > 0 for d in devs)
        assert devs == sorted(devs)
        assert 0.03 <= devs[GAPS_UM.index(1.0)] <= 0.15


class TestModelA3D:
    def test_default_limits(self):
        geom = contact("inner")
        result = cap3d_model_a(geom, spec=FAST)
        assert result.method is Method.A3D
        assert not result.per_length
        assert result.unit == "F"
        assert result.diagnostics["x_max"] == 4.0
        assert result.diagnostics["y_max"] == pytest.approx(2.515)

    def test_matches_trapezoid(self):
        geom = contact("outer", gap_um=5.0)
        radii = geom.effective_radii()
        limits = (1.0, 1.0)

        def integrand(x, y):
            return 1 / (geom.gap + x * x / (2 * radii.r_x) + y * y / (2 * radii.r_y))

        reference = 4 * EPS * trapezoid2d(integrand, (0, 1.0), (0, 1.0), 2001) * 1e-3
        result = cap3d_model_a(geom, EPS, limits)
        assert result.value == pytest.approx(reference, rel=1e-4)

    def test_monotone_in_limits(self):
        geom = contact("outer")
        small = cap3d_model_a(geom, limits=(1.0, 1.0), spec=FAST).value
        large = cap3d_model_a(geom, limits=(2.0, 2.0), spec=FAST).value
        assert small < large

    def test_invalid_limits(self):
        with pytest.raises(GeometryError):
            cap3d_model_a(contact("outer"), limits=(0.0, 1.0))


@pytest.mark.slow
class TestModelE:
    def test_rim_adds_capacitance(self):
        geom = contact("outer", gap_um=2.0)
        groove = cap3d_model_e(geom, include_rim=False, spec=FAST)
        full = cap3d_model_e(geom, spec=FAST)
        assert groove.method is Method.D3D
        assert full.method is Method.E
        assert groove.value < full.value
        assert full.diagnostics["groove"] == pytest.approx(groove.value, rel=1e-12)
        assert full.diagnostics["groove"] + full.diagnostics["rim"] == pytest.approx(
            full.value, rel=1e-12
        )

    def test_rim_share_grows_with_gap(self):
        shares = []
        for gap_um in (0.5, 2.0, 5.0):
            full = cap3d_model_e(contact("outer", gap_um), spec=FAST)
            shares.append(full.diagnostics["rim"] / full.value)
        assert 0 < shares[0] < shares[1] < shares[2]

    def test_magnitude(self):
        value = cap3d_model_e(contact("outer", gap_um=5.0), spec=FAST).value
        assert 1e-12 < value < 1e-10

    @pytest.mark.parametrize("gap_um", GAPS_UM)
    def test_model_a3d_above_model_e_inner(self, gap_um):
        geom = contact("inner", gap_um)
        assert cap3d_model_a(geom, spec=FAST).value > cap3d_model_e(geom, spec=FAST).value

    def test_groove_matches_fixed_grid(self):
        geom = contact("outer", gap_um=5.0)
        surface = RacewaySurface(geom)
        r = geom.ball_radius

        def integrand(phi, v):
            # theta = v * edge maps the groove onto the unit interval
            p = float(phi[0])
            edge = surface.groove_edge_theta(p)
            if edge == 0:
                return np.zeros_like(v)
            gaps = surface.groove_gaps(v * edge, p)
            return edge * math.cos(p) / gaps

        grid = trapezoid2d(integrand, (0.0, surface.section_ii_limit()), (0.0, 1.0), 801)
        expected = 4 * geom.permittivity * r * r * grid * 1e-3
        result = cap3d_model_e(geom, include_rim=False, spec=FAST)
        assert result.value == pytest.approx(expected, rel=5e-4)

    def test_permittivity_override(self):
        geom = contact("outer", gap_um=2.0)
        base = cap3d_model_e(geom, include_rim=False, spec=FAST).value
        doubled = cap3d_model_e(geom, 2 * geom.permittivity, include_rim=False, spec=FAST).value
        assert doubled == pytest.approx(2 * base, rel=1e-12)
