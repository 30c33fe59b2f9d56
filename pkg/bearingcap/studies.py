"""Tables behind the standard model comparisons.

Each builder takes a `SweepConfig` for the contact preset, the gap grid, the
permittivity, the quadrature tolerances and the number of workers, and
returns a `SweepReport`. Rendering is left to external tools.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List

import msgspec

from . import closed_form, semi_analytic
from .config import SweepConfig
from .geometry import RingSide, SectionPlane, to_dimensionless
from .result import Method
from .sweep import SweepReport, report_from_columns, run_sweep

__all__ = (
    "closed_forms",
    "height_profiles",
    "models_2d",
    "rim_share",
    "models_3d",
    "STUDIES",
    "ALIASES",
)

logger = logging.getLogger(__name__)

_CASES = [
    (SectionPlane.SECTION_I, RingSide.INNER, "Ry-inner"),
    (SectionPlane.SECTION_I, RingSide.OUTER, "Ry-outer"),
    (SectionPlane.SECTION_II, RingSide.INNER, "Rx-inner"),
    (SectionPlane.SECTION_II, RingSide.OUTER, "Rx-outer"),
]


def __dir__():
    return __all__


def _contact(config: SweepConfig, side: RingSide, gap_um: float):
    geometry = msgspec.structs.replace(config.geometry, ring=side)
    return geometry.build(gap_um * 1e-3, config.permittivity_rel)


def _map(config: SweepConfig, func: Callable, gaps: List[float]) -> list:
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(func, gaps))
    return [func(g) for g in gaps]


def closed_forms(config: SweepConfig) -> SweepReport:
    """Closed form on the effective radius against the closed form of the true pair.

    Signed ``(C_effective - C_true) / C_true`` per section plane and ring.
    """
    gaps = [float(g) for g in config.grid.gaps_um()]

    def row(gap_um):
        out = {}
        for plane, side, label in _CASES:
            geom = _contact(config, side, gap_um)
            eps = geom.permittivity
            radii = geom.effective_radii()
            R = radii.r_y if plane is SectionPlane.SECTION_I else radii.r_x
            effective = closed_form.cap_plane_cylinder(R, geom.gap, eps)
            true = closed_form.cap_true_geometry(
                geom.ball_radius, geom.signed_partner_radius(plane), geom.gap, eps
            )
            out[label] = (effective - true) / true
        return out

    rows = _map(config, row, gaps)
    data = {label: [r[label] for r in rows] for _, _, label in _CASES}
    return report_from_columns(
        "effective radius vs true geometry, closed forms",
        gaps,
        data,
        {label: "1" for label in data},
    )


def height_profiles(config: SweepConfig) -> SweepReport:
    """Taylor against exact gap heights, on the effective and the true geometry.

    Signed ``(C_taylor - C_exact) / C_exact``. On the effective geometry the
    window is one effective radius to either side of the contact, on the true
    geometry it is the window of model B.
    """
    gaps = [float(g) for g in config.grid.gaps_um()]
    quad = config.quadrature

    def row(gap_um):
        out = {}
        for plane, side, label in _CASES:
            geom = _contact(config, side, gap_um)
            eps = geom.permittivity
            radii = geom.effective_radii()
            R = radii.r_y if plane is SectionPlane.SECTION_I else radii.r_x
            taylor = semi_analytic.cap2d_model_a(
                R, geom.gap, eps, semi_analytic.HeightProfile.TAYLOR, R, quad
            )
            exact = semi_analytic.cap2d_model_a(
                R, geom.gap, eps, semi_analytic.HeightProfile.EXACT, R, quad
            )
            out[f"effective:{label}"] = (taylor.value - exact.value) / exact.value
            _, _, deviation = semi_analytic.cap2d_true_taylor(
                to_dimensionless(geom, plane), eps, quad
            )
            out[f"true:{label}"] = deviation
        return out

    rows = _map(config, row, gaps)
    labels = [f"{kind}:{label}" for kind in ("effective", "true") for _, _, label in _CASES]
    data = {label: [r[label] for r in rows] for label in labels}
    return report_from_columns(
        "taylor vs exact heights", gaps, data, {label: "1" for label in labels}
    )


def models_2d(config: SweepConfig) -> SweepReport:
    """The 2D models of the outer ring in section plane I against model F."""
    run = msgspec.structs.replace(
        config,
        geometry=msgspec.structs.replace(config.geometry, ring=RingSide.OUTER),
        plane=SectionPlane.SECTION_I,
        methods=[Method.A2D, Method.B, Method.C, Method.D, Method.G],
        reference=Method.F,
    )
    return run_sweep(run)


def rim_share(config: SweepConfig) -> SweepReport:
    """Share of the rim in the 3D ray capacitance of both rings.

    Columns hold the groove-only and the groove-plus-rim capacitances and the
    rim share ``(C_E - C_D3D) / C_E``.
    """
    gaps = [float(g) for g in config.grid.gaps_um()]
    quad = config.quadrature

    def row(gap_um):
        out = {}
        for side in (RingSide.INNER, RingSide.OUTER):
            geom = _contact(config, side, gap_um)
            full = semi_analytic.cap3d_model_e(geom, include_rim=True, spec=quad)
            # the groove part of the full run is the groove-only capacitance
            groove = full.diagnostics["groove"]
            out[f"D3D-{side.value}"] = groove
            out[f"E-{side.value}"] = full.value
            out[f"rim-{side.value}"] = (full.value - groove) / full.value
        return out

    rows = _map(config, row, gaps)
    labels = [
        f"{kind}-{side.value}"
        for side in (RingSide.INNER, RingSide.OUTER)
        for kind in ("D3D", "E", "rim")
    ]
    units = {label: "1" if label.startswith("rim") else "F" for label in labels}
    data = {label: [r[label] for r in rows] for label in labels}
    return report_from_columns("rim share of model E", gaps, data, units)


def models_3d(config: SweepConfig) -> SweepReport:
    """Model A in 3D against model E on the inner ring."""
    run = msgspec.structs.replace(
        config,
        geometry=msgspec.structs.replace(config.geometry, ring=RingSide.INNER),
        methods=[Method.A3D, Method.D3D],
        reference=Method.E,
    )
    return run_sweep(run)


#: CLI verb -> builder
STUDIES: Dict[str, Callable[[SweepConfig], SweepReport]] = {
    "fig7": closed_forms,
    "fig8": height_profiles,
    "fig10": models_2d,
    "fig11": rim_share,
    "fig12": models_3d,
}

#: Descriptive alias of every verb
ALIASES: Dict[str, str] = {
    "fig7": "closed-forms",
    "fig8": "height-profiles",
    "fig10": "models-2d",
    "fig11": "rim-share",
    "fig12": "models-3d",
}
