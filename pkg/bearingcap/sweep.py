"""Capacitances of one contact over a grid of lubrication gaps."""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Union

import msgspec
import numpy as np

from . import analytic2d, closed_form, fem2d, semi_analytic
from ._errors import BearingCapError, DomainError
from .config import SweepConfig
from .geometry import BearingContactGeometry, SectionPlane, to_dimensionless
from .result import CapacitanceResult, Method

__all__ = (
    "CellFailure",
    "SweepReport",
    "evaluate",
    "run_sweep",
    "relative_deviations",
    "report_from_columns",
)

logger = logging.getLogger(__name__)


def __dir__():
    return __all__


class CellFailure(msgspec.Struct, frozen=True):
    """A cell of a report that could not be computed."""

    gap_um: float
    column: str
    error: str


class SweepReport(msgspec.Struct, frozen=True, kw_only=True):
    """A table of values over lubrication gaps.

    Parameters
    ----------
    title : str
        What the table shows.
    gaps_um : list of float
        Lubrication gaps, one row each, µm.
    columns : list of str
        Column labels, usually `Method` values.
    units : list of str
        Unit of every column.
    values : list of list
        ``values[row][column]``; ``None`` for a failed cell.
    reference : str, optional
        Column the deviations are relative to.
    deviations : list of list
        Signed ``(C - C_ref) / C_ref`` per cell; ``None`` where either value
        is missing or the units differ. Empty without a reference.
    failures : list of CellFailure
        Why cells are missing.
    seconds : list of list
        Wall time per cell.
    diagnostics : list of list of dict
        Solver diagnostics per cell, such as quadrature evaluations or finite
        element unknowns; empty for a failed cell.
    """

    title: str
    gaps_um: List[float]
    columns: List[str]
    units: List[str]
    values: List[List[Union[float, None]]]
    reference: Union[str, None] = None
    deviations: List[List[Union[float, None]]] = []
    failures: List[CellFailure] = []
    seconds: List[List[float]] = []
    diagnostics: List[List[Dict[str, Union[float, int, str]]]] = []

    def column(self, name: str) -> np.ndarray:
        """Values of column ``name`` with ``nan`` for failed cells."""
        j = self.columns.index(name)
        return np.array([np.nan if row[j] is None else row[j] for row in self.values])

    def deviation(self, name: str) -> np.ndarray:
        if not self.deviations:
            raise DomainError(f"report {self.title!r} has no reference column")
        j = self.columns.index(name)
        return np.array(
            [np.nan if row[j] is None else row[j] for row in self.deviations]
        )


def relative_deviations(
    values: List[List[Union[float, None]]],
    columns: List[str],
    units: List[str],
    reference: str,
) -> List[List[Union[float, None]]]:
    """``(C - C_ref) / C_ref`` per cell, keeping the sign."""
    r = columns.index(reference)
    out = []
    for row in values:
        ref = row[r]
        out.append(
            [
                None
                if (v is None or ref is None or units[j] != units[r])
                else (v - ref) / ref
                for j, v in enumerate(row)
            ]
        )
    return out


def _section_radius(geom: BearingContactGeometry, plane: SectionPlane) -> float:
    radii = geom.effective_radii()
    return radii.r_y if plane is SectionPlane.SECTION_I else radii.r_x


def evaluate(
    method: Method,
    geom: BearingContactGeometry,
    plane: SectionPlane,
    config: SweepConfig,
    mesh_path: Union[str, os.PathLike, None] = None,
) -> CapacitanceResult:
    """Capacitance of ``geom`` by ``method``.

    2D methods work in section ``plane``; model A in 2D is the closed form
    of a cylinder over a plane with the effective radius of that plane.
    """
    eps = geom.permittivity
    quad = config.quadrature
    if method is Method.A2D:
        value = closed_form.cap_plane_cylinder(_section_radius(geom, plane), geom.gap, eps)
        return CapacitanceResult(value=value, per_length=True, method=method)
    if method is Method.A3D:
        return semi_analytic.cap3d_model_a(geom, eps, spec=quad)
    if method in (Method.D3D, Method.E):
        return semi_analytic.cap3d_model_e(
            geom, eps, include_rim=method is Method.E, spec=quad
        )

    section = to_dimensionless(geom, plane)
    if method is Method.B:
        return semi_analytic.cap2d_model_b(section, eps, quad)
    if method is Method.C:
        return semi_analytic.cap2d_model_c(section, eps, quad)
    if method is Method.D:
        return semi_analytic.cap2d_model_d(section, eps, quad)
    if method is Method.F:
        theta1 = analytic2d.theta_limit(section)
        value = analytic2d.capacitance_model_f(section, eps, theta1)
        return CapacitanceResult(
            value=value, per_length=True, method=method, diagnostics={"theta1": theta1}
        )
    # Method.G
    mesh = fem2d.generate_mesh(section, config.fem.refinement, config.fem.mesh)
    if mesh_path is not None:
        fem2d.dump_mesh(mesh, mesh_path)
    return fem2d.solve(mesh, eps, config.fem.solver).to_result()


def _run_cell(args):
    gap_um, method, config, mesh_dir = args
    start = time.perf_counter()
    mesh_path = None
    if mesh_dir is not None and method is Method.G:
        mesh_path = os.path.join(mesh_dir, f"mesh-{gap_um:.6g}um.txt")
    try:
        geom = config.contact(gap_um)
        result = evaluate(method, geom, config.plane, config, mesh_path)
    except BearingCapError as exc:
        logger.warning(
            "%s failed at s=%.6g um: %s: %s", method.value, gap_um, type(exc).__name__, exc
        )
        return None, f"{type(exc).__name__}: {exc}", time.perf_counter() - start
    return result, None, time.perf_counter() - start


def run_sweep(
    config: SweepConfig, *, mesh_dir: Union[str, os.PathLike, None] = None
) -> SweepReport:
    """Evaluate every (gap, method) cell of ``config``.

    Cells run on ``config.jobs`` worker threads. A cell raising a bearingcap
    error is recorded as a failure and the run continues.
    """
    gaps = [float(g) for g in config.grid.gaps_um()]
    methods = config.all_methods
    cells = [(g, m, config, mesh_dir) for g in gaps for m in methods]
    logger.info(
        "sweep: %d gaps x %d methods on %d worker(s)", len(gaps), len(methods), config.jobs
    )
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            outcomes = list(pool.map(_run_cell, cells))
    else:
        outcomes = [_run_cell(c) for c in cells]

    columns = [m.value for m in methods]
    units = ["F/m" if m.per_length else "F" for m in methods]
    values: List[List[Union[float, None]]] = []
    seconds: List[List[float]] = []
    failures: List[CellFailure] = []
    diagnostics: List[List[Dict[str, Union[float, int, str]]]] = []
    n = len(methods)
    for i, gap in enumerate(gaps):
        row = outcomes[i * n : (i + 1) * n]
        values.append([None if r is None else r.value for r, _, _ in row])
        seconds.append([t for _, _, t in row])
        diagnostics.append([{} if r is None else dict(r.diagnostics) for r, _, _ in row])
        failures.extend(
            CellFailure(gap, columns[j], err)
            for j, (_, err, _) in enumerate(row)
            if err is not None
        )
    reference = config.reference.value
    report = SweepReport(
        title=(
            f"{config.geometry.preset or 'custom'} {config.geometry.ring.value} ring, "
            f"{config.plane.value}"
        ),
        gaps_um=gaps,
        columns=columns,
        units=units,
        values=values,
        reference=reference,
        deviations=relative_deviations(values, columns, units, reference),
        failures=failures,
        seconds=seconds,
        diagnostics=diagnostics,
    )
    logger.info("sweep done: %d cells, %d failed", len(cells), len(failures))
    return report


def report_from_columns(
    title: str,
    gaps_um: List[float],
    data: Dict[str, List[Union[float, None]]],
    units: Dict[str, str],
    reference: Union[str, None] = None,
) -> SweepReport:
    """Assemble a report from per-column values."""
    columns = list(data)
    unit_list = [units[c] for c in columns]
    values = [[data[c][i] for c in columns] for i in range(len(gaps_um))]
    deviations = (
        relative_deviations(values, columns, unit_list, reference) if reference else []
    )
    return SweepReport(
        title=title,
        gaps_um=list(gaps_um),
        columns=columns,
        units=unit_list,
        values=values,
        reference=reference,
        deviations=deviations,
    )
