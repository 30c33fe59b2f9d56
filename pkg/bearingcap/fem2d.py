"""Linear finite elements for the potential in one section of the contact.

The domain lies between the ball arc and the raceway arc and is cut off by
the ray through the groove edge (section plane I) or by the ray at the
angular limit (section plane II). Only the half ``theta >= 0`` is meshed;
the mirror line ``theta = 0`` is insulating, and charges and energies are
doubled to cover the symmetric section.

The mesh is a mapped grid in ``(theta, v)``: columns are rays from the ball
center, ``v`` runs linearly across the gap along each ray. Columns are
spaced in proportion to the local gap so that the element aspect ratio is
bounded; refining a level halves every column interval and every radial
layer, which quadruples the number of elements and nests the meshes.
"""

from __future__ import annotations

import enum
import logging
import math
import os
from typing import Annotated, List, Union

import msgspec
import numpy as np
from scipy import sparse
from scipy.sparse import linalg as splinalg

from ._errors import DomainError, GeometryError, SolverDivergence
from .geometry import DimensionlessSection
from .semi_analytic import ray_limit
from .result import CapacitanceResult, Method

__all__ = (
    "BoundaryTag",
    "MeshSpec",
    "SolverSpec",
    "Mesh2D",
    "FemSolution",
    "ConvergenceLevel",
    "ConvergenceStudy",
    "generate_mesh",
    "solve",
    "convergence_study",
    "dump_mesh",
    "load_mesh",
)

logger = logging.getLogger(__name__)


def __dir__():
    return __all__


class BoundaryTag(enum.Enum):
    BALL = "ball"
    RACE = "race"
    INSULATING = "insulating"


class MeshSpec(msgspec.Struct, frozen=True, kw_only=True):
    """Resolution of the base mesh (level 0).

    Parameters
    ----------
    radial_layers : int
        Element layers across the gap. Default is 2.
    max_aspect : float
        Upper bound of the element aspect ratio (arc length over layer
        thickness). Default is 20.
    max_step : float
        Upper bound of a column interval, rad. Default is ``pi / 16``.
    """

    radial_layers: Annotated[int, msgspec.Meta(ge=1)] = 2
    max_aspect: Annotated[float, msgspec.Meta(ge=1)] = 20.0
    max_step: Annotated[float, msgspec.Meta(gt=0)] = math.pi / 16


class SolverSpec(msgspec.Struct, frozen=True, kw_only=True, omit_defaults=True):
    """Linear solver settings.

    Systems with fewer than ``direct_limit`` unknowns are factorized; larger
    ones go to conjugate gradients with a Jacobi preconditioner.
    """

    rtol: Annotated[float, msgspec.Meta(gt=0)] = 1e-12
    direct_limit: Annotated[int, msgspec.Meta(ge=0)] = 20000
    max_iterations: Union[Annotated[int, msgspec.Meta(ge=1)], None] = None


DEFAULT_MESH = MeshSpec()
DEFAULT_SOLVER = SolverSpec()


class Mesh2D(msgspec.Struct, frozen=True, kw_only=True):
    """A triangle mesh of the gap, scaled by the ball radius.

    Parameters
    ----------
    nodes : np.ndarray
        ``(n, 2)`` node coordinates; the first axis points from the ball
        center to the contact.
    triangles : np.ndarray
        ``(m, 3)`` node indices, counter-clockwise.
    edges : np.ndarray
        ``(k, 2)`` node indices of the boundary edges.
    tags : list
        `BoundaryTag` of every boundary edge.
    mirrored : bool
        Whether the mesh is the half ``theta >= 0`` of a symmetric domain.
    theta1 : float
        Angle of the truncating ray, rad.
    """

    nodes: np.ndarray
    triangles: np.ndarray
    edges: np.ndarray
    tags: List[BoundaryTag]
    mirrored: bool = True
    theta1: float = math.nan

    @property
    def n_elements(self) -> int:
        return len(self.triangles)

    def signed_areas(self) -> np.ndarray:
        p = self.nodes[self.triangles]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    def tagged_nodes(self, tag: BoundaryTag) -> np.ndarray:
        mask = np.array([t is tag for t in self.tags], dtype=bool)
        return np.unique(self.edges[mask])

    def boundary_length(self, tag: BoundaryTag) -> float:
        mask = np.array([t is tag for t in self.tags], dtype=bool)
        seg = self.nodes[self.edges[mask]]
        return float(np.hypot(*(seg[:, 1] - seg[:, 0]).T).sum())


class FemSolution(msgspec.Struct, frozen=True, kw_only=True):
    """Potentials and integral quantities of a solve at 1 V.

    ``energy``, ``charge_ball`` and ``capacitance`` cover the full symmetric
    section and are per unit length.
    """

    potentials: np.ndarray
    energy: float
    charge_ball: float
    capacitance: float
    capacitance_energy: float
    unknowns: int
    solver: str

    def to_result(self) -> CapacitanceResult:
        return CapacitanceResult(
            value=self.capacitance,
            per_length=True,
            method=Method.G,
            diagnostics={
                "capacitance_energy": self.capacitance_energy,
                "unknowns": self.unknowns,
                "solver": self.solver,
            },
        )


def _race_distance(section: DimensionlessSection, theta: np.ndarray) -> np.ndarray:
    b = -section.sigma * np.cos(theta)
    disc = b * b - (section.sigma**2 - section.tau**2)
    if section.tau > 0:
        return b + np.sqrt(disc)
    # clipped for the tangent ray itself
    return b - np.sqrt(np.maximum(disc, 0.0))


def _base_columns(section, theta1, spec: MeshSpec) -> np.ndarray:
    thetas = [0.0]
    steps = []
    while thetas[-1] < theta1:
        theta = thetas[-1]
        gap = float(_race_distance(section, np.array(theta))) - 1
        if not gap > 0:
            raise GeometryError(
                f"ball and raceway arcs touch or cross at theta={theta:.6g} "
                f"(tau={section.tau}, alpha={section.alpha})"
            )
        step = min(spec.max_aspect * gap / spec.radial_layers, spec.max_step)
        steps.append(step)
        thetas.append(min(theta + step, theta1))
    if len(thetas) > 2 and thetas[-1] - thetas[-2] < 0.5 * steps[-2]:
        # a sliver column at the end, merge it
        del thetas[-2]
    return np.array(thetas)


def generate_mesh(
    section: DimensionlessSection,
    refinement: int = 0,
    spec: MeshSpec = DEFAULT_MESH,
    *,
    theta1: Union[float, None] = None,
) -> Mesh2D:
    """Mapped triangle mesh of the half section ``0 <= theta <= theta1``.

    Parameters
    ----------
    section : DimensionlessSection
        The section.
    refinement : int
        Level ``n >= 0``; every column interval and radial layer of the
        base mesh is split into ``2**n``.
    spec : MeshSpec
        Base resolution.
    theta1 : float, optional
        Angle of the truncating ray. Defaults to the groove edge in section
        plane I and to the angular limit in section plane II. Use ``pi`` to
        mesh the full gap of a closed raceway circle.

    Raises
    ------
    GeometryError
        If the arcs touch or cross within the meshed angle.
    """
    if refinement < 0:
        raise GeometryError(f"refinement must be >= 0, got {refinement}")
    if theta1 is None:
        theta1 = ray_limit(section)
    if not 0 < theta1 <= math.pi:
        raise GeometryError(f"theta1 must lie in (0, pi], got {theta1}")

    base = _base_columns(section, theta1, spec)
    split = 2**refinement
    frac = np.arange(split) / split
    theta = (base[:-1, None] + np.diff(base)[:, None] * frac[None, :]).ravel()
    theta = np.append(theta, base[-1])

    t = _race_distance(section, theta)
    if np.any(~np.isfinite(t)) or np.any(t <= 1):
        raise GeometryError(
            f"ball and raceway arcs touch or cross below theta={theta1:.6g} "
            f"(tau={section.tau}, alpha={section.alpha})"
        )
    layers = spec.radial_layers * split
    v = np.linspace(0.0, 1.0, layers + 1)
    radius = 1 + (t[:, None] - 1) * v[None, :]
    nodes = np.stack(
        [radius * np.cos(theta)[:, None], radius * np.sin(theta)[:, None]], axis=-1
    ).reshape(-1, 2)

    n_cols, n_rows = len(theta), layers + 1
    index = np.arange(n_cols * n_rows).reshape(n_cols, n_rows)
    a = index[:-1, :-1].ravel()
    b = index[1:, :-1].ravel()
    c = index[1:, 1:].ravel()
    d = index[:-1, 1:].ravel()
    triangles = np.concatenate(
        [np.stack([a, c, b], axis=1), np.stack([a, d, c], axis=1)]
    )

    ball = np.stack([index[:-1, 0], index[1:, 0]], axis=1)
    race = np.stack([index[:-1, -1], index[1:, -1]], axis=1)
    mirror = np.stack([index[0, :-1], index[0, 1:]], axis=1)
    cut = np.stack([index[-1, :-1], index[-1, 1:]], axis=1)
    edges = np.concatenate([ball, race, mirror, cut])
    tags = (
        [BoundaryTag.BALL] * len(ball)
        + [BoundaryTag.RACE] * len(race)
        + [BoundaryTag.INSULATING] * (len(mirror) + len(cut))
    )
    mesh = Mesh2D(
        nodes=nodes, triangles=triangles, edges=edges, tags=tags, theta1=theta1
    )
    logger.debug(
        "mesh level %d: %d nodes, %d triangles, %d columns",
        refinement,
        len(nodes),
        len(triangles),
        n_cols,
    )
    return mesh


def _stiffness(mesh: Mesh2D) -> sparse.csr_matrix:
    tri = mesh.triangles
    p = mesh.nodes[tri]
    x, y = p[..., 0], p[..., 1]
    b = np.stack([y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1)
    c = np.stack([x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1)
    area2 = (x[:, 1] - x[:, 0]) * (y[:, 2] - y[:, 0]) - (x[:, 2] - x[:, 0]) * (
        y[:, 1] - y[:, 0]
    )
    if np.any(area2 <= 0):
        raise GeometryError(
            f"mesh has {int(np.sum(area2 <= 0))} triangles with non-positive area"
        )
    local = (b[:, :, None] * b[:, None, :] + c[:, :, None] * c[:, None, :]) / (
        2 * area2[:, None, None]
    )
    rows = np.repeat(tri, 3, axis=1).ravel()
    cols = np.tile(tri, (1, 3)).ravel()
    n = len(mesh.nodes)
    return sparse.coo_matrix((local.ravel(), (rows, cols)), shape=(n, n)).tocsr()


def _solve_free(K, rhs, spec: SolverSpec):
    if K.shape[0] < spec.direct_limit:
        return splinalg.spsolve(K.tocsc(), rhs), "direct"

    iterations = [0]

    def count(_):
        iterations[0] += 1

    precond = sparse.diags(1 / K.diagonal())
    u, info = splinalg.cg(
        K, rhs, rtol=spec.rtol, atol=0.0, M=precond, maxiter=spec.max_iterations,
        callback=count,
    )
    residual = np.linalg.norm(K @ u - rhs) / np.linalg.norm(rhs)
    # the recomputed residual drifts above the recursive one cg stops on
    if info != 0 or not residual <= 1e3 * spec.rtol:
        raise SolverDivergence(
            f"conjugate gradients stopped after {iterations[0]} iterations with "
            f"relative residual {residual:.3e} (target {spec.rtol:.1e})"
        )
    logger.debug("cg converged in %d iterations, residual %.2e", iterations[0], residual)
    return u, f"cg ({iterations[0]} iterations)"


def solve(mesh: Mesh2D, eps: float, spec: SolverSpec = DEFAULT_SOLVER) -> FemSolution:
    """Solve Laplace's equation with 1 V on the ball and 0 V on the raceway.

    Insulating edges carry the natural boundary condition. The ball charge is
    the sum of the residuals of the assembled system over the ball nodes,
    which equals the discrete normal flux.

    Raises
    ------
    SolverDivergence
        If conjugate gradients miss the residual target.
    """
    K = _stiffness(mesh)
    n = len(mesh.nodes)
    ball = mesh.tagged_nodes(BoundaryTag.BALL)
    race = mesh.tagged_nodes(BoundaryTag.RACE)
    fixed = np.zeros(n, dtype=bool)
    fixed[ball] = True
    fixed[race] = True
    free = np.flatnonzero(~fixed)

    u = np.zeros(n)
    u[ball] = 1.0
    if len(free):
        K_ff = K[free][:, free]
        rhs = -(K[free] @ u)
        u[free], solver = _solve_free(K_ff, rhs, spec)
    else:
        solver = "none"

    factor = 2.0 if mesh.mirrored else 1.0
    flux = K @ u
    charge = factor * eps * float(flux[ball].sum())
    stored = factor * eps * float(u @ flux)
    solution = FemSolution(
        potentials=u,
        energy=0.5 * stored,
        charge_ball=charge,
        capacitance=charge,
        capacitance_energy=stored,
        unknowns=len(free),
        solver=solver,
    )
    logger.debug(
        "fem solve: %d unknowns via %s, C=%.9e F/m (energy %.9e F/m)",
        len(free),
        solver,
        charge,
        stored,
    )
    return solution


class ConvergenceLevel(msgspec.Struct, frozen=True):
    level: int
    elements: int
    capacitance: float
    deviation: float


class ConvergenceStudy(msgspec.Struct, frozen=True, kw_only=True):
    """Capacitances over refinement levels and their extrapolated limit.

    ``order`` is the observed convergence order of the last three levels;
    it is ``nan`` if their differences are not monotone, in which case
    ``extrapolated`` is the finest value.
    """

    levels: List[ConvergenceLevel]
    extrapolated: float
    order: float


def _richardson(c0: float, c1: float, c2: float) -> tuple[float, float]:
    d1, d2 = c1 - c0, c2 - c1
    if d2 == 0:
        return c2, math.nan
    ratio = d1 / d2
    if ratio <= 1:
        return c2, math.nan
    order = math.log2(ratio)
    return c2 + d2 / (ratio - 1), order


def convergence_study(
    section: DimensionlessSection,
    n_max: int,
    eps: float,
    mesh_spec: MeshSpec = DEFAULT_MESH,
    solver_spec: SolverSpec = DEFAULT_SOLVER,
    *,
    theta1: Union[float, None] = None,
) -> ConvergenceStudy:
    """Solve on levels ``0..n_max`` and extrapolate the capacitance.

    Deviations are ``(C - C_extrapolated) / C_extrapolated``. ``theta1`` is
    passed on to `generate_mesh`.
    """
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    values = []
    for level in range(n_max + 1):
        mesh = generate_mesh(section, level, mesh_spec, theta1=theta1)
        values.append((level, mesh.n_elements, solve(mesh, eps, solver_spec).capacitance))
    extrapolated, order = _richardson(*(v[2] for v in values[-3:]))
    logger.info(
        "convergence study: %d levels, extrapolated %.9e F/m, order %.3f",
        len(values),
        extrapolated,
        order,
    )
    levels = [
        ConvergenceLevel(level, elements, c, (c - extrapolated) / extrapolated)
        for level, elements, c in values
    ]
    return ConvergenceStudy(levels=levels, extrapolated=extrapolated, order=order)


def dump_mesh(mesh: Mesh2D, path: Union[str, os.PathLike]) -> None:
    """Write ``mesh`` as plain text.

    Three blocks, each a header line ``<name> <count>`` followed by one row
    per entry: ``nodes`` (``x y``), ``triangles`` (``i j k``, zero-based) and
    ``edges`` (``i j tag``).
    """
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"# bearingcap mesh, theta1={float(mesh.theta1)!r}, mirrored={int(mesh.mirrored)}\n")
        f.write(f"nodes {len(mesh.nodes)}\n")
        for x, y in mesh.nodes:
            f.write(f"{float(x)!r} {float(y)!r}\n")
        f.write(f"triangles {len(mesh.triangles)}\n")
        for i, j, k in mesh.triangles:
            f.write(f"{i} {j} {k}\n")
        f.write(f"edges {len(mesh.edges)}\n")
        for (i, j), tag in zip(mesh.edges, mesh.tags):
            f.write(f"{i} {j} {tag.value}\n")


def load_mesh(path: Union[str, os.PathLike]) -> Mesh2D:
    """Read a mesh written by `dump_mesh`."""
    with open(path, encoding="utf-8") as f:
        header = f.readline()
        lines = f.read().splitlines()
    meta = dict(
        item.strip().split("=", 1) for item in header.split(",")[1:] if "=" in item
    )
    blocks = {}
    pos = 0
    while pos < len(lines):
        name, count = lines[pos].split()
        count = int(count)
        blocks[name] = [row.split() for row in lines[pos + 1 : pos + 1 + count]]
        pos += 1 + count
    try:
        nodes = np.array(blocks["nodes"], dtype=float).reshape(-1, 2)
        triangles = np.array(blocks["triangles"], dtype=np.int64).reshape(-1, 3)
        edge_rows = blocks["edges"]
    except KeyError as exc:
        raise ValueError(f"mesh file {os.fspath(path)!r} lacks the {exc} block") from None
    edges = np.array([row[:2] for row in edge_rows], dtype=np.int64).reshape(-1, 2)
    tags = [BoundaryTag(row[2]) for row in edge_rows]
    return Mesh2D(
        nodes=nodes,
        triangles=triangles,
        edges=edges,
        tags=tags,
        mirrored=bool(int(meta.get("mirrored", 1))),
        theta1=float(meta.get("theta1", "nan")),
    )
