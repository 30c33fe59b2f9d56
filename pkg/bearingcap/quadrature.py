"""Adaptive quadrature on top of QUADPACK.

``scipy.integrate.quad`` provides the adaptive Gauss-Kronrod rule; 2D
integrals are tensor products of nested 1D calls. Failure to converge is
raised as `QuadratureFailure` rather than warned about.
"""

from __future__ import annotations

import logging
from typing import Annotated, Callable, Sequence

import msgspec
import numpy as np
from scipy import integrate

from ._errors import QuadratureFailure

__all__ = ("QuadratureSpec", "QuadResult", "integrate1d", "integrate2d", "trapezoid2d")

logger = logging.getLogger(__name__)


def __dir__():
    return __all__


class QuadratureSpec(msgspec.Struct, frozen=True, kw_only=True):
    """Tolerances of the adaptive quadrature.

    Parameters
    ----------
    rel_tol : float
        Relative tolerance. Default is 1e-9.
    abs_tol : float
        Absolute tolerance floor, in the unit of the integral. Default is 1e-22.
    max_subdivisions : int
        Maximum number of subintervals per 1D integral. Default is 2000.
    """

    rel_tol: Annotated[float, msgspec.Meta(gt=0)] = 1e-9
    abs_tol: Annotated[float, msgspec.Meta(ge=0)] = 1e-22
    max_subdivisions: Annotated[int, msgspec.Meta(ge=1)] = 2000


class QuadResult(msgspec.Struct, frozen=True):
    """An integral with its error estimate and number of evaluations."""

    value: float
    abs_error: float
    evaluations: int


DEFAULT_SPEC = QuadratureSpec()


def _quad(func, a, b, spec, points):
    kwargs = {}
    if points:
        inner = sorted(p for p in points if a < p < b)
        if inner:
            kwargs["points"] = inner
    out = integrate.quad(
        func,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        full_output=1,
        **kwargs,
    )
    if len(out) > 3:
        value, err, info, message = out[:4]
        if message.startswith("The occurrence of roundoff"):
            # the requested tolerance is below the noise of the integrand,
            # the result is as good as it gets
            logger.debug(
                "quadrature over [%g, %g] hit roundoff: %.12e +- %.2e", a, b, value, err
            )
            return value, err, info["neval"]
        raise QuadratureFailure(
            f"quadrature over [{a:.6g}, {b:.6g}] did not converge: {message.strip()} "
            f"(value={value:.9e}, error estimate={err:.3e}, "
            f"evaluations={info['neval']})"
        )
    value, err, info = out
    return value, err, info["neval"]


def integrate1d(
    func: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    *,
    points: Sequence[float] = (),
) -> QuadResult:
    """Integrate ``func`` over ``[a, b]``.

    ``points`` are interior locations of peaks or kinks the rule should
    split at, e.g. the contact center.
    """
    value, err, neval = _quad(func, a, b, spec, points)
    logger.debug(
        "integrate1d [%g, %g]: %.12e +- %.2e in %d evaluations", a, b, value, err, neval
    )
    return QuadResult(value, err, neval)


def integrate2d(
    func: Callable[[float, float], float],
    x_limits: tuple[float, float],
    y_limits: Callable[[float], tuple[float, float]] | tuple[float, float],
    spec: QuadratureSpec = DEFAULT_SPEC,
    *,
    x_points: Sequence[float] = (),
    y_points: Sequence[float] = (),
) -> QuadResult:
    """Integrate ``func(x, y)`` over ``x`` in ``x_limits`` and ``y`` in ``y_limits``.

    ``y_limits`` may be a callable of ``x`` for non-rectangular domains.
    """
    count = [0]
    errors = [0.0]

    def inner(x):
        lo, hi = y_limits(x) if callable(y_limits) else y_limits
        if hi <= lo:
            return 0.0
        value, err, neval = _quad(lambda y: func(x, y), lo, hi, spec, y_points)
        count[0] += neval
        errors[0] = max(errors[0], err)
        return value

    value, err, _ = _quad(inner, x_limits[0], x_limits[1], spec, x_points)
    logger.debug(
        "integrate2d: %.12e +- %.2e in %d evaluations", value, err, count[0]
    )
    return QuadResult(value, err + errors[0], count[0])


def trapezoid2d(
    func: Callable[[np.ndarray, np.ndarray], np.ndarray],
    x_limits: tuple[float, float],
    y_limits: tuple[float, float],
    n: int,
) -> float:
    """Composite trapezoid rule of a vectorized ``func`` on an ``n x n`` grid.

    A fixed-grid reference for checking the adaptive results.
    """
    x = np.linspace(x_limits[0], x_limits[1], n)
    total = 0.0
    # one row of the grid at a time keeps memory at O(n)
    weights_y = np.full(n, 1.0)
    weights_y[[0, -1]] = 0.5
    hy = (y_limits[1] - y_limits[0]) / (n - 1)
    hx = (x_limits[1] - x_limits[0]) / (n - 1)
    y = np.linspace(y_limits[0], y_limits[1], n)
    for i, xi in enumerate(x):
        row = func(np.full(n, xi), y)
        wx = 0.5 if i in (0, n - 1) else 1.0
        total += wx * float(np.dot(weights_y, row))
    return total * hx * hy
