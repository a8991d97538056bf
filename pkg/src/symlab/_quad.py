"""Thin adaptive-quadrature helpers used by the asymptotic formulas.

``scipy.integrate.quad`` already performs the variable transform needed for
(semi-)infinite ranges, so these wrappers only fix tolerances and make the
"split at known kinks" pattern explicit.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable

from scipy import integrate

__all__ = ["quad", "quad_split"]

ABS_TOL = 1e-10


def quad(f: Callable[[float], float], a: float, b: float, abs_tol: float = ABS_TOL) -> float:
    """Adaptive quadrature of ``f`` over ``[a, b]`` (limits may be infinite)."""
    val, _ = integrate.quad(f, a, b, epsabs=abs_tol, epsrel=1e-11, limit=200)
    return val


def quad_split(
    f: Callable[[float], float],
    a: float,
    b: float,
    points: Iterable[float] = (),
    abs_tol: float = ABS_TOL,
) -> float:
    """Quadrature over ``[a, b]`` split at interior breakpoints.

    Breakpoints outside ``(a, b)`` are ignored; the integrand may kink (but
    not diverge) at the listed points.
    """
    cuts = sorted(p for p in points if a < p < b)
    edges = [a, *cuts, b]
    return sum(quad(f, lo, hi, abs_tol=abs_tol) for lo, hi in zip(edges[:-1], edges[1:]))
