"""Local Bahadur efficiency indices over trimming grids.

The local index of a test is the quadratic coefficient of its approximate
slope: inverse limiting variance times squared slope of the limit in
probability.  Integral-type statistics use the plain ratio, supremum-type
statistics the ratio of the suprema over the threshold, and the moment-based
statistics their dedicated slope formulas.  The module assembles index
curves over trimming grids, finds zero-efficiency trimming levels, detects
equivalence classes, and locates the trimming level below which the KS and
sign tests coincide.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import asymptotics as asy
from .distributions import AlternativeFamily
from .errors import NotApplicableError
from .stats import INTEGRAL, MOMENT, SUPREMUM, StatisticSpec, parse_statistic

__all__ = [
    "bahadur_index",
    "IndexCurve",
    "index_curve",
    "default_grid",
    "ZeroEfficiencyResult",
    "zero_efficiency_alpha",
    "ks_s_equivalence_crossover",
    "EquivalenceReport",
    "equivalence_report",
    "DEFAULT_TESTS",
    "EQUIVALENCE_TOL",
]

EQUIVALENCE_TOL = 1e-6

#: tests shown in the comparison study, plus the equivalence-class members
DEFAULT_TESTS = (
    "S",
    "W",
    "KS",
    "BH_I",
    "BH_K",
    "NA_I_2",
    "NA_I_3",
    "NA_I_4",
    "NA_K_2",
    "NA_K_3",
    "NA_K_4",
    "MO_I_1",
    "MO_I_2",
    "MO_K_1",
    "MO_K_2",
    "CM",
    "GAMMA",
    "MGG",
    "SQRT_B1",
)


def _resolve(test, alpha: float | None) -> StatisticSpec:
    if isinstance(test, StatisticSpec):
        return test if alpha is None else StatisticSpec(test.kind, test.k, alpha)
    return parse_statistic(str(test), alpha=0.0 if alpha is None else alpha)


def _index_state(spec: StatisticSpec, alt: AlternativeFamily) -> tuple[float, bool]:
    """(index, degenerate) for one test; NotApplicableError propagates."""
    if spec.family == MOMENT:
        if spec.kind == "SQRT_B1":
            return asy.sqrtb1_slope(alt.base, alt), False
        return asy.cm_family_slope(alt.base, alt), False
    if spec.kind == "KS" and spec.alpha == 0.5:
        # Median centering pins the empirical process at the origin, so the
        # sign-test member that defines the KS family is an exact 0/0 there;
        # the comparison study treats the classical median-centered KS as
        # inefficient at this endpoint and the index curve flags it.
        return math.nan, True
    if spec.family == SUPREMUM:
        sigma2, _ = asy.sup_variance(spec, alt.base)
        slope, _ = asy.sup_slope(spec, alt)
    else:
        sigma2 = asy.asymptotic_variance(spec, alt.base)
        slope = asy.slope_derivative(spec, alt)
    if sigma2 < asy.DEGENERACY_TOL:
        return math.nan, True
    return slope * slope / sigma2, False


def bahadur_index(test, alt: AlternativeFamily, alpha: float | None = None) -> float:
    """Local Bahadur index of ``test`` against ``alt`` at trimming ``alpha``.

    Returns NaN when the (variance, slope) pair is degenerate (the 0/0 case;
    see :func:`index_curve` for the per-point flags).  Raises
    :class:`~symlab.errors.NotApplicableError` for combinations the theory
    excludes, e.g. moment-based tests or untrimmed centering under the Cauchy.
    """
    value, _ = _index_state(_resolve(test, alpha), alt)
    return value


def default_grid(points: int = 101) -> np.ndarray:
    """Equally spaced trimming grid on [0, 1/2]."""
    return np.linspace(0.0, 0.5, points)


@dataclass
class IndexCurve:
    """Index of one test over a trimming grid, with per-point status flags.

    ``degenerate`` marks 0/0 points (index stored as NaN); ``not_applicable``
    marks grid points excluded by moment conditions.  Both plot as missing
    values rather than zeros.
    """

    test: str
    null: str
    alternative: str
    grid: np.ndarray
    index: np.ndarray
    degenerate: np.ndarray
    not_applicable: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.not_applicable is None:
            self.not_applicable = np.zeros(len(self.grid), dtype=bool)
        if not (len(self.grid) == len(self.index) == len(self.degenerate)):
            raise ValueError("grid and value arrays must have equal length")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("trimming grid must be strictly increasing")

    def rows(self):
        """Iterate (alpha, index, degenerate, not_applicable) tuples."""
        for i, a in enumerate(self.grid):
            yield (
                float(a),
                float(self.index[i]),
                bool(self.degenerate[i]),
                bool(self.not_applicable[i]),
            )

    def to_json(self) -> str:
        payload = {
            "test": self.test,
            "null": self.null,
            "alternative": self.alternative,
            "alpha": [float(a) for a in self.grid],
            "index": [None if not np.isfinite(v) else float(v) for v in self.index],
            "degenerate": [bool(d) for d in self.degenerate],
            "not_applicable": [bool(d) for d in self.not_applicable],
        }
        return json.dumps(payload, indent=2)


def index_curve(test, alt: AlternativeFamily, grid=None) -> IndexCurve:
    """Pointwise Bahadur indices of ``test`` over a trimming grid."""
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    if np.any(grid < 0.0) or np.any(grid > 0.5):
        raise ValueError("trimming grid must lie in [0, 1/2]")
    spec0 = _resolve(test, None)
    values = np.full(grid.size, math.nan)
    degen = np.zeros(grid.size, dtype=bool)
    na = np.zeros(grid.size, dtype=bool)
    for i, a in enumerate(grid):
        try:
            values[i], degen[i] = _index_state(_resolve(spec0, float(a)), alt)
        except NotApplicableError:
            na[i] = True
    return IndexCurve(spec0.label, alt.base.name, alt.kind, grid, values, degen, na)


@dataclass(frozen=True)
class ZeroEfficiencyResult:
    """Outcome of the zero-efficiency search (``alpha`` is None if not found)."""

    found: bool
    alpha: float | None = None


def zero_efficiency_alpha(test, alt: AlternativeFamily, scan_points: int = 64) -> ZeroEfficiencyResult:
    """Interior trimming level at which an integral-type test's index vanishes.

    Scans the slope of the limit in probability over (0, 1/2) for a sign
    change and bisects to 1e-6.  The index vanishes exactly where the slope
    does (the variance is positive in the interior).  Returns a not-found
    result when the slope does not change sign; the sign test is the
    structural example, since its slope is proportional to
    ``mu'(alpha) - mu'(1/2)`` and so vanishes only at the median endpoint.
    """
    spec0 = _resolve(test, None)
    if spec0.family != INTEGRAL:
        raise ValueError("zero-efficiency roots are defined for integral-type tests")

    def slope_at(a: float) -> float:
        return asy.slope_derivative(_resolve(spec0, a), alt)

    lo, hi = 1e-4, 0.5 - 1e-4
    grid = np.linspace(lo, hi, scan_points)
    vals = np.asarray([slope_at(a) for a in grid])
    signs = np.sign(vals)
    for i in range(grid.size - 1):
        if signs[i] != 0 and signs[i + 1] != 0 and signs[i] != signs[i + 1]:
            root = float(
                optimize.brentq(slope_at, grid[i], grid[i + 1], xtol=1e-6)
            )
            return ZeroEfficiencyResult(True, root)
        if signs[i] == 0:
            return ZeroEfficiencyResult(True, float(grid[i]))
    return ZeroEfficiencyResult(False, None)


def ks_s_equivalence_crossover(alt: AlternativeFamily, grid=None) -> float:
    """Largest trimming level below which the KS and sign indices coincide.

    The KS family member at threshold zero is (twice) the sign statistic, so
    the two tests share their index as long as both the variance supremum and
    the slope supremum over the threshold are attained at zero.  The grid is
    scanned from zero and the last trimming level before either supremum
    moves off the origin is returned (0.0 when it moves immediately).
    """
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    crossover = 0.0
    for a in grid:
        if a >= 0.5:
            break
        spec = StatisticSpec("KS", alpha=float(a))
        try:
            _, var_arg = asy.sup_variance(spec, alt.base)
            _, slope_arg = asy.sup_slope(spec, alt)
        except NotApplicableError:
            continue
        if var_arg != 0.0 or slope_arg != 0.0:
            break
        crossover = float(a)
    return crossover


@dataclass(frozen=True)
class EquivalenceReport:
    """Partition of test ids by index agreement at one (null, alt, alpha)."""

    alpha: float
    groups: tuple[tuple[str, ...], ...]
    degenerate: tuple[str, ...]
    not_applicable: tuple[str, ...]


def equivalence_report(
    alt: AlternativeFamily, alpha: float, tests=DEFAULT_TESTS, tol: float = EQUIVALENCE_TOL
) -> EquivalenceReport:
    """Group tests whose indices agree within ``tol`` at one trimming level."""
    values: list[tuple[str, float]] = []
    degenerate: list[str] = []
    not_applicable: list[str] = []
    for name in tests:
        spec = _resolve(name, alpha)
        try:
            value, degen = _index_state(spec, alt)
        except NotApplicableError:
            not_applicable.append(spec.label)
            continue
        if degen:
            degenerate.append(spec.label)
        else:
            values.append((spec.label, value))
    values.sort(key=lambda kv: kv[1])
    groups: list[list[str]] = []
    last = None
    for name, value in values:
        if last is None or value - last > tol:
            groups.append([name])
        else:
            groups[-1].append(name)
        last = value
    return EquivalenceReport(
        float(alpha),
        tuple(tuple(sorted(g)) for g in groups),
        tuple(sorted(degenerate)),
        tuple(sorted(not_applicable)),
    )
