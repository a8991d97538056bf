"""Exact finite-sample evaluation of the symmetry test statistics.

Every statistic is evaluated on data centered by the trimmed mean (the
moment-based ones — CM, GAMMA, MGG, SQRT_B1 — center themselves with the
sample mean/median and ignore the trimming coefficient).  Two evaluation
paths are provided:

* :func:`evaluate` — a counting fast path.  All characterization statistics
  (BH/NA/MO) reduce to counts of subsets whose relevant order statistic has
  absolute value below a threshold; those counts are closed-form products of
  binomial coefficients of the three counts ``#{y <= -t}``, ``#{-t < y < t}``
  and ``#{y >= t}``, so a full evaluation costs ``O(n log n)`` after sorting.
* :func:`brute_force` — literal enumeration of every subset and outer index,
  exactly as the statistics are defined.  Guarded to ``n <= 14``; used as the
  oracle the fast path must match bit for bit.

Indicator comparisons are strict everywhere; ties with the centered value
count as "not satisfied".  Under a continuous model ties occur with
probability zero, but integer-valued data will hit them, so both paths apply
the identical rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DegenerateSampleError, InsufficientSampleError
from .location import trim_weights, trimmed_mean

__all__ = [
    "StatisticSpec",
    "StatisticValue",
    "parse_statistic",
    "evaluate",
    "evaluate_many",
    "evaluate_family_member",
    "brute_force",
    "counting_tables",
    "STATISTIC_NAMES",
    "INTEGRAL",
    "SUPREMUM",
    "MOMENT",
]

INTEGRAL = "integral"
SUPREMUM = "supremum"
MOMENT = "moment"

# kind -> (family, needs_k)
_KIND_TABLE = {
    "S": (INTEGRAL, False),
    "W": (INTEGRAL, False),
    "KS": (SUPREMUM, False),
    "BH_I": (INTEGRAL, False),
    "BH_K": (SUPREMUM, False),
    "NA_I": (INTEGRAL, True),
    "NA_K": (SUPREMUM, True),
    "MO_I": (INTEGRAL, True),
    "MO_K": (SUPREMUM, True),
    "CM": (MOMENT, False),
    "GAMMA": (MOMENT, False),
    "MGG": (MOMENT, False),
    "SQRT_B1": (MOMENT, False),
}

STATISTIC_NAMES = tuple(_KIND_TABLE)


@dataclass(frozen=True)
class StatisticSpec:
    """Descriptor of one test statistic.

    Parameters
    ----------
    kind:
        One of ``S, W, KS, BH_I, BH_K, NA_I, NA_K, MO_I, MO_K, CM, GAMMA,
        MGG, SQRT_B1``.
    k:
        Subsample order parameter for the NA (``k >= 2``) and MO (``k >= 1``)
        families; must be None otherwise.
    alpha:
        Trimming coefficient of the centering estimator; ignored by the
        moment-based kinds, which use their own centering.
    """

    kind: str
    k: int | None = None
    alpha: float = 0.0

    def __post_init__(self):
        if self.kind not in _KIND_TABLE:
            raise ValueError(f"unknown statistic kind {self.kind!r}")
        _, needs_k = _KIND_TABLE[self.kind]
        if needs_k:
            if self.k is None or self.k < 1:
                raise ValueError(f"{self.kind} requires a positive order parameter k")
            if self.kind.startswith("NA") and self.k < 2:
                raise ValueError("NA statistics require k >= 2")
        elif self.k is not None:
            raise ValueError(f"{self.kind} does not take an order parameter")
        if not 0.0 <= self.alpha <= 0.5:
            raise ValueError("trimming coefficient must lie in [0, 1/2]")

    @property
    def family(self) -> str:
        return _KIND_TABLE[self.kind][0]

    @property
    def subset_size(self) -> int:
        """Size of the inner subsample (characterization statistics only)."""
        if self.kind.startswith("BH"):
            return 2
        if self.kind.startswith("NA"):
            return self.k
        if self.kind.startswith("MO"):
            return 2 * self.k
        raise ValueError(f"{self.kind} is not a characterization statistic")

    @property
    def order_pair(self) -> tuple[int, int]:
        """(low, high) order-statistic ranks compared inside the subsample."""
        if self.kind.startswith("BH"):
            return (1, 2)
        if self.kind.startswith("NA"):
            return (1, self.k)
        if self.kind.startswith("MO"):
            return (self.k, self.k + 1)
        raise ValueError(f"{self.kind} is not a characterization statistic")

    @property
    def kernel_order(self) -> int:
        """Order of the underlying (family of) U-statistic kernels."""
        if self.kind in ("S", "KS"):
            return 1
        if self.kind == "W":
            return 2
        if self.kind in ("CM", "GAMMA", "MGG", "SQRT_B1"):
            return 1
        p = self.subset_size
        return p + 1 if self.kind.endswith("_I") else p

    @property
    def label(self) -> str:
        return self.kind if self.k is None else f"{self.kind}_{self.k}"

    def __str__(self) -> str:
        return self.label


def parse_statistic(name: str, alpha: float = 0.0) -> StatisticSpec:
    """Parse a statistic id such as ``"W"``, ``"NA_I_4"`` or ``"MO_K_2"``."""
    token = name.strip().upper().replace("(", "_").rstrip(")")
    if token in _KIND_TABLE:
        return StatisticSpec(token, alpha=alpha)
    parts = token.rsplit("_", 1)
    if len(parts) == 2 and parts[0] in _KIND_TABLE and parts[1].isdigit():
        return StatisticSpec(parts[0], k=int(parts[1]), alpha=alpha)
    raise ValueError(f"cannot parse statistic name {name!r}")


@dataclass(frozen=True)
class StatisticValue:
    """A computed statistic value, with the maximizing threshold if any."""

    value: float
    sup_argument: float | None = None


# ---------------------------------------------------------------------------
# counting machinery
# ---------------------------------------------------------------------------


def _comb_table(n: int, p: int) -> np.ndarray:
    """Exact table ``T[j, i] = C(j, i)`` for ``j <= n``, ``i <= p`` (int64)."""
    table = np.zeros((n + 1, p + 1), dtype=np.int64)
    table[:, 0] = 1
    for j in range(1, n + 1):
        table[j, 1:] = table[j - 1, 1:] + table[j - 1, : p]
    return table


def counting_tables(centered_sorted, t: float) -> tuple[int, int]:
    """Counts ``a = #{x <= -t}`` and ``b = #{x < t}`` on a sorted vector.

    These two numbers determine every subset count the characterization
    statistics need at threshold ``t``.
    """
    y = np.asarray(centered_sorted, dtype=float)
    a = int(np.searchsorted(y, -t, side="right"))
    b = int(np.searchsorted(y, t, side="left"))
    return a, b


def _order_stat_counts(table: np.ndarray, n: int, p: int, r: int, a, b) -> np.ndarray:
    """Number of ``p``-subsets whose ``r``-th order statistic ``W`` has ``|W| < t``.

    ``a = #{y <= -t}`` and ``b = #{y < t}`` may be arrays (one entry per
    threshold).  The condition ``-t < W < t`` is equivalent to
    ``#{subset elements < t} >= r`` and ``#{subset elements <= -t} <= r - 1``,
    so the count is a sum of products of binomial coefficients over the
    composition of the subset across the three groups.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n_mid = b - a
    n_right = n - b
    total = np.zeros(a.shape, dtype=np.int64)
    for left in range(0, min(r - 1, p) + 1):
        c_left = table[a, left]
        for mid in range(max(0, r - left), p - left + 1):
            total += c_left * table[n_mid, mid] * table[n_right, p - left - mid]
    return total


def _char_numerators(spec: StatisticSpec, y_sorted: np.ndarray, t):
    """Doubled integer numerators ``N_low(t) - N_high(t)`` at thresholds ``t``.

    Doubling keeps the BH statistics' half-weighted kernel integral; the
    caller divides by ``2 C(n, p)``.  The count step functions are
    left-continuous, so evaluating at every jump threshold covers all
    attained values.
    """
    n = y_sorted.size
    p = spec.subset_size
    r_low, r_high = spec.order_pair
    table = _comb_table(n, p)
    t = np.asarray(t, dtype=float)
    a = np.searchsorted(y_sorted, -t, side="right")
    b = np.searchsorted(y_sorted, t, side="left")
    num = _order_stat_counts(table, n, p, r_low, a, b) - _order_stat_counts(
        table, n, p, r_high, a, b
    )
    num = np.where(t > 0.0, num, 0)
    if spec.kind.startswith("BH"):
        # the half-weighted kernel is (N_1 + N_2)/2 - N_2 = (N_1 - N_2)/2
        return num
    return 2 * num


def _char_denominator(spec: StatisticSpec, n: int) -> float:
    # doubled throughout so BH's half-weights stay integral
    return 2.0 * math.comb(n, spec.subset_size)


def _eval_char_integral(spec: StatisticSpec, y: np.ndarray, y_sorted: np.ndarray) -> float:
    thresholds = np.abs(y_sorted)
    num = int(_char_numerators(spec, y_sorted, thresholds).sum())
    return num / (y.size * _char_denominator(spec, y.size))


def _eval_char_sup(spec: StatisticSpec, y_sorted: np.ndarray) -> StatisticValue:
    candidates = np.unique(np.abs(y_sorted))
    candidates = candidates[candidates > 0.0]
    if candidates.size == 0:
        return StatisticValue(0.0, 0.0)
    # the count step functions are left-continuous, so evaluating at each jump
    # covers every attained value; beyond the largest jump the value is zero
    nums = _char_numerators(spec, y_sorted, candidates)
    best = int(np.argmax(np.abs(nums)))
    value = abs(int(nums[best])) / _char_denominator(spec, y_sorted.size)
    return StatisticValue(value, float(candidates[best]))


def _ks_values_at(y_sorted: np.ndarray, s: np.ndarray):
    n = y_sorted.size
    at = np.searchsorted(y_sorted, s, side="right") + np.searchsorted(
        y_sorted, -s, side="right"
    )
    left = np.searchsorted(y_sorted, s, side="left") + np.searchsorted(
        y_sorted, -s, side="right"
    )
    right = np.searchsorted(y_sorted, s, side="right") + np.searchsorted(
        y_sorted, -s, side="left"
    )
    return at - n, left - n, right - n


def _eval_ks(y_sorted: np.ndarray) -> StatisticValue:
    n = y_sorted.size
    candidates = np.unique(np.concatenate([[0.0], np.abs(y_sorted)]))
    at, left, right = _ks_values_at(y_sorted, candidates)
    stacked = np.concatenate([at, left, right])
    best = int(np.argmax(np.abs(stacked)))
    return StatisticValue(
        abs(int(stacked[best])) / n, float(candidates[best % candidates.size])
    )


def _eval_w(y_sorted: np.ndarray) -> float:
    n = y_sorted.size
    above = n - np.searchsorted(y_sorted, -y_sorted, side="right")
    self_pairs = int(np.sum(y_sorted > 0.0))
    pairs = (int(above.sum()) - self_pairs) // 2
    return pairs / math.comb(n, 2) - 0.5


def _eval_moment(spec: StatisticSpec, x: np.ndarray) -> float:
    if x.size < 2:
        raise InsufficientSampleError("moment-based statistics need n >= 2")
    xbar = float(np.mean(x))
    med = float(np.median(x))
    centered = x - xbar
    var = float(np.mean(centered**2))
    if var <= 0.0:
        raise DegenerateSampleError("sample variance is zero")
    s = math.sqrt(var)
    if spec.kind == "CM":
        return (xbar - med) / s
    if spec.kind == "GAMMA":
        return 2.0 * (xbar - med)
    if spec.kind == "MGG":
        j = math.sqrt(math.pi / 2.0) * float(np.mean(np.abs(x - med)))
        if j <= 0.0:
            raise DegenerateSampleError("mean absolute deviation is zero")
        return (xbar - med) / j
    m3 = float(np.mean(centered**3))
    return m3 / s**3


# ---------------------------------------------------------------------------
# public evaluation
# ---------------------------------------------------------------------------


def _prepare(spec: StatisticSpec, sample) -> np.ndarray:
    x = np.asarray(sample, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("sample must be a nonempty one-dimensional array")
    if spec.family != MOMENT and x.size < spec.kernel_order:
        raise InsufficientSampleError(
            f"{spec.label} needs at least {spec.kernel_order} observations"
        )
    return x


def evaluate(spec: StatisticSpec, sample) -> StatisticValue:
    """Evaluate one statistic on a data vector (counting fast path)."""
    x = _prepare(spec, sample)
    if spec.family == MOMENT:
        return StatisticValue(_eval_moment(spec, x))

    mu = trimmed_mean(x, spec.alpha)
    y_sorted = np.sort(x) - mu
    n = x.size

    if spec.kind == "S":
        return StatisticValue(int(np.sum(y_sorted > 0.0)) / n - 0.5)
    if spec.kind == "W":
        return StatisticValue(_eval_w(y_sorted))
    if spec.kind == "KS":
        return _eval_ks(y_sorted)
    if spec.family == SUPREMUM:
        return _eval_char_sup(spec, y_sorted)
    return StatisticValue(_eval_char_integral(spec, y_sorted, y_sorted))


def evaluate_family_member(spec: StatisticSpec, sample, t: float) -> float:
    """Value of a supremum-family member at fixed threshold ``t`` (signed).

    For KS this is ``F_n(t + center) + F_n(center - t) - 1``; for the
    characterization families it is the subset-count difference at ``t``.
    Used to validate the member-level limiting variances by simulation.
    """
    if spec.family != SUPREMUM:
        raise ValueError("family members exist only for supremum-type statistics")
    x = _prepare(spec, sample)
    mu = trimmed_mean(x, spec.alpha)
    y_sorted = np.sort(x) - mu
    if spec.kind == "KS":
        at, _, _ = _ks_values_at(y_sorted, np.asarray([float(t)]))
        return int(at[0]) / x.size
    num = int(_char_numerators(spec, y_sorted, np.asarray([float(t)]))[0])
    return num / _char_denominator(spec, x.size)


def evaluate_many(spec: StatisticSpec, samples: np.ndarray, t: float | None = None) -> np.ndarray:
    """Row-wise evaluation on a 2-D array of samples.

    With ``t`` given (supremum kinds only) the fixed-threshold family member
    is evaluated instead of the supremum.  Matches :func:`evaluate` /
    :func:`evaluate_family_member` row for row.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2:
        raise ValueError("expected a 2-D array of samples")
    rows, n = samples.shape

    if spec.family == MOMENT:
        xbar = samples.mean(axis=1)
        med = np.median(samples, axis=1)
        centered = samples - xbar[:, None]
        var = np.mean(centered**2, axis=1)
        if np.any(var <= 0.0):
            raise DegenerateSampleError("sample variance is zero")
        s = np.sqrt(var)
        if spec.kind == "CM":
            return (xbar - med) / s
        if spec.kind == "GAMMA":
            return 2.0 * (xbar - med)
        if spec.kind == "MGG":
            j = math.sqrt(math.pi / 2.0) * np.mean(np.abs(samples - med[:, None]), axis=1)
            return (xbar - med) / j
        return np.mean(centered**3, axis=1) / s**3

    if n < spec.kernel_order:
        raise InsufficientSampleError(
            f"{spec.label} needs at least {spec.kernel_order} observations"
        )
    weights = trim_weights(n, spec.alpha)
    xs = np.sort(samples, axis=1)
    mu = xs @ weights
    ys = xs - mu[:, None]

    out = np.empty(rows)
    if spec.kind == "S":
        return np.sum(ys > 0.0, axis=1) / n - 0.5
    if spec.kind == "W":
        for i in range(rows):
            out[i] = _eval_w(ys[i])
        return out
    if t is not None:
        if spec.family != SUPREMUM:
            raise ValueError("fixed thresholds apply to supremum-type statistics only")
        t_arr = np.asarray([float(t)])
        if spec.kind == "KS":
            for i in range(rows):
                at, _, _ = _ks_values_at(ys[i], t_arr)
                out[i] = int(at[0]) / n
        else:
            denom = _char_denominator(spec, n)
            for i in range(rows):
                out[i] = int(_char_numerators(spec, ys[i], t_arr)[0]) / denom
        return out
    if spec.kind == "KS":
        for i in range(rows):
            out[i] = _eval_ks(ys[i]).value
        return out
    if spec.family == SUPREMUM:
        for i in range(rows):
            out[i] = _eval_char_sup(spec, ys[i]).value
        return out
    for i in range(rows):
        out[i] = _eval_char_integral(spec, ys[i], ys[i])
    return out


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

_BRUTE_LIMIT = 14


def _segment_candidates(values: np.ndarray) -> np.ndarray:
    """Thresholds covering every constant segment of the count step functions."""
    vals = np.unique(values[values > 0.0])
    if vals.size == 0:
        return np.asarray([1.0])
    mids = (vals[1:] + vals[:-1]) / 2.0
    return np.concatenate([vals, mids, [vals[-1] + 1.0]])


def brute_force(spec: StatisticSpec, sample) -> StatisticValue:
    """Literal subset enumeration of a statistic (oracle path, ``n <= 14``)."""
    x = _prepare(spec, sample)
    n = x.size
    if n > _BRUTE_LIMIT:
        raise ValueError(f"brute-force evaluation refuses n > {_BRUTE_LIMIT}")
    if spec.family == MOMENT:
        return StatisticValue(_eval_moment(spec, x))

    mu = trimmed_mean(x, spec.alpha)
    y = x - mu

    if spec.kind == "S":
        count = sum(1 for yi in y if yi > 0.0)
        return StatisticValue(count / n - 0.5)

    if spec.kind == "W":
        count = sum(1 for i in range(n) for j in range(i + 1, n) if y[i] + y[j] > 0.0)
        return StatisticValue(count / math.comb(n, 2) - 0.5)

    if spec.kind == "KS":
        best_num, best_t = -1, 0.0
        for t in np.concatenate([[0.0], _segment_candidates(np.abs(y))]):
            g = sum(1 for xi in x if xi <= mu + t) + sum(1 for xi in x if xi <= mu - t) - n
            if abs(g) > best_num:
                best_num, best_t = abs(g), float(t)
        return StatisticValue(best_num / n, best_t)

    p = spec.subset_size
    r_low, r_high = spec.order_pair
    idx = np.asarray(list(combinations(range(n), p)))
    sub_sorted = np.sort(y[idx], axis=1)
    half_form = spec.kind.startswith("BH")
    if half_form:
        first = np.abs(y[idx[:, 0]])
        second = np.abs(y[idx[:, 1]])
        top = np.abs(sub_sorted[:, 1])
    else:
        lows = np.abs(sub_sorted[:, r_low - 1])
        highs = np.abs(sub_sorted[:, r_high - 1])

    def doubled_num(t: float) -> int:
        # kernel sum at threshold t, doubled so the BH half-weights stay integral
        if half_form:
            return (
                int(np.sum(first < t)) + int(np.sum(second < t)) - 2 * int(np.sum(top < t))
            )
        return 2 * (int(np.sum(lows < t)) - int(np.sum(highs < t)))

    if spec.family == INTEGRAL:
        total = sum(doubled_num(abs(y[j])) for j in range(n))
        return StatisticValue(total / (2.0 * n * math.comb(n, p)))

    jump_values = (
        np.concatenate([first, second, top]) if half_form else np.concatenate([lows, highs])
    )
    best_num, best_t = 0, 0.0
    for t in _segment_candidates(jump_values):
        num = doubled_num(float(t))
        if abs(num) > abs(best_num):
            best_num, best_t = num, float(t)
    return StatisticValue(abs(best_num) / (2.0 * math.comb(n, p)), best_t)
