"""Seeded Monte Carlo harness: null distributions, p-values, size and power.

Replications are organized in fixed-size chunks; each chunk owns a private
counter-derived random stream (see :mod:`symlab._rng`), and chunk results are
written into preallocated arrays by index.  Outputs are therefore
byte-identical for a given configuration regardless of how many worker
threads execute the chunks (``SYMLAB_THREADS`` caps the pool, default
sequential).  Calibration and evaluation always consume disjoint stream
families so critical values are never reused on the data that produced them.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._rng import stream
from .distributions import AlternativeFamily, SymmetricNull
from .stats import SUPREMUM, StatisticSpec, evaluate, evaluate_many

__all__ = [
    "McConfig",
    "null_distribution",
    "critical_value",
    "p_value",
    "power",
]

_CHUNK = 512

# stream purpose tags: calibration draws, evaluation draws, tie-break uniforms
_CAL, _EVAL, _TIE = 0, 1, 2


@dataclass(frozen=True)
class McConfig:
    """Simulation configuration.

    ``level`` is the nominal test size used by :func:`critical_value` and
    :func:`power`.
    """

    n: int
    reps: int
    seed: int
    level: float = 0.05

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("sample size must be positive")
        if self.reps < 100:
            raise ValueError("need at least 100 replications")
        if not 0.0 < self.level < 1.0:
            raise ValueError("level must lie in (0, 1)")


def _max_workers() -> int:
    raw = os.environ.get("SYMLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _chunks(reps: int):
    start = 0
    index = 0
    while start < reps:
        rows = min(_CHUNK, reps - start)
        yield index, start, rows
        index += 1
        start += rows


def _run_chunked(reps: int, job) -> np.ndarray:
    """Run ``job(chunk_index, rows) -> values`` over all chunks, in order."""
    out = np.empty(reps)
    workers = _max_workers()
    tasks = list(_chunks(reps))
    if workers == 1:
        for index, start, rows in tasks:
            out[start : start + rows] = job(index, rows)
        return out
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {
            pool.submit(job, index, rows): (start, rows) for index, start, rows in tasks
        }
        for future, (start, rows) in futures.items():
            out[start : start + rows] = future.result()
    return out


def _simulate(
    spec: StatisticSpec,
    model,
    theta: float | None,
    cfg: McConfig,
    purpose: int,
    t: float | None = None,
) -> np.ndarray:
    def job(chunk_index: int, rows: int) -> np.ndarray:
        rng = stream(cfg.seed, purpose, chunk_index)
        if theta is None:
            draws = model.sample(rows * cfg.n, 0, rng=rng)
        else:
            draws = model.sample(theta, rows * cfg.n, 0, rng=rng)
        return evaluate_many(spec, draws.reshape(rows, cfg.n), t=t)

    return _run_chunked(cfg.reps, job)


def null_distribution(
    spec: StatisticSpec, null: SymmetricNull, cfg: McConfig, t: float | None = None
) -> np.ndarray:
    """Statistic values over ``cfg.reps`` fresh null samples of size ``cfg.n``.

    With ``t`` given (supremum kinds), the fixed-threshold family member is
    simulated instead of the supremum.  Deterministic given ``cfg.seed``.
    """
    return _simulate(spec, null, None, cfg, _CAL, t=t)


def _is_one_sided(spec: StatisticSpec) -> bool:
    # large values of supremum-type statistics are significant; the others
    # are asymptotically normal and reject for large absolute values
    return spec.family == SUPREMUM


def critical_value(spec: StatisticSpec, null: SymmetricNull, cfg: McConfig) -> float:
    """Monte Carlo critical value at ``cfg.level`` (upper order statistic)."""
    values = null_distribution(spec, null, cfg)
    if not _is_one_sided(spec):
        values = np.abs(values)
    values.sort()
    rank = min(cfg.reps, math.ceil((1.0 - cfg.level) * (cfg.reps + 1)))
    return float(values[rank - 1])


def p_value(spec: StatisticSpec, null: SymmetricNull, sample, cfg: McConfig) -> float:
    """Monte Carlo p-value of ``sample`` with the +1/(reps+1) correction.

    One-sided for supremum-type statistics, two-sided by absolute value
    otherwise; ties with the observed value count as at least as extreme.
    """
    observed = evaluate(spec, sample).value
    values = null_distribution(spec, null, cfg)
    if not _is_one_sided(spec):
        observed = abs(observed)
        values = np.abs(values)
    exceed = int(np.sum(values >= observed))
    return (1.0 + exceed) / (cfg.reps + 1.0)


def power(
    spec: StatisticSpec,
    alt: AlternativeFamily,
    theta: float,
    cfg: McConfig,
) -> float:
    """Rejection frequency against Monte Carlo critical values.

    Calibration draws, evaluation draws and tie-breaking uniforms come from
    three disjoint stream families of ``cfg.seed``.  Rejection uses the
    randomized-tie Monte Carlo test: with ``R`` calibration values ``C`` and
    an observed ``T``, reject when ``(#{C > T} + U (1 + #{C = T}))/(R+1)``
    is at most ``cfg.level``.  The randomization matters for the coarsely
    discrete statistics (the sign and KS counts move in steps of ``1/n``),
    whose achievable deterministic sizes can sit far from the nominal level;
    with it the empirical size matches the level for every statistic.
    """
    calib = _simulate(spec, alt.base, None, cfg, _CAL)
    values = _simulate(spec, alt, float(theta), cfg, _EVAL)
    if not _is_one_sided(spec):
        calib = np.abs(calib)
        values = np.abs(values)
    calib.sort()
    greater = cfg.reps - np.searchsorted(calib, values, side="right")
    ties = np.searchsorted(calib, values, side="right") - np.searchsorted(
        calib, values, side="left"
    )

    def tie_job(chunk_index: int, rows: int) -> np.ndarray:
        return stream(cfg.seed, _TIE, chunk_index).random(rows)

    u = _run_chunked(cfg.reps, tie_job)
    p_rand = (greater + u * (1.0 + ties)) / (cfg.reps + 1.0)
    return float(np.mean(p_rand <= cfg.level))
