"""Simulation oracles shared by the test modules.

The kernel-projection estimator here evaluates the symmetrized kernels by
literal order-statistic comparisons on simulated draws, so it is independent
of the closed-form profiles in ``symlab.asymptotics``.
"""

from __future__ import annotations

import numpy as np

from symlab.stats import StatisticSpec


def mc_projection(
    spec: StatisticSpec,
    null,
    x_grid: np.ndarray,
    rng: np.random.Generator,
    n_draws: int = 1_000_000,
    t: float | None = None,
):
    """Monte Carlo estimate of ``E[kernel(x, X_2, ..., X_m)]`` with its SE.

    Returns ``(estimates, standard_errors)`` over ``x_grid``.  For
    supremum-type statistics the fixed-threshold member kernel is used.
    """
    x_grid = np.asarray(x_grid, dtype=float)

    if spec.kind == "W":
        draws = null.sample(n_draws, 0, rng=rng)
        vals = (x_grid[:, None] + draws[None, :] > 0.0).astype(float) - 0.5
        return vals.mean(axis=1), vals.std(axis=1) / np.sqrt(n_draws)

    p = spec.subset_size
    r_lo, r_hi = spec.order_pair
    half = spec.kind.startswith("BH")

    def kernel_terms(subset: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
        """Kernel value per draw row; thresholds broadcast against rows."""
        s = np.sort(subset, axis=-1)
        lo = np.abs(s[..., r_lo - 1])
        hi = np.abs(s[..., r_hi - 1])
        if half:
            e1 = np.abs(subset[..., 0])
            e2 = np.abs(subset[..., 1])
            return (
                0.5 * (e1 < thresholds)
                + 0.5 * (e2 < thresholds)
                - (hi < thresholds).astype(float)
            )
        return (lo < thresholds).astype(float) - (hi < thresholds).astype(float)

    if t is not None:
        # supremum-family member: the kernel is symmetric in its p arguments
        draws = null.sample(n_draws * (p - 1), 0, rng=rng).reshape(n_draws, p - 1)
        est = np.empty(x_grid.size)
        se = np.empty(x_grid.size)
        for i, x in enumerate(x_grid):
            subset = np.column_stack([np.full(n_draws, x), draws])
            vals = kernel_terms(subset, np.asarray(t))
            est[i] = vals.mean()
            se[i] = vals.std() / np.sqrt(n_draws)
        return est, se

    # integral type: order p + 1, symmetrized over which argument is the
    # outer one; the p inner positions are exchangeable
    m = p + 1
    draws = null.sample(n_draws * p, 0, rng=rng).reshape(n_draws, p)
    inner_cols = draws[:, : p - 1]
    outer_col = draws[:, p - 1]
    est = np.empty(x_grid.size)
    se = np.empty(x_grid.size)
    for i, x in enumerate(x_grid):
        term_outer = kernel_terms(draws, np.abs(x))
        subset = np.column_stack([np.full(n_draws, x), inner_cols])
        term_inner = kernel_terms(subset, np.abs(outer_col))
        vals = (term_outer + p * term_inner) / m
        est[i] = vals.mean()
        se[i] = vals.std() / np.sqrt(n_draws)
    return est, se
