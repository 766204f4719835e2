"""Smoothed residual bootstrap and its non-percentile confidence intervals.

Residuals are taken about the kernel-smoothed fit (not the step fit, whose
naive bootstrap is inconsistent at cube-root rate), resampled with
replacement, and added back onto the smooth curve; each bootstrap sample is
refit by per-point isotonic regression.  The interval inverts the bootstrap
law of the difference between the refit and the smooth curve around the
original step fit.
"""

import numpy as np

from .isotonic import StepFunction, isotonic_fit, step_from_knots
from .quantiles import quantile_interval

__all__ = [
    "smoothed_bootstrap_draw",
    "smoothed_ci",
    "centered_conditional_prob",
]


def smoothed_bootstrap_draw(xs, slse_at_x, residuals, rng) -> StepFunction:
    """Monotone refit of smoothed values plus resampled centered residuals.

    Y*_i = slse_at_x[i] + a residual drawn uniformly with replacement; the
    refit is the per-point isotonic regression with unit weights on the
    original design points.
    """
    x = np.asarray(xs, dtype=float)
    smooth = np.asarray(slse_at_x, dtype=float)
    resid = np.asarray(residuals, dtype=float)
    if x.size == 0:
        raise ValueError("empty input")
    if smooth.shape != x.shape or resid.shape != x.shape:
        raise ValueError("xs, slse_at_x and residuals must have equal length")
    ystar = smooth + resid[rng.integers(0, x.size, size=x.size)]
    fitted = isotonic_fit(ystar, np.ones(x.size))
    return step_from_knots(x, fitted)


def smoothed_ci(fhat_at_t0: float, diff_draws, alpha: float) -> tuple[float, float]:
    """Interval (fhat - Q_{1-a/2}, fhat - Q_{a/2}) of the refit-minus-smooth
    differences.

    This is the conventional bootstrap inversion, not the percentile
    method: the quantiles of the differences are subtracted from the
    original step fit at the point.
    """
    q_lo, q_hi = quantile_interval(diff_draws, alpha)
    return float(fhat_at_t0) - q_hi, float(fhat_at_t0) - q_lo


def centered_conditional_prob(diff_draws, shift: float) -> float:
    """Fraction of difference draws d with d + shift <= 0.

    With shift = fhat(t0) - f0(t0), this is the conditional probability
    whose limit is uniform when the smoothed bootstrap is consistent.
    """
    d = np.asarray(diff_draws, dtype=float)
    if d.size == 0:
        raise ValueError("empty draw set")
    return float(np.mean(d + shift <= 0.0))
