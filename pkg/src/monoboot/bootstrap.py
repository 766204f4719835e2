"""Percentile bootstrap schemes for the binned monotone fit.

Two resampling laws produce draws of the monotone binned fit: injecting
normal noise around the bin means with the regressors held fixed, and
classical resampling of (x, y) pairs with replacement.  Intervals come
straight from the quantiles of the draws at the point of interest.
"""

from dataclasses import dataclass

import numpy as np

from .binning import BinSummaries, bin_index
from .isotonic import SortedSample, StepFunction, isotonic_fit
from .quantiles import quantile_interval

__all__ = [
    "BootstrapDrawSet",
    "sample_regression_bootstrap_values",
    "regression_bootstrap_draw",
    "pairs_bootstrap_draw",
    "percentile_interval",
    "conditional_prob_below",
]


@dataclass(frozen=True)
class BootstrapDrawSet:
    """Fitted values of bootstrap monotone fits: B draws by T target points."""

    values_at_targets: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values_at_targets, dtype=float)
        object.__setattr__(self, "values_at_targets", v)
        if v.ndim != 2 or v.shape[0] < 1:
            raise ValueError("expected a (B, T) matrix with B >= 1")
        if not np.all(np.isfinite(v)):
            raise ValueError("draws must be finite")


def sample_regression_bootstrap_values(
    b: BinSummaries, sigma2_hat: float, rng, lam_sq: float | None = None
) -> np.ndarray:
    """One draw of the per-bin bootstrap responses.

    Default law: Y*_j ~ N(ybar_j, sigma2_hat / n_j) independently on the
    nonempty bins.  With ``lam_sq`` the shrinkage factors 1/(n_j lam_sq)
    are included, which reproduces the zero-centered conjugate posterior
    law exactly.  Empty bins keep their conventional 0.
    """
    if sigma2_hat < 0.0:
        raise ValueError("sigma2_hat must be nonnegative")
    n = b.counts.astype(float)
    ystar = b.means.copy()
    pos = b.counts > 0
    mean = b.means[pos]
    var = sigma2_hat / n[pos]
    if lam_sq is not None:
        shrink = 1.0 + 1.0 / (n[pos] * lam_sq)
        mean = mean / shrink
        var = var / shrink
    ystar[pos] = rng.normal(mean, np.sqrt(var))
    return ystar


def regression_bootstrap_draw(
    b: BinSummaries, sigma2_hat: float, rng, lam_sq: float | None = None
) -> StepFunction:
    """Monotone fit of one noise-injected draw of the bin means.

    sigma2_hat = 0 is allowed and reproduces the monotone binned fit
    exactly.
    """
    if not np.any(b.counts > 0):
        raise ValueError("all bins are empty")
    ystar = sample_regression_bootstrap_values(b, sigma2_hat, rng, lam_sq)
    fitted = isotonic_fit(ystar, b.counts.astype(float))
    return StepFunction(b.edges, fitted)


def pairs_bootstrap_draw(s: SortedSample, J: int, rng) -> StepFunction:
    """Monotone binned fit of n pairs resampled uniformly with replacement.

    Equivalent to drawing multinomial resampling counts over the original
    points.  Bootstrap-empty bins get mean 0 and weight 0, so they inherit
    the neighboring block's value in the fit.
    """
    n = s.n
    idx = rng.integers(0, n, size=n)
    bins = bin_index(s.xs, J)[idx]
    counts = np.bincount(bins, minlength=J)
    sums = np.bincount(bins, weights=s.ys[idx], minlength=J)
    means = np.divide(sums, counts, out=np.zeros(J), where=counts > 0)
    fitted = isotonic_fit(means, counts.astype(float))
    return StepFunction(np.arange(1, J + 1) / J, fitted)


def percentile_interval(draws: BootstrapDrawSet, target: int, alpha: float) -> tuple[float, float]:
    """Equal-tailed interval from the draw quantiles at one target point."""
    return quantile_interval(draws.values_at_targets[:, target], alpha)


def conditional_prob_below(draws_at_t0, threshold: float) -> float:
    """Fraction of draws at or below the threshold."""
    x = np.asarray(draws_at_t0, dtype=float)
    if x.size == 0:
        raise ValueError("empty draw set")
    return float(np.mean(x <= threshold))
