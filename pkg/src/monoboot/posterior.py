"""Conjugate per-bin posterior, empirical-Bayes hyperparameters, and
projection-posterior credible intervals.

The prior puts independent normals on the bin heights; conjugacy makes the
posterior independent across bins with closed-form means and variances.  A
posterior draw is projected onto the nondecreasing cone by weighted
isotonic regression, and credible intervals are order-statistic quantiles
of the projected values at the point of interest.
"""

from dataclasses import dataclass

import numpy as np

from .binning import BinSummaries, bin_index
from .isotonic import SortedSample, StepFunction, isotonic_fit
from .quantiles import quantile_interval

__all__ = [
    "PriorSpec",
    "PosteriorParams",
    "posterior_params",
    "empirical_bayes_sigma2",
    "empirical_bayes_zeta",
    "sample_posterior_coefficients",
    "draw_projected_posterior",
    "credible_interval",
]


@dataclass(frozen=True)
class PriorSpec:
    """Per-bin prior centers zeta_j and scale multipliers lambda_j.

    The prior on bin j is normal with mean zeta_j and variance
    sigma^2 * lambda_j^2.  lambda_j = inf is accepted as the flat-prior
    limit (1 / lambda^2 = 0).
    """

    zeta: np.ndarray
    lam: np.ndarray

    def __post_init__(self):
        zeta = np.atleast_1d(np.asarray(self.zeta, dtype=float))
        lam = np.atleast_1d(np.asarray(self.lam, dtype=float))
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "lam", lam)
        if zeta.shape != lam.shape:
            raise ValueError("zeta and lam must have equal length")
        if np.any(lam <= 0.0):
            raise ValueError("lambda must be positive")

    @classmethod
    def default(cls, J: int, zeta: float = 0.0, lam: float = 10.0) -> "PriorSpec":
        return cls(np.full(J, float(zeta)), np.full(J, float(lam)))


@dataclass(frozen=True)
class PosteriorParams:
    """Independent per-bin normal posterior: means and variances."""

    mean: np.ndarray
    var: np.ndarray

    def __post_init__(self):
        mean = np.atleast_1d(np.asarray(self.mean, dtype=float))
        var = np.atleast_1d(np.asarray(self.var, dtype=float))
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "var", var)
        if mean.shape != var.shape:
            raise ValueError("mean and var must have equal length")
        if np.any(var < 0.0):
            raise ValueError("variances must be nonnegative")


def posterior_params(b: BinSummaries, prior: PriorSpec, sigma2: float) -> PosteriorParams:
    """Posterior mean (n_j ybar_j + zeta_j/lambda_j^2) / (n_j + 1/lambda_j^2)
    and variance sigma2 / (n_j + 1/lambda_j^2).

    Empty bins reduce to the prior.  sigma2 must be positive.
    """
    if sigma2 <= 0.0:
        raise ValueError("sigma2 must be positive")
    if prior.zeta.size != b.J:
        raise ValueError("prior length must match the number of bins")
    inv_lam2 = 1.0 / prior.lam**2
    n = b.counts.astype(float)
    denom = n + inv_lam2
    with np.errstate(invalid="ignore", divide="ignore"):
        mean = np.where(denom > 0.0, (n * b.means + prior.zeta * inv_lam2) / denom, prior.zeta)
        var = np.where(denom > 0.0, sigma2 / denom, np.inf)
    return PosteriorParams(mean, var)


def empirical_bayes_sigma2(s: SortedSample, b: BinSummaries, prior: PriorSpec) -> float:
    """Marginal-likelihood estimate of the noise variance, in closed form.

    Mean squared residual about the unconstrained binned fit plus the prior
    shrinkage term sum_j n_j (ybar_j - zeta_j)^2 / (1 + n_j lambda_j^2),
    all divided by n.  Equals the dense matrix form
    n^-1 (y - B zeta)^T (B Lam B^T + I)^-1 (y - B zeta).
    """
    if s.n < 2:
        raise ValueError("need at least two observations")
    if prior.zeta.size != b.J:
        raise ValueError("prior length must match the number of bins")
    idx = bin_index(s.xs, b.J)
    within = float(np.sum((s.ys - b.means[idx]) ** 2))
    pos = b.counts > 0
    n_pos = b.counts[pos].astype(float)
    shrink = float(
        np.sum(n_pos * (b.means[pos] - prior.zeta[pos]) ** 2 / (1.0 + n_pos * prior.lam[pos] ** 2))
    )
    return (within + shrink) / s.n


def empirical_bayes_zeta(b: BinSummaries, prior: PriorSpec, monotone: bool = False) -> np.ndarray:
    """Marginal-likelihood estimate of the prior centers.

    Unconstrained, this is just the vector of bin means; under a
    monotonicity restriction it is their isotonic regression with weights
    n_j / (1 + n_j lambda_j^2).
    """
    if not monotone:
        return b.means.copy()
    n = b.counts.astype(float)
    with np.errstate(invalid="ignore"):
        w = np.where(n > 0, n / (1.0 + n * prior.lam**2), 0.0)
    return isotonic_fit(b.means, w)


def sample_posterior_coefficients(pp: PosteriorParams, b: BinSummaries, rng) -> np.ndarray:
    """One draw of the raw (unprojected) bin heights.

    Only bins containing data are sampled; empty bins keep the posterior
    mean as a placeholder, which the projection ignores.
    """
    theta = pp.mean.copy()
    pos = b.counts > 0
    theta[pos] = rng.normal(pp.mean[pos], np.sqrt(pp.var[pos]))
    return theta


def draw_projected_posterior(pp: PosteriorParams, b: BinSummaries, rng) -> StepFunction:
    """One draw from the projection posterior.

    Samples the raw bin heights and projects them onto the nondecreasing
    cone by isotonic regression weighted with the bin counts; empty bins
    inherit the preceding block's value.
    """
    if not np.any(b.counts > 0):
        raise ValueError("all bins are empty")
    theta = sample_posterior_coefficients(pp, b, rng)
    fitted = isotonic_fit(theta, b.counts.astype(float))
    return StepFunction(b.edges, fitted)


def credible_interval(draws_at_t0, alpha: float) -> tuple[float, float]:
    """Equal-tailed credible interval from projected posterior draws at a point."""
    return quantile_interval(draws_at_t0, alpha)
