"""Equal-width binning of [0, 1] and the binned least squares estimators."""

import math
from dataclasses import dataclass

import numpy as np

from .isotonic import SortedSample, StepFunction, isotonic_fit

__all__ = [
    "BinSummaries",
    "bin_index",
    "choose_num_bins",
    "summarize_bins",
    "binned_lse",
    "monotone_binned_lse",
]


def bin_index(xs, J: int) -> np.ndarray:
    """0-based bin of each point under the ((j-1)/J, j/J] partition; 0 at x=0."""
    edges = np.arange(1, J + 1) / J
    return np.searchsorted(edges, np.asarray(xs, dtype=float), side="left")


@dataclass(frozen=True)
class BinSummaries:
    """Per-bin counts and response means for a J-bin equal-width partition.

    Bin j covers ((j-1)/J, j/J]; empty bins carry mean 0 by convention and
    play no role in any weighted fit.
    """

    J: int
    counts: np.ndarray
    means: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=int)
        means = np.asarray(self.means, dtype=float)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "means", means)
        if self.J < 1:
            raise ValueError("J must be at least 1")
        if counts.shape != (self.J,) or means.shape != (self.J,):
            raise ValueError("counts and means must have length J")
        if np.any(counts < 0):
            raise ValueError("counts must be nonnegative")
        if not np.all(np.isfinite(means)):
            raise ValueError("bin means must be finite")

    @property
    def edges(self) -> np.ndarray:
        """Right bin edges j/J, j = 1..J."""
        return np.arange(1, self.J + 1) / self.J


def choose_num_bins(n: int) -> int:
    """Default bin count floor(n^(1/3) * ln n), clamped to [1, n]."""
    if n < 2:
        raise ValueError("need at least two observations to choose a bin count")
    J = math.floor(n ** (1.0 / 3.0) * math.log(n))
    return max(1, min(J, n))


def summarize_bins(s: SortedSample, J: int) -> BinSummaries:
    """Counts and means over the half-open bins ((j-1)/J, j/J].

    A design point at exactly 0 is assigned to the first bin; empty bins
    get mean 0.
    """
    if J < 1:
        raise ValueError("J must be at least 1")
    idx = bin_index(s.xs, J)
    counts = np.bincount(idx, minlength=J)
    sums = np.bincount(idx, weights=s.ys, minlength=J)
    means = np.divide(sums, counts, out=np.zeros(J), where=counts > 0)
    return BinSummaries(J, counts, means)


def binned_lse(b: BinSummaries) -> StepFunction:
    """Unconstrained binned least squares fit: the bin mean on each bin."""
    return StepFunction(b.edges, b.means)


def monotone_binned_lse(b: BinSummaries) -> StepFunction:
    """Monotone binned least squares fit.

    The bin means are isotonized with the bin counts as weights, which is
    the weighted isotonic regression the within-bin/between-bin sum of
    squares decomposition reduces the problem to.
    """
    if not np.any(b.counts > 0):
        raise ValueError("all bins are empty")
    fitted = isotonic_fit(b.means, b.counts.astype(float))
    return StepFunction(b.edges, fitted)
