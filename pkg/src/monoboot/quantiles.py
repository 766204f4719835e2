"""Order-statistic quantiles shared by every interval construction.

The rule is the 1-based order statistic at ceil(q * B): distribution free,
slightly conservative, and free of interpolation choices.  A small guard
keeps binary representation error in q * B (e.g. 0.025 * 1000) from bumping
the index up by one.
"""

import math

import numpy as np

__all__ = ["order_statistic", "quantile_interval"]

_INDEX_FUZZ = 1e-9


def order_statistic(draws, q: float) -> float:
    """The ceil(q * B)-th smallest draw (1-based), for q in (0, 1)."""
    x = np.asarray(draws, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("draws must be a nonempty 1-d array")
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie strictly between 0 and 1")
    k = math.ceil(q * x.size - _INDEX_FUZZ)
    k = min(max(k, 1), x.size)
    return float(np.partition(x, k - 1)[k - 1])


def quantile_interval(draws, alpha: float) -> tuple[float, float]:
    """Equal-tailed interval from the alpha/2 and 1 - alpha/2 order statistics."""
    x = np.asarray(draws, dtype=float)
    if x.size < 2:
        raise ValueError("at least two draws are required")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly between 0 and 1")
    return order_statistic(x, alpha / 2.0), order_statistic(x, 1.0 - alpha / 2.0)
