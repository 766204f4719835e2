"""Weighted isotonic regression and piecewise-constant step functions.

The monotone least squares fit is the vector of left-derivative slopes of
the greatest convex minorant of the cumulative-sum diagram of the data.
Here it is computed by pool-adjacent-violators with weighted pooling, which
realizes the same minimizer in linear time; the diagram construction is
kept as a separate operation because several resampling schemes build their
own diagrams.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

__all__ = [
    "SortedSample",
    "CusumDiagram",
    "StepFunction",
    "sort_sample",
    "cusum",
    "isotonic_fit",
    "eval_step",
    "step_from_knots",
]


@dataclass(frozen=True)
class SortedSample:
    """Design points in [0, 1] sorted ascending with paired responses."""

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        if xs.ndim != 1 or xs.shape != ys.shape:
            raise ValueError("xs and ys must be 1-d arrays of equal length")
        if xs.size == 0:
            raise ValueError("sample must contain at least one point")
        if np.any(xs < 0.0) or np.any(xs > 1.0):
            raise ValueError("design points must lie in [0, 1]")
        if np.any(np.diff(xs) < 0.0):
            raise ValueError("design points must be nondecreasing")

    @property
    def n(self) -> int:
        return self.xs.size


@dataclass(frozen=True)
class CusumDiagram:
    """Cumulative (weight, weighted value) points, starting at (0, 0).

    Zero-weight entries are excluded, so the first coordinates are strictly
    increasing.  Coordinates are unnormalized: slopes do not change under a
    common rescaling of the weights.
    """

    points: np.ndarray  # shape (m + 1, 2)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 1:
            raise ValueError("diagram must be an (m+1, 2) array")
        if pts[0, 0] != 0.0 or pts[0, 1] != 0.0:
            raise ValueError("diagram must start at (0, 0)")
        if np.any(np.diff(pts[:, 0]) <= 0.0):
            raise ValueError("cumulative weights must be strictly increasing")


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function on [0, 1].

    ``values[j]`` is taken on the half-open cell ``(breakpoints[j-1],
    breakpoints[j]]`` with an implicit left edge at 0; evaluation at 0
    returns the first value and evaluation past the last breakpoint
    extends the final value.
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        bp = np.asarray(self.breakpoints, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        if bp.ndim != 1 or bp.shape != vals.shape or bp.size == 0:
            raise ValueError("breakpoints and values must be 1-d arrays of equal length")
        if np.any(np.diff(bp) <= 0.0):
            raise ValueError("breakpoints must be strictly increasing")
        if bp[0] <= 0.0 or bp[-1] > 1.0:
            raise ValueError("breakpoints must lie in (0, 1]")

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < 0.0) or np.any(t_arr > 1.0):
            raise ValueError("evaluation points must lie in [0, 1]")
        idx = np.searchsorted(self.breakpoints, t_arr, side="left")
        idx = np.minimum(idx, self.breakpoints.size - 1)
        out = self.values[idx]
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out


def sort_sample(pairs) -> SortedSample:
    """Sort (x, y) pairs by x, keeping ties in input order."""
    arr = np.asarray(pairs, dtype=float)
    if arr.size == 0:
        raise ValueError("empty input")
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("expected a sequence of (x, y) pairs")
    xs, ys = arr[:, 0], arr[:, 1]
    if np.any(xs < 0.0) or np.any(xs > 1.0):
        raise ValueError("design points must lie in [0, 1]")
    order = np.argsort(xs, kind="stable")
    return SortedSample(xs[order], ys[order])


def cusum(values, weights) -> CusumDiagram:
    """Cumulative-sum diagram of weighted values; zero-weight entries dropped."""
    v = np.asarray(values, dtype=float)
    w = np.asarray(weights, dtype=float)
    if v.ndim != 1 or v.shape != w.shape:
        raise ValueError("values and weights must be 1-d arrays of equal length")
    if np.any(w < 0.0):
        raise ValueError("weights must be nonnegative")
    keep = w > 0.0
    v, w = v[keep], w[keep]
    m = v.size
    pts = np.zeros((m + 1, 2))
    pts[1:, 0] = np.cumsum(w)
    pts[1:, 1] = np.cumsum(w * v)
    return CusumDiagram(pts)


@njit(cache=True)
def _pava(v, w):
    # Pool-adjacent-violators on strictly positive weights; the stacks hold
    # block means, block weights, and block lengths.
    n = v.shape[0]
    means = np.empty(n)
    wsum = np.empty(n)
    count = np.empty(n, np.int64)
    k = -1
    for i in range(n):
        m = v[i]
        wi = w[i]
        c = 1
        while k >= 0 and means[k] >= m:
            tot = wsum[k] + wi
            m = (wsum[k] * means[k] + wi * m) / tot
            wi = tot
            c += count[k]
            k -= 1
        k += 1
        means[k] = m
        wsum[k] = wi
        count[k] = c
    out = np.empty(n)
    pos = 0
    for j in range(k + 1):
        for _ in range(count[j]):
            out[pos] = means[j]
            pos += 1
    return out


def isotonic_fit(values, weights) -> np.ndarray:
    """Weighted least squares projection onto the nondecreasing cone.

    Minimizes sum_j w_j (v_j - f_j)^2 over nondecreasing f, equivalently
    the left-derivative slopes of the greatest convex minorant of
    ``cusum(values, weights)``.  The fit preserves the weighted mean.

    Parameters
    ----------
    values : array-like of float
    weights : array-like of float
        Nonnegative, at least one strictly positive.  Zero-weight entries
        do not enter the pooling; they receive the fitted value of the
        preceding positive-weight block (the first block's value when they
        lead), which keeps the output nondecreasing.

    Returns
    -------
    np.ndarray
        Nondecreasing fitted values, same length as the input.
    """
    v = np.asarray(values, dtype=float)
    w = np.asarray(weights, dtype=float)
    if v.ndim != 1 or v.shape != w.shape:
        raise ValueError("values and weights must be 1-d arrays of equal length")
    if v.size == 0:
        raise ValueError("empty input")
    if np.any(w < 0.0):
        raise ValueError("weights must be nonnegative")
    pos = w > 0.0
    if not pos.any():
        raise ValueError("at least one positive weight is required")
    if pos.all():
        return _pava(v, w)
    fit_pos = _pava(v[pos], w[pos])
    out = np.empty_like(v)
    out[pos] = fit_pos
    prev = np.cumsum(pos) - 1
    out[~pos] = fit_pos[np.maximum(prev[~pos], 0)]
    return out


def eval_step(f: StepFunction, t: float) -> float:
    """Value of the cell whose half-open interval contains t; t = 0 gives
    the first value."""
    return f(float(t))


def step_from_knots(knots, values) -> StepFunction:
    """Build a step function from per-knot fitted values.

    Zero-width cells from tied knots are removed (the earliest value of a
    tied run already owns the cell ending there) and runs of equal values
    are merged, neither of which changes the function.
    """
    kn = np.asarray(knots, dtype=float)
    vals = np.asarray(values, dtype=float)
    if kn.shape != vals.shape or kn.ndim != 1 or kn.size == 0:
        raise ValueError("knots and values must be 1-d arrays of equal length")
    keep = np.empty(kn.size, dtype=bool)
    keep[0] = True
    keep[1:] = np.diff(kn) > 0.0
    kn, vals = kn[keep], vals[keep]
    if kn[0] == 0.0:
        # a knot at 0 owns the empty cell (0, 0]; the function on (0, .] is
        # the next value
        if kn.size == 1:
            kn = np.array([1.0])
        else:
            kn, vals = kn[1:], vals[1:]
    # keep the last breakpoint of each equal-value run
    last = np.empty(kn.size, dtype=bool)
    last[-1] = True
    last[:-1] = vals[1:] != vals[:-1]
    return StepFunction(kn[last], vals[last])
