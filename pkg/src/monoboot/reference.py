"""Slow reference implementations used to cross-check the fast paths.

Everything here trades speed for directness: exhaustive search, dense
linear algebra, and adaptive quadrature.  The test suite and the
``selfcheck`` command compare the production code against these.
"""

import itertools

import numpy as np
from scipy.integrate import quad

__all__ = [
    "isotonic_by_partition_search",
    "isotonic_by_gcm",
    "marginal_variance_matrix_form",
    "kernel_moment",
    "smooth_step_by_quadrature",
]


def isotonic_by_partition_search(values, weights, max_n: int = 12) -> np.ndarray:
    """Exact monotone projection by enumerating consecutive-block partitions.

    Every candidate fit is constant on consecutive blocks with each block at
    its weighted mean; among the candidates with nondecreasing block means,
    the weighted sum of squares picks the minimizer.  Exponential in n.
    """
    v = np.asarray(values, dtype=float)
    w = np.asarray(weights, dtype=float)
    n = v.size
    if n > max_n:
        raise ValueError(f"partition search is exponential; n={n} > {max_n}")
    best = None
    best_sse = np.inf
    for cuts in itertools.product([False, True], repeat=n - 1):
        edges = [0] + [i + 1 for i, c in enumerate(cuts) if c] + [n]
        means = []
        ok = True
        for a, b in zip(edges[:-1], edges[1:]):
            wb = w[a:b].sum()
            if wb <= 0.0:
                ok = False
                break
            means.append((w[a:b] * v[a:b]).sum() / wb)
        if not ok or any(m2 < m1 for m1, m2 in zip(means, means[1:])):
            continue
        fit = np.concatenate(
            [np.full(b - a, m) for (a, b), m in zip(zip(edges[:-1], edges[1:]), means)]
        )
        sse = float((w * (v - fit) ** 2).sum())
        if sse < best_sse - 1e-15:
            best_sse = sse
            best = fit
    if best is None:
        raise ValueError("no feasible partition (weights must not all vanish)")
    return best


def isotonic_by_gcm(values, weights) -> np.ndarray:
    """Monotone fit as left-derivative slopes of the greatest convex minorant.

    Builds the cumulative-sum diagram explicitly, takes its lower convex
    hull, and reads off the slope spanning each point.  Positive weights
    only.
    """
    v = np.asarray(values, dtype=float)
    w = np.asarray(weights, dtype=float)
    if np.any(w <= 0.0):
        raise ValueError("gcm construction requires strictly positive weights")
    cw = np.concatenate([[0.0], np.cumsum(w)])
    cs = np.concatenate([[0.0], np.cumsum(w * v)])
    # lower convex hull of the diagram (monotone chain over sorted abscissae)
    hull = [0]
    for i in range(1, cw.size):
        hull.append(i)
        while len(hull) >= 3:
            a, b, c = hull[-3], hull[-2], hull[-1]
            cross = (cw[b] - cw[a]) * (cs[c] - cs[a]) - (cs[b] - cs[a]) * (cw[c] - cw[a])
            if cross <= 0.0:  # middle point is not below the chord
                hull.pop(-2)
            else:
                break
    out = np.empty(v.size)
    for a, b in zip(hull[:-1], hull[1:]):
        slope = (cs[b] - cs[a]) / (cw[b] - cw[a])
        out[a:b] = slope
    return out


def marginal_variance_matrix_form(ys, bin_index, n_bins, zeta, lam) -> float:
    """Marginal-likelihood variance estimate via dense matrix inversion.

    Computes n^-1 (y - B zeta)^T (B Lam B^T + I)^-1 (y - B zeta) with B
    the n-by-J bin membership matrix and Lam = diag(lam_j^2), by direct
    solve.  Quadratic memory in n.
    """
    y = np.asarray(ys, dtype=float)
    idx = np.asarray(bin_index, dtype=int)
    zeta = np.broadcast_to(np.asarray(zeta, dtype=float), (n_bins,))
    lam = np.broadcast_to(np.asarray(lam, dtype=float), (n_bins,))
    n = y.size
    B = np.zeros((n, n_bins))
    B[np.arange(n), idx] = 1.0
    M = B @ np.diag(lam**2) @ B.T + np.eye(n)
    z = y - B @ zeta
    return float(z @ np.linalg.solve(M, z)) / n


def kernel_moment(kernel, power: int = 0, squared: bool = False) -> float:
    """Adaptive quadrature of u^power * K(u) (or K(u)^2) over [-1, 1]."""

    def integrand(u):
        k = kernel.value(u)
        k = k * k if squared else k
        return u**power * k

    val, _ = quad(integrand, -1.0, 1.0, epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


def smooth_step_by_quadrature(fhat, t: float, h: float, kernel) -> float:
    """Direct quadrature of the kernel-smoothed step function at interior t.

    Integrates K_h(t - x) fhat(x) dx cell by cell so the integrand is smooth
    on each panel.  Only valid for t in [h, 1 - h].
    """
    if not (h <= t <= 1.0 - h):
        raise ValueError("quadrature reference only covers interior points")
    edges = np.concatenate([[0.0], fhat.breakpoints])
    if edges[-1] < 1.0:
        edges = np.append(edges, 1.0)
    total = 0.0
    lo, hi = t - h, t + h
    for j in range(edges.size - 1):
        a, b = max(edges[j], lo), min(edges[j + 1], hi)
        if a >= b:
            continue
        val = float(fhat(edges[j + 1]))
        part, _ = quad(
            lambda x: kernel.value((t - x) / h) / h * val,
            a,
            b,
            epsabs=1e-12,
            epsrel=1e-12,
            limit=200,
        )
        total += part
    return total
