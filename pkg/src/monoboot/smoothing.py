"""Kernel smoothing of monotone step estimates.

Because the fits are piecewise constant and the kernel is a polynomial on
[-1, 1], the smoothed estimate is evaluated exactly: each cell contributes
its value times a difference of kernel antiderivatives, with no numerical
quadrature.  Outside [h, 1-h] a linear boundary kernel (alpha + beta*u)K(u)
restores the zeroth and first moment conditions on the visible part of the
support; on the interior it reduces identically to the plain kernel, so a
single code path covers [0, 1] and the estimate is continuous at t = h and
t = 1 - h.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .isotonic import SortedSample, StepFunction

__all__ = [
    "Kernel",
    "TRIWEIGHT",
    "Bandwidth",
    "kernel_value",
    "slse_evaluate",
    "centered_residuals",
    "slse_asymptotic_moments",
    "optimal_bandwidth_constant",
]


def _shifted_antiderivative(coeffs: np.ndarray) -> np.ndarray:
    """Antiderivative coefficients chosen to vanish at u = -1."""
    a = npoly.polyint(coeffs)
    a[0] -= npoly.polyval(-1.0, a)
    return a


@dataclass(frozen=True)
class Kernel:
    """Symmetric polynomial kernel on [-1, 1] with unit mass.

    Stores the polynomial coefficients of K (ascending powers) together
    with closed-form antiderivatives of K, uK and u^2 K, which drive both
    the exact convolution and the boundary-kernel moment equations.
    """

    name: str
    coeffs: tuple

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        object.__setattr__(self, "coeffs", tuple(c))
        if np.any(c[1::2] != 0.0):
            raise ValueError("kernel must be symmetric (odd coefficients zero)")
        a0 = _shifted_antiderivative(c)
        a1 = _shifted_antiderivative(np.concatenate([[0.0], c]))
        a2 = _shifted_antiderivative(np.concatenate([[0.0, 0.0], c]))
        if abs(npoly.polyval(1.0, a0) - 1.0) > 1e-9:
            raise ValueError("kernel must integrate to 1 over [-1, 1]")
        object.__setattr__(self, "_anti", (a0, a1, a2))

    @classmethod
    def triweight(cls) -> "Kernel":
        # (35/32)(1 - u^2)^3 = (35/32)(1 - 3u^2 + 3u^4 - u^6)
        s = 35.0 / 32.0
        return cls("triweight", (s, 0.0, -3.0 * s, 0.0, 3.0 * s, 0.0, -s))

    def value(self, u):
        u = np.asarray(u, dtype=float)
        inside = np.abs(u) <= 1.0
        out = np.where(inside, npoly.polyval(u, np.asarray(self.coeffs)), 0.0)
        return float(out) if out.ndim == 0 else out

    def scaled(self, u, h: float):
        """K_h(u) = K(u / h) / h."""
        return self.value(np.asarray(u, dtype=float) / h) / h

    def integral(self, u):
        """Integral of K from -1 to u (clipped to the support)."""
        return npoly.polyval(np.clip(u, -1.0, 1.0), self._anti[0])

    def first_moment_integral(self, u):
        """Integral of s K(s) from -1 to u."""
        return npoly.polyval(np.clip(u, -1.0, 1.0), self._anti[1])

    def second_moment_integral(self, u):
        """Integral of s^2 K(s) from -1 to u."""
        return npoly.polyval(np.clip(u, -1.0, 1.0), self._anti[2])

    @property
    def second_moment(self) -> float:
        """int u^2 K(u) du over the support (1/9 for the triweight)."""
        return float(self.second_moment_integral(1.0))

    @property
    def roughness(self) -> float:
        """int K(u)^2 du over the support (350/429 for the triweight)."""
        sq = npoly.polymul(self.coeffs, self.coeffs)
        anti = npoly.polyint(sq)
        return float(npoly.polyval(1.0, anti) - npoly.polyval(-1.0, anti))


TRIWEIGHT = Kernel.triweight()


@dataclass(frozen=True)
class Bandwidth:
    """Bandwidth rule h(n) = c * n^(-1/5)."""

    c: float

    def __post_init__(self):
        if self.c <= 0.0:
            raise ValueError("bandwidth constant must be positive")

    def at(self, n: int) -> float:
        h = self.c * float(n) ** (-0.2)
        if not 0.0 < h < 0.5:
            raise ValueError(f"bandwidth h={h:g} outside (0, 1/2); adjust c or n")
        return h


def kernel_value(kernel: Kernel, u, h: float | None = None):
    """K(u) for |u| <= 1 (0 outside); with h, the scaled form K(u/h)/h."""
    return kernel.value(u) if h is None else kernel.scaled(u, h)


def slse_evaluate(fhat: StepFunction, t, h: float, kernel: Kernel = TRIWEIGHT):
    """Kernel-smoothed value of a step function at t, exactly.

    Parameters
    ----------
    fhat : StepFunction
        The fit to smooth; its last value extends to 1 if its final
        breakpoint falls short.
    t : float or array-like in [0, 1]
    h : float
        Bandwidth in (0, 1/2).
    kernel : Kernel

    Returns
    -------
    float or np.ndarray
        The convolution integral of K_h(t - x) against fhat over [0, 1],
        with the linear boundary kernel applied where the support is
        truncated.
    """
    if not 0.0 < h < 0.5:
        raise ValueError("bandwidth must lie in (0, 1/2)")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr < 0.0) or np.any(t_arr > 1.0):
        raise ValueError("evaluation points must lie in [0, 1]")
    edges = np.concatenate([[0.0], fhat.breakpoints])
    vals = fhat.values
    if edges[-1] < 1.0:
        edges = np.append(edges, 1.0)
        vals = np.append(vals, vals[-1])

    out = np.empty(t_arr.size)
    chunk = max(1, int(2_000_000 // edges.size))
    for start in range(0, t_arr.size, chunk):
        tt = t_arr[start : start + chunk]
        u = (tt[:, None] - edges[None, :]) / h
        i0 = kernel.integral(u)
        i1 = kernel.first_moment_integral(u)
        cell0 = i0[:, :-1] - i0[:, 1:]
        cell1 = i1[:, :-1] - i1[:, 1:]
        # visible window of the scaled support and its truncated moments
        lo = (tt - 1.0) / h
        hi = tt / h
        a0 = kernel.integral(hi) - kernel.integral(lo)
        a1 = kernel.first_moment_integral(hi) - kernel.first_moment_integral(lo)
        a2 = kernel.second_moment_integral(hi) - kernel.second_moment_integral(lo)
        det = a0 * a2 - a1 * a1
        alpha = a2 / det
        beta = -a1 / det
        out[start : start + chunk] = alpha * (cell0 @ vals) + beta * (cell1 @ vals)
    return float(out[0]) if np.isscalar(t) or np.asarray(t).ndim == 0 else out


def centered_residuals(s: SortedSample, slse_at_x) -> np.ndarray:
    """Residuals about the smoothed fit, centered to sum to zero."""
    smooth = np.asarray(slse_at_x, dtype=float)
    if smooth.shape != s.ys.shape:
        raise ValueError("smoothed values must match the sample length")
    e = s.ys - smooth
    return e - e.mean()


def slse_asymptotic_moments(
    c: float, curvature: float, sigma2: float, density: float, kernel: Kernel = TRIWEIGHT
) -> tuple[float, float]:
    """Limit bias and variance of n^(2/5)-scaled smoothed-fit errors.

    bias = c^2/2 * f''(t0) * int u^2 K, variance = sigma^2 int K^2 / (c g(t0)).
    Useful in simulations where the true curvature and design density are
    known.
    """
    beta = 0.5 * c * c * curvature * kernel.second_moment
    var = sigma2 * kernel.roughness / (c * density)
    return beta, var


def optimal_bandwidth_constant(
    curvature: float, sigma2: float, density: float, kernel: Kernel = TRIWEIGHT
) -> float:
    """Mean-squared-error optimal constant in h = c n^(-1/5)."""
    num = sigma2 * kernel.roughness / density
    den = (curvature * kernel.second_moment) ** 2
    return float((num / den) ** 0.2)
