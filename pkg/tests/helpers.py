"""Shared test utilities."""

import numpy as np


class ForcedRng:
    """Stand-in for a Generator that hands back preset arrays in order.

    Lets a test force the values a sampler would have drawn while keeping
    the production call signatures (`normal`, `integers`, `uniform`).
    """

    def __init__(self, normals=(), integers=(), uniforms=()):
        self._normals = [np.asarray(a, dtype=float) for a in normals]
        self._integers = [np.asarray(a, dtype=int) for a in integers]
        self._uniforms = [np.asarray(a, dtype=float) for a in uniforms]

    def normal(self, loc=0.0, scale=1.0, size=None):
        return self._normals.pop(0)

    def integers(self, low, high=None, size=None):
        return self._integers.pop(0)

    def uniform(self, low=0.0, high=1.0, size=None):
        return self._uniforms.pop(0)


def random_weighted_instance(rng, max_n=7):
    """Small random isotonic instance with unit-ish integer weights."""
    n = int(rng.integers(1, max_n + 1))
    values = rng.uniform(0.0, 1.0, n)
    weights = rng.integers(1, 4, n).astype(float)
    return values, weights
