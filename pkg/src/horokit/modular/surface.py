"""Points of the modular surface SL(2,Z)\\H and their invariant height."""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ArgumentError

_TOL = 1e-12
SQRT3_2 = math.sqrt(3) / 2


def mobius(m, z):
    a, b, c, d = m
    return (a * z + b) / (c * z + d)


def matmul(m1, m2):
    a, b, c, d = m1
    e, f, g, h = m2
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def word_matrix(word):
    """Matrix of a word read left to right as successive applications to z."""
    m = (1, 0, 0, 1)
    for g in word:
        if g[0] == "T":
            step = (1, g[1], 0, 1)
        elif g[0] == "S":
            step = (0, -1, 1, 0)
        else:
            raise ArgumentError(f"unknown generator {g!r}")
        m = matmul(step, m)
    return m


def apply_word(word, z):
    for g in word:
        z = z + g[1] if g[0] == "T" else -1 / z
    return z


@dataclass(frozen=True)
class SurfacePoint:
    z: complex
    reduced: complex
    word: tuple
    matrix: tuple

    @property
    def height(self):
        return math.sqrt(self.reduced.imag)


def reduce_point(z):
    """Move z into |Re| <= 1/2, |z| >= 1 by translations and inversions."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ArgumentError(f"non-finite point {z}")
    if z.imag <= 0:
        raise ArgumentError(f"point must lie in the upper half plane, got {z}")
    w, word = z, []
    for _ in range(10000):
        n = -math.floor(w.real + 0.5)
        if n:
            w += n
            word.append(("T", n))
        if abs(w) ** 2 < 1 - _TOL:
            w = -1 / w
            word.append(("S",))
        else:
            break
    else:
        raise ArgumentError(f"reduction of {z} did not terminate")
    word = tuple(word)
    return SurfacePoint(z, w, word, word_matrix(word))


def invariant_height(z):
    """sqrt of the largest imaginary part on the orbit of z."""
    return reduce_point(z).height


def reduce_many(x, y):
    """Vectorized reduction of the points x + iy; returns reduced (x, y)."""
    x = np.array(x, dtype=float, copy=True)
    y = np.array(y, dtype=float, copy=True)
    idx = np.arange(x.size)
    xf, yf = x.reshape(-1), y.reshape(-1)
    while idx.size:
        xs, ys = xf[idx], yf[idx]
        xs -= np.floor(xs + 0.5)
        r = xs * xs + ys * ys
        m = r < 1 - _TOL
        xs[m] = -xs[m] / r[m]
        ys[m] = ys[m] / r[m]
        xf[idx], yf[idx] = xs, ys
        idx = idx[m]
    return xf.reshape(x.shape), yf.reshape(y.shape)


def height_many(x, y):
    return np.sqrt(reduce_many(x, y)[1])


def random_word(rng, length, max_shift=3):
    word = []
    for _ in range(length):
        if rng.random() < 0.5:
            word.append(("S",))
        else:
            n = int(rng.integers(1, max_shift + 1)) * (1 if rng.random() < 0.5 else -1)
            word.append(("T", n))
    return tuple(word)
