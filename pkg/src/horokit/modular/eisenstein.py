"""Incomplete Eisenstein series f(z) = sum over Gamma_inf\\Gamma of psi(Im gamma z)."""

import math
from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np
from scipy.integrate import quad

from ..errors import ArgumentError
from .surface import reduce_many


def bump(y, a, b):
    """exp(-1/(1-u^2)) with u the affine image of [a, b] onto [-1, 1]."""
    y = np.asarray(y, dtype=float)
    u = (2 * y - (a + b)) / (b - a)
    out = np.zeros_like(y)
    m = np.abs(u) < 1
    out[m] = np.exp(-1 / (1 - u[m] ** 2))
    return out


@dataclass(frozen=True)
class TestFunction:
    a: float = 1.2
    b: float = 3.0
    amplitude: float = 1.0
    subtract_mean: bool = False

    __test__ = False

    def __post_init__(self):
        if not self.a > 1:
            raise ArgumentError(f"bump support must start above 1, got a = {self.a}")
        if not self.b > self.a:
            raise ArgumentError("bump support must have b > a")

    def profile(self, y):
        return self.amplitude * bump(y, self.a, self.b)

    @cached_property
    def raw_mean(self):
        """(3/pi) int psi(y) y^-2 dy, the surface mean by unfolding."""
        if self.amplitude == 0:
            return 0.0
        val, _ = quad(lambda y: float(self.profile(np.array([y]))[0]) / y ** 2,
                      self.a, self.b, epsabs=1e-15, epsrel=1e-13, limit=200)
        return 3 / math.pi * val

    @property
    def mean(self):
        return 0.0 if self.subtract_mean else self.raw_mean

    def centered(self):
        return replace(self, subtract_mean=True)

    def _shift(self):
        return self.raw_mean if self.subtract_mean else 0.0

    def __call__(self, x, y):
        """Vectorized evaluation through the reduced representative."""
        xr, yr = reduce_many(x, y)
        # at a reduced point only c = 0 and c = 1 with |d| <= 1 can reach height a > 1
        tot = self.profile(yr)
        for d in (-1, 0, 1):
            tot = tot + self.profile(yr / ((xr + d) ** 2 + yr ** 2))
        return tot - self._shift()

    def eval_direct(self, z):
        """Finite sum over coprime (c, d) with |cz + d|^2 <= y / a, no reduction."""
        z = complex(z)
        x, y = z.real, z.imag
        total = float(self.profile(np.array([y]))[0])
        cmax = int(math.floor(1 / math.sqrt(self.a * y)))
        for c in range(1, cmax + 1):
            r2 = y / self.a - (c * y) ** 2
            if r2 < 0:
                continue
            r = math.sqrt(r2)
            for d in range(math.ceil(-c * x - r), math.floor(-c * x + r) + 1):
                if math.gcd(c, d) != 1:
                    continue
                total += float(self.profile(np.array([y / ((c * x + d) ** 2 + (c * y) ** 2)]))[0])
        return total - self._shift()

    def to_json(self):
        return {"a": self.a, "b": self.b, "amplitude": self.amplitude,
                "subtract_mean": self.subtract_mean}


def eval_test_function(spec, z):
    return spec.eval_direct(z)
