"""Averages of functions on SL(2,Z)\\H along translated horocycle pieces.

With g_t = diag(e^{t/2}, e^{-t/2}) and u(s) upper unipotent, the point
x0 u(s) g_t of the frame bundle projects to x + y (s + i e^t) when x0 sits
over x + iy with its standard frame.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ArgumentError, ResolutionError
from .eisenstein import bump
from .quadrature import composite_integrate
from .surface import height_many, invariant_height

MIN_POINTS_PER_UNIT = 20
ORDER = 10


def horocycle_points(x0, t, s):
    x0 = complex(x0)
    return x0.real + x0.imag * s, np.full_like(s, x0.imag * math.exp(t))


def required_points(t):
    return MIN_POINTS_PER_UNIT * math.exp(abs(t))


def n_points(t, factor):
    """Quadrature points for time t: a multiple of ORDER at least factor * e^|t|."""
    panels = max(1, math.ceil(factor * math.exp(abs(t)) / ORDER))
    return panels * ORDER


class ClosedWeight:
    """chi = indicator of [0, 1]; with Im x0 = 1 this is a whole closed horocycle."""

    integral = 1.0

    def __call__(self, s):
        return np.ones_like(s)

    def to_json(self):
        return {"kind": "closed"}


class BumpWeight:
    """Smooth bump on [0, 1]."""

    def __init__(self):
        from scipy.integrate import quad
        self.integral = quad(lambda s: float(bump(np.array([s]), 0.0, 1.0)[0]), 0, 1,
                             epsabs=1e-15, epsrel=1e-13)[0]

    def __call__(self, s):
        return bump(s, 0.0, 1.0)

    def to_json(self):
        return {"kind": "bump"}


@dataclass
class HoroRow:
    t: float
    average: float
    target: float
    error: float
    quad_err: float
    N: int

    @property
    def signed_error(self):
        return self.average - self.target


@dataclass
class HoroExperiment:
    x0: complex = 1j
    closed: bool = True
    t_grid: tuple = (-4, -5, -6, -7, -8, -9, -10, -11, -12)
    n_factor: float = 160.0
    rows: list = field(default_factory=list)

    def __post_init__(self):
        self.x0 = complex(self.x0)
        if self.x0.imag <= 0:
            raise ArgumentError("x0 must lie in the upper half plane")
        if self.closed and abs(self.x0.imag - 1) > 1e-15:
            raise ArgumentError("a closed horocycle needs Im x0 = 1")
        if not self.t_grid:
            raise ArgumentError("empty t-grid")
        if any(t > 0 for t in self.t_grid):
            raise ArgumentError("t must be <= 0")
        self.weight = ClosedWeight() if self.closed else BumpWeight()


def _average(exp, f, t, N):
    chi = exp.weight

    def integrand(s):
        x, y = horocycle_points(exp.x0, t, s)
        return chi(s) * f(x, y)

    return composite_integrate(integrand, 0.0, 1.0, N // ORDER, ORDER)


def horocycle_average(exp, f):
    """Fill exp.rows with the average, target mean(f) * int chi, and a quadrature estimate.

    The estimate compares against the rule with half as many panels, which
    overstates the error of the finer rule.
    """
    exp.rows = []
    target = f.mean * exp.weight.integral
    for t in exp.t_grid:
        N = n_points(t, exp.n_factor)
        if N < required_points(t):
            raise ResolutionError(f"N = {N} below {required_points(t):.0f} at t = {t}")
        fine = _average(exp, f, t, N)
        coarse = _average(exp, f, t, max(ORDER, (N // ORDER // 2) * ORDER))
        exp.rows.append(HoroRow(float(t), fine, target, abs(fine - target), abs(fine - coarse), N))
    return exp.rows


@dataclass
class HeightRow:
    t: float
    value: float
    ratio: float
    N: int


def height_average(x0, t_grid, factor=400.0, min_points=2000):
    """int_0^1 of the invariant height along x0 u(s) g_t, and its ratio to height(x0)^2."""
    x0 = complex(x0)
    h0 = invariant_height(x0)
    rows = []
    for t in t_grid:
        if t > 0:
            raise ArgumentError("t must be <= 0")
        N = max(min_points, n_points(t, factor))

        def integrand(s, t=t):
            return height_many(*horocycle_points(x0, t, s))

        val = composite_integrate(integrand, 0.0, 1.0, N // ORDER, ORDER)
        rows.append(HeightRow(float(t), val, val / h0 ** 2, N))
    return rows


def fundamental_domain_integral(func, nx=200, nv=200, order=ORDER):
    """(3/pi) int_F func dx dy / y^2 with y = sqrt(1 - x^2) / v^2, v in (0, 1]."""
    from .quadrature import composite_nodes
    xs, wx = composite_nodes(-0.5, 0.5, nx, order)
    vs, wv = composite_nodes(0.0, 1.0, nv, order)
    X, V = np.meshgrid(xs, vs, indexing="ij")
    Y0 = np.sqrt(1 - X ** 2)
    Y = Y0 / V ** 2
    jac = 2 * V / Y0
    vals = func(X, Y) * jac
    return 3 / math.pi * float(wx @ vals @ wv)


def height_integral(nx=200, nv=200):
    """Normalized integral of the invariant height over the fundamental domain."""
    return fundamental_domain_integral(lambda x, y: height_many(x, y), nx, nv)
