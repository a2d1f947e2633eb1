"""Weyl-chamber elements, eps-regular classification and the eps-decomposition.

All comparisons are exact: the Killing norm is a square root, so every test
of the form a >= eps*|H| with a >= 0 is done on squares.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import sqrt

from ..errors import ArgumentError
from ..rational import to_fraction
from .roots import dot


@dataclass(frozen=True)
class ChamberVector:
    rs: object
    H: tuple                      # diagonal entries (Fractions, sum zero)

    @property
    def root_values(self):
        return self.rs.simple_values(self.H)

    @property
    def dual_coords(self):
        # H = sum_j alpha_j(H) H^j
        return self.root_values

    @property
    def norm_sq(self):
        n = self.rs.alg.n
        return 2 * n * dot(self.H, self.H)

    @property
    def norm_killing(self):
        return sqrt(self.norm_sq)

    @property
    def norm_inf(self):
        vals = self.root_values
        return max((abs(v) for v in vals), default=Fraction(0))

    def in_closed_chamber(self):
        return all(v >= 0 for v in self.root_values)

    def in_open_chamber(self):
        return all(v > 0 for v in self.root_values)

    def __add__(self, other):
        return ChamberVector(self.rs, tuple(a + b for a, b in zip(self.H, other.H)))

    def scale(self, s):
        s = to_fraction(s)
        return ChamberVector(self.rs, tuple(s * a for a in self.H))


def chamber_vector(rs, diag):
    """ChamberVector from diagonal entries (ints, Fractions, "p/q" strings or floats)."""
    d = tuple(to_fraction(x) for x in diag)
    if len(d) != rs.alg.n:
        raise ArgumentError(f"expected {rs.alg.n} diagonal entries, got {len(d)}")
    if sum(d) != 0:
        raise ArgumentError("H must be traceless")
    return ChamberVector(rs, d)


def from_dual_coords(rs, xs):
    """H = sum_j x_j H^j in the basis dual to the simple roots."""
    xs = [to_fraction(x) for x in xs]
    n = rs.alg.n
    d = [Fraction(0)] * n
    for x, cw in zip(xs, rs.coweights):
        for i in range(n):
            d[i] += x * cw[i]
    return ChamberVector(rs, tuple(d))


@dataclass(frozen=True)
class Classification:
    status: str                   # "outside", "regular" or "not-eps-regular"
    F: frozenset | None           # simple roots vanishing on H when regular
    unit: bool                    # |H| == 1


def _ge_eps_norm(value, eps, norm_sq):
    """value >= eps*sqrt(norm_sq), exactly, for value >= 0 and eps > 0."""
    return value * value >= eps * eps * norm_sq


def chamber_classify(rs, H, eps):
    """Return the unique F with H in a^+_{eps,F}, or flag H as outside / not eps-regular."""
    eps = to_fraction(eps)
    if eps <= 0:
        raise ArgumentError("eps must be positive")
    vals = H.root_values
    nsq = H.norm_sq
    unit = nsq == 1
    if any(v < 0 for v in vals):
        return Classification("outside", None, unit)
    F = frozenset(j for j, v in enumerate(vals) if v == 0)
    if all(_ge_eps_norm(v, eps, nsq) for j, v in enumerate(vals) if j not in F):
        return Classification("regular", F, unit)
    return Classification("not-eps-regular", None, unit)


@dataclass(frozen=True)
class NormConstants:
    D_sq: Fraction                # max of |Y|^2 on the unit sup-sphere
    Dp_sq: Fraction               # min of |Y|^2 on the unit sup-sphere
    c_sq: Fraction                # c^2 with c = D^2 / D'

    @property
    def D(self):
        return sqrt(self.D_sq)

    @property
    def Dp(self):
        return sqrt(self.Dp_sq)

    @property
    def c(self):
        return sqrt(self.c_sq)


def _gram(rs):
    n = rs.alg.n
    cw = rs.coweights
    return [[2 * n * dot(a, b) for b in cw] for a in cw]


def _quad(G, x):
    r = len(x)
    return sum((G[i][j] * x[i] * x[j] for i in range(r) for j in range(r)), Fraction(0))


@lru_cache(maxsize=None)
def _norm_constants_cached(n):
    from .algebra import build_split_sl
    from .roots import restricted_root_system, _solve_small
    rs = restricted_root_system(build_split_sl(n))
    G = _gram(rs)
    r = rs.rank
    # convex quadratic: maximum at a cube vertex
    D_sq = max(_quad(G, s) for s in itertools.product((1, -1), repeat=r))
    # minimum on the faces x_j = 1 (sign symmetry covers x_j = -1): active-set enumeration
    best = None
    for j in range(r):
        others = [i for i in range(r) if i != j]
        for states in itertools.product((None, 1, -1), repeat=r - 1):
            x = [Fraction(0)] * r
            x[j] = Fraction(1)
            free = []
            for i, st in zip(others, states):
                if st is None:
                    free.append(i)
                else:
                    x[i] = Fraction(st)
            if free:
                mat = [[G[a][b] for b in free] for a in free]
                rhs = [-sum((G[a][b] * x[b] for b in range(r) if b not in free), Fraction(0)) for a in free]
                sol = _solve_small(mat, rhs)
                if any(abs(v) > 1 for v in sol):
                    continue
                for i, v in zip(free, sol):
                    x[i] = v
            q = _quad(G, x)
            if best is None or q < best:
                best = q
    return NormConstants(D_sq, best, D_sq * D_sq / best)


def norm_constants(rs):
    """D, D' with D'|Y|_inf <= |Y| <= D|Y|_inf for the Killing norm, found exactly."""
    return _norm_constants_cached(rs.alg.n)


@dataclass(frozen=True)
class EpsilonDecomposition:
    H_eps: ChamberVector
    J_eps: ChamberVector
    F: frozenset                  # coordinates moved into J_eps
    c: float
    c_sq: Fraction
    eps: Fraction


def eps_upper_bound(rs):
    """min(1, 1/(2c)) as a float, for sampling."""
    return min(1.0, 1.0 / (2.0 * norm_constants(rs).c))


def epsilon_decompose(rs, H, eps, strict=True):
    """Split H = H_eps + J_eps with H_eps eps-regular and |H_eps| >= (1 - c eps)|H|.

    strict enforces eps < min(1, 1/(2c)), the range used downstream; the
    decomposition itself is valid for every eps > 0.
    """
    eps = to_fraction(eps)
    nc = norm_constants(rs)
    if eps <= 0:
        raise ArgumentError("eps must be positive")
    if strict and not (eps < 1 and 4 * nc.c_sq * eps * eps < 1):
        raise ArgumentError("eps must lie in (0, min(1, 1/(2c)))")
    if not H.in_closed_chamber():
        raise ArgumentError("H must lie in the closed positive chamber")
    cls = chamber_classify(rs, H, eps)
    zero = ChamberVector(rs, tuple(Fraction(0) for _ in H.H))
    if cls.status == "regular":
        return EpsilonDecomposition(H, zero, frozenset(), nc.c, nc.c_sq, eps)
    x = H.dual_coords
    ninf = H.norm_inf
    # alpha_j(H) < delta = D eps |H|_inf, compared on squares (both sides >= 0)
    F = frozenset(j for j, v in enumerate(x) if v * v < nc.D_sq * eps * eps * ninf * ninf)
    H_eps = from_dual_coords(rs, [0 if j in F else v for j, v in enumerate(x)])
    J_eps = from_dual_coords(rs, [v if j in F else 0 for j, v in enumerate(x)])
    return EpsilonDecomposition(H_eps, J_eps, F, nc.c, nc.c_sq, eps)


def check_epsilon_decomposition(rs, H, dec):
    """Exact check of the three conclusions; returns a dict of booleans."""
    eps = dec.eps
    sums = tuple(a + b for a, b in zip(dec.H_eps.H, dec.J_eps.H)) == tuple(H.H)
    cls = chamber_classify(rs, dec.H_eps, eps)
    regular = cls.status == "regular"
    j_closed = dec.J_eps.in_closed_chamber()
    # |H_eps| >= (1 - c eps)|H|, with c irrational: square twice
    qh, qe = H.norm_sq, dec.H_eps.norm_sq
    A = qe - qh * (1 + dec.c_sq * eps * eps)
    if 4 * dec.c_sq * eps * eps >= 4:
        norm_ok = True          # 1 - c eps <= 0: nothing to prove
    elif A >= 0:
        norm_ok = True
    else:
        norm_ok = 4 * eps * eps * qh * qh * dec.c_sq >= A * A
    return {"sum": sums, "H_eps_regular": regular, "J_eps_closed": j_closed, "norm_bound": norm_ok}
