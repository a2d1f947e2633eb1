"""Iterated kernels for the higher-order representation.

The schedule fixes how many times the first-order representation is nested
(k0) and which threshold beta is used at each nesting level.  Composition of
kernels is done symbolically in three variables (t, r, s).
"""

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ArgumentError, ResourceError
from .burger import apply_kernel, kernel_F, kernel_Fi, order_lambda
from .exppoly import NEG_INF, ZERO, ExpPoly, PiecewiseKernel2

MAX_MULTI_INDICES = 10 ** 5


def _q(x):
    return Fraction(x).limit_denominator(10 ** 12) if isinstance(x, float) else Fraction(x)


def expected_k0(alpha, eta):
    if alpha >= 2 * eta:
        return 1
    if alpha > eta:
        return 2
    return math.floor(2 * eta / alpha)


@dataclass(frozen=True)
class BurgerSchedule:
    alpha: Fraction
    eta: Fraction
    k0: int
    eps_inner: Fraction = None
    case: str = field(default="")

    @classmethod
    def build(cls, alpha, eta):
        alpha, eta = _q(alpha), _q(eta)
        if alpha <= 0 or eta <= 0:
            raise ArgumentError("alpha and eta must be positive")
        k0 = expected_k0(alpha, eta)
        if k0 == 1:
            return cls(alpha, eta, 1, None, "single")
        eps = (alpha * (k0 + 1) - 2 * eta) / (4 * (k0 - 1))
        return cls(alpha, eta, k0, eps, "two-level" if alpha > eta else "induction")

    def delta(self, l):
        return l * (self.alpha / 2 - self.eps_inner)

    def betas(self):
        """Thresholds from the innermost application to the outermost one."""
        if self.case == "single":
            return [self.eta]
        if self.case == "two-level":
            return [self.eta - self.alpha / 4, self.eta]
        return [self.delta(l) + self.alpha / 2 for l in range(self.k0 - 1)] + [self.eta]

    def identities(self):
        """Named schedule inequalities, evaluated exactly."""
        out = {"k0_matches_case": self.k0 == expected_k0(self.alpha, self.eta)}
        if self.case == "induction":
            a, e = self.alpha, self.eta
            out["eps_in_range"] = 0 < self.eps_inner <= a / 4
            out["last_level_reaches_eta"] = self.delta(self.k0 - 1) + a > e
            out["levels_below_eta"] = all(self.delta(l) + a / 2 <= e for l in range(self.k0))
        bs = self.betas()
        out["betas_positive"] = all(b > 0 for b in bs)
        out["betas_at_most_eta"] = all(b <= self.eta for b in bs)
        return out

    def validate(self):
        bad = [k for k, v in self.identities().items() if not v]
        if self.case not in ("single", "two-level", "induction") or bad:
            raise ArgumentError(f"inconsistent schedule: {bad or self.case}")

    def to_json(self):
        return {"alpha": str(self.alpha), "eta": str(self.eta), "k0": self.k0, "case": self.case,
                "eps_inner": None if self.eps_inner is None else str(self.eps_inner),
                "betas": [str(b) for b in self.betas()]}


def uniform_schedule(eps):
    """Schedule with (alpha, eta) = (eps, 1)."""
    return BurgerSchedule.build(eps, 1)


def compose(K, A):
    """(t, s) -> int_{-inf}^0 K(t, r) A(r, s) dr for piecewise kernels."""
    kl, ku = K.lower.embed(3, [0, 1]), K.upper.embed(3, [0, 1])
    al, au = A.lower.embed(3, [1, 2]), A.upper.embed(3, [1, 2])
    p_lu = (kl * au).antiderivative(1)
    p_ll = (kl * al).antiderivative(1)
    p_ul = (ku * al).antiderivative(1)
    p_uu = (ku * au).antiderivative(1)
    tail = p_lu.at(1, NEG_INF)
    head = p_ul.at(1, ZERO)
    lower = (p_lu.at(1, 2) - tail) + (p_ll.at(1, 0) - p_ll.at(1, 2)) + (head - p_ul.at(1, 0))
    upper = (p_lu.at(1, 0) - tail) + (p_uu.at(1, 2) - p_uu.at(1, 0)) + (head - p_ul.at(1, 2))
    return PiecewiseKernel2(lower.drop([0, 2]), upper.drop([0, 2]))


@dataclass
class Burger2Kernels:
    schedule: BurgerSchedule
    weights: tuple
    C: dict
    D: dict
    betas: list
    W: int

    def n_terms(self):
        return sum(k.n_terms() for k in self.C.values()) + sum(len(p.terms) for p in self.D.values())

    def to_json(self):
        return {
            "format": "horokit-burger2-kernels",
            "schedule": self.schedule.to_json(),
            "weights": [str(w) for w in self.weights],
            "C": [{"k": list(k), "kernel": v.to_json()} for k, v in sorted(self.C.items())],
            "D": [{"j": list(j), "i": i, "kernel": v.to_json()}
                  for (j, i), v in sorted(self.D.items())],
        }


def burger2_coefficients(lams, weights, schedule):
    """Kernels C_k(t, s) and D_{j,i}(t) for generators with weights alpha_j.

    Multi-index k = (k_1, ..., k_r) stands for U_{k_1} ... U_{k_r}.  Kernels depend
    on a multi-index only through its weights, so compositions are shared.
    """
    schedule.validate()
    weights = tuple(weights)
    if not weights:
        raise ArgumentError("need at least one generator weight")
    if any(_q(w) < schedule.alpha for w in weights):
        raise ArgumentError("every generator weight must be >= alpha")
    d, k0 = len(weights), schedule.k0
    if d ** k0 > MAX_MULTI_INDICES:
        raise ResourceError(f"{d}^{k0} multi-indices exceed the cap {MAX_MULTI_INDICES}")
    betas = schedule.betas()
    lams = tuple(lams)
    W = len(lams)

    levels = []
    for b in betas:
        spec = order_lambda(lams, b)
        levels.append((kernel_F(spec), kernel_Fi(spec)))

    def outer(F, w):
        return -(F * ExpPoly.exp(w, 1, 2))

    # level 1
    F, Fi = levels[0]
    A = {(j,): outer(F, weights[j]) for j in range(d)}
    B = {((), i): Fi[i] for i in range(W + 1)}
    for F, Fi in levels[1:]:
        cache_a, cache_b = {}, {}
        newA, newB = {}, {}
        for j in range(d):
            K = outer(F, weights[j])
            for m, Am in A.items():
                key = (weights[j],) + tuple(weights[x] for x in m)
                if key not in cache_a:
                    cache_a[key] = compose(K, Am)
                newA[m + (j,)] = cache_a[key]
            for (l, i), Bl in B.items():
                key = (weights[j], i) + tuple(weights[x] for x in l)
                if key not in cache_b:
                    cache_b[key] = apply_kernel(K, Bl) if not Bl.is_zero() else ExpPoly(1)
                newB[(l + (j,), i)] = cache_b[key]
        for i in range(W + 1):
            newB[((), i)] = Fi[i]
        A, B = newA, newB
    return Burger2Kernels(schedule, weights, A, B, betas, W)


def multi_indices(d, order):
    return list(itertools.product(range(d), repeat=order))

