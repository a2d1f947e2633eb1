"""Exponential polynomials in one or several variables.

A term c * prod_v x_v^{k_v} e^{mu_v x_v} is stored as key (ks, mus) -> c.
Coefficients and exponents may be Python complex numbers or exact numbers
(Fraction, QI); float exponents are snapped to 1e-12 so that sums such as
lam + (gamma - lam) merge with gamma.
"""

import math
from fractions import Fraction

import numpy as np

from ..errors import DomainError

NEG_INF = "-inf"
ZERO = "0"
_SNAP = 12


def _is_float(x):
    return isinstance(x, (float, complex, np.floating, np.complexfloating))


def snap(mu):
    if _is_float(mu):
        mu = complex(mu)
        return complex(round(mu.real, _SNAP) + 0.0, round(mu.imag, _SNAP) + 0.0)
    return mu


def _zero(x):
    return x == 0


def _re(x):
    return x.real


class ExpPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for (ks, mus), c in terms.items():
                self._acc(tuple(ks), tuple(snap(m) for m in mus), c)

    def _acc(self, ks, mus, c):
        key = (ks, mus)
        v = self.terms.get(key, 0) + c
        if _zero(v):
            self.terms.pop(key, None)
        else:
            self.terms[key] = v

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, c, nvars=1):
        return cls(nvars, {((0,) * nvars, (0,) * nvars): c})

    @classmethod
    def monomial(cls, c=1, k=0, mu=0, var=0, nvars=1):
        ks = [0] * nvars
        mus = [0] * nvars
        ks[var] = k
        mus[var] = mu
        return cls(nvars, {(tuple(ks), tuple(mus)): c})

    @classmethod
    def exp(cls, mu, var=0, nvars=1, c=1):
        return cls.monomial(c, 0, mu, var, nvars)

    def copy(self):
        out = ExpPoly(self.nvars)
        out.terms = dict(self.terms)
        return out

    # algebra --------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ExpPoly):
            other = ExpPoly.const(other, self.nvars)
        assert other.nvars == self.nvars
        out = self.copy()
        for (ks, mus), c in other.terms.items():
            out._acc(ks, mus, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = ExpPoly(self.nvars)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            if _zero(other):
                return ExpPoly(self.nvars)
            out = ExpPoly(self.nvars)
            out.terms = {k: c * other for k, c in self.terms.items() if not _zero(c * other)}
            return out
        assert other.nvars == self.nvars
        out = ExpPoly(self.nvars)
        for (k1, m1), c1 in self.terms.items():
            for (k2, m2), c2 in other.terms.items():
                out._acc(tuple(a + b for a, b in zip(k1, k2)),
                         tuple(snap(a + b) for a, b in zip(m1, m2)), c1 * c2)
        return out

    def __rmul__(self, other):
        return self * other

    def is_zero(self):
        return not self.terms

    def max_abs_coeff(self):
        return max((abs(c) for c in self.terms.values()), default=0.0)

    # calculus ---------------------------------------------------------------
    def derivative(self, var=0):
        out = ExpPoly(self.nvars)
        for (ks, mus), c in self.terms.items():
            k, mu = ks[var], mus[var]
            if k:
                nk = list(ks)
                nk[var] = k - 1
                out._acc(tuple(nk), mus, c * k)
            if not _zero(mu):
                out._acc(ks, mus, c * mu)
        return out

    def antiderivative(self, var=0):
        """Termwise primitive in x_var (the one vanishing at -inf when Re mu > 0)."""
        out = ExpPoly(self.nvars)
        for (ks, mus), c in self.terms.items():
            k, mu = ks[var], mus[var]
            if _zero(mu):
                nk = list(ks)
                nk[var] = k + 1
                out._acc(tuple(nk), mus, c * Fraction(1, k + 1) if not _is_float(c) else c / (k + 1))
                continue
            # int x^k e^{mu x} = e^{mu x} sum_j (-1)^j k!/(k-j)! x^{k-j} / mu^{j+1}
            if isinstance(mu, int):
                mu = Fraction(mu)
            fall = 1
            inv = 1 / mu
            p = inv
            for j in range(k + 1):
                nk = list(ks)
                nk[var] = k - j
                out._acc(tuple(nk), mus, c * ((-1) ** j) * fall * p)
                fall *= (k - j)
                p = p * inv
        return out

    def at(self, var, where):
        """Evaluate x_var at ZERO, at NEG_INF (limit) or at another variable (an int index)."""
        out = ExpPoly(self.nvars)
        for (ks, mus), c in self.terms.items():
            k, mu = ks[var], mus[var]
            nk, nm = list(ks), list(mus)
            nk[var], nm[var] = 0, 0
            if where == ZERO:
                if k == 0:
                    out._acc(tuple(nk), tuple(nm), c)
            elif where == NEG_INF:
                if _zero(mu) or _re(mu) <= 0:
                    raise DomainError("divergent lower tail: an exponent has Re <= 0")
            else:
                w = int(where)
                nk[w] += k
                nm[w] = snap(nm[w] + mu)
                out._acc(tuple(nk), tuple(nm), c)
        return out

    def integrate(self, var, lower, upper):
        """int_lower^upper dx_var with limits in {NEG_INF, ZERO, variable index}."""
        A = self.antiderivative(var)
        return A.at(var, upper) - A.at(var, lower)

    def lower_tail(self, var=0, weight=0):
        """int_{-inf}^{x_var} e^{weight s} p(s) ds, as a function of x_var."""
        p = self * ExpPoly.exp(weight, var, self.nvars) if not _zero(weight) else self
        for (ks, mus) in p.terms:
            if _zero(mus[var]) or _re(mus[var]) <= 0:
                raise DomainError("divergent lower tail: an exponent has Re <= 0")
        return p.antiderivative(var)

    def finite_to_zero(self, var=0, weight=0):
        """int_{x_var}^0 e^{weight r} p(r) dr."""
        p = self * ExpPoly.exp(weight, var, self.nvars) if not _zero(weight) else self
        A = p.antiderivative(var)
        return A.at(var, ZERO) - A

    # variables --------------------------------------------------------------
    def depends_on(self, var):
        return any(ks[var] or not _zero(mus[var]) for (ks, mus) in self.terms)

    def embed(self, nvars, mapping):
        """Re-index variables: old variable i becomes new variable mapping[i]."""
        out = ExpPoly(nvars)
        for (ks, mus), c in self.terms.items():
            nk, nm = [0] * nvars, [0] * nvars
            for i, j in enumerate(mapping):
                nk[j] += ks[i]
                nm[j] = nm[j] + mus[i]
            out._acc(tuple(nk), tuple(snap(m) for m in nm), c)
        return out

    def drop(self, keep):
        """Remove variables not in keep (they must not occur)."""
        for v in range(self.nvars):
            if v not in keep and self.depends_on(v):
                raise ValueError(f"variable {v} still occurs")
        out = ExpPoly(len(keep))
        for (ks, mus), c in self.terms.items():
            out._acc(tuple(ks[v] for v in keep), tuple(mus[v] for v in keep), c)
        return out

    # numerics ---------------------------------------------------------------
    def to_complex(self):
        out = ExpPoly(self.nvars)
        for (ks, mus), c in self.terms.items():
            out._acc(ks, tuple(snap(complex(m)) for m in mus), complex(c))
        return out

    def __call__(self, *xs):
        xs = [np.asarray(x, dtype=float) for x in xs]
        shape = np.broadcast(*xs).shape if xs else ()
        xs = [np.broadcast_to(x, shape) for x in xs]
        total = np.zeros(shape, dtype=complex)
        for (ks, mus), c in self.terms.items():
            expo = np.zeros(shape, dtype=complex)
            poly = np.ones(shape, dtype=float)
            for v in range(self.nvars):
                if not _zero(mus[v]):
                    expo = expo + complex(mus[v]) * xs[v]
                if ks[v]:
                    poly = poly * xs[v] ** ks[v]
            total = total + complex(c) * poly * np.exp(expo)
        return total

    def abs_envelope(self, *xs):
        """Sum of absolute values of the terms (scale for relative errors)."""
        xs = [np.asarray(x, dtype=float) for x in xs]
        shape = np.broadcast(*xs).shape if xs else ()
        xs = [np.broadcast_to(x, shape) for x in xs]
        total = np.zeros(shape, dtype=float)
        for (ks, mus), c in self.terms.items():
            expo = np.zeros(shape, dtype=float)
            poly = np.ones(shape, dtype=float)
            for v in range(self.nvars):
                expo = expo + complex(mus[v]).real * xs[v]
                if ks[v]:
                    poly = poly * np.abs(xs[v]) ** ks[v]
            total = total + abs(complex(c)) * poly * np.exp(expo)
        return total

    def min_real_exponent(self, var=0):
        return min((_re(mus[var]) for (ks, mus) in self.terms), default=math.inf)

    def to_json(self):
        def cx(z):
            z = complex(z)
            return [z.real, z.imag]
        return {
            "nvars": self.nvars,
            "terms": [{"k": list(ks), "mu": [cx(m) for m in mus], "c": cx(c)}
                      for (ks, mus), c in sorted(self.terms.items(), key=lambda kv: repr(kv[0]))],
        }

    @classmethod
    def from_json(cls, obj):
        out = cls(int(obj["nvars"]))
        for t in obj["terms"]:
            out._acc(tuple(t["k"]), tuple(snap(complex(*m)) for m in t["mu"]), complex(*t["c"]))
        return out

    def __repr__(self):
        return f"ExpPoly(nvars={self.nvars}, terms={len(self.terms)})"


def one_var(triples):
    """ExpPoly in t from (k, mu, c) triples."""
    out = ExpPoly(1)
    for k, mu, c in triples:
        out._acc((k,), (snap(mu),), c)
    return out


class PiecewiseKernel2:
    """Kernel K(t, s) given by `lower` for s <= t and `upper` for s > t (variables (t, s))."""

    __slots__ = ("lower", "upper")

    def __init__(self, lower, upper):
        assert lower.nvars == 2 and upper.nvars == 2
        self.lower = lower
        self.upper = upper

    def __call__(self, t, s):
        t = np.asarray(t, dtype=float)
        s = np.asarray(s, dtype=float)
        t, s = np.broadcast_arrays(t, s)
        lo = s <= t
        out = np.zeros(t.shape, dtype=complex)
        if lo.any():
            out[lo] = self.lower(t[lo], s[lo])
        if (~lo).any():
            out[~lo] = self.upper(t[~lo], s[~lo])
        return out

    def __add__(self, other):
        return PiecewiseKernel2(self.lower + other.lower, self.upper + other.upper)

    def __mul__(self, c):
        if isinstance(c, ExpPoly):
            return PiecewiseKernel2(self.lower * c, self.upper * c)
        return PiecewiseKernel2(self.lower * c, self.upper * c)

    __rmul__ = __mul__

    def __neg__(self):
        return PiecewiseKernel2(-self.lower, -self.upper)

    def abs_envelope(self, t, s):
        t, s = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(s, dtype=float))
        return np.where(s <= t, self.lower.abs_envelope(t, s), self.upper.abs_envelope(t, s))

    def to_complex(self):
        return PiecewiseKernel2(self.lower.to_complex(), self.upper.to_complex())

    def n_terms(self):
        return len(self.lower.terms) + len(self.upper.terms)

    def to_json(self):
        return {"breakline": "s=t", "lower": self.lower.to_json(), "upper": self.upper.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(ExpPoly.from_json(obj["lower"]), ExpPoly.from_json(obj["upper"]))
