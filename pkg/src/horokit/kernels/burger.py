"""Kernels F and F_i for bounded solutions of constant-coefficient ODEs.

For prod_i (d/dt - lambda_i) I = psi on t <= 0, with psi = O(e^{gamma t}) and
0 < beta < gamma, every solution with I = O(e^{beta' t}) growth control is

    I(t) = int_{-inf}^0 F(t, s) psi(s) ds + sum_{i=0}^{W} F_i(t) I^{(i)}(0).

The kernels are built as exponential polynomials by repeated use of the
fundamental theorem of calculus, first for the lambdas with Re < beta
(lower tails) and then for those with Re >= beta (integrals over [t, 0]).
"""

from dataclasses import dataclass

from ..errors import ArgumentError, DomainError
from .exppoly import NEG_INF, ZERO, ExpPoly, PiecewiseKernel2


def _key(z):
    return (-z.real, -z.imag)


@dataclass(frozen=True)
class LambdaSpec:
    lams: tuple
    beta: object
    minus: tuple
    plus: tuple

    @property
    def W(self):
        return len(self.minus) + len(self.plus)

    @property
    def m1(self):
        return len(self.minus)

    @property
    def m2(self):
        return len(self.plus)

    @property
    def m0(self):
        return max(0, self.m1 - 1)

    @property
    def lam_inf(self):
        return max((abs(complex(z)) for z in self.lams), default=0.0)

    def is_ordered(self):
        ok_minus = all(z.real < self.beta for z in self.minus)
        ok_plus = all(z.real >= self.beta for z in self.plus)
        mono = all(self.minus[i].real >= self.minus[i + 1].real for i in range(self.m1 - 1))
        mono = mono and all(self.plus[i].real >= self.plus[i + 1].real for i in range(self.m2 - 1))
        return ok_minus and ok_plus and mono

    @classmethod
    def unchecked(cls, minus, plus, beta):
        """Build a split without validating it (used to exercise violated hypotheses)."""
        minus, plus = tuple(minus), tuple(plus)
        return cls(minus + plus, beta, minus, plus)

    def to_json(self):
        def cx(z):
            z = complex(z)
            return [z.real, z.imag]
        return {"beta": float(self.beta), "minus": [cx(z) for z in self.minus],
                "plus": [cx(z) for z in self.plus], "m1": self.m1, "m2": self.m2}


def order_lambda(lams, beta):
    """Split the multiset lams at Re = beta; ties go to the plus side."""
    if not beta > 0:
        raise ArgumentError(f"beta must be positive, got {beta}")
    lams = tuple(lams)
    minus = tuple(sorted((z for z in lams if z.real < beta), key=_key))
    plus = tuple(sorted((z for z in lams if z.real >= beta), key=_key))
    return LambdaSpec(tuple(sorted(lams, key=_key)), beta, minus, plus)


def _step(kernel, nu):
    """Phi -> -int_t^0 e^{nu r} Phi(r, s) dr for a piecewise kernel in (t, s)."""
    e = ExpPoly.exp(nu, 0, 2)
    a_low = (kernel.lower * e).antiderivative(0)
    a_up = (kernel.upper * e).antiderivative(0)
    low = a_low - a_low.at(0, ZERO)
    up = (a_up - a_up.at(0, 1)) - (a_low.at(0, ZERO) - a_low.at(0, 1))
    return PiecewiseKernel2(low, up)


def _phi0(minus):
    """Phi_0(t, s) for s <= t from the nested integrals over s <= r_2 <= ... <= t."""
    m1 = len(minus)
    g = ExpPoly.const(1, 2)
    for i in range(m1 - 1, 0, -1):
        # G_i(t, r) = int_r^t e^{(lam_i - lam_{i+1}) y} G_{i+1}(t, y) dy, y in slot 1
        a = (g * ExpPoly.exp(minus[i - 1] - minus[i], 1, 2)).antiderivative(1)
        g = a.at(1, 0) - a
    return g * ExpPoly.exp(minus[-1], 0, 2) * ExpPoly.exp(-minus[0], 1, 2)


def _check(spec):
    if spec.W == 0:
        raise ArgumentError("W must be at least 1")


def kernel_F(spec):
    _check(spec)
    plus = spec.plus
    if spec.m1 > 0:
        phi = PiecewiseKernel2(_phi0(spec.minus), ExpPoly(2))
        prev = 0
        start = 0
    else:
        phi = PiecewiseKernel2(ExpPoly(2), -ExpPoly.exp(-plus[0], 1, 2))
        prev = plus[0]
        start = 1
    for i in range(start, spec.m2):
        phi = _step(phi, prev - plus[i])
        prev = plus[i]
    if spec.m2:
        phi = phi * ExpPoly.exp(plus[-1], 0, 2)
    return phi


def _elementary(roots):
    """Coefficients (constant term first) of prod (x - r)."""
    coeffs = [1]
    for r in roots:
        nxt = [0] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] = nxt[j + 1] + c
            nxt[j] = nxt[j] - r * c
        coeffs = nxt
    return coeffs


def kernel_Fi(spec):
    """[F_0, ..., F_W] as one-variable exponential polynomials."""
    _check(spec)
    W, plus, m2 = spec.W, spec.plus, spec.m2
    out = [ExpPoly(1) for _ in range(W + 1)]
    if m2 == 0:
        return out
    P = _elementary(plus[1:])
    pis = [ExpPoly.const(c, 1) if c != 0 else ExpPoly(1) for c in P] + [ExpPoly(1)] * (m2 + 1 - len(P))
    for i in range(1, m2):
        P = _elementary(plus[i + 1:])
        e = ExpPoly.exp(plus[i - 1] - plus[i], 0, 1)
        nxt = []
        for j in range(m2 + 1):
            base = ExpPoly.const(P[j], 1) if j < len(P) and P[j] != 0 else ExpPoly(1)
            nxt.append(base - (pis[j] * e).finite_to_zero(0))
        pis = nxt
    fin = ExpPoly.exp(plus[-1], 0, 1)
    for j in range(m2 + 1):
        out[j] = pis[j] * fin
    return out


def check_forcing(spec, psi):
    """Raise DomainError unless every exponent of psi has real part > beta."""
    if psi.is_zero():
        return
    g = psi.min_real_exponent(0)
    if not g > spec.beta:
        raise DomainError(f"forcing decays like e^({g} t), need rate > beta = {spec.beta}")


def apply_kernel(kernel, psi):
    """int_{-inf}^0 K(t, s) psi(s) ds as an exponential polynomial in t."""
    p = psi.embed(2, [1])
    a_low = (kernel.lower * p).antiderivative(1)
    a_up = (kernel.upper * p).antiderivative(1)
    val = (a_low.at(1, 0) - a_low.at(1, NEG_INF)) + (a_up.at(1, ZERO) - a_up.at(1, 0))
    return val.drop([0])


def burger1_reconstruct(spec, psi, boundary, F=None, Fi=None):
    """Right-hand side of the representation for forcing psi and values I^{(i)}(0)."""
    check_forcing(spec, psi)
    F = kernel_F(spec) if F is None else F
    Fi = kernel_Fi(spec) if Fi is None else Fi
    out = ExpPoly(1) if psi.is_zero() else apply_kernel(F, psi)
    for i, b in enumerate(boundary):
        if i < len(Fi) and b != 0:
            out = out + Fi[i] * b
    return out


def apply_operator(lams, p, var=0):
    """prod_i (d/dx_var - lam_i) applied to p."""
    for lam in lams:
        p = p.derivative(var) - p * lam
    return p


def ode_residual(spec, I, psi):
    """prod (d/dt - lam_i) I - psi; identically zero for exact data."""
    return apply_operator(spec.lams, I) - psi


def derivatives_at_zero(p, order):
    """[p(0), p'(0), ..., p^{(order)}(0)] for a one-variable exp-poly."""
    out = []
    for _ in range(order + 1):
        v = p.at(0, ZERO)
        out.append(sum(v.terms.values(), 0) if v.terms else 0)
        p = p.derivative(0)
    return out


def kernel_to_json(spec, F, Fi):
    return {"format": "horokit-burger-kernel", "spec": spec.to_json(),
            "F": F.to_json(), "F_i": [f.to_json() for f in Fi]}
