import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from horokit.errors import DomainError
from horokit.kernels import NEG_INF, ZERO, ExpPoly, PiecewiseKernel2, one_var
from horokit.rational import QI

pytestmark = pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")


def test_lower_tail_exp():
    p = ExpPoly.exp(1)
    assert p.integrate(0, NEG_INF, 0).terms == p.terms
    assert p.lower_tail(0).terms == p.terms


def test_finite_constant():
    q = ExpPoly.const(1).finite_to_zero(0)
    assert q.terms == one_var([(1, 0, -1)]).terms


def test_lower_tail_poly_times_exp():
    p = one_var([(1, Fraction(2), Fraction(1))])          # s e^{2s}
    got = p.lower_tail(0)
    want = one_var([(1, Fraction(2), Fraction(1, 2)), (0, Fraction(2), Fraction(-1, 4))])
    assert got.terms == want.terms


def test_divergent_tail():
    with pytest.raises(DomainError):
        ExpPoly.const(1).lower_tail(0)
    with pytest.raises(DomainError):
        ExpPoly.exp(-0.5).lower_tail(0)
    with pytest.raises(DomainError):
        ExpPoly.exp(1).lower_tail(0, weight=-2)


def test_canonical_merging():
    p = one_var([(0, 1, 2), (0, 1, -2), (1, 0.5, 1.0)])
    q = one_var([(1, 0.5 + 1e-14, 1.0)])
    assert len(p.terms) == 1
    assert len((p - q).terms) == 0


@st.composite
def exppolys(draw, min_re=0.1):
    terms = []
    for _ in range(draw(st.integers(1, 3))):
        k = draw(st.integers(0, 3))
        # dyadic exponents: tiny nonzero exponents make any closed-form antiderivative ill-conditioned
        mu = complex(draw(st.integers(int(min_re * 16), 48)) / 16, draw(st.integers(-48, 48)) / 16)
        c = complex(draw(st.integers(-20, 20)) / 10, draw(st.integers(-20, 20)) / 10) or 1.0
        terms.append((k, mu, c))
    return one_var(terms)


def _cquad(fn, a, b):
    re = quad(lambda x: fn(x).real, a, b, epsabs=1e-14, epsrel=1e-13, limit=400)[0]
    im = quad(lambda x: fn(x).imag, a, b, epsabs=1e-14, epsrel=1e-13, limit=400)[0]
    return complex(re, im)


def _scale(p, a, b):
    return _cquad(lambda x: complex(p.abs_envelope(np.array([x]))[0]), a, b).real + 1e-300


@given(exppolys(), st.floats(-6, -0.1))
def test_lower_tail_vs_quadrature(p, t):
    got = complex(p.lower_tail(0)(np.array([t]))[0])
    want = _cquad(lambda x: complex(p(np.array([x]))[0]), -np.inf, t)
    assert abs(got - want) <= 1e-10 * _scale(p, -np.inf, t)


@given(exppolys(min_re=-2), st.floats(-6, -0.1), st.floats(-2, 2))
def test_finite_vs_quadrature(p, t, w):
    got = complex(p.finite_to_zero(0, weight=w)(np.array([t]))[0])
    pw = p * ExpPoly.exp(w)
    want = _cquad(lambda x: complex(pw(np.array([x]))[0]), t, 0)
    assert abs(got - want) <= 1e-10 * _scale(pw, t, 0)


@given(exppolys(min_re=-2), exppolys(min_re=-2), st.floats(-5, 0))
def test_algebra_pointwise(p, q, t):
    x = np.array([t])
    assert complex((p * q)(x)[0]) == pytest.approx(complex(p(x)[0] * q(x)[0]), rel=1e-12, abs=1e-12)
    assert complex((p + q)(x)[0]) == pytest.approx(complex(p(x)[0] + q(x)[0]), rel=1e-12, abs=1e-12)


@given(exppolys(min_re=-2))
def test_derivative_inverts_antiderivative(p):
    back = p.antiderivative(0).derivative(0)
    x = np.linspace(-4, 0, 9)
    np.testing.assert_allclose(back(x), p(x), rtol=1e-11, atol=1e-11)


def test_exact_coefficients():
    mu = QI(Fraction(1, 2), 3)
    p = ExpPoly.monomial(QI(1, 1), 2, mu)
    assert p.antiderivative(0).derivative(0).terms == p.terms
    assert p.at(0, ZERO).terms == {}
    assert ExpPoly.exp(mu).at(0, ZERO).terms == {((0,), (0,)): 1}


def test_two_variables_and_substitution():
    p = ExpPoly.exp(1, 0, 2) * ExpPoly.exp(-1, 1, 2)        # e^{t - s}
    diag = p.at(1, 0)                                         # s -> t
    assert diag.drop([0]).terms == ExpPoly.const(1).terms
    with pytest.raises(ValueError):
        p.drop([0])


def test_piecewise_evaluation():
    K = PiecewiseKernel2(ExpPoly.const(1, 2), ExpPoly.exp(1, 0, 2) * 2)
    t = np.array([-1.0, -1.0])
    s = np.array([-2.0, -0.5])
    np.testing.assert_allclose(K(t, s), [1.0, 2 * np.exp(-1.0)])


def test_json_round_trip():
    p = one_var([(2, 1 + 2j, 3 - 1j), (0, 0.5, 2.0)])
    assert ExpPoly.from_json(p.to_json()).terms == p.terms
    K = PiecewiseKernel2(p.embed(2, [0]), p.embed(2, [1]))
    K2 = PiecewiseKernel2.from_json(K.to_json())
    assert K2.lower.terms == K.lower.terms and K2.upper.terms == K.upper.terms
