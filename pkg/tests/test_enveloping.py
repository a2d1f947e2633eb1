import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from horokit.enveloping import (
    canonical_algebra, center_basis, certificate_to_json, continuity_spotcheck, delta_shift,
    harish_chandra, hc_project, hpoly_coefficients, is_weyl_invariant, lie_identity_certificate,
    verify_certificate_json,
)
from horokit.enveloping.certificate import cartan_element, has_positive_degree, is_central
from horokit.enveloping.harish_chandra import to_poly, weyl_act
from horokit.errors import ArgumentError, ResourceError
from horokit.lie import build_split_sl

from oracles import word_product, word_straighten, words_to_exponents

SL2 = build_split_sl(2)
SL3 = build_split_sl(3)
A2 = canonical_algebra(2)
A3 = canonical_algebra(3)
e, h, f = (A2.gen(x) for x in "ehf")
CASIMIR = h * h / 2 + e * f + f * e


def mono(**exps):
    return (exps.get("e", 0), exps.get("h", 0), exps.get("f", 0))


def as_dict(x):
    return dict(x.terms)


def test_ordered_products():
    assert as_dict(e * f) == {mono(e=1, f=1): 1}
    assert f * e == e * f - h


def test_four_factor_straightening_oracle():
    ef = {("e", "f"): Fraction(1)}
    expected = words_to_exponents(word_straighten(word_product(ef, ef)))
    assert as_dict((e * f) * (e * f)) == expected


@st.composite
def sl2_words(draw, max_len=5):
    letters = st.sampled_from("ehf")
    return {tuple(draw(st.lists(letters, max_size=max_len))): Fraction(draw(st.integers(-3, 3)))
            for _ in range(draw(st.integers(1, 3)))}


def from_words(terms):
    out = A2.zero()
    for w, c in terms.items():
        x = A2.one()
        for letter in w:
            x = x * A2.gen(letter)
        out = out + x * c
    return out


@given(sl2_words(), sl2_words())
def test_multiplication_matches_word_rewriting(a, b):
    expected = words_to_exponents(word_straighten(word_product(a, b)))
    assert as_dict(from_words(a) * from_words(b)) == expected


def _random_element(algebra, rnd, deg):
    out = algebra.zero()
    for _ in range(3):
        x = algebra.scalar(rnd.randint(-3, 3))
        for _ in range(rnd.randint(0, deg)):
            x = x * algebra.gen(rnd.randrange(algebra.dim))
        out = out + x
    return out


@pytest.mark.parametrize("algebra", [A2, A3], ids=["sl2", "sl3"])
@given(seed=st.integers(0, 10 ** 6))
def test_associativity_and_filtration(algebra, seed):
    rnd = random.Random(seed)
    x, y, z = (_random_element(algebra, rnd, 3) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert (x + y) * z == x * z + y * z
    if not (x.is_zero() or y.is_zero()):
        assert (x * y).degree <= x.degree + y.degree
        comm = x * y - y * x
        assert comm.is_zero() or comm.degree <= x.degree + y.degree - 1
    assert all(c != 0 for c in (x * y).terms.values())


def test_degree_cap():
    small = type(A2)(SL2, max_degree=3)
    x = small.gen("e")
    with pytest.raises(ResourceError):
        x * x * x * x


def test_hc_project_examples():
    assert hc_project(CASIMIR) == h * h / 2 - h
    assert hc_project(h ** 3) == h ** 3
    assert hc_project(e * f).is_zero()


def test_delta_shift_examples():
    assert delta_shift(h, [1]) == h + A2.one()
    assert delta_shift(A2.one(), [5]) == A2.one()


@given(st.lists(st.fractions(-5, 5, max_denominator=6), min_size=4, max_size=4),
       st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4))
def test_delta_shift_automorphism(cs, d1, d2):
    H1, H2 = A3.gen("H1"), A3.gen("H2")
    p = A3.scalar(cs[0]) + H1 * cs[1] + H1 * H2 * H2 * cs[2] + H2 ** 3 * cs[3]
    q = H1 * H2 + A3.one()
    d, nd = [d1, d2], [-d1, -d2]
    assert delta_shift(delta_shift(p, d), nd) == p
    assert delta_shift(p * q, d) == delta_shift(p, d) * delta_shift(q, d)


def _poly(**kw):
    return {tuple(k): Fraction(v) for k, v in kw.items()}


def test_hpoly_sl2():
    W, J = hpoly_coefficients(SL2, (1, -1))
    assert W == 2
    assert J[1] == {(0,): -2}
    assert J[0] == {(0,): 1, (2,): -1}
    W, J = hpoly_coefficients(SL2, (Fraction(1, 2), Fraction(-1, 2)))
    assert J[1] == {(0,): -1}
    assert J[0] == {(0,): Fraction(1, 4), (2,): Fraction(-1, 4)}


def test_hpoly_orbit_sizes():
    assert hpoly_coefficients(SL3, (1, 1, -2))[0] == 3
    assert hpoly_coefficients(SL3, (2, 0, -2))[0] == 6
    assert hpoly_coefficients(SL3, (0, 0, 0))[0] == 1
    for diag in [(1, 1, -2), (3, 1, -4)]:
        _, J = hpoly_coefficients(SL3, diag)
        assert all(is_weyl_invariant(j, SL3) for j in J)


def test_center_sl2():
    cb1 = center_basis(SL2, 1)
    assert len(cb1.elements) == 1 and cb1.elements[0] == A2.one()
    cb = center_basis(SL2, 2)
    assert cb.degrees == (0, 2)
    C = cb.elements[1]
    # proportional to the Casimir
    ratio = C.coefficient(mono(h=2)) / CASIMIR.coefficient(mono(h=2))
    assert C == CASIMIR * ratio


def test_center_sl3_degree3():
    cb = center_basis(SL3, 3)
    assert sorted(cb.degrees) == [0, 2, 3]


@pytest.mark.parametrize("alg,m", [(SL2, 6), (SL3, 3)], ids=["sl2", "sl3"])
def test_center_properties(alg, m):
    cb = center_basis(alg, m)
    for z, g in zip(cb.elements, cb.gamma_images):
        assert is_central(z)
        algebra = z.algebra
        for b in range(algebra.dim):
            x = algebra.gen(b)
            assert (x * z - z * x).is_zero()
        assert is_weyl_invariant(g, alg)
        assert harish_chandra(z) == g


def test_center_degree_limit():
    with pytest.raises(ResourceError):
        center_basis(build_split_sl(4), 5)


def test_weyl_action_is_group_action():
    p = {(2, 1): Fraction(1), (0, 1): Fraction(3)}
    for perm in [(1, 0, 2), (0, 2, 1), (2, 0, 1)]:
        inv = [perm.index(i) for i in range(3)]
        assert weyl_act(weyl_act(p, perm, SL3), inv, SL3) == p


# certificates ----------------------------------------------------------------------

def test_certificate_sl2_half_h():
    cert = lie_identity_certificate(SL2, (Fraction(1, 2), Fraction(-1, 2)))
    assert cert.W_H == 2 and cert.verified
    assert cert.Z[2] == A2.one()
    assert cert.Z[1] == A2.scalar(-1)
    assert cert.Z[0] == CASIMIR * Fraction(-1, 2)
    assert cert.P == -(e * f)
    U = cert.U["e"]
    assert U == U.algebra.gen("f", -1)


def test_certificate_sl2_h():
    cert = lie_identity_certificate(SL2, (1, -1))
    assert cert.Z[1] == A2.scalar(-2)
    assert cert.Z[0] == CASIMIR * -2
    assert cert.P == e * f * -4
    # oracle: h^2 - 2h - 2C straightened by word rewriting
    C = {("h", "h"): Fraction(1, 2), ("e", "f"): Fraction(1), ("f", "e"): Fraction(1)}
    total = {("h", "h"): Fraction(1), ("h",): Fraction(-2)}
    for w, c in C.items():
        total[w] = total.get(w, 0) - 2 * c
    assert as_dict(cert.P) == words_to_exponents(word_straighten(total))


def _sound(cert, alg):
    A = canonical_algebra(alg.n)
    Hel = cartan_element(A, cert.H)
    P = A.zero()
    for i, z in enumerate(cert.Z):
        P = P + z * Hel ** i
    assert P == cert.P
    assert hc_project(P).is_zero()
    assert has_positive_degree(P, list(alg.pos_indices()))
    for i, z in enumerate(cert.Z):
        assert z.degree <= cert.W_H - i
    assert cert.verified, [k for k, v in cert.checks.items() if not v]


def test_certificate_sl3_regular():
    cert = lie_identity_certificate(SL3, (1, 0, -1))
    assert cert.W_H == 6
    _sound(cert, SL3)


@pytest.mark.parametrize("diag", [(1, 1, -2), (2, -1, -1), (Fraction(1, 3), Fraction(1, 3), Fraction(-2, 3))])
def test_certificate_sl3_walls(diag):
    cert = lie_identity_certificate(SL3, diag)
    assert cert.W_H == 3
    _sound(cert, SL3)
    # U_j vanishes on generators whose root is zero on H
    zero_root = "E12" if diag[0] == diag[1] else "E23"
    assert cert.U[zero_root].is_zero()


def test_certificate_zero_H():
    cert = lie_identity_certificate(SL3, (0, 0, 0))
    assert cert.W_H == 1 and cert.verified
    assert cert.P.is_zero()


def test_certificate_rejects_outside_chamber():
    with pytest.raises(ArgumentError):
        lie_identity_certificate(SL3, (-1, 0, 1))


def test_certificate_json_round_trip_and_tamper():
    cert = lie_identity_certificate(SL3, (1, 1, -2))
    obj = json.loads(json.dumps(certificate_to_json(cert)))
    assert verify_certificate_json(obj) == (True, [])
    bad = json.loads(json.dumps(obj))
    c = Fraction(bad["Z"][0][0][1])
    bad["Z"][0][0][1] = str(c + Fraction(1, 10 ** 9))
    ok, failed = verify_certificate_json(bad)
    assert not ok and failed
    bad = json.loads(json.dumps(obj))
    del bad["W_H"]
    assert verify_certificate_json(bad)[0] is False


def test_continuity_sl2_ray():
    samples = [(Fraction(t, 2), Fraction(-t, 2)) for t in (1, 2, 3, 4)]
    rep = continuity_spotcheck(SL2, set(), samples)
    assert rep.coherent and rep.W_values == (2, 2, 2, 2)
    assert rep.divided_difference_max == 0


def test_continuity_single_sample():
    assert continuity_spotcheck(SL2, set(), [(1, -1)]).coherent


def test_continuity_sl3_wall():
    samples = [(1, 1, -2), (2, 2, -4), (Fraction(1, 2), Fraction(1, 2), -1)]
    rep = continuity_spotcheck(SL3, {0}, samples)
    assert rep.W_values == (3, 3, 3) and rep.coherent


def test_continuity_rejects_straddling():
    with pytest.raises(ArgumentError):
        continuity_spotcheck(SL3, {0}, [(1, 1, -2), (2, 0, -2)])
