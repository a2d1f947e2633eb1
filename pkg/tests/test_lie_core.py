import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from horokit.errors import ArgumentError, ConfigurationError
from horokit.lie import (
    algebra_from_json, algebra_to_json, build_split_sl, chamber_classify, chamber_vector,
    check_epsilon_decomposition, epsilon_decompose, from_dual_coords, norm_constants,
    parabolic_from_json, parabolic_from_subset, parabolic_to_json, restricted_root_system,
)
from horokit.lie.algebra import jacobi_residual
from horokit.lie.chamber import eps_upper_bound
from horokit.lie.roots import dot


@pytest.fixture(scope="module", params=[2, 3, 4])
def alg(request):
    return build_split_sl(request.param)


def rs_of(n):
    return restricted_root_system(build_split_sl(n))


def test_sl2_relations():
    a = build_split_sl(2)
    assert a.dim_g == 3
    e, h, f = (a.index(x) for x in "ehf")
    assert a.bracket({h: 1}, {e: 1}) == {e: 2}
    assert a.bracket({e: 1}, {f: 1}) == {h: 1}
    assert a.bracket({h: 1}, {f: 1}) == {f: -2}


def test_sl3_sizes():
    a = build_split_sl(3)
    assert a.dim_g == 8
    assert len(restricted_root_system(a).positive) == 3


@pytest.mark.parametrize("n", [1, 7, 2.5])
def test_out_of_range(n):
    with pytest.raises(ConfigurationError):
        build_split_sl(n)


def test_basis_order(alg):
    # positive roots by height, Cartan, negative roots
    rs = restricted_root_system(alg)
    pos = list(alg.pos_indices())
    heights = [sum(rs.simple_coeffs[rs.root_of_basis(a)]) for a in pos]
    assert heights == sorted(heights)
    assert list(alg.cartan_indices()) == list(range(alg.n_pos, alg.n_pos + alg.n - 1))


def test_structure_invariants(alg):
    sc = alg.structure_constants
    for (a, b), row in sc.items():
        assert sc[(b, a)] == {c: -v for c, v in row.items()}
    assert jacobi_residual(alg) == 0
    d = alg.dim_g
    th, B = alg.theta, alg.killing
    for i in range(d):
        for j in range(d):
            assert sum(th[i][k] * th[k][j] for k in range(d)) == int(i == j)
    # B(theta X, theta Y) = B(X, Y): theta^T B theta = B
    for i in range(d):
        for j in range(d):
            v = sum(th[k][i] * B[k][l] * th[l][j] for k in range(d) for l in range(d) if th[k][i] and th[l][j])
            assert v == B[i][j]


def test_killing_is_trace_form():
    a = build_split_sl(2)
    e, h, f = (a.index(x) for x in "ehf")
    assert a.killing[h][h] == 8          # 2n tr(h h)
    assert a.killing[e][f] == 4


def test_algebra_json_round_trip(alg):
    obj = json.loads(json.dumps(algebra_to_json(alg)))
    assert algebra_from_json(obj) is alg
    obj["structure_constants"][0][3] = "7/1"
    with pytest.raises(ValueError):
        algebra_from_json(obj)


def test_root_systems():
    rs2 = rs_of(2)
    assert len(rs2.positive) == 1
    assert rs2.simple_root(0)((1, -1)) == 2
    rs3 = rs_of(3)
    assert rs3.rank == 2
    a1, a2 = (rs3.simple_root(k).vector for k in range(2))
    vecs = {rs3.roots[k].vector for k in rs3.positive}
    assert vecs == {a1, a2, tuple(x + y for x, y in zip(a1, a2))}
    rs4 = rs_of(4)
    assert len(rs4.positive) == 6 and rs4.rank == 3


def test_root_invariants(alg):
    rs = restricted_root_system(alg)
    n = alg.n
    assert sum(rs.roots[k].multiplicity for k in rs.positive) == n * (n - 1) // 2
    assert all(r.multiplicity == 1 for r in rs.roots)
    for k in rs.positive:
        cf = rs.simple_coeffs[k]
        assert all(c >= 0 and c == int(c) for c in cf)
        recon = [sum(c * rs.simple_root(j).vector[i] for j, c in enumerate(cf)) for i in range(n)]
        assert tuple(recon) == rs.roots[k].vector
    # ad-eigenspaces are exact
    for r in rs.roots:
        for a in r.space:
            for hk in alg.cartan_indices():
                diag = alg.diag_from_cartan([int(c == hk) for c in alg.cartan_indices()])
                v = r(diag)
                assert alg.bracket({hk: 1}, {a: 1}) == ({a: v} if v else {})


def test_parabolic_examples():
    rs2 = rs_of(2)
    p = parabolic_from_subset(rs2, set())
    assert [rs2.alg.basis[a] for a in p.n_basis] == ["e"]
    assert dot(p.rho, (1, -1)) == 1
    rs3 = rs_of(3)
    p = parabolic_from_subset(rs3, set())
    h1, h2 = Fraction(5), Fraction(-2)
    assert dot(p.rho, (h1, h2, -h1 - h2)) == h1 - (-h1 - h2)
    p = parabolic_from_subset(rs3, {1})
    assert len(p.a_basis) == 1 and len(p.n_basis) == 2


def test_parabolic_extremes(alg):
    rs = restricted_root_system(alg)
    full = parabolic_from_subset(rs, range(rs.rank))
    assert full.n_basis == () and full.a_basis == ()
    with pytest.raises(ArgumentError):
        parabolic_from_subset(rs, {rs.rank})


def _subsets(r):
    return [frozenset(c) for k in range(r + 1) for c in itertools.combinations(range(r), k)]


def test_parabolic_invariants(alg):
    rs = restricted_root_system(alg)
    pars = {F: parabolic_from_subset(rs, F) for F in _subsets(rs.rank)}
    for F, p in pars.items():
        assert len(p.a_basis) == rs.rank - len(F)
        for H in p.a_basis:
            assert all(rs.simple_root(k)(H) == 0 for k in F)
            hc = alg.cartan_from_diag(H)
            hel = dict(zip(alg.cartan_indices(), hc))
            for X, beta in zip(p.n_basis, p.weights):
                br = alg.bracket(hel, {X: 1})
                assert br == ({X: dot(beta, H)} if dot(beta, H) else {})
    for F1, F2 in itertools.product(pars, repeat=2):
        if F1 < F2:
            for H in pars[F2].a_basis:
                assert H in pars[F1].a_basis
                assert dot(pars[F2].rho, H) == dot(pars[F1].rho, H)


def test_parabolic_json(alg):
    rs = restricted_root_system(alg)
    p = parabolic_from_subset(rs, {0})
    assert parabolic_from_json(json.loads(json.dumps(parabolic_to_json(p)))) == p


# chambers -------------------------------------------------------------------

def test_classify_examples():
    rs2 = rs_of(2)
    h = chamber_vector(rs2, (1, -1))
    assert float(h.norm_sq) == 8
    for eps in ("1/10", "1/2", "7/10"):
        c = chamber_classify(rs2, h, eps)
        assert c.status == "regular" and c.F == frozenset()
    rs3 = rs_of(3)
    H = from_dual_coords(rs3, [0, 1])
    c = chamber_classify(rs3, H, Fraction(1, 10))
    assert c.status == "regular" and c.F == frozenset({0})
    H = from_dual_coords(rs3, [Fraction(1, 100), 1])
    assert chamber_classify(rs3, H, Fraction(1, 10)).status == "not-eps-regular"
    assert chamber_classify(rs3, from_dual_coords(rs3, [-1, 1]), Fraction(1, 10)).status == "outside"


def test_norm_constants_exact():
    nc2 = norm_constants(rs_of(2))
    assert nc2.c_sq == 2
    nc3 = norm_constants(rs_of(3))
    assert (nc3.D_sq, nc3.Dp_sq) == (12, 3)
    assert nc3.c_sq == 48


def test_norm_constants_sandwich(alg):
    rs = restricted_root_system(alg)
    nc = norm_constants(rs)
    grid = [Fraction(k, 4) for k in range(-4, 5)]
    for xs in itertools.product(grid, repeat=rs.rank):
        H = from_dual_coords(rs, xs)
        ninf = H.norm_inf
        assert nc.Dp_sq * ninf ** 2 <= H.norm_sq <= nc.D_sq * ninf ** 2


def test_decompose_examples():
    rs3 = rs_of(3)
    H = from_dual_coords(rs3, [1, Fraction(1, 1000)])
    dec = epsilon_decompose(rs3, H, Fraction(1, 10), strict=False)
    assert dec.F == frozenset({1})
    assert dec.J_eps.H == from_dual_coords(rs3, [0, Fraction(1, 1000)]).H
    assert all(check_epsilon_decomposition(rs3, H, dec).values())
    with pytest.raises(ArgumentError):
        epsilon_decompose(rs3, H, Fraction(1, 10))
    # already regular: unchanged
    H = from_dual_coords(rs3, [1, 1])
    dec = epsilon_decompose(rs3, H, Fraction(1, 20))
    assert dec.H_eps == H and not any(dec.J_eps.H)
    # sl(2): J always zero
    rs2 = rs_of(2)
    for x in (Fraction(1, 7), 3, 100):
        dec = epsilon_decompose(rs2, from_dual_coords(rs2, [x]), Fraction(1, 4))
        assert not any(dec.J_eps.H)


def test_decompose_rejects():
    rs3 = rs_of(3)
    with pytest.raises(ArgumentError):
        epsilon_decompose(rs3, from_dual_coords(rs3, [-1, 1]), Fraction(1, 100))
    with pytest.raises(ArgumentError):
        epsilon_decompose(rs3, from_dual_coords(rs3, [1, 1]), 0)
    with pytest.raises(ArgumentError):
        chamber_vector(rs3, (1, 0, 0))


@st.composite
def chamber_and_eps(draw, n):
    rs = rs_of(n)
    xs = [draw(st.one_of(st.just(Fraction(0)), st.fractions(0, 100, max_denominator=1000)))
          for _ in range(rs.rank)]
    hi = Fraction(0.999 * eps_upper_bound(rs)).limit_denominator(10 ** 5)
    eps = draw(st.fractions(min_value=Fraction(1, 10 ** 6), max_value=hi, max_denominator=10 ** 6))
    return rs, from_dual_coords(rs, xs), eps


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@given(data=st.data())
def test_decomposition_properties(n, data):
    rs, H, eps = data.draw(chamber_and_eps(n))
    dec = epsilon_decompose(rs, H, eps)
    assert check_epsilon_decomposition(rs, H, dec) == {
        "sum": True, "H_eps_regular": True, "J_eps_closed": True, "norm_bound": True}
    # float restatement of the norm bound
    assert dec.H_eps.norm_killing >= (1 - dec.c * float(eps)) * H.norm_killing - 1e-12


@given(st.lists(st.fractions(0, 10, max_denominator=50), min_size=2, max_size=2),
       st.fractions(Fraction(1, 1000), 1, max_denominator=1000))
def test_classification_consistent(xs, eps):
    rs = rs_of(3)
    H = from_dual_coords(rs, xs)
    c = chamber_classify(rs, H, eps)
    vals = H.root_values
    if c.status == "regular":
        for j, v in enumerate(vals):
            if j in c.F:
                assert v == 0
            else:
                assert float(v) >= float(eps) * H.norm_killing * (1 - 1e-12)
    else:
        assert c.status == "not-eps-regular"
