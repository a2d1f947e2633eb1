"""Restricted roots, simple roots and standard parabolic data for split sl(n, R).

Roots are functionals on the traceless diagonals, stored as zero-sum
coordinate vectors so that lam(H) = sum_i lam_i * h_i.
"""

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ArgumentError
from ..rational import frac_str, parse_frac
from .algebra import LieAlgebraData, build_split_sl


def dot(u, v):
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class Root:
    vector: tuple          # zero-sum Fractions in diagonal-entry coordinates
    multiplicity: int
    space: tuple           # basis indices spanning g_lambda

    def __call__(self, diag):
        return dot(self.vector, diag)


@dataclass(frozen=True)
class RestrictedRootSystem:
    alg: LieAlgebraData
    cartan_basis: tuple    # diagonal vectors of H_1..H_{n-1}
    roots: tuple           # all roots
    positive: tuple        # indices into roots
    simple: tuple          # indices into roots, simple root k at position k
    simple_coeffs: dict    # root index -> tuple of integer coefficients on simple roots
    coweights: tuple       # H^j with alpha_i(H^j) = delta_ij (diagonal vectors)

    @property
    def rank(self):
        return len(self.simple)

    def simple_root(self, k):
        return self.roots[self.simple[k]]

    def simple_values(self, diag):
        return tuple(self.simple_root(k)(diag) for k in range(self.rank))

    def rho(self):
        """Half-sum of positive roots (full Borel)."""
        n = self.alg.n
        acc = [Fraction(0)] * n
        for r in self.positive:
            root = self.roots[r]
            for i in range(n):
                acc[i] += root.multiplicity * root.vector[i]
        return tuple(x / 2 for x in acc)

    def root_of_basis(self, a):
        for k, r in enumerate(self.roots):
            if a in r.space:
                return k
        return None


def _solve_small(mat, rhs):
    """Exact dense solve of a square nonsingular system."""
    n = len(mat)
    a = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(mat, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def restricted_root_system(alg):
    """Joint ad-eigenspace decomposition of sl(n) under the diagonal Cartan."""
    n = alg.n
    cart = list(alg.cartan_indices())
    cartan_basis = tuple(tuple(alg.diag_from_cartan([1 if k == j else 0 for k in range(n - 1)]))
                         for j in range(n - 1))
    found = {}
    for a in range(alg.dim_g):
        if a in cart:
            continue
        ev = []
        for hk in cart:
            br = alg.bracket({hk: 1}, {a: 1})
            if set(br) - {a}:
                raise AssertionError("basis vector is not a joint eigenvector")
            ev.append(br.get(a, Fraction(0)))
        # recover the zero-sum functional from its values on the coroots
        c = [Fraction(0)]
        for k in range(n - 1):
            c.append(c[-1] - ev[k])
        shift = sum(c, Fraction(0)) / n
        vec = tuple(x - shift for x in c)
        found.setdefault(vec, []).append(a)
    vecs = sorted(found, key=lambda v: tuple(-x for x in v))
    roots = tuple(Root(v, len(found[v]), tuple(found[v])) for v in vecs)

    def is_positive(v):
        for x in v:
            if x:
                return x > 0
        return False

    positive = tuple(k for k, r in enumerate(roots) if is_positive(r.vector))
    posvecs = {roots[k].vector: k for k in positive}
    decomposable = set()
    for i in positive:
        for j in positive:
            s = tuple(x + y for x, y in zip(roots[i].vector, roots[j].vector))
            if s in posvecs:
                decomposable.add(posvecs[s])
    simple = [k for k in positive if k not in decomposable]
    # order simple roots alpha_k = e_k - e_{k+1}
    simple.sort(key=lambda k: next(i for i, x in enumerate(roots[k].vector) if x > 0))
    simple = tuple(simple)
    # coweights: alpha_i(H^j) = delta_ij, sum(H^j) = 0
    mat = [list(roots[s].vector) for s in simple] + [[Fraction(1)] * n]
    coweights = []
    for j in range(n - 1):
        rhs = [Fraction(int(i == j)) for i in range(n - 1)] + [Fraction(0)]
        coweights.append(tuple(_solve_small(mat, rhs)))
    coeffs = {}
    for k in positive:
        cf = tuple(roots[k](cw) for cw in coweights)
        coeffs[k] = cf
    return RestrictedRootSystem(alg, cartan_basis, roots, positive, simple, coeffs, tuple(coweights))


@dataclass(frozen=True)
class ParabolicData:
    rs: RestrictedRootSystem
    subset_F: frozenset
    n_basis: tuple         # basis indices of n_F
    a_basis: tuple         # coweights H^j, j not in F (diagonal vectors)
    m_basis: tuple         # coordinate dicts of a basis of m_F
    rho: tuple             # rho_{a_F} as a zero-sum functional
    weights: tuple         # beta_j functional for each n_basis entry

    def rho_values(self):
        return tuple(dot(self.rho, h) for h in self.a_basis)


def parabolic_from_subset(rs, F):
    """Standard parabolic P_F = N_F A_F M_F for a set of simple-root indices F."""
    F = frozenset(F)
    r = rs.rank
    if any((not isinstance(k, int)) or k < 0 or k >= r for k in F):
        raise ArgumentError(f"simple-root indices must lie in 0..{r - 1}, got {sorted(F)}")
    alg = rs.alg
    outside = [j for j in range(r) if j not in F]
    a_basis = tuple(rs.coweights[j] for j in outside)
    n_basis, weights = [], []
    levi_roots = []
    for k in rs.positive:
        cf = rs.simple_coeffs[k]
        root = rs.roots[k]
        if any(cf[j] for j in outside):
            for a in root.space:
                n_basis.append(a)
                weights.append(root.vector)
        else:
            levi_roots.append(k)
    n_basis_sorted = sorted(range(len(n_basis)), key=lambda i: n_basis[i])
    n_basis = tuple(n_basis[i] for i in n_basis_sorted)
    weights = tuple(weights[i] for i in n_basis_sorted)
    m_basis = []
    for k in levi_roots:
        for a in rs.roots[k].space:
            m_basis.append({a: Fraction(1)})
            neg = rs.roots.index(next(rr for rr in rs.roots if rr.vector == tuple(-x for x in rs.roots[k].vector)))
            for b in rs.roots[neg].space:
                m_basis.append({b: Fraction(1)})
    cart0 = alg.n_pos
    for k in sorted(F):
        m_basis.append({cart0 + k: Fraction(1)})
    n = alg.n
    acc = [Fraction(0)] * n
    for w in weights:
        for i in range(n):
            acc[i] += w[i]
    rho = tuple(x / 2 for x in acc)
    return ParabolicData(rs, F, n_basis, a_basis, tuple(m_basis), rho, weights)


def parabolic_to_json(par):
    alg = par.rs.alg
    return {
        "n": alg.n,
        "subset_F": sorted(par.subset_F),
        "n_basis": [alg.basis[a] for a in par.n_basis],
        "a_basis": [[frac_str(x) for x in h] for h in par.a_basis],
        "m_basis": [{alg.basis[a]: frac_str(v) for a, v in sorted(m.items())} for m in par.m_basis],
        "rho": [frac_str(x) for x in par.rho],
        "weights": [[frac_str(x) for x in w] for w in par.weights],
    }


def parabolic_from_json(obj):
    alg = build_split_sl(int(obj["n"]))
    par = parabolic_from_subset(restricted_root_system(alg), obj["subset_F"])
    got = (
        [alg.index(l) for l in obj["n_basis"]],
        [tuple(parse_frac(x) for x in h) for h in obj["a_basis"]],
        tuple(parse_frac(x) for x in obj["rho"]),
        [tuple(parse_frac(x) for x in w) for w in obj["weights"]],
        [{alg.index(k): parse_frac(v) for k, v in m.items()} for m in obj["m_basis"]],
    )
    want = (list(par.n_basis), list(par.a_basis), par.rho, list(par.weights), list(par.m_basis))
    if got != want:
        raise ValueError("serialized parabolic does not match reconstruction")
    return par
