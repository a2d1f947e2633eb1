"""Proj onto U(h), the rho-shift sigma, gamma = sigma o Proj, Weyl action and p_H.

U(h) is commutative, so its elements are handled as polynomials in the
coroots H_1..H_{n-1}: dicts from exponent r-tuples to Fractions.
"""

import itertools
from fractions import Fraction

from ..errors import ArgumentError
from ..lie.roots import restricted_root_system, dot
from .pbw import canonical_algebra


# polynomial helpers --------------------------------------------------------

def poly_add(p, q, scale=1):
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def poly_pow(p, k, r):
    out = {(0,) * r: Fraction(1)}
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def linear_poly(coeffs, const=0):
    r = len(coeffs)
    out = {}
    if const:
        out[(0,) * r] = Fraction(const)
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * r
            e[k] = 1
            out[tuple(e)] = Fraction(c)
    return out


def substitute(p, images, r):
    """Replace H_k by the polynomial images[k]."""
    out = {}
    cache = {}
    for m, c in p.items():
        term = {(0,) * r: Fraction(c)}
        for k, e in enumerate(m):
            if e:
                key = (k, e)
                if key not in cache:
                    cache[key] = poly_pow(images[k], e, r)
                term = poly_mul(term, cache[key])
        out = poly_add(out, term)
    return out


# U(h) <-> PbwElement --------------------------------------------------------

def _cartan_slots(algebra):
    return [algebra.slot[b] for b in algebra.alg.cartan_indices()]


def to_poly(x):
    """Polynomial of an element lying in U(h)."""
    algebra = x.algebra
    slots = _cartan_slots(algebra)
    others = [p for p in range(algebra.dim) if p not in slots]
    out = {}
    for m, c in x.terms.items():
        if any(m[p] for p in others):
            raise ArgumentError("element does not lie in U(h)")
        out[tuple(m[p] for p in slots)] = c
    return out


def from_poly(algebra, p):
    slots = _cartan_slots(algebra)
    out = {}
    for m, c in p.items():
        e = [0] * algebra.dim
        for s, k in zip(slots, m):
            e[s] = k
        out[tuple(e)] = c
    return algebra.element(out)


# the maps -------------------------------------------------------------------

def hc_project(x):
    """Keep the monomials with no n+ and no n- factors."""
    algebra = x.algebra
    slots = set(_cartan_slots(algebra))
    return algebra.element({m: c for m, c in x.terms.items()
                            if all(k == 0 or p in slots for p, k in enumerate(m))})


def _delta_values(alg, delta):
    delta = [Fraction(d) for d in delta]
    if len(delta) == alg.n:
        # functional in diagonal coordinates: evaluate on H_k = e_k - e_{k+1}
        return [delta[k] - delta[k + 1] for k in range(alg.n - 1)]
    if len(delta) != alg.n - 1:
        raise ArgumentError("delta must be given on the coroots or as a diagonal functional")
    return delta


def delta_shift(x, delta):
    """sigma(H) = H + delta(H) 1 extended to an algebra automorphism of U(h)."""
    alg = x.algebra.alg
    vals = _delta_values(alg, delta)
    r = alg.n - 1
    images = [linear_poly([int(i == k) for i in range(r)], vals[k]) for k in range(r)]
    return from_poly(x.algebra, substitute(to_poly(x), images, r))


def rho_functional(alg):
    return restricted_root_system(alg).rho()


def harish_chandra(z):
    """gamma(z) = sigma(Proj(z)) as a polynomial on the coroots."""
    alg = z.algebra.alg
    return to_poly(delta_shift(hc_project(z), rho_functional(alg)))


def weyl_act(p, perm, alg):
    """Action of a permutation of the diagonal entries on a polynomial in U(h)."""
    n = alg.n
    r = n - 1
    images = []
    for k in range(r):
        d = [Fraction(0)] * n
        d[perm[k]] += 1
        d[perm[k + 1]] -= 1
        images.append(linear_poly(alg.cartan_from_diag(d)))
    return substitute(p, images, r)


def is_weyl_invariant(p, alg):
    n = alg.n
    for k in range(n - 1):
        perm = list(range(n))
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
        if weyl_act(p, perm, alg) != p:
            return False
    return True


def weyl_orbit(diag):
    """Distinct permutations of the diagonal entries, identity first."""
    seen = []
    keys = set()
    for perm in itertools.permutations(range(len(diag))):
        d = tuple(diag[perm[i]] for i in range(len(diag)))
        if d not in keys:
            keys.add(d)
            seen.append(d)
    return seen


def hpoly_coefficients(alg, H):
    """(W_H, [J_0..J_{W_H-1}]) with p_H(x) = prod_w (x - (wH + rho(H))) = x^W + sum J_i x^i.

    H is a ChamberVector or a diagonal; the J_i are returned as polynomials
    on the coroots.
    """
    diag = tuple(Fraction(x) for x in getattr(H, "H", H))
    r = alg.n - 1
    rho_h = dot(rho_functional(alg), diag)
    orbit = weyl_orbit(diag)
    W = len(orbit)
    # coefficients of prod (x - L_w), L_w = wH + rho(H), as polys in x with U(h) coefficients
    coeffs = [{(0,) * r: Fraction(1)}]          # coeffs[i] multiplies x^i
    for d in orbit:
        L = linear_poly(alg.cartan_from_diag(d), rho_h)
        new = [dict() for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            new[i + 1] = poly_add(new[i + 1], c)
            new[i] = poly_add(new[i], poly_mul(c, L), -1)
        coeffs = new
    return W, coeffs[:W]


def evaluate_hpoly_at_sigma_H(alg, H, J):
    """p_H(sigma(H)) as a polynomial (zero exactly when the construction is right)."""
    diag = tuple(Fraction(x) for x in getattr(H, "H", H))
    r = alg.n - 1
    rho_h = dot(rho_functional(alg), diag)
    sH = linear_poly(alg.cartan_from_diag(diag), rho_h)
    W = len(J)
    total = poly_pow(sH, W, r)
    for i, Ji in enumerate(J):
        total = poly_add(total, poly_mul(Ji, poly_pow(sH, i, r)))
    return total
