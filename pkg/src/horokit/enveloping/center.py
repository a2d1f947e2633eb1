"""The center of U(g) up to a filtration degree, as an exact commutant nullspace."""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import ResourceError
from ..lie.algebra import build_split_sl
from ..lie.roots import restricted_root_system
from ..linalg import nullspace
from .harish_chandra import harish_chandra
from .pbw import canonical_algebra

# generous defaults; sl(2) up to 8 and sl(3) up to 6 are the intended range
MAX_CENTER_DEGREE = {2: 12, 3: 6, 4: 4, 5: 3, 6: 2}


@dataclass(frozen=True)
class CenterBasis:
    m: int
    elements: tuple          # PbwElements spanning Z(g) intersected with U^m
    degrees: tuple
    gamma_images: tuple      # polynomials on the coroots


def _weights(alg):
    rs = restricted_root_system(alg)
    w = [tuple([Fraction(0)] * alg.n)] * alg.dim_g
    for root in rs.roots:
        for a in root.space:
            w[a] = root.vector
    return w


def weight_zero_monomials(algebra, m):
    """Canonical-order monomials of degree <= m and ad(h)-weight 0, sorted by degree."""
    alg = algebra.alg
    wt = _weights(alg)
    n = alg.n
    out = []
    for d in range(m + 1):
        for combo in itertools.combinations_with_replacement(range(alg.dim_g), d):
            s = [Fraction(0)] * n
            for b in combo:
                for i in range(n):
                    s[i] += wt[b][i]
            if any(s):
                continue
            e = [0] * algebra.dim
            for b in combo:
                e[algebra.slot[b]] += 1
            out.append(tuple(e))
    return out


@lru_cache(maxsize=None)
def _center(n, m):
    alg = build_split_sl(n)
    algebra = canonical_algebra(n)
    limit = MAX_CENTER_DEGREE.get(n, 2)
    if m > limit:
        raise ResourceError(f"center degree {m} exceeds the bound {limit} for sl({n})")
    cols = weight_zero_monomials(algebra, m)
    rs = restricted_root_system(alg)
    gens = []
    for k in rs.simple:
        root = rs.roots[k]
        gens.extend(root.space)
        neg = next(r for r in rs.roots if r.vector == tuple(-x for x in root.vector))
        gens.extend(neg.space)
    rows = {}
    for ci, mono in enumerate(cols):
        z = algebra.element({mono: Fraction(1)})
        for g in gens:
            x = algebra.gen(g)
            comm = x * z - z * x
            for om, v in comm.terms.items():
                rows.setdefault((g, om), {})[ci] = v
    null = nullspace(list(rows.values()), len(cols))
    elements, degrees = [], []
    for vec in null:
        f = max(vec)            # the free column fixes the degree
        el = algebra.element({cols[c]: v for c, v in vec.items()})
        elements.append(el)
        degrees.append(sum(cols[f]))
    order = sorted(range(len(elements)), key=lambda i: (degrees[i], i))
    elements = tuple(elements[i] for i in order)
    degrees = tuple(degrees[i] for i in order)
    images = tuple(harish_chandra(z) for z in elements)
    return CenterBasis(m, elements, degrees, images)


def center_basis(alg, m):
    """Basis of Z(g) intersected with U^m(g) for split sl(n)."""
    return _center(alg.n, int(m))
