"""PBW arithmetic in U(sl(n)) with exact Fraction coefficients.

A monomial is an exponent tuple over the generators in the algebra's order
(slot p holds basis element order[p]).  The canonical order is the basis
order itself: n+ generators, then the Cartan, then n-.  Products are put in
normal form by right multiplication with single generators,

    m x_k = m' x_l x_k = (m' x_k) x_l + m' [x_l, x_k]     (l = last slot of m, k < l),

memoized per (monomial, generator).
"""

from fractions import Fraction
from functools import lru_cache

from ..errors import ResourceError
from ..lie.algebra import build_split_sl

DEFAULT_MAX_DEGREE = 24


class PbwAlgebra:
    def __init__(self, alg, order=None, max_degree=DEFAULT_MAX_DEGREE):
        self.alg = alg
        self.dim = alg.dim_g
        self.order = tuple(range(self.dim)) if order is None else tuple(order)
        if sorted(self.order) != list(range(self.dim)):
            raise ValueError("order must be a permutation of the basis")
        self.slot = {b: p for p, b in enumerate(self.order)}
        self.max_degree = max_degree
        # brackets in slot coordinates
        self._br = {}
        for (a, b), row in alg.structure_constants.items():
            self._br[(self.slot[a], self.slot[b])] = tuple((self.slot[c], v) for c, v in row.items())
        self._rmul = {}
        self._mono = {}
        self.zero_mono = (0,) * self.dim

    # elements -------------------------------------------------------------
    def element(self, terms):
        return PbwElement(self, terms)

    def one(self):
        return PbwElement(self, {self.zero_mono: Fraction(1)})

    def zero(self):
        return PbwElement(self, {})

    def scalar(self, c):
        return PbwElement(self, {self.zero_mono: Fraction(c)})

    def gen(self, b, coeff=1):
        """Basis element b (basis index or label) as an element."""
        if isinstance(b, str):
            b = self.alg.index(b)
        e = [0] * self.dim
        e[self.slot[b]] = 1
        return PbwElement(self, {tuple(e): Fraction(coeff)})

    def lie_element(self, coords):
        """Element of g (basis index -> coefficient) inside U(g)."""
        out = {}
        items = coords.items() if isinstance(coords, dict) else enumerate(coords)
        for b, v in items:
            if v:
                e = [0] * self.dim
                e[self.slot[b]] = 1
                out[tuple(e)] = Fraction(v)
        return PbwElement(self, out)

    def word(self, mono):
        w = []
        for p, k in enumerate(mono):
            w.extend([p] * k)
        return w

    # straightening ----------------------------------------------------------
    def rmul_gen(self, mono, k):
        key = (mono, k)
        hit = self._rmul.get(key)
        if hit is not None:
            return hit
        last = None
        for p in range(self.dim - 1, -1, -1):
            if mono[p]:
                last = p
                break
        if last is None or k >= last:
            e = list(mono)
            e[k] += 1
            if sum(e) > self.max_degree:
                raise ResourceError(f"PBW degree exceeds configured bound {self.max_degree}")
            res = {tuple(e): Fraction(1)}
        else:
            e = list(mono)
            e[last] -= 1
            m1 = tuple(e)
            res = {}
            for mm, c in self.rmul_gen(m1, k).items():
                for m2, c2 in self.rmul_gen(mm, last).items():
                    v = res.get(m2, 0) + c * c2
                    if v:
                        res[m2] = v
                    else:
                        res.pop(m2, None)
            for r, cr in self._br.get((last, k), ()):
                for m2, c2 in self.rmul_gen(m1, r).items():
                    v = res.get(m2, 0) + cr * c2
                    if v:
                        res[m2] = v
                    else:
                        res.pop(m2, None)
        self._rmul[key] = res
        return res

    def mul_mono(self, a, b):
        key = (a, b)
        hit = self._mono.get(key)
        if hit is not None:
            return hit
        last = None
        for p in range(self.dim - 1, -1, -1):
            if b[p]:
                last = p
                break
        if last is None:
            res = {a: Fraction(1)}
        else:
            e = list(b)
            e[last] -= 1
            res = {}
            for mm, c in self.mul_mono(a, tuple(e)).items():
                for m2, c2 in self.rmul_gen(mm, last).items():
                    v = res.get(m2, 0) + c * c2
                    if v:
                        res[m2] = v
                    else:
                        res.pop(m2, None)
        self._mono[key] = res
        return res

    def multiply(self, x, y):
        out = {}
        for ma, ca in x.terms.items():
            for mb, cb in y.terms.items():
                for m, c in self.mul_mono(ma, mb).items():
                    v = out.get(m, 0) + ca * cb * c
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return PbwElement(self, out)

    def convert(self, x):
        """Re-express an element of another PBW algebra (same Lie algebra) in this order."""
        if x.algebra is self:
            return x
        if x.algebra.alg is not self.alg:
            raise ValueError("elements belong to different Lie algebras")
        out = self.zero()
        src = x.algebra
        for m, c in x.terms.items():
            prod = self.one()
            for p in src.word(m):
                prod = prod * self.gen(src.order[p])
            out = out + prod * c
        return out


class PbwElement:
    """Immutable sparse element of U(g): exponent tuple -> Fraction."""

    __slots__ = ("algebra", "terms", "_deg")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {tuple(m): Fraction(c) for m, c in terms.items() if c}
        self._deg = None

    @property
    def degree(self):
        if self._deg is None:
            self._deg = max((sum(m) for m in self.terms), default=-1)
        return self._deg

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if not isinstance(other, PbwElement) or other.algebra is not self.algebra:
            raise ValueError("operands belong to different PBW algebras")

    def __add__(self, other):
        if not isinstance(other, PbwElement):
            other = self.algebra.scalar(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return PbwElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return PbwElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PbwElement):
            self._check(other)
            return self.algebra.multiply(self, other)
        c = Fraction(other)
        return PbwElement(self.algebra, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other):
        c = Fraction(other)
        return PbwElement(self.algebra, {m: v * c for m, v in self.terms.items()})

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __pow__(self, k):
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        if not isinstance(other, PbwElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def commutator(self, other):
        return self * other - other * self

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), Fraction(0))

    def format(self):
        alg = self.algebra
        labels = [alg.alg.basis[b] for b in alg.order]
        parts = []
        for m in sorted(self.terms, key=lambda m: (-sum(m), m)):
            c = self.terms[m]
            word = "".join(labels[p] + (f"^{k}" if k > 1 else "") for p, k in enumerate(m) if k)
            parts.append(f"{c}" + (f"*{word}" if word else ""))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"PbwElement({self.format()})"


@lru_cache(maxsize=None)
def canonical_algebra(n):
    """Shared canonical PBW algebra for sl(n) (memo tables are reused)."""
    return PbwAlgebra(build_split_sl(n))
