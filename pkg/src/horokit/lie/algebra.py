"""Split sl(n, R) with an exact basis, structure constants, Cartan involution and Killing form.

Basis order: E_ij (i<j) by root height, the simple coroots H_k = E_kk - E_{k+1,k+1},
then F_ij = E_ji in the same order as the E's.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..errors import ConfigurationError
from ..rational import frac_str, parse_frac

MAX_N = 6


def positive_pairs(n):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return sorted(pairs, key=lambda p: (p[1] - p[0], p[0]))


@dataclass(frozen=True)
class LieAlgebraData:
    n: int
    dim_g: int
    basis: tuple                 # labels
    pairs: tuple                 # (i, j) for the positive root vectors
    structure_constants: dict    # (a, b) -> {c: Fraction}, only nonzero brackets
    theta: tuple                 # dim x dim Fraction matrix, column b = theta(X_b)
    killing: tuple               # dim x dim Fraction matrix
    _index: dict = field(default=None, repr=False, compare=False)

    @property
    def n_pos(self):
        return len(self.pairs)

    @property
    def rank(self):
        return self.n - 1

    def pos_indices(self):
        return range(0, self.n_pos)

    def cartan_indices(self):
        return range(self.n_pos, self.n_pos + self.n - 1)

    def neg_indices(self):
        return range(self.n_pos + self.n - 1, self.dim_g)

    def index(self, label):
        return self._index[label]

    def matrix(self, a):
        """n x n Fraction matrix of basis element a."""
        n, npos = self.n, self.n_pos
        m = [[Fraction(0)] * n for _ in range(n)]
        if a < npos:
            i, j = self.pairs[a]
            m[i][j] = Fraction(1)
        elif a < npos + n - 1:
            k = a - npos
            m[k][k] = Fraction(1)
            m[k + 1][k + 1] = Fraction(-1)
        else:
            i, j = self.pairs[a - npos - n + 1]
            m[j][i] = Fraction(1)
        return m

    def coords(self, m):
        """Basis coordinates of a traceless n x n matrix."""
        n, npos = self.n, self.n_pos
        v = [Fraction(0)] * self.dim_g
        for a, (i, j) in enumerate(self.pairs):
            v[a] = Fraction(m[i][j])
            v[npos + n - 1 + a] = Fraction(m[j][i])
        acc = Fraction(0)
        for k in range(n - 1):
            acc += m[k][k]
            v[npos + k] = acc
        if acc + m[n - 1][n - 1] != 0:
            raise ValueError("matrix is not traceless")
        return v

    def bracket(self, x, y):
        """[x, y] for coordinate vectors (sequences or sparse dicts)."""
        xs = x.items() if isinstance(x, dict) else enumerate(x)
        ys = list(y.items() if isinstance(y, dict) else enumerate(y))
        out = {}
        for a, xa in xs:
            if not xa:
                continue
            for b, yb in ys:
                if not yb:
                    continue
                for c, v in self.structure_constants.get((a, b), {}).items():
                    out[c] = out.get(c, 0) + xa * yb * v
        return {c: v for c, v in out.items() if v}

    def cartan_from_diag(self, diag):
        """Coordinates (in H_1..H_{n-1}) of a traceless diagonal."""
        out, acc = [], Fraction(0)
        for k in range(self.n - 1):
            acc += Fraction(diag[k])
            out.append(acc)
        return out

    def diag_from_cartan(self, h):
        d = []
        prev = Fraction(0)
        for k in range(self.n - 1):
            d.append(Fraction(h[k]) - prev)
            prev = Fraction(h[k])
        d.append(-prev)
        return d


def _matmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n) if a[i][k] and b[k][j]), Fraction(0))
             for j in range(n)] for i in range(n)]


def _labels(n, pairs):
    if n == 2:
        return ("e", "h", "f")
    labs = [f"E{i + 1}{j + 1}" for i, j in pairs]
    labs += [f"H{k + 1}" for k in range(n - 1)]
    labs += [f"F{i + 1}{j + 1}" for i, j in pairs]
    return tuple(labs)


@lru_cache(maxsize=None)
def build_split_sl(n):
    """Exact data for sl(n, R), 2 <= n <= 6."""
    if not isinstance(n, int) or n < 2 or n > MAX_N:
        raise ConfigurationError(f"sl(n) requires 2 <= n <= {MAX_N}, got {n!r}")
    pairs = tuple(positive_pairs(n))
    dim = n * n - 1
    proto = LieAlgebraData(n, dim, (), pairs, {}, (), ())
    mats = [proto.matrix(a) for a in range(dim)]
    sc = {}
    for a in range(dim):
        for b in range(dim):
            ab = _matmul(mats[a], mats[b])
            ba = _matmul(mats[b], mats[a])
            comm = [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]
            v = proto.coords(comm)
            nz = {c: x for c, x in enumerate(v) if x}
            if nz:
                sc[(a, b)] = nz
    theta_cols = []
    for a in range(dim):
        m = mats[a]
        theta_cols.append(proto.coords([[-m[j][i] for j in range(n)] for i in range(n)]))
    theta = tuple(tuple(theta_cols[b][a] for b in range(dim)) for a in range(dim))
    kil = []
    for a in range(dim):
        row = []
        for b in range(dim):
            p = _matmul(mats[a], mats[b])
            row.append(2 * n * sum((p[i][i] for i in range(n)), Fraction(0)))
        kil.append(tuple(row))
    labels = _labels(n, pairs)
    return LieAlgebraData(n, dim, labels, pairs, sc, theta, tuple(kil),
                          {lab: i for i, lab in enumerate(labels)})


def jacobi_residual(alg):
    """Max number of nonzero Jacobi sums over basis triples (0 means exact)."""
    bad = 0
    dim = alg.dim_g
    for a in range(dim):
        for b in range(dim):
            for c in range(dim):
                x = alg.bracket({a: 1}, alg.bracket({b: 1}, {c: 1}))
                y = alg.bracket({b: 1}, alg.bracket({c: 1}, {a: 1}))
                z = alg.bracket({c: 1}, alg.bracket({a: 1}, {b: 1}))
                s = {}
                for d in (x, y, z):
                    for k, v in d.items():
                        s[k] = s.get(k, 0) + v
                if any(s.values()):
                    bad += 1
    return bad


def algebra_to_json(alg):
    return {
        "kind": "split-sl",
        "n": alg.n,
        "dim_g": alg.dim_g,
        "basis": list(alg.basis),
        "structure_constants": [
            [a, b, c, frac_str(v)]
            for (a, b), row in sorted(alg.structure_constants.items())
            for c, v in sorted(row.items())
        ],
        "theta": [[frac_str(x) for x in row] for row in alg.theta],
        "killing": [[frac_str(x) for x in row] for row in alg.killing],
    }


def algebra_from_json(obj):
    """Rebuild from JSON and check it matches the canonical construction."""
    alg = build_split_sl(int(obj["n"]))
    sc = {}
    for a, b, c, v in obj["structure_constants"]:
        sc.setdefault((a, b), {})[c] = parse_frac(v)
    theta = tuple(tuple(parse_frac(x) for x in row) for row in obj["theta"])
    kil = tuple(tuple(parse_frac(x) for x in row) for row in obj["killing"])
    if (tuple(obj["basis"]) != alg.basis or sc != alg.structure_constants
            or theta != alg.theta or kil != alg.killing):
        raise ValueError("serialized algebra does not match sl(n) data")
    return alg
