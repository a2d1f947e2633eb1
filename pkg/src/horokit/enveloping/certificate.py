"""Certificates of H^W + Z_{W-1} H^{W-1} + ... + Z_0 in n U(g), with U_j factors."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..errors import ArgumentError, ResourceError
from ..lie.algebra import build_split_sl
from ..lie.chamber import ChamberVector, chamber_vector
from ..lie.roots import restricted_root_system, parabolic_from_subset
from ..linalg import solve
from ..rational import frac_str, parse_frac
from .center import center_basis
from .harish_chandra import (
    harish_chandra, hc_project, hpoly_coefficients, evaluate_hpoly_at_sigma_H, is_weyl_invariant,
)
from .pbw import PbwAlgebra, canonical_algebra


@dataclass
class LieIdentityCertificate:
    n: int
    H: tuple                  # diagonal entries
    W_H: int
    Z: tuple                  # Z_0 .. Z_W (Z_W = 1), canonical PBW order
    P: object                 # sum_i Z_i H^i
    U: dict                   # label of X_j -> U_j in the adapted order
    adapted_order: tuple      # basis indices, n_F generators first
    checks: dict = field(default_factory=dict)

    @property
    def verified(self):
        return all(self.checks.values())


def _as_diag(alg, H):
    if isinstance(H, ChamberVector):
        return tuple(H.H)
    return tuple(chamber_vector(restricted_root_system(alg), H).H)


@lru_cache(maxsize=None)
def adapted_algebra(n, F):
    """PBW order with the n_F generators first, remaining basis in canonical order."""
    alg = build_split_sl(n)
    par = parabolic_from_subset(restricted_root_system(alg), F)
    first = list(par.n_basis)
    rest = [b for b in range(alg.dim_g) if b not in first]
    return PbwAlgebra(alg, first + rest), par


def cartan_element(algebra, diag):
    alg = algebra.alg
    coords = alg.cartan_from_diag(diag)
    return algebra.lie_element({b: c for b, c in zip(alg.cartan_indices(), coords)})


def has_positive_degree(x, basis_indices):
    slots = [x.algebra.slot[b] for b in basis_indices]
    return all(any(m[s] for s in slots) for m in x.terms)


def is_central(z):
    algebra = z.algebra
    rs = restricted_root_system(algebra.alg)
    for k in rs.simple:
        root = rs.roots[k]
        neg = next(r for r in rs.roots if r.vector == tuple(-x for x in root.vector))
        for b in root.space + neg.space:
            g = algebra.gen(b)
            if not (g * z - z * g).is_zero():
                return False
    return True


def extract_U(P, n, F):
    """Factor P = sum_j X_j U_j over the n_F generators (adapted PBW order)."""
    algebra, par = adapted_algebra(n, frozenset(F))
    P2 = algebra.convert(P)
    k = len(par.n_basis)
    parts = {}
    for m, c in P2.terms.items():
        lead = next((p for p in range(algebra.dim) if m[p]), None)
        if lead is None or lead >= k:
            raise ArgumentError("P has a monomial outside n_F U(g)")
        e = list(m)
        e[lead] -= 1
        parts.setdefault(lead, {})[tuple(e)] = c
    alg = algebra.alg
    U = {}
    for b in alg.pos_indices():
        p = algebra.slot[b]
        U[alg.basis[b]] = algebra.element(parts.get(p, {}))
    return U, algebra, par, P2


def _certificate_checks(alg, diag, W, J, Z, P, U, algebra2, par, P2):
    A = canonical_algebra(alg.n)
    Hel = cartan_element(A, diag)
    rs = restricted_root_system(alg)
    checks = {}
    checks["p_H(sigma(H)) = 0"] = not evaluate_hpoly_at_sigma_H(alg, diag, J)
    checks["J_i Weyl-invariant"] = all(is_weyl_invariant(j, alg) for j in J)
    checks["Z_W = 1"] = Z[W] == A.one() and len(Z) == W + 1
    checks["Z_i central"] = all(is_central(z) for z in Z)
    checks["gamma(Z_i) = J_i"] = all(harish_chandra(Z[i]) == J[i] for i in range(W))
    checks["Z_i in U^(W-i)"] = all(Z[i].degree <= W - i for i in range(W + 1))
    total = A.zero()
    power = A.one()
    for i in range(W + 1):
        total = total + Z[i] * power
        power = power * Hel
    checks["P = sum Z_i H^i"] = total == P
    checks["Proj_h(P) = 0"] = hc_project(P).is_zero()
    checks["P in n+ U"] = has_positive_degree(P, list(alg.pos_indices()))
    checks["P in n_F U"] = has_positive_degree(P, par.n_basis)
    recon = algebra2.zero()
    for label, u in U.items():
        recon = recon + algebra2.gen(label) * u
    checks["P = sum X_j U_j"] = recon == P2
    zero_ok = True
    for label, u in U.items():
        b = alg.index(label)
        root = rs.roots[rs.root_of_basis(b)]
        if root(diag) == 0 and not u.is_zero():
            zero_ok = False
    checks["U_j = 0 where beta_j(H) = 0"] = zero_ok
    return checks


def lie_identity_certificate(alg, H):
    """Exact Z_i, P and U_j for a rational H in the closed positive chamber."""
    diag = _as_diag(alg, H)
    rs = restricted_root_system(alg)
    vals = rs.simple_values(diag)
    if any(v < 0 for v in vals):
        raise ArgumentError("H must lie in the closed positive chamber")
    A = canonical_algebra(alg.n)
    W, J = hpoly_coefficients(alg, diag)
    cb = center_basis(alg, W)
    Z = []
    for i in range(W):
        # minimal filtration degree: only central elements of degree <= W - i
        use = [k for k, d in enumerate(cb.degrees) if d <= W - i]
        x = solve([cb.gamma_images[k] for k in use], J[i])
        if x is None:
            raise ResourceError(f"no gamma-preimage of J_{i} in center degree <= {W - i}")
        z = A.zero()
        for k, xv in zip(use, x):
            if xv:
                z = z + cb.elements[k] * xv
        Z.append(z)
    Z.append(A.one())
    Hel = cartan_element(A, diag)
    P = A.zero()
    power = A.one()
    for i in range(W + 1):
        P = P + Z[i] * power
        power = power * Hel
    F = frozenset(j for j, v in enumerate(vals) if v == 0)
    U, algebra2, par, P2 = extract_U(P, alg.n, F)
    checks = _certificate_checks(alg, diag, W, J, Z, P, U, algebra2, par, P2)
    return LieIdentityCertificate(alg.n, diag, W, tuple(Z), P, U, algebra2.order, checks)


# continuity across a component -----------------------------------------------

@dataclass(frozen=True)
class ContinuityReport:
    n_samples: int
    W_values: tuple
    max_lipschitz: float
    divided_difference_max: Fraction | None   # exact, collinear samples only
    coherent: bool


def _coefficient_vector(cert):
    vec = {}
    for i, z in enumerate(cert.Z):
        for m, c in z.terms.items():
            vec[("Z", i, m)] = c
    for label, u in cert.U.items():
        for m, c in u.terms.items():
            vec[("U", label, m)] = c
    return vec


def _collinear_params(diags):
    base = diags[0]
    direction = None
    params = [Fraction(0)]
    for d in diags[1:]:
        delta = [a - b for a, b in zip(d, base)]
        if direction is None:
            direction = delta
            params.append(Fraction(1))
            continue
        k = next((i for i, x in enumerate(direction) if x), None)
        if k is None:
            return None
        t = delta[k] / direction[k]
        if [t * x for x in direction] != delta:
            return None
        params.append(t)
    if len(set(params)) != len(params):
        return None
    return params


def _divided_difference(ts, ys):
    ys = list(ys)
    k = len(ts)
    for level in range(1, k):
        ys = [(ys[i + 1] - ys[i]) / (ts[i + level] - ts[i]) for i in range(k - level)]
    return ys[0]


def continuity_spotcheck(alg, F, samples):
    """Check that Z_i(H) and U_j(H) vary polynomially across one component a^+_{eps,F}."""
    rs = restricted_root_system(alg)
    F = frozenset(F)
    diags = [_as_diag(alg, H) for H in samples]
    for d in diags:
        vals = rs.simple_values(d)
        if any(v < 0 for v in vals) or frozenset(j for j, v in enumerate(vals) if v == 0) != F:
            raise ArgumentError("samples straddle components of the eps-regular set")
    certs = [lie_identity_certificate(alg, d) for d in diags]
    Ws = tuple(c.W_H for c in certs)
    vecs = [_coefficient_vector(c) for c in certs]
    keys = set().union(*vecs) if vecs else set()
    n = alg.n
    lip = 0.0
    for (d1, v1), (d2, v2) in zip(zip(diags, vecs), zip(diags[1:], vecs[1:])):
        dist = float(2 * n * sum((a - b) ** 2 for a, b in zip(d1, d2))) ** 0.5
        diff = max((abs(float(v1.get(k, 0) - v2.get(k, 0))) for k in keys), default=0.0)
        if dist > 0:
            lip = max(lip, diff / dist)
    dd = None
    W = max(Ws, default=0)
    if len(diags) >= W + 2:
        ts = _collinear_params(diags)
        if ts is not None:
            dd = Fraction(0)
            for start in range(len(ts) - W - 1):
                sl = slice(start, start + W + 2)
                for k in keys:
                    val = abs(_divided_difference(ts[sl], [v.get(k, Fraction(0)) for v in vecs[sl]]))
                    dd = max(dd, val)
    coherent = len(set(Ws)) <= 1 and lip < float("inf") and (dd is None or dd == 0)
    return ContinuityReport(len(diags), Ws, lip, dd, coherent)


# JSON --------------------------------------------------------------------------

def _terms_json(x):
    return [[list(m), frac_str(c)] for m, c in sorted(x.terms.items())]


def _terms_from_json(algebra, rows):
    out = {}
    for m, c in rows:
        m = tuple(int(k) for k in m)
        if len(m) != algebra.dim or any(k < 0 for k in m):
            raise ValueError("bad exponent vector")
        out[m] = out.get(m, 0) + parse_frac(c)
    return algebra.element(out)


def certificate_to_json(cert):
    alg = build_split_sl(cert.n)
    return {
        "format": "horokit-lie-certificate",
        "version": 1,
        "algebra": {"kind": "split-sl", "n": cert.n},
        "H": [frac_str(x) for x in cert.H],
        "W_H": cert.W_H,
        "pbw_order": list(alg.basis),
        "Z": [_terms_json(z) for z in cert.Z],
        "P": _terms_json(cert.P),
        "U": {
            "pbw_order": [alg.basis[b] for b in cert.adapted_order],
            "components": {label: _terms_json(u) for label, u in cert.U.items()},
        },
        "checks": dict(cert.checks),
        "verified": cert.verified,
    }


def verify_certificate_json(obj):
    """Re-check an exported certificate from scratch; returns (ok, failed check names)."""
    try:
        n = int(obj["algebra"]["n"])
        alg = build_split_sl(n)
        A = canonical_algebra(n)
        if obj["pbw_order"] != list(alg.basis):
            return False, ["pbw order"]
        diag = tuple(parse_frac(x) for x in obj["H"])
        rs = restricted_root_system(alg)
        diag = tuple(chamber_vector(rs, diag).H)
        vals = rs.simple_values(diag)
        if any(v < 0 for v in vals):
            return False, ["H in closed chamber"]
        W = int(obj["W_H"])
        W_true, J = hpoly_coefficients(alg, diag)
        if W != W_true or len(obj["Z"]) != W + 1:
            return False, ["W_H"]
        Z = [_terms_from_json(A, z) for z in obj["Z"]]
        P = _terms_from_json(A, obj["P"])
        F = frozenset(j for j, v in enumerate(vals) if v == 0)
        algebra2, par = adapted_algebra(n, F)
        if obj["U"]["pbw_order"] != [alg.basis[b] for b in algebra2.order]:
            return False, ["adapted pbw order"]
        comps = obj["U"]["components"]
        if set(comps) != {alg.basis[b] for b in alg.pos_indices()}:
            return False, ["U labels"]
        U = {label: _terms_from_json(algebra2, rows) for label, rows in comps.items()}
        P2 = algebra2.convert(P)
    except (KeyError, TypeError, ValueError, ZeroDivisionError, ArgumentError) as exc:
        return False, [f"malformed certificate: {exc}"]
    checks = _certificate_checks(alg, diag, W, J, Z, P, U, algebra2, par, P2)
    failed = [k for k, v in checks.items() if not v]
    return not failed, failed
