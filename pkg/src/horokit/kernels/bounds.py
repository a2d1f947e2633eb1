"""Grid checks of kernel magnitudes against their decay envelopes."""

import csv
import io
from dataclasses import dataclass, field

import numpy as np

_TINY = 1e-9


@dataclass
class GridSpec:
    t_min: float = -20.0
    t_max: float = 0.0
    n: int = 50

    def axis(self):
        return np.linspace(self.t_min, self.t_max, self.n)


@dataclass
class BoundEntry:
    name: str
    constant: float
    flagged: bool
    argmax: tuple
    shell_profile: list = field(repr=False, default_factory=list)


@dataclass
class BoundReport:
    entries: list
    rows: list = field(repr=False, default_factory=list)

    @property
    def flagged(self):
        return [e.name for e in self.entries if e.flagged]

    def constant(self, name):
        for e in self.entries:
            if e.name == name:
                return e.constant
        raise KeyError(name)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kernel", "t", "s", "value", "envelope", "ratio"])
        for r in self.rows:
            w.writerow([r[0]] + [repr(float(x)) if x is not None else "" for x in r[1:]])
        return buf.getvalue()

    def to_json(self):
        return {"kernels": [{"name": e.name, "constant": e.constant, "flagged": e.flagged,
                             "argmax": list(e.argmax)} for e in self.entries]}


def _ratio(value, env, scale):
    # where the envelope vanishes, values lost to cancellation count as zero
    ratio = np.zeros_like(value)
    pos = env > 0
    ratio[pos] = value[pos] / env[pos]
    ratio[~pos & (value > _TINY * (1.0 + scale))] = np.inf
    return ratio


def _growth_flag(ratio, dist):
    """Unbounded growth: sup over distance shells increases through the outer quarter."""
    shells = np.unique(dist)
    prof = np.array([ratio[dist == d].max() for d in shells])
    if not np.all(np.isfinite(prof)):
        return True, prof.tolist()
    n = len(prof)
    tail = prof[n - max(2, n // 4):]
    mid = prof[n // 2]
    rising = np.all(np.diff(tail) >= -1e-12 * max(1.0, tail.max()))
    return bool(rising and tail[-1] >= 1.5 * max(mid, _TINY)), prof.tolist()


def check_kernel(name, fn, envelope, grid, two_var=True, rows=None):
    """sup |fn| / envelope over the grid, with a growth flag at the grid boundary."""
    ax = grid.axis()
    if two_var:
        T, S = np.meshgrid(ax, ax, indexing="ij")
        value = np.abs(fn(T, S))
        scale = fn.abs_envelope(T, S)
        env = envelope(T, S)
        dist = np.maximum(np.abs(T), np.abs(S))
        coords = (T, S)
    else:
        T = ax
        value = np.abs(fn(T))
        scale = fn.abs_envelope(T)
        env = envelope(T)
        dist = np.abs(T)
        coords = (T, None)
    ratio = _ratio(value, env, scale)
    flagged, prof = _growth_flag(ratio, dist)
    idx = np.unravel_index(int(np.argmax(ratio)), ratio.shape)
    argmax = tuple(float(c[idx]) for c in coords if c is not None)
    if rows is not None:
        for i in np.ndindex(ratio.shape):
            s = coords[1][i] if coords[1] is not None else None
            rows.append((name, coords[0][i], s, value[i], env[i], ratio[i]))
    return BoundEntry(name, float(ratio.max()), flagged, argmax, prof)


def burger1_envelopes(spec):
    W, m0, beta = spec.W, spec.m0, float(spec.beta)
    lam = spec.lam_inf

    def env_F(t, s):
        return np.abs(t) ** (W - 1 - m0) * np.abs(s) ** m0 * np.exp(beta * (t - s))

    def env_Fi(t):
        return (1 + lam ** W) * (1 + np.abs(t) ** W) * np.exp(beta * t)

    return env_F, env_Fi


def verify_kernel_bounds(spec, F, Fi, grid=None, with_rows=False):
    """Report for the first-order kernels F and F_0..F_W."""
    grid = grid or GridSpec()
    env_F, env_Fi = burger1_envelopes(spec)
    rows = [] if with_rows else None
    entries = [check_kernel("F", F.to_complex(), env_F, grid, True, rows)]
    for i, f in enumerate(Fi):
        entries.append(check_kernel(f"F_{i}", f.to_complex(), env_Fi, grid, False, rows))
    return BoundReport(entries, rows or [])


def verify_burger2_bounds(kernels, lam_inf, grid=None, with_rows=False, limit=None):
    """Report for C_k and D_{j,i}; kernels shared between multi-indices are checked once."""
    grid = grid or GridSpec()
    sc = kernels.schedule
    eta, alpha, W = float(sc.eta), float(sc.alpha), kernels.W

    def env_C(t, s):
        return (1 + np.abs(t) ** W) * np.exp(eta * t + alpha / 5 * s)

    def env_D(t):
        return (1 + lam_inf ** W) * (1 + np.abs(t) ** W) * np.exp(eta * t)

    rows = [] if with_rows else None
    entries, seen = [], {}
    items = [("C" + str(list(k)), v, True) for k, v in sorted(kernels.C.items())]
    items += [(f"D{list(j)},{i}", v, False) for (j, i), v in sorted(kernels.D.items())]
    for name, v, two in items[:limit]:
        if id(v) in seen:
            e = seen[id(v)]
            entries.append(BoundEntry(name, e.constant, e.flagged, e.argmax, e.shell_profile))
            continue
        e = check_kernel(name, v.to_complex(), env_C if two else env_D, grid, two, rows)
        seen[id(v)] = e
        entries.append(e)
    return BoundReport(entries, rows or [])
