"""Integer unipotent matrices in boxes scaled by the positive roots of H."""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ArgumentError, ResourceError

MAX_VOLUME = 1e9
_REL = 1e-12


def _floor(x):
    # guards against e^{log 10} = 9.999... style rounding
    return math.floor(x * (1 + _REL))


@dataclass
class CountResult:
    n: int
    H: tuple
    radii: dict
    count_entry: int
    count_exp: int
    volume: float

    @property
    def ratio_entry(self):
        return self.count_entry / self.volume

    @property
    def ratio_exp(self):
        return self.count_exp / self.volume

    @property
    def ratio(self):
        return self.ratio_entry

    def to_json(self):
        return {"n": self.n, "H": list(self.H), "count_entry": self.count_entry,
                "count_exp": self.count_exp, "e2rho": self.volume,
                "ratio_entry": self.ratio_entry, "ratio_exp": self.ratio_exp}


def _validate(n, H):
    if n not in (2, 3):
        raise ArgumentError("counting is implemented for n = 2 and n = 3")
    H = tuple(float(h) for h in H)
    if len(H) != n:
        raise ArgumentError(f"H needs {n} diagonal entries")
    if abs(sum(H)) > 1e-9 * (1 + max(abs(h) for h in H)):
        raise ArgumentError("H must be traceless")
    if any(H[i] < H[i + 1] for i in range(n - 1)):
        raise ArgumentError("H must have non-increasing entries")
    return H


def _count_exp3(r12, r23, r13):
    """#{(a, b, c) : |a| <= r12, |b| <= r23, |c - ab/2| <= r13} over integers."""
    A, B = _floor(r12), _floor(r23)
    a = np.arange(-A, A + 1, dtype=np.int64)[:, None]
    b = np.arange(-B, B + 1, dtype=np.int64)[None, :]
    # c - ab/2 in [-r, r] with ab/2 a half-integer or integer: work with 2c
    twice = a * b
    lo = np.ceil((twice - 2 * r13 * (1 + _REL)) / 2)
    hi = np.floor((twice + 2 * r13 * (1 + _REL)) / 2)
    return int(np.sum(np.maximum(hi - lo + 1, 0)))


def unipotent_lattice_count(n, H):
    """Counts in entry and exp coordinates, with e^{2 rho(H)} for comparison."""
    H = _validate(n, H)
    radii = {(i, j): math.exp(H[i] - H[j]) for i in range(n) for j in range(i + 1, n)}
    volume = math.prod(radii.values())
    if volume > MAX_VOLUME:
        raise ResourceError(f"scaled box volume {volume:.3g} exceeds {MAX_VOLUME:.0e}")
    entry = math.prod(2 * _floor(r) + 1 for r in radii.values())
    if n == 2:
        exp_count = entry
    else:
        exp_count = _count_exp3(radii[(0, 1)], radii[(1, 2)], radii[(0, 2)])
    return CountResult(n, H, radii, entry, exp_count, volume)
