"""Sparse exact linear algebra over Fraction: incremental RREF, nullspace, solve."""

import os
from fractions import Fraction

from .errors import ResourceError

# rough per-entry footprint of a dict slot holding a Fraction
_ENTRY_BYTES = 200


def max_entries():
    """Entry budget derived from HOROKIT_MAX_MEM (megabytes), None if unset."""
    raw = os.environ.get("HOROKIT_MAX_MEM")
    if not raw:
        return None
    return int(float(raw) * 1024 * 1024 / _ENTRY_BYTES)


class Echelon:
    """Reduced row echelon form built one sparse row at a time.

    Rows are dicts col -> Fraction.  Pivot rows are kept fully reduced against
    each other, so the final state is the RREF with leftmost pivots.
    """

    def __init__(self, limit=None):
        self.pivots = {}          # pivot column -> row (pivot entry 1)
        self.limit = max_entries() if limit is None else limit
        self._size = 0

    def reduce(self, row):
        row = {c: v for c, v in row.items() if v}
        for c in [c for c in row if c in self.pivots]:
            v = row.get(c)
            if not v:
                continue
            for cc, pv in self.pivots[c].items():
                nv = row.get(cc, 0) - v * pv
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
        return row

    def add(self, row):
        """Insert a row; returns True if it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p]
        row = {c: v * inv for c, v in row.items()}
        for q, prow in self.pivots.items():
            v = prow.get(p)
            if v:
                for cc, pv in row.items():
                    nv = prow.get(cc, 0) - v * pv
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        self.pivots[p] = row
        self._size += len(row)
        if self.limit is not None and self._size > self.limit:
            raise ResourceError(f"exact solver exceeded {self.limit} stored entries (HOROKIT_MAX_MEM)")
        return True

    @property
    def rank(self):
        return len(self.pivots)


def nullspace(rows, ncols, limit=None):
    """Basis of {x : A x = 0} for sparse rows over ncols columns.

    One vector per free column f (x_f = 1); with leftmost pivots the vectors
    whose free column is < k span the nullspace of the first k columns.
    """
    ech = Echelon(limit)
    for r in rows:
        ech.add(r)
    basis = []
    for f in range(ncols):
        if f in ech.pivots:
            continue
        vec = {f: Fraction(1)}
        for p, prow in ech.pivots.items():
            v = prow.get(f)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def solve(columns, rhs, limit=None):
    """Solve sum_k x_k columns[k] = rhs exactly.

    columns and rhs are sparse dicts keyed by arbitrary hashable row labels.
    Returns the list x or None when inconsistent.  If the system is
    underdetermined, free unknowns are set to zero.
    """
    labels = {}
    for col in list(columns) + [rhs]:
        for key in col:
            labels.setdefault(key, len(labels))
    n = len(columns)
    # transpose into equations: one row per label, rhs at column n
    eqs = {}
    for k, col in enumerate(columns):
        for key, v in col.items():
            if v:
                eqs.setdefault(labels[key], {})[k] = Fraction(v)
    for key, v in rhs.items():
        if v:
            eqs.setdefault(labels[key], {})[n] = Fraction(v)
    ech = Echelon(limit)
    for r in eqs.values():
        ech.add(r)
    if n in ech.pivots:
        return None
    x = [Fraction(0)] * n
    for p, prow in ech.pivots.items():
        x[p] = prow.get(n, Fraction(0))
    return x
