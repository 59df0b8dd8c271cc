"""Exact linear algebra over the rationals.

Sparse vectors are dicts ``key -> Fraction`` with sortable keys; dense
matrices are lists of rows of Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List


class RowSpace:
    """Incrementally maintained reduced row-echelon basis of a subspace."""

    def __init__(self):
        self._rows: Dict[Hashable, Dict[Hashable, Fraction]] = {}

    def __len__(self):
        return len(self._rows)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def reduce(self, vec) -> Dict[Hashable, Fraction]:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        for k in [k for k in v if k in self._rows]:
            c = v.get(k)
            if not c:
                continue
            for kk, rc in self._rows[k].items():
                s = v.get(kk, 0) - c * rc
                if s:
                    v[kk] = s
                else:
                    v.pop(kk, None)
        return v

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def add(self, vec) -> bool:
        """Insert ``vec``; returns False when it was already in the span."""
        r = self.reduce(vec)
        if not r:
            return False
        pivot = max(r)
        inv = 1 / r[pivot]
        r = {k: c * inv for k, c in r.items()}
        for row in self._rows.values():
            c = row.get(pivot)
            if c:
                for kk, rc in r.items():
                    s = row.get(kk, 0) - c * rc
                    if s:
                        row[kk] = s
                    else:
                        row.pop(kk, None)
        self._rows[pivot] = r
        return True

    def basis(self) -> List[Dict[Hashable, Fraction]]:
        return [dict(self._rows[k]) for k in sorted(self._rows)]


def rank(vectors) -> int:
    space = RowSpace()
    for v in vectors:
        space.add(v)
    return space.dim


# small dense matrices


def identity(k: int):
    return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]


def matmul(a, b):
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def det(a) -> Fraction:
    m = [list(map(Fraction, row)) for row in a]
    k = len(m)
    out = Fraction(1)
    for c in range(k):
        p = next((r for r in range(c, k) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for r in range(c + 1, k):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return out


def inverse(a):
    """Gauss-Jordan inverse; raises ``ZeroDivisionError`` for singular input."""
    k = len(a)
    m = [list(map(Fraction, row)) + ident for row, ident in zip(a, identity(k))]
    for c in range(k):
        p = next((r for r in range(c, k) if m[r][c]), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(k):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[k:] for row in m]


def proportionality(a, b):
    """The scalar ``lam`` with ``a == lam * b``, or None. ``b`` must be nonzero."""
    lam = None
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if y:
                q = x / y
                if lam is None:
                    lam = q
                elif q != lam:
                    return None
            elif x:
                return None
    return lam
