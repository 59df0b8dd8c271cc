"""Smith normal form of integer matrices with unimodular transforms."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List

Matrix = List[List[int]]


@dataclass(frozen=True)
class SnfResult:
    """``U @ A @ V == D`` with ``D`` diagonal and ``d1 | d2 | ...``.

    ``V_inv`` is the inverse of ``V``; it is tracked alongside because the
    cohomology classifier needs coordinates in the column basis of ``V``.
    """

    D: Matrix
    U: Matrix
    V: Matrix
    V_inv: Matrix
    rows: int
    cols: int

    @property
    def diagonal(self) -> List[int]:
        return [self.D[i][i] for i in range(min(self.rows, self.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> List[int]:
        """Nonzero diagonal entries."""
        return [d for d in self.diagonal if d]


def _eye(k: int) -> Matrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(A: Matrix, cols: int | None = None) -> SnfResult:
    """Smith normal form by repeated pivoting on the smallest nonzero entry.

    ``cols`` gives the column count when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (cols or 0)
    if cols is not None and m and cols != n:
        raise ValueError("column count does not match the matrix")
    D = [list(map(int, row)) for row in A]
    U = _eye(m)
    V = _eye(n)
    Vi = _eye(n)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        # col_dst += q * col_src; inverse: row_src -= q * row_dst of V^-1
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
                    changed = changed or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
                    changed = changed or D[t][j] != 0
            if changed:
                # a remainder smaller than the pivot survives; move it to the pivot
                cand = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                cand += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return SnfResult(D, U, V, Vi, m, n)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(cols)] for i in range(len(A))]


def determinant(A: Matrix) -> int:
    """Exact integer determinant (Bareiss)."""
    k = len(A)
    if k == 0:
        return 1
    M = [list(map(int, r)) for r in A]
    sign, prev = 1, 1
    for c in range(k - 1):
        if M[c][c] == 0:
            p = next((r for r in range(c + 1, k) if M[r][c]), None)
            if p is None:
                return 0
            M[c], M[p] = M[p], M[c]
            sign = -sign
        for r in range(c + 1, k):
            for j in range(c + 1, k):
                M[r][j] = (M[r][j] * M[c][c] - M[r][c] * M[c][j]) // prev
        prev = M[c][c]
    return sign * M[k - 1][k - 1]
