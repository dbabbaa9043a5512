"""Smith normal form over the integers, with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple  # d_1 | d_2 | ... , length min(rows, cols), non-negative
    U: tuple  # rows x rows, det +-1
    V: tuple  # cols x cols, det +-1
    rows: int
    cols: int

    @property
    def invariants(self) -> tuple:
        return self.diagonal

    def D(self) -> tuple:
        return tuple(
            tuple(self.diagonal[i] if i == j and i < len(self.diagonal) else 0 for j in range(self.cols))
            for i in range(self.rows)
        )


def identity_matrix(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence, B: Sequence) -> list:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(cols)] for i in range(len(A))]


def smith_normal_form(m: Sequence[Sequence[int]], cols: int = None) -> SmithForm:
    """Diagonalize ``m`` so that ``U @ m @ V == D`` with ``d_i | d_{i+1}``.

    Pivots on the entry of least absolute value in the remaining block.
    ``cols`` is only needed for a matrix with zero rows.
    """
    A = [[int(x) for x in row] for row in m]
    nr = len(A)
    nc = len(A[0]) if A else (cols or 0)
    U, V = identity_matrix(nr), identity_matrix(nc)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        for M in (A, U):
            M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, k):
        for M in (A, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(nr, nc)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if A[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            pivot = A[t][t]
            for i in range(t + 1, nr):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // pivot))
            for j in range(t + 1, nc):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // pivot))
            if any(A[i][t] for i in range(t + 1, nr)) or any(A[t][j] for j in range(t + 1, nc)):
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % pivot),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            for M in (A, U):
                M[t] = [-x for x in M[t]]

    diagonal = tuple(A[i][i] for i in range(min(nr, nc)))
    return SmithForm(diagonal, tuple(map(tuple, U)), tuple(map(tuple, V)), nr, nc)


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]
