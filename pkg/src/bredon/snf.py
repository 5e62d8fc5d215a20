"""Smith normal form over the integers with unimodular transforms.

``smith_normal_form(A)`` returns U, V, D with U·A·V = D, where D is
diagonal with d_1 | d_2 | … | d_s > 0.  The pivot at every step is an entry
of minimal absolute value (ties: lowest row, then lowest column), so the
output is a deterministic function of A.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class SmithNormalForm:
    rows: int
    cols: int
    U: tuple[tuple[int, ...], ...]  # rows × rows
    V: tuple[tuple[int, ...], ...]  # cols × cols
    diagonal: tuple[int, ...]  # nonzero elementary divisors

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)

    def D(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, d in enumerate(self.diagonal):
            out[i][i] = d
        return out


def _shape(A: Sequence[Sequence[int]], cols: int | None) -> tuple[int, int]:
    m = len(A)
    n = len(A[0]) if m else (cols or 0)
    if cols is not None and m and n != cols:
        raise ValueError(f"matrix has {n} columns, expected {cols}")
    return m, n


def smith_normal_form(A: Sequence[Sequence[int]], cols: int | None = None, *,
                      transforms: bool = True) -> SmithNormalForm:
    """Exact SNF; pass ``cols`` when A has no rows.

    With ``transforms=False`` U and V are not tracked (returned empty),
    which is all homology needs.
    """
    m, n = _shape(A, cols)
    a = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        rs, rd = a[src], a[dst]
        a[dst] = [x + q * y for x, y in zip(rd, rs)]
        if U is not None:
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for row in a:
            row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    diagonal = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                v = a[i][t]
                if v:
                    add_row(i, t, -(v // p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                v = a[t][j]
                if v:
                    add_col(j, t, -(v // p))
                    if a[t][j]:
                        clean = False
            if clean:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # a remainder smaller than the pivot survived: move it to (t, t)
            cand = [(abs(a[i][t]), 0, i) for i in range(t + 1, m) if a[i][t]]
            cand += [(abs(a[t][j]), 1, j) for j in range(t + 1, n) if a[t][j]]
            _, kind, k = min(cand)
            if kind == 0:
                swap_rows(t, k)
            else:
                swap_cols(t, k)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        diagonal.append(a[t][t])
        t += 1

    freeze = (lambda M: tuple(tuple(r) for r in M)) if transforms else (lambda M: ())
    return SmithNormalForm(m, n, freeze(U), freeze(V), tuple(diagonal))


def elementary_divisors(A: Sequence[Sequence[int]], cols: int | None = None) -> tuple[int, ...]:
    return smith_normal_form(A, cols, transforms=False).diagonal


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], cols: int = 0) -> list[list[int]]:
    """Integer matrix product; ``cols`` gives the width of B when B has no rows."""
    if not A:
        return []
    cols_b = len(B[0]) if B else cols
    bt = list(zip(*B)) if B else [() for _ in range(cols_b)]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in A]

