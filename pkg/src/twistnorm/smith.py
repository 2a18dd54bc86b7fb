"""Smith normal form of integer matrices with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence


@dataclass(frozen=True)
class SmithForm:
    """``A = U * D * V`` with U, V unimodular and D diagonal.

    ``factors`` are the nonzero diagonal entries d1 | d2 | ... | dr (all
    positive).  ``Uinv`` and ``Vinv`` are the inverse transforms, so that
    ``Uinv * A * Vinv = D``.
    """

    factors: tuple
    U: tuple
    V: tuple
    Uinv: tuple
    Vinv: tuple
    shape: tuple

    @property
    def rank(self) -> int:
        return len(self.factors)

    def diagonal(self):
        m, n = self.shape
        D = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.factors):
            D[i][i] = d
        return D


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(ncols)] for i in range(len(A))]


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form over Z.

    ``ncols`` is only needed for matrices with no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [list(map(int, r)) for r in A]
    # Track L (row ops) and R (column ops): L * A * R = D.  Their inverses
    # Linv and Rinv are maintained alongside, giving A = Linv * D * Rinv.
    L, Linv = _identity(m), _identity(m)
    R, Rinv = _identity(n), _identity(n)

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        L[i], L[j] = L[j], L[i]
        for r in Linv:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in R:
            r[i], r[j] = r[j], r[i]
        Rinv[i], Rinv[j] = Rinv[j], Rinv[i]

    def row_add(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        L[dst] = [a + q * b for a, b in zip(L[dst], L[src])]
        for r in Linv:
            r[src] -= q * r[dst]

    def col_add(dst, src, q):
        # col_dst += q * col_src
        if q == 0:
            return
        for r in D:
            r[dst] += q * r[src]
        for r in R:
            r[dst] += q * r[src]
        Rinv[src] = [a - q * b for a, b in zip(Rinv[src], Rinv[dst])]

    def row_neg(i):
        D[i] = [-a for a in D[i]]
        L[i] = [-a for a in L[i]]
        for r in Linv:
            r[i] = -r[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        row_swap(t, i)
        col_swap(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    row_add(i, t, -q)
                    if D[i][t]:
                        row_swap(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    col_add(j, t, -q)
                    if D[t][j]:
                        col_swap(t, j)
                        done = False
            if not done:
                continue
            # divisibility: the pivot must divide every remaining entry
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if D[t][t] < 0:
            row_neg(t)
        t += 1
    factors = tuple(D[i][i] for i in range(min(m, n)) if D[i][i])
    freeze = lambda M: tuple(tuple(r) for r in M)
    return SmithForm(factors=factors, U=freeze(Linv), V=freeze(Rinv), Uinv=freeze(L), Vinv=freeze(R),
                     shape=(m, n))


def free_rank(A: Sequence[Sequence[int]], ncols: int) -> int:
    """Rank of the free part of Z^ncols / rowspace(A)."""
    return ncols - smith_normal_form(A, ncols).rank


def integer_rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return smith_normal_form(rows, ncols).rank


def invariant_factors(A: Sequence[Sequence[int]], ncols: int | None = None) -> List[int]:
    return list(smith_normal_form(A, ncols).factors)
