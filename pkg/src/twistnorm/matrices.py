"""Matrices over Laurent polynomial rings: determinants and minor ideals.

Determinants use fraction-free (Bareiss) elimination.  Before elimination,
entries that are units of the Laurent ring (single monomials) are used as
pivots and eliminated exactly; each such step removes one row and one column
and changes neither the ideal of minors (shifted by one in size) nor the
determinant (up to the recorded unit).  Alexander matrices coming from
Wirtinger presentations are full of such units, so this condensation does most
of the work.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .fields import Field
from .laurent import LaurentPoly, poly_gcd


class PolyMatrix:
    """Rectangular matrix of :class:`LaurentPoly` entries over one ring."""

    __slots__ = ("field", "nvars", "rows", "_ncols")

    def __init__(self, field: Field, nvars: int, rows: Sequence[Sequence[LaurentPoly]]):
        self.field = field
        self.nvars = nvars
        self.rows = [list(r) for r in rows]
        width = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != width:
                raise ValueError("ragged matrix")
            for x in r:
                if x.field != field or x.nvars != nvars:
                    raise ValueError("matrix entries must share one ring")
        self._ncols = width

    @classmethod
    def zeros(cls, field, nvars, nrows, ncols):
        z = LaurentPoly.zero(field, nvars)
        m = cls(field, nvars, [])
        m.rows = [[z] * ncols for _ in range(nrows)]
        m._ncols = ncols
        return m

    @classmethod
    def identity(cls, field, nvars, n):
        m = cls.zeros(field, nvars, n, n)
        for i in range(n):
            m.rows[i][i] = LaurentPoly.one(field, nvars)
        return m

    @classmethod
    def empty(cls, field, nvars, ncols):
        """A 0 x ncols matrix (for presentations without relators)."""
        m = cls(field, nvars, [])
        m._ncols = ncols
        return m

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return self._ncols

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.shape == other.shape
                and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)))

    def __repr__(self):
        body = "; ".join(", ".join(x.format() for x in r) for r in self.rows)
        return f"PolyMatrix({self.nrows}x{self.ncols}: [{body}])"

    def submatrix(self, rows, cols):
        m = PolyMatrix(self.field, self.nvars, [[self.rows[i][j] for j in cols] for i in rows])
        m._ncols = len(cols)
        return m

    def delete_columns(self, cols):
        keep = [j for j in range(self.ncols) if j not in set(cols)]
        return self.submatrix(range(self.nrows), keep)

    def transpose(self):
        m = PolyMatrix(self.field, self.nvars, [list(c) for c in zip(*self.rows)] if self.rows else [])
        m._ncols = self.nrows
        return m

    def map(self, fn, nvars=None):
        m = PolyMatrix(self.field, self.nvars if nvars is None else nvars,
                       [[fn(x) for x in r] for r in self.rows])
        m._ncols = self.ncols
        return m

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        z = LaurentPoly.zero(self.field, self.nvars)
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = z
                for k, a in enumerate(r):
                    if a and other.rows[k][j]:
                        acc = acc + a * other.rows[k][j]
                row.append(acc)
            out.append(row)
        m = PolyMatrix(self.field, self.nvars, out)
        m._ncols = other.ncols
        return m


# ---------------------------------------------------------------------------
# unit-pivot condensation


def _eliminate_units(rows, ncols):
    """Repeatedly pivot on unit entries (Markowitz order).

    Returns ``(rows, ncols, pivots, factor)`` where ``factor`` is the signed
    product of pivots, so that for square input det(original) = factor * det(rest).
    """
    rows = [list(r) for r in rows]
    cols = list(range(ncols))
    factor = None
    pivots = 0
    while rows and cols:
        rcount = [sum(1 for x in r if x) for r in rows]
        ccount = [sum(1 for r in rows if r[j]) for j in range(len(cols))]
        best = None
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                if x and len(x.terms) == 1:
                    cost = (rcount[i] - 1) * (ccount[j] - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, i, j = best
        piv = rows[i][j]
        pinv = piv.inverse_unit()
        prow = rows[i]
        nz = [c for c, x in enumerate(prow) if x and c != j]
        for r_idx, r in enumerate(rows):
            if r_idx == i or not r[j]:
                continue
            f = r[j] * pinv
            for c in nz:
                r[c] = r[c] - f * prow[c]
            r[j] = LaurentPoly.zero(piv.field, piv.nvars)
        sign = -1 if (i + j) % 2 else 1
        term = piv if sign == 1 else -piv
        factor = term if factor is None else factor * term
        del rows[i]
        for r in rows:
            del r[j]
        del cols[j]
        pivots += 1
    return rows, len(cols), pivots, factor


def _bareiss(rows, field, nvars):
    n = len(rows)
    if n == 0:
        return LaurentPoly.one(field, nvars)
    M = [list(r) for r in rows]
    # clear negative exponents row by row and column by column
    unit = LaurentPoly.one(field, nvars)
    for i, r in enumerate(M):
        nz = [x for x in r if x]
        if not nz:
            return LaurentPoly.zero(field, nvars)
        lo = tuple(min(x.min_exponents()[v] for x in nz) for v in range(nvars))
        if any(lo):
            M[i] = [x.shift(tuple(-v for v in lo)) for x in r]
            unit = unit.shift(lo)
    for j in range(n):
        nz = [M[i][j] for i in range(n) if M[i][j]]
        if not nz:
            return LaurentPoly.zero(field, nvars)
        lo = tuple(min(x.min_exponents()[v] for x in nz) for v in range(nvars))
        if any(lo):
            neg = tuple(-v for v in lo)
            for i in range(n):
                M[i][j] = M[i][j].shift(neg)
            unit = unit.shift(lo)
    sign = 1
    one = LaurentPoly.one(field, nvars)
    zero = LaurentPoly.zero(field, nvars)
    prev = one
    for k in range(n - 1):
        cands = [i for i in range(k, n) if M[i][k]]
        if not cands:
            return LaurentPoly.zero(field, nvars)
        p = min(cands, key=lambda i: len(M[i][k].terms))
        if p != k:
            M[k], M[p] = M[p], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            a = M[i][k]
            for j in range(k + 1, n):
                t = pk * M[i][j]
                if a and M[k][j]:
                    t = t - a * M[k][j]
                M[i][j] = t if prev == one else t.divexact(prev)
            M[i][k] = zero
        prev = pk
    d = M[n - 1][n - 1] * unit
    return -d if sign < 0 else d


def poly_det(M: PolyMatrix, condense: bool = True) -> LaurentPoly:
    """Exact determinant of a square polynomial matrix."""
    if M.nrows != M.ncols:
        raise ValueError(f"determinant of non-square {M.nrows}x{M.ncols} matrix")
    rows = M.rows
    factor = None
    if condense:
        rows, _, _, factor = _eliminate_units(rows, M.ncols)
    d = _bareiss(rows, M.field, M.nvars)
    return d * factor if factor is not None else d


def bareiss_det(M: PolyMatrix) -> LaurentPoly:
    """Plain Bareiss elimination, without unit-pivot condensation."""
    return poly_det(M, condense=False)


def _colex(n, k):
    return sorted(combinations(range(n), k), key=lambda c: c[::-1])


def minor_gcd_report(M: PolyMatrix, size: int, cap: int | None = None):
    """gcd of all ``size`` x ``size`` minors.

    Returns ``(gcd, complete)``; ``complete`` is False when ``cap`` stopped the
    enumeration early, in which case the value is only known to be a multiple
    of the true gcd.
    """
    F, nv = M.field, M.nvars
    one = LaurentPoly.one(F, nv)
    if size <= 0:
        return one, True
    if size > min(M.nrows, M.ncols):
        return LaurentPoly.zero(F, nv), True
    rows, ncols, pivots, _ = _eliminate_units(M.rows, M.ncols)
    size -= pivots
    if size <= 0:
        return one, True
    nrows = len(rows)
    if size > min(nrows, ncols):
        return LaurentPoly.zero(F, nv), True
    g = LaurentPoly.zero(F, nv)
    count = 0
    row_sets = _colex(nrows, size)
    for cs in _colex(ncols, size):
        for rs in row_sets:
            if cap is not None and count >= cap:
                return g, False
            count += 1
            sub = [[rows[i][j] for j in cs] for i in rs]
            d = poly_det(PolyMatrix(F, nv, sub))
            if d:
                g = poly_gcd(g, d)
                if g == one:
                    return g, True
    return g, True


def minor_gcd(M: PolyMatrix, size: int, cap: int | None = None) -> LaurentPoly:
    return minor_gcd_report(M, size, cap)[0]
