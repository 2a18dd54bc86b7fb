"""Sparse multivariable Laurent polynomials over Q or F_p.

A :class:`LaurentPoly` is an immutable map from exponent vectors in Z^b to
nonzero field coefficients.  Orders of modules over F[x1^+-1, ..., xb^+-1] are
only defined up to units (monomials times nonzero scalars); :meth:`canonical`
picks one representative per unit class and every cross-check in the package
compares canonical forms.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .fields import Field

Exponent = tuple


class NotDivisible(ArithmeticError):
    """Raised by :meth:`LaurentPoly.divexact` when the quotient is not a Laurent polynomial."""


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: Field, nvars: int, terms: Mapping | None = None, *, _clean=False):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.field = field
        self.nvars = nvars
        self._hash = None
        if _clean:
            self.terms = terms
            return
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length (expected {nvars})")
            c = field(c)
            if c:
                clean[e] = field.add(clean[e], c) if e in clean else c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {}, _clean=True)

    @classmethod
    def one(cls, field, nvars):
        return cls(field, nvars, {(0,) * nvars: field.one()}, _clean=True)

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, field, exps: Sequence[int], c=1):
        return cls(field, len(exps), {tuple(exps): c})

    @classmethod
    def var(cls, field, nvars, i, power=1):
        e = [0] * nvars
        e[i] = power
        return cls(field, nvars, {tuple(e): 1})

    @classmethod
    def from_coeffs(cls, field, coeffs: Sequence, low: int = 0):
        """Univariate polynomial ``sum coeffs[i] t^(low+i)``."""
        return cls(field, 1, {(low + i,): c for i, c in enumerate(coeffs) if c})

    @classmethod
    def parse(cls, text: str, field: Field, names: Sequence[str]):
        """Parse strings such as ``"3*x^6*y^2 - x^2 - 1"`` or ``"t^-1 + 2"``."""
        return _parse(text, field, list(names))

    # -- basic queries ------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_unit(self):
        """Units of the Laurent ring are exactly the nonzero monomials."""
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def __len__(self):
        return len(self.terms)

    def support(self):
        return list(self.terms)

    def coeff(self, e):
        return self.terms.get(tuple(e), self.field.zero())

    def min_exponents(self):
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        es = list(self.terms)
        return tuple(min(e[i] for e in es) for i in range(self.nvars))

    def max_exponents(self):
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        es = list(self.terms)
        return tuple(max(e[i] for e in es) for i in range(self.nvars))

    def breadth(self, i: int = 0) -> int:
        """Max minus min exponent in variable ``i`` (0 for the zero polynomial)."""
        if not self.terms:
            return 0
        vals = [e[i] for e in self.terms]
        return max(vals) - min(vals)

    def degree_in(self, i: int) -> int:
        return max(e[i] for e in self.terms) if self.terms else -1

    def variables_used(self):
        if not self.terms:
            return set()
        lo, hi = self.min_exponents(), self.max_exponents()
        return {i for i in range(self.nvars) if lo[i] != hi[i] or lo[i] != 0}

    def leading_term(self):
        """(exponent, coeff) of the lexicographically largest exponent."""
        e = max(self.terms)
        return e, self.terms[e]

    def _check(self, other):
        if other.field != self.field or other.nvars != self.nvars:
            raise ValueError(f"ring mismatch: {self.field}[{self.nvars}] vs {other.field}[{other.nvars}]")

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.field, self.nvars, other)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.field, self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __neg__(self):
        F = self.field
        return LaurentPoly(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()}, _clean=True)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly(self.field, self.nvars, out, _clean=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return LaurentPoly.zero(self.field, self.nvars)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        p = self.field.p
        acc = {}
        get = acc.get
        if self.nvars == 1:
            for (e1,), c1 in b.items():
                for (e2,), c2 in a.items():
                    k = (e1 + e2,)
                    acc[k] = get(k, 0) + c1 * c2
        else:
            for e1, c1 in b.items():
                for e2, c2 in a.items():
                    k = tuple(x + y for x, y in zip(e1, e2))
                    acc[k] = get(k, 0) + c1 * c2
        if p:
            out = {}
            for k, v in acc.items():
                v %= p
                if v:
                    out[k] = v
        else:
            out = {k: v for k, v in acc.items() if v}
        return LaurentPoly(self.field, self.nvars, out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative powers only for units")
            return self.inverse_unit() ** (-n)
        out = LaurentPoly.one(self.field, self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        F = self.field
        c = F(c)
        if not c:
            return LaurentPoly.zero(F, self.nvars)
        return LaurentPoly(F, self.nvars, {e: F.mul(v, c) for e, v in self.terms.items()}, _clean=True)

    def shift(self, exps: Sequence[int]):
        """Multiply by the monomial x^exps."""
        exps = tuple(exps)
        return LaurentPoly(self.field, self.nvars, {_vadd(e, exps): c for e, c in self.terms.items()},
                           _clean=True)

    def inverse_unit(self):
        if not self.is_unit():
            raise NotDivisible(f"{self} is not a unit")
        (e, c), = self.terms.items()
        return LaurentPoly(self.field, self.nvars, {tuple(-x for x in e): self.field.inv(c)}, _clean=True)

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in the Laurent ring; raises :class:`NotDivisible` otherwise."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return self
        if other.is_unit():
            return self * other.inverse_unit()
        lo_f, lo_g = self.min_exponents(), other.min_exponents()
        q = _poly_divexact(self.shift(tuple(-x for x in lo_f)), other.shift(tuple(-x for x in lo_g)))
        return q.shift(_vsub(lo_f, lo_g))

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.divexact(self)
        except NotDivisible:
            return False
        return True

    # -- normal forms -------------------------------------------------------

    def strip_monomial(self):
        """Shift so that every variable's minimum exponent is 0."""
        if not self.terms:
            return self
        return self.shift(tuple(-x for x in self.min_exponents()))

    def canonical(self) -> "LaurentPoly":
        """Unit-normal form: minimum exponents 0 and lex-largest coefficient 1."""
        if not self.terms:
            return self
        f = self.strip_monomial()
        _, c = f.leading_term()
        return f.scale(self.field.inv(c)) if c != 1 else f

    def unit_equal(self, other: "LaurentPoly") -> bool:
        self._check(other)
        return self.canonical() == other.canonical()

    # -- ring maps ----------------------------------------------------------

    def specialize(self, phi: Sequence[int]) -> "LaurentPoly":
        """Image under x^e -> t^(phi . e); colliding terms are summed."""
        phi = tuple(int(v) for v in phi)
        if len(phi) != self.nvars:
            raise ValueError("covector length must equal the number of variables")
        p = self.field.p
        acc = {}
        for e, c in self.terms.items():
            k = (sum(a * b for a, b in zip(phi, e)),)
            acc[k] = acc.get(k, 0) + c
        if p:
            acc = {k: v % p for k, v in acc.items()}
        return LaurentPoly(self.field, 1, {k: v for k, v in acc.items() if v}, _clean=True)

    def embed(self, nvars: int, positions: Sequence[int]) -> "LaurentPoly":
        """Move variable i to variable ``positions[i]`` of a ring with ``nvars`` variables."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * nvars
            for i, x in enumerate(e):
                new[positions[i]] += x
            out[tuple(new)] = c
        return LaurentPoly(self.field, nvars, out)

    def substitute_monomials(self, images: Sequence[Sequence[int]], nvars: int) -> "LaurentPoly":
        """Send variable i to the monomial x^images[i] in ``nvars`` variables."""
        acc = {}
        p = self.field.p
        for e, c in self.terms.items():
            k = tuple(sum(e[i] * images[i][j] for i in range(self.nvars)) for j in range(nvars))
            acc[k] = acc.get(k, 0) + c
        if p:
            acc = {k: v % p for k, v in acc.items()}
        return LaurentPoly(self.field, nvars, {k: v for k, v in acc.items() if v}, _clean=True)

    def coefficients_in(self, i: int) -> dict:
        """Split as sum_d c_d * x_i^d with c_d free of x_i."""
        out = {}
        for e, c in self.terms.items():
            d = e[i]
            k = e[:i] + (0,) + e[i + 1:]
            out.setdefault(d, {})[k] = c
        return {d: LaurentPoly(self.field, self.nvars, t, _clean=True) for d, t in out.items()}

    # -- output -------------------------------------------------------------

    def default_names(self):
        if self.nvars == 1:
            return ["t"]
        return [f"x{i + 1}" for i in range(self.nvars)]

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = list(names or self.default_names())
        F = self.field
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)
            if F.p:
                cs = str(c)
                neg = False
            else:
                neg = c < 0
                cs = str(abs(c))
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LaurentPoly({self.field}, {self.format()!r})"

    def to_terms(self):
        """JSON-ready ``[[exponents], coeff]`` list in descending lex order."""
        return [[list(e), self.field.to_json(self.terms[e])] for e in sorted(self.terms, reverse=True)]

    @classmethod
    def from_terms(cls, field, nvars, items: Iterable):
        return cls(field, nvars, {tuple(e): field.from_json(c) for e, c in items})


# ---------------------------------------------------------------------------
# division and gcd


def _poly_divexact(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact division of ordinary polynomials (nonnegative exponents) by lex leading terms."""
    F = f.field
    p = F.p
    ge, gc = g.leading_term()
    ginv = F.inv(gc)
    gterms = [(e, c) for e, c in g.terms.items() if e != ge]
    r = dict(f.terms)
    q = {}
    while r:
        le = max(r)
        m = _vsub(le, ge)
        if min(m) < 0:
            raise NotDivisible("leading term not divisible")
        c = F.mul(r.pop(le), ginv)
        q[m] = c
        for e, gcoef in gterms:
            k = _vadd(e, m)
            v = r.get(k, 0) - c * gcoef
            if p:
                v %= p
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return LaurentPoly(F, f.nvars, q, _clean=True)


def _univariate_euclid(a: LaurentPoly, b: LaurentPoly, v: int) -> LaurentPoly:
    F = a.field
    while b:
        db, lb = b.degree_in(v), None
        for e, c in b.terms.items():
            if e[v] == db:
                lb = c
        linv = F.inv(lb)
        r = dict(a.terms)
        p = F.p
        while r:
            dr = max(e[v] for e in r)
            if dr < db:
                break
            lr = next(c for e, c in r.items() if e[v] == dr)
            c = F.mul(lr, linv)
            s = dr - db
            for e, bc in b.terms.items():
                k = e[:v] + (e[v] + s,) + e[v + 1:]
                val = r.get(k, 0) - c * bc
                if p:
                    val %= p
                if val:
                    r[k] = val
                else:
                    r.pop(k, None)
        a, b = b, LaurentPoly(F, a.nvars, r, _clean=True)
    return a


def _content(f: LaurentPoly, v: int) -> LaurentPoly:
    coeffs = sorted(f.coefficients_in(v).values(), key=len)
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = _poly_gcd(g, c)
    return g


def _prem(a: LaurentPoly, b: LaurentPoly, v: int) -> LaurentPoly:
    db = b.degree_in(v)
    lcb = b.coefficients_in(v)[db]
    r = a
    while r and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lcr = r.coefficients_in(v)[dr]
        shift = [0] * a.nvars
        shift[v] = dr - db
        r = r * lcb - (lcr * b).shift(shift)
    return r


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """gcd in F[x1..xb] of polynomials with nonnegative exponents (up to scalars)."""
    if not a:
        return b
    if not b:
        return a
    if a.is_constant() or b.is_constant():
        return LaurentPoly.one(a.field, a.nvars)
    used = a.variables_used() | b.variables_used()
    v = max(used)
    if used == {v}:
        if a.degree_in(v) < b.degree_in(v):
            a, b = b, a
        return _univariate_euclid(a, b, v)
    ca, cb = _content(a, v), _content(b, v)
    c = _poly_gcd(ca, cb)
    pa, pb = a.divexact(ca), b.divexact(cb)
    if pa.degree_in(v) <= 0 or pb.degree_in(v) <= 0:
        return c
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, v)
        if not r:
            g = pb
            break
        if r.degree_in(v) <= 0:
            return c
        pa, pb = pb, r.divexact(_content(r, v))
    g = g.divexact(_content(g, v))
    return c * g


def poly_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor in the Laurent ring, in canonical form."""
    f._check(g)
    if not f:
        return g.canonical()
    if not g:
        return f.canonical()
    return _poly_gcd(f.strip_monomial(), g.strip_monomial()).canonical()


def laurent_canonical(f: LaurentPoly) -> LaurentPoly:
    return f.canonical()


def specialize(f: LaurentPoly, phi: Sequence[int]) -> LaurentPoly:
    return f.specialize(phi)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*\*)|(\*)|([+-])|(\()|(\)))")


def _parse(text: str, field: Field, names: list) -> LaurentPoly:
    nv = len(names)
    index = {n: i for i, n in enumerate(names)}
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at position {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        kind = m.lastindex
        toks.append((kind, m.group(kind)))
    terms = {}
    i = 0

    def read_int():
        nonlocal i
        sign = 1
        paren = False
        if i < len(toks) and toks[i][0] == 6:
            paren = True
            i += 1
        if i < len(toks) and toks[i][0] == 5:
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        if i >= len(toks) or toks[i][0] != 1:
            raise ValueError("expected an integer exponent")
        val = sign * int(toks[i][1])
        i += 1
        if paren:
            if i >= len(toks) or toks[i][0] != 7:
                raise ValueError("unbalanced parenthesis")
            i += 1
        return val

    while i < len(toks):
        sign = 1
        while i < len(toks) and toks[i][0] == 5:
            if toks[i][1] == "-":
                sign = -sign
            i += 1
        coeff = Fraction(sign)
        exps = [0] * nv
        expect_factor = True
        while i < len(toks) and toks[i][0] != 5:
            kind, val = toks[i]
            if kind == 4:
                expect_factor = True
                i += 1
                continue
            if not expect_factor:
                raise ValueError("missing '*' between factors")
            if kind == 1:
                coeff *= Fraction(val)
                i += 1
            elif kind == 2:
                if val not in index:
                    raise ValueError(f"unknown variable {val!r}")
                i += 1
                power = 1
                if i < len(toks) and toks[i][0] == 3:
                    i += 1
                    power = read_int()
                exps[index[val]] += power
            else:
                raise ValueError(f"unexpected token {val!r}")
            expect_factor = False
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + coeff
    return LaurentPoly(field, nv, {e: c for e, c in terms.items()})
