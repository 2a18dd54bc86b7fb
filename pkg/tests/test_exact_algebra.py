"""Fields, Laurent polynomials, determinants, minor gcds and Smith forms."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from twistnorm.fields import Field, FieldError
from twistnorm.laurent import LaurentPoly, NotDivisible, poly_gcd
from twistnorm.matrices import PolyMatrix, bareiss_det, minor_gcd, minor_gcd_report, poly_det
from twistnorm.smith import integer_rank, invariant_factors, matmul, smith_normal_form

from conftest import F7, F13, QQ, cofactor_det, rand_nonzero_poly, rand_poly

F5 = Field(5)


def P(text, F=QQ, names=("x", "y")):
    return LaurentPoly.parse(text, F, names)


def T(text, F=QQ):
    return LaurentPoly.parse(text, F, ["t"])


# ---------------------------------------------------------------------------
# fields


def test_field_arithmetic():
    F = Field(13)
    assert F.inv(2) == 7
    assert F(Fraction(1, 2)) == 7
    assert F(-1) == 12
    assert F.primitive_root() == 2
    assert QQ(3) == Fraction(3)


def test_field_rejects_composite():
    with pytest.raises(FieldError):
        Field(12)


def test_field_fraction_with_bad_denominator():
    with pytest.raises(FieldError):
        Field(7)(Fraction(1, 7))


# ---------------------------------------------------------------------------
# canonical form


def test_canonical_examples():
    assert LaurentPoly.zero(QQ, 1).canonical() == LaurentPoly.zero(QQ, 1)
    m = LaurentPoly(F13, 2, {(-1, 1): 3})
    assert m.canonical() == LaurentPoly.one(F13, 2)
    assert T("t^2 - t").canonical() == T("t - 1")


def test_canonical_is_unit_invariant(rng):
    for F in (QQ, F7):
        for _ in range(50):
            f = rand_nonzero_poly(rng, F, 2)
            c = rng.randint(1, 6)
            shifted = f.shift((rng.randint(-3, 3), rng.randint(-3, 3))).scale(F(c))
            assert shifted.canonical() == f.canonical()
            assert shifted.unit_equal(f)


def test_canonical_is_idempotent(rng):
    for _ in range(50):
        f = rand_poly(rng, F13, 2, nterms=4)
        assert f.canonical().canonical() == f.canonical()


def test_parse_and_format_roundtrip():
    f = P("3*x^6*y^2+3*x^4*y^2+4*x^4*y+2*x^4+x^2*y^2+3*x^2*y-x^2-1", F7)
    assert len(f) == 8
    assert P(f.format(["x", "y"]), F7) == f
    assert T("t^-1 + 2").terms == {(-1,): 1, (0,): 2}


# ---------------------------------------------------------------------------
# gcd


def _to_sympy(f, gens):
    f = f.strip_monomial()
    expr = 0
    for e, c in f.terms.items():
        mono = 1
        for g, k in zip(gens, e):
            mono *= g ** k
        expr += sympy.Integer(c) * mono if f.field.p else sympy.Rational(c.numerator, c.denominator) * mono
    return expr


def _from_sympy(poly, F, nvars):
    return LaurentPoly(F, nvars, {e: (int(c) if F.p else Fraction(str(c))) for e, c in poly.terms()})


def sympy_gcd(f, g):
    gens = sympy.symbols(f"z0:{f.nvars}")
    kw = {"modulus": f.field.p} if f.field.p else {"domain": "QQ"}
    a = sympy.Poly(_to_sympy(f, gens), *gens, **kw)
    b = sympy.Poly(_to_sympy(g, gens), *gens, **kw)
    return _from_sympy(a.gcd(b), f.field, f.nvars).canonical()


def test_gcd_examples():
    one = LaurentPoly.one(F5, 1)
    t = LaurentPoly.var(F5, 1, 0)
    a = (t - one) * (t + one.scale(2))
    b = (t - one) * (t + one.scale(3))
    assert poly_gcd(a, b) == (t - one)
    assert poly_gcd(P("1 - y"), P("x - 1")) == LaurentPoly.one(QQ, 2)
    g = P("x^2*y - 3*x + y^-1")
    assert poly_gcd(g, g) == g.canonical()


def test_gcd_zero_conventions():
    f = P("x - y")
    z = LaurentPoly.zero(QQ, 2)
    assert poly_gcd(f, z) == f.canonical()
    assert poly_gcd(z, z) == z


@pytest.mark.parametrize("F", [QQ, F5, F13], ids=["Q", "F5", "F13"])
def test_gcd_against_sympy_and_trial_division(F):
    rng = random.Random(F.p + 1)
    for _ in range(500):
        nv = rng.choice((1, 2))
        c = rand_poly(rng, F, nv, nterms=2, lo=0, hi=2)
        a = rand_nonzero_poly(rng, F, nv, nterms=3, lo=-1, hi=2)
        b = rand_nonzero_poly(rng, F, nv, nterms=3, lo=-1, hi=2)
        if c:
            a, b = a * c, b * c
        g = poly_gcd(a, b)
        # the gcd divides both, and the cofactors are coprime
        assert g.divides(a) and g.divides(b)
        assert poly_gcd(a.divexact(g), b.divexact(g)) == LaurentPoly.one(F, nv)
        if c:
            assert c.divides(g)
    for _ in range(60):
        nv = rng.choice((1, 2))
        c = rand_poly(rng, F, nv, nterms=2, lo=0, hi=2)
        a = rand_nonzero_poly(rng, F, nv, nterms=3, lo=0, hi=2) * (c or LaurentPoly.one(F, nv))
        b = rand_nonzero_poly(rng, F, nv, nterms=3, lo=0, hi=2) * (c or LaurentPoly.one(F, nv))
        assert poly_gcd(a, b) == sympy_gcd(a, b)


def test_divexact_raises_when_not_divisible():
    with pytest.raises(NotDivisible):
        P("x + y").divexact(P("x - 1"))


# ---------------------------------------------------------------------------
# specialization


def test_specialize_examples():
    f = P("x*y - x - y + 1")
    assert f.specialize((1, 1)) == T("t^2 - 2*t + 1")
    assert f.specialize((1, -1)).unit_equal(T("-t^2 + 2*t - 1"))
    assert f.specialize((0, 0)) == LaurentPoly.zero(QQ, 1)
    g = P("3*x^2 - y + 5")
    assert g.specialize((0, 0)) == T("7")


def test_specialize_is_a_ring_homomorphism(rng):
    for F in (QQ, F7):
        for _ in range(100):
            f, g = rand_poly(rng, F, 2), rand_poly(rng, F, 2)
            phi = (rng.randint(-3, 3), rng.randint(-3, 3))
            assert (f * g).specialize(phi) == f.specialize(phi) * g.specialize(phi)
            assert (f + g).specialize(phi) == f.specialize(phi) + g.specialize(phi)


def test_substitute_monomials_matches_direct_evaluation():
    f = P("x^2*y - y^-1 + 3")
    # x -> s^1 u^2, y -> s^-1
    out = f.substitute_monomials([(1, 2), (-1, 0)], 2)
    assert out == LaurentPoly.parse("s*u^4 - s + 3", QQ, ["s", "u"])


# ---------------------------------------------------------------------------
# determinants


def test_det_examples():
    t = T("t")
    z = LaurentPoly.zero(QQ, 1)
    assert poly_det(PolyMatrix(QQ, 1, [[t, LaurentPoly.one(QQ, 1)], [z, t]])) == T("t^2")
    assert poly_det(PolyMatrix.identity(QQ, 2, 5)) == LaurentPoly.one(QQ, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_det_matches_cofactor_expansion(n):
    rng = random.Random(100 + n)
    for F in (QQ, F7):
        for _ in range(25 if n < 4 else 8):
            rows = [[rand_poly(rng, F, 2, nterms=rng.randint(0, 3)) for _ in range(n)] for _ in range(n)]
            M = PolyMatrix(F, 2, rows)
            expected = cofactor_det(rows, F, 2)
            assert poly_det(M) == expected
            assert poly_det(M, condense=False) == expected
            assert bareiss_det(M) == expected


def test_det_is_multiplicative(rng):
    for _ in range(20):
        A = PolyMatrix(F13, 2, [[rand_poly(rng, F13, 2) for _ in range(3)] for _ in range(3)])
        B = PolyMatrix(F13, 2, [[rand_poly(rng, F13, 2) for _ in range(3)] for _ in range(3)])
        assert poly_det(A @ B) == poly_det(A) * poly_det(B)


def test_det_empty_is_one():
    assert poly_det(PolyMatrix(QQ, 1, [])) == LaurentPoly.one(QQ, 1)


# ---------------------------------------------------------------------------
# minor gcds


def test_minor_gcd_examples():
    Z = PolyMatrix.zeros(QQ, 2, 2, 3)
    assert minor_gcd(Z, 2) == LaurentPoly.zero(QQ, 2)
    row = PolyMatrix(QQ, 2, [[P("1 - y"), P("x - 1")]])
    assert minor_gcd(row, 1) == LaurentPoly.one(QQ, 2)
    assert minor_gcd(PolyMatrix.identity(QQ, 1, 3), 2) == LaurentPoly.one(QQ, 1)
    assert minor_gcd(row, 0) == LaurentPoly.one(QQ, 2)
    assert minor_gcd(row, 2) == LaurentPoly.zero(QQ, 2)


def brute_minor_gcd(M, size):
    g = LaurentPoly.zero(M.field, M.nvars)
    for rs in combinations(range(M.nrows), size):
        for cs in combinations(range(M.ncols), size):
            g = poly_gcd(g, cofactor_det([[M.rows[i][j] for j in cs] for i in rs], M.field, M.nvars))
    return g


@pytest.mark.parametrize("size", [1, 2, 3])
def test_minor_gcd_matches_brute_force(size):
    rng = random.Random(7 * size)
    for F in (QQ, F5):
        for _ in range(12):
            common = rand_nonzero_poly(rng, F, 1, nterms=2, lo=0, hi=2)
            rows = []
            for i in range(4):
                row = [rand_poly(rng, F, 1, nterms=2, lo=-1, hi=2) for _ in range(5)]
                if i < 2:
                    row = [x * common for x in row]
                rows.append(row)
            M = PolyMatrix(F, 1, rows)
            assert minor_gcd(M, size) == brute_minor_gcd(M, size)


def test_minor_gcd_cap_reports_incomplete():
    rows = [[T("t - 1") * T(f"t^{i} + {j + 2}") for j in range(4)] for i in range(4)]
    M = PolyMatrix(QQ, 1, rows)
    g, complete = minor_gcd_report(M, 2, cap=1)
    assert not complete
    full, ok = minor_gcd_report(M, 2)
    assert ok and full.divides(g)


# ---------------------------------------------------------------------------
# Smith normal form


def test_smith_examples():
    assert smith_normal_form([[3, 0], [0, 6]]).factors == (3, 6)
    assert smith_normal_form([[2, 4], [6, 8]]).factors == (2, 4)
    z = smith_normal_form([[0, 0], [0, 0]])
    assert z.factors == () and z.rank == 0


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m))))
def test_smith_reconstruction(A):
    S = smith_normal_form(A)
    assert matmul(matmul(S.U, S.diagonal()), S.V) == [list(r) for r in A]
    assert matmul(matmul(S.Uinv, A), S.Vinv) == S.diagonal()
    for a, b in zip(S.factors, S.factors[1:]):
        assert b % a == 0
    assert all(d > 0 for d in S.factors)
    # rank agrees with sympy's rational rank
    assert S.rank == sympy.Matrix(A).rank()


def test_integer_rank_and_invariants():
    assert integer_rank([[1, -1], [2, -2]], 2) == 1
    assert invariant_factors([[2, 0], [0, 0]]) == [2]
