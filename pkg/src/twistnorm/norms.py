"""Newton polytopes, Alexander-type seminorms and their unit balls.

For a Laurent polynomial f with support S, the seminorm of a covector phi is
the width ``max phi.s - min phi.s`` over S.  Dividing by k (the
representation dimension, times the cover degree where relevant) gives a
lower bound for the Thurston norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .fields import Field
from .laurent import LaurentPoly
from .matrices import PolyMatrix, poly_det
from .smith import integer_rank

Vec = Tuple[int, ...]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points) -> List[tuple]:
    """Counterclockwise hull vertices (monotone chain), collinear points dropped."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


@dataclass(frozen=True)
class NewtonPolytope:
    """Convex hull of a support.  ``vertices`` is None when b > 2."""

    b: int
    support: Tuple[Vec, ...]
    vertices: Optional[Tuple[Vec, ...]]

    @property
    def is_empty(self):
        return not self.support

    def width(self, phi: Sequence) -> Fraction:
        pts = self.vertices if self.vertices is not None else self.support
        if not pts:
            return Fraction(0)
        vals = [sum(Fraction(a) * x for a, x in zip(phi, p)) for p in pts]
        return max(vals) - min(vals)

    def dimension(self) -> int:
        if not self.support:
            return -1
        base = self.support[0]
        return integer_rank([[x - y for x, y in zip(p, base)] for p in self.support[1:]], self.b)


def newton_polytope(f: LaurentPoly) -> NewtonPolytope:
    support = tuple(sorted(f.terms))
    b = f.nvars
    if b == 1:
        verts = tuple(sorted({min(support), max(support)})) if support else ()
    elif b == 2:
        verts = tuple(convex_hull_2d(support))
    else:
        verts = None
    return NewtonPolytope(b, support, verts)


def seminorm_eval(f: LaurentPoly, phi: Sequence) -> Fraction:
    """Width of the support of f in direction phi (0 for f = 0)."""
    if len(phi) != f.nvars:
        raise ValueError("covector length must equal the number of variables")
    return newton_polytope(f).width(phi)


def support_rank(f: LaurentPoly) -> int:
    """Dimension of the affine span of the support.

    A polynomial of the form g(x^a y^b) has rank <= 1; full rank b shows that
    the map to Z^b behind f is rationally surjective.
    """
    return newton_polytope(f).dimension()


# ---------------------------------------------------------------------------
# norm balls in rank two


def _perp(d):
    g = gcd(d[0], d[1])
    return (-d[1] // g, d[0] // g)


def _solve2(d1, d2, c):
    """phi with d1.phi = c and d2.phi = c."""
    det = d1[0] * d2[1] - d1[1] * d2[0]
    x = Fraction(c * d2[1] - d1[1] * c, det)
    y = Fraction(d1[0] * c - c * d2[0], det)
    return (x, y)


@dataclass(frozen=True)
class NormBall2:
    """Unit ball of phi -> width(phi) / scale_k in Hom(Z^2, R).

    ``halfplanes`` are (d1, d2, c) meaning d1*phi1 + d2*phi2 <= c, one per
    vertex of the difference body.  ``vertices`` are listed counterclockwise
    when the ball is compact; otherwise ``recession`` holds generators of
    the recession cone.
    """

    halfplanes: Tuple[Tuple[int, int, int], ...]
    vertices: Tuple[Tuple[Fraction, Fraction], ...]
    recession: Tuple[Tuple[int, int], ...]
    scale_k: int
    directions: Tuple[Vec, ...] = field(default=(), repr=False)

    @property
    def compact(self) -> bool:
        return not self.recession

    def seminorm(self, phi) -> Fraction:
        if not self.directions:
            return Fraction(0)
        return max(sum(Fraction(a) * x for a, x in zip(phi, d)) for d in self.directions)

    def norm(self, phi) -> Fraction:
        return self.seminorm(phi) / self.scale_k

    def contains(self, phi) -> bool:
        return all(d1 * Fraction(phi[0]) + d2 * Fraction(phi[1]) <= c for d1, d2, c in self.halfplanes)

    def to_json(self) -> dict:
        frac = lambda q: [q.numerator, q.denominator]
        return {"vertices": [[frac(x), frac(y)] for x, y in self.vertices],
                "halfplanes": [list(h) for h in self.halfplanes],
                "recession": [list(r) for r in self.recession],
                "scale_k": self.scale_k,
                "compact": self.compact}


def difference_body(P: NewtonPolytope) -> List[Vec]:
    verts = P.vertices
    return convex_hull_2d([(p[0] - q[0], p[1] - q[1]) for p in verts for q in verts])


def norm_ball_2d(f: LaurentPoly, k: int = 1) -> NormBall2:
    """Ball of phi with width_f(phi) <= k."""
    if f.nvars != 2:
        raise ValueError("norm balls are only drawn for b = 2")
    if k <= 0:
        raise ValueError("k must be positive")
    P = newton_polytope(f)
    if P.is_empty:
        D = [(0, 0)]
    else:
        D = difference_body(P)
    D = [d for d in D if d != (0, 0)]
    half = tuple((d[0], d[1], k) for d in D)
    if not D:
        rec = ((1, 0), (0, 1), (-1, 0), (0, -1))
        return NormBall2(half, (), rec, k, ())
    if len(D) == 2:
        # segment [-d, d]: a strip around the line perpendicular to d
        d = D[0] if D[0] > D[1] else D[1]
        p = _perp(d)
        return NormBall2(half, (), (p, (-p[0], -p[1])), k, tuple(D))
    verts = tuple(_solve2(D[i], D[(i + 1) % len(D)], k) for i in range(len(D)))
    return NormBall2(half, verts, (), k, tuple(D))


def ball_vertex_set(ball: NormBall2):
    return {(Fraction(x), Fraction(y)) for x, y in ball.vertices}


# ---------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class BoundReport:
    phi: Tuple[int, ...]
    bound: Fraction
    deg_delta1: Optional[int]
    deg_delta0: Optional[int]
    deg_delta2: Optional[int]
    k: int
    upper: Optional[Fraction] = None

    @property
    def sharp(self) -> bool:
        return self.upper is not None and self.upper == self.bound

    def to_json(self) -> dict:
        q = lambda x: None if x is None else str(x)
        return {"phi": list(self.phi), "bound": q(self.bound), "k": self.k,
                "degrees": {"delta1": self.deg_delta1, "delta0": self.deg_delta0, "delta2": self.deg_delta2},
                "upper": q(self.upper), "sharp": self.sharp}


def thurston_bound(result, phi: Sequence[int], k: int | None = None, upper=None) -> BoundReport:
    """(deg Delta^1 - deg Delta^0 - deg Delta^2) / k for a one-variable result.

    ``k`` defaults to the representation dimension; pass k times the cover
    degree for a cover.  The bound is 0 when Delta^1 vanishes.
    """
    if result.b != 1:
        raise ValueError("thurston_bound expects a one-variable result")
    k = result.k if k is None else k
    d1 = result.delta1.breadth(0) if result.delta1 else None
    d0 = result.delta0.breadth(0) if result.delta0 else None
    d2 = result.delta2.breadth(0) if result.delta2 else None
    if d1 is None or d0 is None or d2 is None:
        bound = Fraction(0)
    else:
        bound = Fraction(d1 - d0 - d2, k)
    return BoundReport(tuple(phi), bound, d1, d0, d2, k, None if upper is None else Fraction(upper))


def norm_bound(f: LaurentPoly, phi: Sequence, k: int, upper=None) -> BoundReport:
    """Width of the multivariable polynomial, divided by k."""
    w = seminorm_eval(f, phi)
    return BoundReport(tuple(phi), w / k, None, None, None, k, None if upper is None else Fraction(upper))


@dataclass(frozen=True)
class FiberingVerdict:
    phi: Tuple
    norm_a: Fraction
    norm_b: Fraction
    obstructed: bool

    @property
    def verdict(self) -> str:
        return "cannot fiber" if self.obstructed else "no obstruction"

    def to_json(self):
        return {"phi": [str(x) for x in self.phi], "norm_a": str(self.norm_a), "norm_b": str(self.norm_b),
                "verdict": self.verdict}


def fibering_obstruction(ball_a: NormBall2, ball_b: NormBall2, phi) -> FiberingVerdict:
    """Two lower bounds for the Thurston norm must agree on a fibered class.

    If they differ at phi, no class in the cone of phi fibers.  Agreement
    proves nothing, so the verdict is one-sided.
    """
    na, nb = ball_a.norm(phi), ball_b.norm(phi)
    return FiberingVerdict(tuple(phi), na, nb, na != nb)


# ---------------------------------------------------------------------------
# Hopf-like links


def meridian_factor(block, field: Field) -> LaurentPoly:
    """det(A x - I) in one variable, for a k x k matrix A over ``field``."""
    k = len(block)
    x = LaurentPoly.var(field, 1, 0)
    one = LaurentPoly.one(field, 1)
    rows = [[x.scale(field(block[i][j])) - (one if i == j else LaurentPoly.zero(field, 1))
             for j in range(k)] for i in range(k)]
    return poly_det(PolyMatrix(field, 1, rows))


def hopf_like_product(d1_k1: LaurentPoly, d0_k1: LaurentPoly, d1_k2: LaurentPoly, d0_k2: LaurentPoly,
                      mu1, mu2) -> LaurentPoly:
    """Delta_1(x1) * Delta_2(x2) with Delta_i = Delta^a_Ki * det(a(mu_i) x_i - I) / Delta^0_Ki."""
    F = d1_k1.field
    factors = []
    for d1, d0, mu in ((d1_k1, d0_k1, mu1), (d1_k2, d0_k2, mu2)):
        if not d0:
            raise ValueError("Delta^0 must be nonzero")
        factors.append((d1 * meridian_factor(mu, F)).divexact(d0))
    return (factors[0].embed(2, [0]) * factors[1].embed(2, [1])).canonical()
