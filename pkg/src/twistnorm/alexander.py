"""Twisted Alexander polynomials from Fox calculus.

For a presentation <g_1..g_n | r_1..r_m>, a representation alpha into
GL(k, F) and psi into Z^b, every group element w acts through the k x k block
``Phi(w) = alpha(w) * x^psi(w)`` over F[x_1^+-1, ..., x_b^+-1].

The Fox matrix J has block (j, i) = Phi(dr_j/dg_i).  By the fundamental
formula, J * D = 0 where D stacks the blocks Phi(g_i) - I, which is the
presentation of the twisted chain complex of the 2-complex used here:

* Delta^0 is the gcd of the k x k minors of D,
* Delta^1 is the gcd of the (nk - k)-minors of J (or 0 when Delta^0 = 0),
* Delta^2 is 1 when Delta^1 is nonzero, since the presentation has
  deficiency one and H_2 then sits inside a free module of rank zero.

Wada's quotient det(A_j) / det(Phi(g_j) - I), where A_j is J without the
j-th column block, equals Delta^1 / Delta^0 and is the fast path.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Sequence, Tuple

from .fields import Field
from .groups import AbelianizationMap, FreeWord, GroupPresentation, fox_derivative
from .laurent import LaurentPoly, NotDivisible
from .matrices import PolyMatrix, minor_gcd_report, poly_det
from .reps import Representation, mat_inv


class MathInconsistency(ArithmeticError):
    """Two computations that must agree did not."""


@dataclass(frozen=True)
class TwistData:
    presentation: GroupPresentation
    psi: AbelianizationMap
    rep: Representation

    def __post_init__(self):
        self.psi.check(self.presentation)
        self.rep.validate(self.presentation)

    @property
    def field(self) -> Field:
        return self.rep.field

    @property
    def k(self) -> int:
        return self.rep.dim

    @property
    def b(self) -> int:
        return self.psi.b

    def with_psi(self, psi: AbelianizationMap) -> "TwistData":
        return replace(self, psi=psi)

    def dual(self) -> "TwistData":
        """The involuted convention: w -> Phi(w^-1)^T.

        This is the contragredient representation tensored with -psi; it is
        again a homomorphism, so all of the machinery applies unchanged.
        """
        F = self.field
        mats = tuple(tuple(map(tuple, zip(*mat_inv(F, M)))) for M in self.rep.matrices)
        rep = Representation(F, self.k, self.rep.generators, mats)
        psi = AbelianizationMap(self.b, tuple(tuple(-x for x in v) for v in self.psi.images))
        return TwistData(self.presentation, psi, rep)


def _block_terms(data: TwistData, element: Mapping) -> List[List[Dict]]:
    k, F = data.k, data.field
    out = [[{} for _ in range(k)] for _ in range(k)]
    for w, coeff in element.items():
        A = data.rep.evaluate(w)
        e = data.psi.apply(w)
        c = F(coeff)
        for r in range(k):
            for s in range(k):
                if A[r][s]:
                    cell = out[r][s]
                    v = F.add(cell.get(e, F.zero()), F.mul(c, A[r][s]))
                    if v:
                        cell[e] = v
                    else:
                        cell.pop(e, None)
    return out


def _as_element(w) -> Dict:
    if isinstance(w, Mapping):
        return dict(w)
    return {FreeWord(w): 1}


def twist_block(w, data: TwistData) -> PolyMatrix:
    """Phi of a word or of a group-ring element ``{word: coefficient}``."""
    F, b = data.field, data.b
    cells = _block_terms(data, _as_element(w))
    return PolyMatrix(F, b, [[LaurentPoly(F, b, c) for c in row] for row in cells])


def alexander_matrix(data: TwistData, convention: str = "standard") -> PolyMatrix:
    """The (mk) x (nk) Fox matrix with blocks Phi(dr_j/dg_i)."""
    if convention == "involuted":
        data = data.dual()
    elif convention != "standard":
        raise ValueError(f"unknown convention {convention!r}")
    pres, F, b, k = data.presentation, data.field, data.b, data.k
    n = pres.ngens
    zero = LaurentPoly.zero(F, b)
    rows = [[zero] * (n * k) for _ in range(len(pres.relators) * k)]
    for j, r in enumerate(pres.relators):
        for i in sorted(r.generators_used()):
            d = fox_derivative(r, i)
            if not d:
                continue
            cells = _block_terms(data, d)
            for a in range(k):
                for c in range(k):
                    if cells[a][c]:
                        rows[j * k + a][i * k + c] = LaurentPoly(F, b, cells[a][c], _clean=True)
    if not rows:
        return PolyMatrix.empty(F, b, n * k)
    return PolyMatrix(F, b, rows)


def boundary_stack(data: TwistData) -> PolyMatrix:
    """The (nk) x k stack of Phi(g_i) - I."""
    F, b, k = data.field, data.b, data.k
    rows = []
    one = LaurentPoly.one(F, b)
    for i in range(data.presentation.ngens):
        B = twist_block(FreeWord.generator(i), data)
        for a in range(k):
            rows.append([B[a, c] - one if a == c else B[a, c] for c in range(k)])
    if not rows:
        return PolyMatrix.empty(F, b, k)
    return PolyMatrix(F, b, rows)


def delta0(data: TwistData) -> LaurentPoly:
    return minor_gcd_report(boundary_stack(data), data.k)[0].canonical()


def delta1_full(data: TwistData, d0: LaurentPoly | None = None, cap: int | None = None):
    """Delta^1 by the gcd of maximal relevant minors; returns ``(poly, complete)``."""
    if d0 is None:
        d0 = delta0(data)
    zero = LaurentPoly.zero(data.field, data.b)
    if not d0:
        return zero, True
    J = alexander_matrix(data)
    size = J.ncols - data.k
    if J.nrows < size:
        return zero, True
    g, complete = minor_gcd_report(J, size, cap)
    return g.canonical(), complete


def _block_minus_identity(data: TwistData, j: int) -> PolyMatrix:
    B = twist_block(FreeWord.generator(j), data)
    one = LaurentPoly.one(data.field, data.b)
    return PolyMatrix(data.field, data.b,
                      [[B[a, c] - one if a == c else B[a, c] for c in range(data.k)] for a in range(data.k)])


def wada_quotients(data: TwistData, which: Sequence[int] | None = None):
    """``[(j, det A_j, det(Phi(g_j) - I)), ...]`` for admissible j."""
    pres, k = data.presentation, data.k
    n = pres.ngens
    if len(pres.relators) != n - 1:
        raise ValueError("Wada's quotient needs a deficiency-one presentation")
    J = alexander_matrix(data)
    out = []
    for j in (range(n) if which is None else which):
        den = poly_det(_block_minus_identity(data, j))
        if not den:
            continue
        cols = [c for c in range(n * k) if not j * k <= c < (j + 1) * k]
        if J.nrows:
            num = poly_det(J.submatrix(range(J.nrows), cols))
        else:
            num = LaurentPoly.one(data.field, data.b)
        out.append((j, num, den))
    return out


def delta1_wada(data: TwistData, d0: LaurentPoly | None = None, all_j: bool = True) -> LaurentPoly:
    """Delta^1 = W_j * Delta^0 with W_j = det(A_j) / det(Phi(g_j) - I).

    With ``all_j`` every admissible j is computed and the quotients are
    checked to agree up to units.  Raises ValueError when no j is admissible.
    """
    if d0 is None:
        d0 = delta0(data)
    if not d0:
        return LaurentPoly.zero(data.field, data.b)
    n = data.presentation.ngens
    order = list(range(n))
    if all_j:
        quots = wada_quotients(data, order)
    else:
        quots = []
        for j in order:
            quots = wada_quotients(data, [j])
            if quots:
                break
    if not quots:
        raise ValueError("no generator with det(Phi(g) - I) != 0")
    _, num, den = quots[0]
    for j, nj, dj in quots[1:]:
        if not (num * dj).unit_equal(nj * den):
            raise MathInconsistency(f"Wada quotients for generators {quots[0][0]} and {j} disagree")
    try:
        return (num * d0).divexact(den).canonical()
    except NotDivisible:
        raise MathInconsistency("Wada quotient times Delta^0 is not a Laurent polynomial") from None


def delta2(data: TwistData, d1: LaurentPoly) -> Tuple[LaurentPoly, bool]:
    """``(Delta^2, determined)``; undetermined (and reported as 0) when Delta^1 = 0."""
    if len(data.presentation.relators) > data.presentation.ngens - 1:
        raise ValueError("Delta^2 shortcut needs deficiency at least one")
    if d1:
        return LaurentPoly.one(data.field, data.b), True
    return LaurentPoly.zero(data.field, data.b), False


@dataclass(frozen=True)
class AlexanderResult:
    delta0: LaurentPoly
    delta1: LaurentPoly
    delta2: LaurentPoly
    b: int
    k: int
    field: Field
    method: str
    divisor_only: bool = False
    delta2_determined: bool = True
    timings: Mapping[str, float] = field(default_factory=dict, compare=False)

    def degrees(self, i: int = 0):
        """Breadth of Delta^1, Delta^0, Delta^2 in variable i."""
        return tuple(p.breadth(i) if p else None for p in (self.delta1, self.delta0, self.delta2))

    def to_json(self, names: Sequence[str] | None = None, timings: bool = True) -> dict:
        names = list(names) if names else None
        d = {"field": self.field.p, "k": self.k, "b": self.b, "method": self.method,
             "divisor_only": self.divisor_only}
        for key, p in (("delta0", self.delta0), ("delta1", self.delta1), ("delta2", self.delta2)):
            d[key] = {"terms": p.to_terms(), "text": p.format(names)}
        d["delta2_determined"] = self.delta2_determined
        if timings:
            d["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return d


def compute(data: TwistData, method: str = "wada", verify: bool = False,
            minor_cap: int | None = None) -> AlexanderResult:
    """Delta^0, Delta^1 and Delta^2 of ``data``.

    ``method`` is "wada" (falls back to the minor gcd when Wada is not
    applicable) or "full".  ``verify`` computes both and insists on agreement.
    """
    t0 = time.perf_counter()
    timings = {}
    d0 = delta0(data)
    timings["delta0"] = time.perf_counter() - t0
    complete = True
    used = method
    d1 = None
    if method == "wada":
        t = time.perf_counter()
        try:
            d1 = delta1_wada(data, d0)
        except ValueError:
            used = "full-minor-gcd"
        timings["wada"] = time.perf_counter() - t
    elif method != "full":
        raise ValueError(f"unknown method {method!r}")
    if d1 is None or verify:
        t = time.perf_counter()
        full, complete = delta1_full(data, d0, minor_cap)
        timings["full"] = time.perf_counter() - t
        if d1 is not None and complete and not d1.unit_equal(full):
            raise MathInconsistency(f"Wada gives {d1.format()} but minors give {full.format()}")
        if d1 is None:
            d1 = full
        if method == "full":
            used = "full-minor-gcd"
    else:
        used = "wada"
    d2, determined = delta2(data, d1)
    timings["total"] = time.perf_counter() - t0
    return AlexanderResult(d0, d1, d2, data.b, data.k, data.field, used,
                           divisor_only=not complete, delta2_determined=determined, timings=timings)


def one_variable_suite(data: TwistData, phi: Sequence[int], **kw) -> AlexanderResult:
    """Recompute with psi replaced by phi o psi (matrix-level, not by specializing Delta)."""
    phi = [int(x) for x in phi]
    if not any(phi):
        raise ValueError("phi must be nonzero")
    return compute(data.with_psi(data.psi.compose(phi)), **kw)


@dataclass(frozen=True)
class TuraevReport:
    phi: Tuple[int, ...]
    holds: bool
    lhs: LaurentPoly
    rhs: LaurentPoly

    def to_json(self):
        return {"phi": list(self.phi), "holds": self.holds,
                "lhs": self.lhs.to_terms(), "rhs": self.rhs.to_terms()}


def check_turaev_identity(data: TwistData, phi: Sequence[int],
                          multivariable: LaurentPoly | None = None, **kw) -> TuraevReport:
    """Compare Delta_phi with phi(Delta) * Delta^0_phi * Delta^2_phi."""
    if data.b <= 1:
        raise ValueError("the identity concerns b > 1")
    if multivariable is None:
        multivariable = compute(data, **kw).delta1
    one = one_variable_suite(data, phi, **kw)
    lhs = one.delta1
    rhs = multivariable.specialize(phi) * one.delta0 * one.delta2
    holds = lhs.unit_equal(rhs)
    return TuraevReport(tuple(int(x) for x in phi), holds, lhs.canonical(), rhs.canonical())
