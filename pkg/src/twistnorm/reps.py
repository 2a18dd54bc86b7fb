"""Representations of finitely presented groups into GL(k, F).

Matrices are lists of rows of field elements.  Words act by matrix product
left to right, so ``rho(gh) = rho(g) rho(h)``.  Permutations compose as
functions (``(s*t)(i) = s(t(i))``) and permutation matrices satisfy
``P_s e_i = e_s(i)``, which keeps both conventions homomorphic.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from .fields import Field
from .groups import GroupPresentation
from .smith import smith_normal_form


class RepresentationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# small dense matrices over a field


def mat_identity(F: Field, k: int):
    return [[F.one() if i == j else F.zero() for j in range(k)] for i in range(k)]


def mat_mul(F: Field, A, B):
    k, m = len(A), len(B[0]) if B else 0
    inner = len(B)
    out = []
    for i in range(k):
        row = []
        for j in range(m):
            acc = F.zero()
            for t in range(inner):
                if A[i][t] and B[t][j]:
                    acc = F.add(acc, F.mul(A[i][t], B[t][j]))
            row.append(acc)
        out.append(row)
    return out


def mat_inv(F: Field, A):
    """Gauss-Jordan inverse; raises on singular input."""
    k = len(A)
    M = [list(r) + [F.one() if i == j else F.zero() for j in range(k)] for i, r in enumerate(A)]
    for c in range(k):
        p = next((r for r in range(c, k) if M[r][c]), None)
        if p is None:
            raise RepresentationError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        inv = F.inv(M[c][c])
        M[c] = [F.mul(x, inv) for x in M[c]]
        for r in range(k):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    return [r[k:] for r in M]


def mat_det(F: Field, A):
    k = len(A)
    M = [list(r) for r in A]
    det = F.one()
    for c in range(k):
        p = next((r for r in range(c, k) if M[r][c]), None)
        if p is None:
            return F.zero()
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for r in range(c + 1, k):
            if M[r][c]:
                f = F.mul(M[r][c], inv)
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    return det


def _freeze(A):
    return tuple(tuple(r) for r in A)


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class Representation:
    """Generator images in GL(k, F), in generator order."""

    field: Field
    dim: int
    generators: Tuple[str, ...]
    matrices: Tuple[tuple, ...]

    def __post_init__(self):
        F, k = self.field, self.dim
        if len(self.matrices) != len(self.generators):
            raise RepresentationError("one matrix per generator required")
        mats = []
        for name, M in zip(self.generators, self.matrices):
            if len(M) != k or any(len(r) != k for r in M):
                raise RepresentationError(f"image of {name} is not {k}x{k}")
            M = [[F(x) for x in r] for r in M]
            if not mat_det(F, M):
                raise RepresentationError(f"image of {name} is singular")
            mats.append(_freeze(M))
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "matrices", tuple(mats))
        object.__setattr__(self, "_inverses", tuple(_freeze(mat_inv(F, M)) for M in mats))

    @classmethod
    def trivial(cls, pres: GroupPresentation, field: Field, dim: int = 1):
        I = _freeze(mat_identity(field, dim))
        return cls(field, dim, pres.generators, (I,) * pres.ngens)

    @classmethod
    def from_dict(cls, pres: GroupPresentation, field: Field, images: Mapping[str, Sequence]):
        missing = set(pres.generators) - set(images)
        if missing:
            raise RepresentationError(f"no image for generators {sorted(missing)}")
        mats = tuple(images[g] for g in pres.generators)
        return cls(field, len(mats[0]) if mats else 1, pres.generators, mats).validate(pres)

    def image(self, g: int, e: int = 1):
        return self.matrices[g] if e > 0 else self._inverses[g]

    def evaluate(self, w) -> tuple:
        F = self.field
        M = mat_identity(F, self.dim)
        for g, e in w:
            M = mat_mul(F, M, self.image(g, e))
        return _freeze(M)

    def first_violation(self, pres: GroupPresentation):
        if tuple(pres.generators) != self.generators:
            raise RepresentationError("generator names do not match the presentation")
        I = _freeze(mat_identity(self.field, self.dim))
        for i, r in enumerate(pres.relators):
            if self.evaluate(r) != I:
                return i
        return None

    def validate(self, pres: GroupPresentation) -> "Representation":
        bad = self.first_violation(pres)
        if bad is not None:
            raise RepresentationError(
                f"relator {bad} ({pres.format_word(pres.relators[bad])}) does not map to the identity")
        return self

    def is_valid(self, pres: GroupPresentation) -> bool:
        return self.first_violation(pres) is None

    def conjugate(self, P) -> "Representation":
        """g -> P^-1 rho(g) P."""
        F = self.field
        Pi = mat_inv(F, P)
        mats = tuple(_freeze(mat_mul(F, mat_mul(F, Pi, M), P)) for M in self.matrices)
        return Representation(F, self.dim, self.generators, mats)

    def to_json(self) -> dict:
        F = self.field

        def enc(x):
            if F.p:
                return int(x)
            return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {"field": F.p, "dim": self.dim,
                "images": {g: [[enc(x) for x in r] for r in M] for g, M in zip(self.generators, self.matrices)}}

    @classmethod
    def from_json(cls, d: Mapping, pres: GroupPresentation):
        try:
            F = Field(int(d["field"]))
            images = {g: [[F(Fraction(x)) if isinstance(x, str) else F(x) for x in r] for r in M]
                      for g, M in d["images"].items()}
        except (KeyError, TypeError, ValueError) as e:
            raise RepresentationError(f"bad representation JSON: {e}") from None
        rep = cls.from_dict(pres, F, images)
        if "dim" in d and int(d["dim"]) != rep.dim:
            raise RepresentationError("declared dim does not match the matrices")
        return rep


def validate(rep: Representation, pres: GroupPresentation) -> Representation:
    return rep.validate(pres)


def pullback(rep: Representation, words: Sequence, pres: GroupPresentation) -> Representation:
    """Representation of ``pres`` sending its i-th generator to rep(words[i]).

    ``words`` are words in the group ``rep`` lives on: Schreier generators'
    underlying words for a cover, or the images of a homomorphism.
    """
    if len(words) != pres.ngens:
        raise RepresentationError("need one word per generator")
    mats = tuple(rep.evaluate(w) for w in words)
    return Representation(rep.field, rep.dim, pres.generators, mats).validate(pres)


# ---------------------------------------------------------------------------
# permutations


Perm = Tuple[int, ...]


def perm_compose(s: Perm, t: Perm) -> Perm:
    """s * t, i.e. apply t first."""
    return tuple(s[i] for i in t)


def perm_inverse(s: Perm) -> Perm:
    out = [0] * len(s)
    for i, j in enumerate(s):
        out[j] = i
    return tuple(out)


def perm_identity(q: int) -> Perm:
    return tuple(range(q))


def perm_sign(s: Perm) -> int:
    sign, seen = 1, set()
    for i in range(len(s)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = s[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def parse_cycles(text: str, q: int) -> Perm:
    """``"(1 2)(3)"`` -> 0-based image tuple on q points."""
    img = list(range(q))
    text = text.strip()
    if text in ("", "()", "id", "e"):
        return tuple(img)
    if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+", text):
        raise RepresentationError(f"bad cycle notation {text!r}")
    seen = set()
    for cyc in re.findall(r"\(([^)]*)\)", text):
        pts = [int(x) - 1 for x in re.split(r"[\s,]+", cyc.strip())]
        for p in pts:
            if not 0 <= p < q or p in seen:
                raise RepresentationError(f"bad point {p + 1} in {text!r}")
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def format_cycles(s: Perm) -> str:
    out, seen = [], set()
    for i in range(len(s)):
        if i in seen or s[i] == i:
            seen.add(i)
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = s[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def perm_eval(perms: Sequence[Perm], w, q: int) -> Perm:
    inv = {}
    out = perm_identity(q)
    for g, e in w:
        if e > 0:
            out = perm_compose(out, perms[g])
        else:
            if g not in inv:
                inv[g] = perm_inverse(perms[g])
            out = perm_compose(out, inv[g])
    return out


@dataclass(frozen=True)
class PermutationAssignment:
    q: int
    perms: Tuple[Perm, ...]

    def check(self, pres: GroupPresentation) -> "PermutationAssignment":
        ident = perm_identity(self.q)
        for i, r in enumerate(pres.relators):
            if perm_eval(self.perms, r, self.q) != ident:
                raise RepresentationError(f"relator {i} is not killed by the permutation assignment")
        return self

    def image_order(self) -> int:
        return len(_generated(self.perms, self.q))

    def is_abelian(self) -> bool:
        return all(perm_compose(a, b) == perm_compose(b, a)
                   for a, b in itertools.combinations(set(self.perms), 2))

    def is_surjective(self) -> bool:
        return self.image_order() == factorial(self.q)

    def is_transitive(self) -> bool:
        seen, todo = {0}, [0]
        while todo:
            i = todo.pop()
            for s in self.perms:
                for j in (s[i], perm_inverse(s)[i]):
                    if j not in seen:
                        seen.add(j)
                        todo.append(j)
        return len(seen) == self.q

    def to_json(self, pres: GroupPresentation) -> dict:
        return {"q": self.q, "images": {g: format_cycles(s) for g, s in zip(pres.generators, self.perms)}}

    @classmethod
    def from_json(cls, d: Mapping, pres: GroupPresentation):
        q = int(d["q"])
        imgs = d["images"]
        return cls(q, tuple(parse_cycles(imgs[g], q) for g in pres.generators)).check(pres)


def _generated(perms, q):
    ident = perm_identity(q)
    group, todo = {ident}, [ident]
    gens = [s for s in set(perms) if s != ident]
    while todo:
        x = todo.pop()
        for s in gens:
            y = perm_compose(x, s)
            if y not in group:
                group.add(y)
                todo.append(y)
    return group


def _class_reps(q):
    """One permutation per cycle type."""
    reps, seen = [], set()
    for s in itertools.permutations(range(q)):
        ct = _cycle_type(s)
        if ct not in seen:
            seen.add(ct)
            reps.append(s)
    return reps


def _cycle_type(s):
    lengths, seen = [], set()
    for i in range(len(s)):
        if i in seen:
            continue
        j, n = i, 0
        while j not in seen:
            seen.add(j)
            j = s[j]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths))


def _canonical_conjugate(perms, conjugators):
    best = None
    for c in conjugators:
        ci = perm_inverse(c)
        cand = tuple(perm_compose(perm_compose(ci, s), c) for s in perms)
        if best is None or cand < best:
            best = cand
    return best


def search_symmetric(pres: GroupPresentation, q: int, limit: int | None = None,
                     nonabelian: bool = True, surjective: bool = False,
                     fixed: Mapping[str, str] | None = None) -> List[PermutationAssignment]:
    """Homomorphisms to S_q up to simultaneous conjugation.

    Backtracking over generator images.  Whenever a relator has exactly one
    unassigned generator and it occurs once, that generator's image is forced
    and is filled in directly, so for Wirtinger presentations the search only
    branches once per strand that nothing determines yet.  ``fixed`` pins some
    generators (names -> cycle notation); otherwise the first generator is
    restricted to one representative per cycle type.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    n = pres.ngens
    if limit is not None and limit <= 0:
        return []
    all_perms = list(itertools.permutations(range(q)))
    conjugators = all_perms
    rels = [list(r) for r in pres.relators]
    ident = perm_identity(q)
    by_gen: Dict[int, List[int]] = {}
    for i, r in enumerate(rels):
        for g in {g for g, _ in r}:
            by_gen.setdefault(g, []).append(i)

    pinned = {}
    for name, cyc in (fixed or {}).items():
        pinned[pres.index(name)] = parse_cycles(cyc, q)
    order = sorted(range(n), key=lambda g: (g not in pinned, g))

    found: Dict[tuple, PermutationAssignment] = {}

    def solve(assign, ri):
        """Force the lone unknown in relator ri, if possible."""
        r = rels[ri]
        unknown = [k for k, (g, _) in enumerate(r) if assign[g] is None]
        if not unknown:
            return None if perm_eval(assign, r, q) == ident else False
        if len(unknown) > 1:
            return None
        k = unknown[0]
        g, e = r[k]
        left = perm_eval(assign, r[:k], q)
        right = perm_eval(assign, r[k + 1:], q)
        # left * x * right = 1  =>  x = left^-1 right^-1
        x = perm_compose(perm_inverse(left), perm_inverse(right))
        return g, (x if e > 0 else perm_inverse(x))

    def propagate(assign, touched):
        queue = list(touched)
        while queue:
            g = queue.pop()
            for ri in by_gen.get(g, ()):
                res = solve(assign, ri)
                if res is False:
                    return False
                if res:
                    h, val = res
                    if assign[h] is None:
                        assign[h] = val
                        queue.append(h)
                    elif assign[h] != val:
                        return False
        return True

    def done():
        return limit is not None and len(found) >= limit

    def record(assign):
        pa = PermutationAssignment(q, tuple(assign))
        if nonabelian and pa.is_abelian():
            return
        if surjective and not pa.is_surjective():
            return
        key = tuple(assign) if pinned else _canonical_conjugate(assign, conjugators)
        if key not in found:
            found[key] = PermutationAssignment(q, key)

    def rec(assign):
        if done():
            return
        nxt = next((g for g in order if assign[g] is None), None)
        if nxt is None:
            if all(perm_eval(assign, r, q) == ident for r in rels):
                record(assign)
            return
        if nxt in pinned:
            choices = [pinned[nxt]]
        elif not pinned and all(a is None for a in assign):
            choices = _class_reps(q)
        else:
            choices = all_perms
        for s in choices:
            trial = list(assign)
            trial[nxt] = s
            if propagate(trial, [nxt]):
                rec(trial)
            if done():
                return

    rec([None] * n)
    return [found[k] for k in sorted(found)]


def permutation_matrix(s: Perm, F: Field):
    q = len(s)
    M = [[F.zero()] * q for _ in range(q)]
    for i in range(q):
        M[s[i]][i] = F.one()
    return M


def standard_module_matrix(s: Perm, F: Field):
    """Action on the sum-zero subspace in the basis v_i = e_i - e_q."""
    q = len(s)
    k = q - 1
    M = [[F.zero()] * k for _ in range(k)]
    top = s[q - 1]
    for i in range(k):
        # s(v_i) = v_s(i) - v_s(q), with v_q = 0
        if s[i] != q - 1:
            M[s[i]][i] = F.add(M[s[i]][i], F.one())
        if top != q - 1:
            M[top][i] = F.sub(M[top][i], F.one())
    return M


def standard_module(assign: PermutationAssignment, pres: GroupPresentation, p: int) -> Representation:
    F = Field(p)
    mats = tuple(standard_module_matrix(s, F) for s in assign.perms)
    return Representation(F, assign.q - 1, pres.generators, mats).validate(pres)


def permutation_representation(assign: PermutationAssignment, pres: GroupPresentation, p: int) -> Representation:
    F = Field(p)
    mats = tuple(permutation_matrix(s, F) for s in assign.perms)
    return Representation(F, assign.q, pres.generators, mats).validate(pres)


# ---------------------------------------------------------------------------
# characters


def count_characters(pres: GroupPresentation, p: int) -> int:
    snf = smith_normal_form(pres.exponent_matrix(), pres.ngens)
    n = p - 1
    count = n ** (pres.ngens - snf.rank)
    for d in snf.factors:
        count *= gcd(d, n)
    return count


def enumerate_characters(pres: GroupPresentation, p: int, limit: int | None = None) -> Iterator[Representation]:
    """All homomorphisms to F_p^*, lazily.

    A character is an exponent vector c (powers of a primitive root) with
    A c = 0 mod p-1 for the relator matrix A = U D V.  Writing y = V c, the
    conditions decouple into d_i y_i = 0 mod p-1.
    """
    F = Field(p)
    if p == 2:
        yield Representation.trivial(pres, F)
        return
    n = p - 1
    root = F.primitive_root()
    ngens = pres.ngens
    snf = smith_normal_form(pres.exponent_matrix(), ngens)
    ranges = []
    for i in range(ngens):
        if i < snf.rank:
            step = n // gcd(snf.factors[i], n)
            ranges.append(range(0, n, step))
        else:
            ranges.append(range(n))
    emitted = 0
    for y in itertools.product(*ranges):
        if limit is not None and emitted >= limit:
            return
        c = [sum(snf.Vinv[j][i] * y[i] for i in range(ngens)) % n for j in range(ngens)]
        mats = tuple(((pow(root, cj, p),),) for cj in c)
        yield Representation(F, 1, pres.generators, mats).validate(pres)
        emitted += 1
