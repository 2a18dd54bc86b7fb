"""Free-group words, finite presentations, Fox calculus and abelianization."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .smith import smith_normal_form


class PresentationError(ValueError):
    pass


class FreeWord(tuple):
    """A freely reduced word: a tuple of ``(generator_index, +1 | -1)`` letters."""

    def __new__(cls, letters: Iterable = ()):
        return super().__new__(cls, _reduce(letters))

    @classmethod
    def generator(cls, i: int, e: int = 1):
        return cls([(i, 1 if e > 0 else -1)] * abs(e))

    def inverse(self) -> "FreeWord":
        return FreeWord((g, -e) for g, e in reversed(self))

    def __mul__(self, other):
        return FreeWord(tuple(self) + tuple(other))

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        return FreeWord(tuple(base) * abs(n))

    def exponent_sums(self, ngens: int) -> List[int]:
        v = [0] * ngens
        for g, e in self:
            v[g] += e
        return v

    def generators_used(self):
        return {g for g, _ in self}

    def format(self, names: Sequence[str]) -> str:
        return " ".join(names[g] if e > 0 else f"{names[g]}^-1" for g, e in self)

    def __repr__(self):
        return f"FreeWord({list(self)})"


def _reduce(letters) -> tuple:
    out = []
    for g, e in letters:
        if e not in (1, -1):
            raise PresentationError(f"letter exponent must be +-1, got {e}")
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((int(g), int(e)))
    return tuple(out)


def word_reduce(w) -> FreeWord:
    return FreeWord(w)


# ---------------------------------------------------------------------------
# Fox calculus


def fox_derivative(w: Sequence, g: int) -> Dict[FreeWord, int]:
    """Fox derivative of ``w`` with respect to generator ``g``.

    The result is an element of Z[F] stored as ``{word: coefficient}``.
    Uses d(uv) = du + u dv, dg/dg = 1 and d(g^-1)/dg = -g^-1.
    """
    out: Dict[FreeWord, int] = {}
    prefix: list = []
    for letter in w:
        h, e = letter
        if e > 0:
            if h == g:
                key = FreeWord(prefix)
                out[key] = out.get(key, 0) + 1
            prefix.append(letter)
        else:
            prefix.append(letter)
            if h == g:
                key = FreeWord(prefix)
                out[key] = out.get(key, 0) - 1
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# presentations

_LETTER = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class GroupPresentation:
    generators: Tuple[str, ...]
    relators: Tuple[FreeWord, ...]
    components: Mapping[str, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        rels = tuple(FreeWord(r) for r in self.relators)
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise PresentationError("duplicate generator names")
        for k, r in enumerate(rels):
            if not r:
                raise PresentationError(f"relator {k} is trivial")
            if any(g >= n or g < 0 for g, _ in r):
                raise PresentationError(f"relator {k} uses an unknown generator")
        object.__setattr__(self, "relators", rels)
        if self.components is not None:
            comps = dict(self.components)
            missing = set(self.generators) - set(comps)
            if missing:
                raise PresentationError(f"component labels missing for {sorted(missing)}")
            object.__setattr__(self, "components", comps)

    @property
    def ngens(self):
        return len(self.generators)

    @property
    def deficiency(self):
        return len(self.generators) - len(self.relators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def parse_word(self, text: str) -> FreeWord:
        letters = []
        for tok in text.split():
            m = _LETTER.match(tok)
            if not m:
                raise PresentationError(f"bad letter {tok!r}")
            g = self.index(m.group(1))
            e = int(m.group(2) or 1)
            letters.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return FreeWord(letters)

    def format_word(self, w) -> str:
        return FreeWord(w).format(self.generators)

    @classmethod
    def from_strings(cls, generators: Sequence[str], relators: Sequence[str], components=None):
        shell = cls(tuple(generators), (), None)
        rels = tuple(shell.parse_word(r) for r in relators)
        return cls(tuple(generators), rels, components)

    def exponent_matrix(self) -> List[List[int]]:
        return [r.exponent_sums(self.ngens) for r in self.relators]

    def to_json(self) -> dict:
        d = {"generators": list(self.generators),
             "relators": [self.format_word(r) for r in self.relators]}
        if self.components is not None:
            d["components"] = dict(self.components)
        return d

    @classmethod
    def from_json(cls, d: Mapping):
        if "generators" not in d or "relators" not in d:
            raise PresentationError("presentation JSON needs 'generators' and 'relators'")
        return cls.from_strings(d["generators"], d["relators"], d.get("components"))

    @classmethod
    def loads(cls, text: str):
        return cls.from_json(json.loads(text))


# ---------------------------------------------------------------------------
# abelianization


@dataclass(frozen=True)
class AbelianizationMap:
    """A homomorphism to Z^b, given by one image vector per generator."""

    b: int
    images: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        imgs = tuple(tuple(int(x) for x in v) for v in self.images)
        if any(len(v) != self.b for v in imgs):
            raise PresentationError("image vectors must have length b")
        object.__setattr__(self, "images", imgs)

    def apply(self, w) -> Tuple[int, ...]:
        v = [0] * self.b
        for g, e in w:
            img = self.images[g]
            for i in range(self.b):
                v[i] += e * img[i]
        return tuple(v)

    def check(self, pres: GroupPresentation):
        if len(self.images) != pres.ngens:
            raise PresentationError("abelianization map does not match the generator count")
        for k, r in enumerate(pres.relators):
            if any(self.apply(r)):
                raise PresentationError(f"relator {k} does not map to 0")
        return self

    def compose(self, phi: Sequence[int]) -> "AbelianizationMap":
        """phi o psi, a map to Z."""
        phi = [int(x) for x in phi]
        if len(phi) != self.b:
            raise ValueError("covector length must equal b")
        return AbelianizationMap(1, tuple((sum(a * c for a, c in zip(phi, v)),) for v in self.images))

    def image_rank(self) -> int:
        from .smith import integer_rank
        return integer_rank([list(v) for v in self.images], self.b)

    @property
    def rationally_surjective(self) -> bool:
        return self.image_rank() == self.b

    def to_json(self) -> dict:
        return {"b": self.b, "images": [list(v) for v in self.images]}

    @classmethod
    def from_json(cls, d):
        return cls(int(d["b"]), tuple(tuple(v) for v in d["images"]))


def _row_hnf_transform(Q: List[List[int]]):
    """Row-style Hermite normal form T*Q = H; returns T (unimodular)."""
    m = len(Q)
    n = len(Q[0]) if m else 0
    H = [list(r) for r in Q]
    T = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[p] = H[p], H[r]
            T[r], T[p] = T[p], T[r]
            again = False
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    T[i] = [a - q * b for a, b in zip(T[i], T[r])]
                    if H[i][c]:
                        again = True
            if not again:
                break
        if r < m and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
                T[r] = [-a for a in T[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    T[i] = [a - q * b for a, b in zip(T[i], T[r])]
            r += 1
    return T


def abelianization(pres: GroupPresentation) -> AbelianizationMap:
    """The natural surjection onto H_1 / torsion = Z^b.

    The basis of Z^b is normalized (Hermite form) so that, e.g., a presentation
    of Z^2 on two generators maps them to the standard basis vectors.
    """
    n = pres.ngens
    snf = smith_normal_form(pres.exponent_matrix(), n)
    r = snf.rank
    b = n - r
    # generator j has coordinates Vinv row j; keep the free coordinates
    P = [[snf.Vinv[j][i] for i in range(r, n)] for j in range(n)]
    if b:
        Qt = [list(col) for col in zip(*P)]
        T = _row_hnf_transform(Qt)
        P = [[sum(P[j][k] * T[i][k] for k in range(b)) for i in range(b)] for j in range(n)]
    return AbelianizationMap(b, tuple(tuple(row) for row in P)).check(pres)
