"""Presentations of finite-index subgroups (Reidemeister-Schreier)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .groups import AbelianizationMap, FreeWord, GroupPresentation, PresentationError
from .reps import Perm, perm_eval, perm_identity, perm_inverse


class CoverError(ValueError):
    pass


@dataclass(frozen=True)
class CoverData:
    """A finite-index subgroup with its presentation.

    ``words[i]`` is the base-group word of the i-th Schreier generator and
    ``transversal[c]`` the coset representative of coset c.
    """

    base: GroupPresentation
    presentation: GroupPresentation
    words: Tuple[FreeWord, ...]
    transversal: Tuple[FreeWord, ...]
    index: int

    def pull_back_map(self, psi: AbelianizationMap) -> AbelianizationMap:
        """psi restricted to the subgroup (evaluated on the Schreier words)."""
        return AbelianizationMap(psi.b, tuple(psi.apply(w) for w in self.words)).check(self.presentation)

    def euler_consistent(self) -> bool:
        # a 2-complex cover multiplies the Euler characteristic by the index;
        # rewritten relators that reduced to nothing are counted as present
        chi_base = 1 - self.base.ngens + len(self.base.relators)
        chi = 1 - self.presentation.ngens + self.index * len(self.base.relators)
        return chi == self.index * chi_base

    def to_json(self) -> dict:
        b = self.base
        return {"index": self.index,
                "presentation": self.presentation.to_json(),
                "words": {name: b.format_word(w) for name, w in zip(self.presentation.generators, self.words)},
                "transversal": [b.format_word(w) for w in self.transversal]}


def reidemeister_schreier(pres: GroupPresentation, perms: Sequence[Perm]) -> CoverData:
    """Presentation of the stabilizer of coset 0 under the given action.

    Generator g acts on cosets on the right by ``c . g = perms[g]^-1(c)``
    (permutations compose as functions, so this is a right action).  The
    transversal is found breadth first, trying generators in order.
    """
    if len(perms) != pres.ngens:
        raise CoverError("need one permutation per generator")
    n = len(perms[0]) if perms else 1
    if any(sorted(p) != list(range(n)) for p in perms):
        raise CoverError("images must be permutations of the same degree")
    ident = perm_identity(n)
    for i, r in enumerate(pres.relators):
        if perm_eval(perms, r, n) != ident:
            raise CoverError(f"relator {i} is not killed by the quotient")
    right = [perm_inverse(p) for p in perms]     # c . g
    left = [tuple(p) for p in perms]             # c . g^-1

    trans: Dict[int, FreeWord] = {0: FreeWord()}
    tree = set()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for g in range(pres.ngens):
            for e, act in ((1, right), (-1, left)):
                d = act[g][c]
                if d not in trans:
                    trans[d] = trans[c] * FreeWord.generator(g, e)
                    tree.add((c, g) if e > 0 else (d, g))
                    queue.append(d)
    if len(trans) != n:
        raise CoverError(f"action is not transitive ({len(trans)} of {n} cosets reachable)")

    sgen: Dict[Tuple[int, int], int] = {}
    words, names = [], []
    for c in range(n):
        for g in range(pres.ngens):
            if (c, g) in tree:
                continue
            sgen[(c, g)] = len(words)
            d = right[g][c]
            words.append(trans[c] * FreeWord.generator(g) * trans[d].inverse())
            names.append(f"{pres.generators[g]}_{c}" if n > 1 else pres.generators[g])

    rels = []
    for c in range(n):
        for r in pres.relators:
            out, x = [], c
            for g, e in r:
                if e > 0:
                    if (x, g) in sgen:
                        out.append((sgen[(x, g)], 1))
                    x = right[g][x]
                else:
                    y = left[g][x]
                    if (y, g) in sgen:
                        out.append((sgen[(y, g)], -1))
                    x = y
            w = FreeWord(out)
            if w:
                rels.append(w)
    try:
        sub = GroupPresentation(tuple(names), tuple(rels), pres.components if n == 1 else None)
    except PresentationError as e:
        raise CoverError(str(e)) from None
    cover = CoverData(pres, sub, tuple(words), tuple(trans[c] for c in range(n)), n)
    if not cover.euler_consistent():
        raise CoverError("Euler characteristic bookkeeping failed")
    return cover


def cyclic_quotient(psi: AbelianizationMap, phi: Sequence[int], n: int) -> List[Perm]:
    """Permutations of Z/n given by g -> shift by phi(psi(g)) mod n."""
    out = []
    for img in psi.images:
        s = sum(a * b for a, b in zip(phi, img)) % n
        out.append(tuple((i + s) % n for i in range(n)))
    return out
