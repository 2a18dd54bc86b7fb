"""Planar-diagram (PD) codes of oriented links and their Wirtinger presentations.

A crossing ``(a, b, c, d)`` lists its four arc labels counterclockwise,
starting at the incoming under-arc ``a``; the under-strand leaves along ``c``.
The over-strand runs either ``b -> d`` or ``d -> b``; its direction is
inferred from the rest of the diagram (every arc has one head and one tail).
Only when that leaves a choice (a component that never passes under) does the
label succession ``d = b + 1`` decide.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .groups import AbelianizationMap, FreeWord, GroupPresentation

_CROSSING = re.compile(r"X\[([^\]]*)\]")


class PDError(ValueError):
    """Malformed or inconsistent PD code.  ``kind`` is arity, labels,
    orientation or planarity; ``where`` locates the problem."""

    def __init__(self, kind: str, message: str, where=None):
        self.kind = kind
        self.where = where
        loc = f" (at {where})" if where is not None else ""
        super().__init__(f"{kind} error: {message}{loc}")


@dataclass(frozen=True)
class PDCode:
    """A validated PD code.

    ``over_forward[i]`` is True when the over-strand of crossing ``i`` runs
    b -> d.  ``components`` lists each component's arc labels in the order
    of travel, and ``loops`` counts extra crossingless unknotted circles.
    """

    crossings: Tuple[Tuple[int, int, int, int], ...]
    over_forward: Tuple[bool, ...]
    components: Tuple[Tuple[int, ...], ...]
    loops: int = 0

    @property
    def mu(self) -> int:
        return len(self.components) + self.loops

    @property
    def labels(self):
        return sorted({x for c in self.crossings for x in c})

    def component_of(self) -> Dict[int, int]:
        return {lab: i for i, comp in enumerate(self.components) for lab in comp}

    def signs(self) -> Tuple[int, ...]:
        """+1 when the over-strand runs d -> b (right-handed), else -1."""
        return tuple(-1 if f else 1 for f in self.over_forward)

    def writhe(self) -> int:
        return sum(self.signs())

    def ends(self) -> Dict[int, Tuple[Tuple[int, int], Tuple[int, int]]]:
        """label -> ((crossing, slot) of its tail, (crossing, slot) of its head)."""
        tail, head = {}, {}
        for i, (c, fwd) in enumerate(zip(self.crossings, self.over_forward)):
            head_slots = (0, 1) if fwd else (0, 3)
            for s in range(4):
                (head if s in head_slots else tail)[c[s]] = (i, s)
        return {lab: (tail[lab], head[lab]) for lab in tail}

    def to_text(self) -> str:
        body = " ".join("X[%d,%d,%d,%d]" % c for c in self.crossings)
        return (body + " O" * self.loops).strip()

    def to_json(self) -> dict:
        d = {"pd": [list(c) for c in self.crossings]}
        if self.loops:
            d["loops"] = self.loops
        return d


# ---------------------------------------------------------------------------
# parsing


def parse_pd(text) -> PDCode:
    """Parse ``X[a,b,c,d] ...`` text or ``{"pd": [[a,b,c,d], ...]}`` JSON.

    A bare ``O`` token (or ``"loops": n`` in JSON) adds a crossingless
    unknotted component, so the unknot is just ``"O"``.
    """
    if isinstance(text, dict):
        return pd_from_tuples(text.get("pd", []), int(text.get("loops", 0)))
    if isinstance(text, (list, tuple)):
        return pd_from_tuples(text)
    s = text.strip()
    if s.startswith("{"):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as e:
            raise PDError("syntax", str(e)) from None
        if not isinstance(data, dict) or "pd" not in data:
            raise PDError("syntax", "JSON input needs a 'pd' key")
        return parse_pd(data)
    s = re.sub(r"^PD\s*\[(.*)\]\s*$", r"\1", s, flags=re.S)
    tuples, loops, pos = [], 0, 0
    for m in re.finditer(r"X\[[^\]]*\]|\S+", s):
        tok = m.group(0).strip(",")
        if not tok:
            continue
        if tok in ("O", "Loop[]"):
            loops += 1
            continue
        mm = _CROSSING.fullmatch(tok)
        if not mm:
            raise PDError("syntax", f"unexpected token {tok!r}", where=f"character {m.start()}")
        try:
            vals = [int(v) for v in mm.group(1).split(",") if v.strip()]
        except ValueError:
            raise PDError("syntax", f"non-integer label in {tok!r}", where=f"crossing {pos}") from None
        tuples.append(vals)
        pos += 1
    return pd_from_tuples(tuples, loops)


def pd_from_tuples(tuples: Sequence[Sequence[int]], loops: int = 0) -> PDCode:
    xs = []
    for i, t in enumerate(tuples):
        t = list(t)
        if len(t) != 4:
            raise PDError("arity", f"crossing has {len(t)} labels, expected 4", where=f"crossing {i}")
        if any(int(v) != v or v < 0 for v in t):
            raise PDError("labels", "labels must be non-negative integers", where=f"crossing {i}")
        xs.append(tuple(int(v) for v in t))
    occ: Dict[int, List[Tuple[int, int]]] = {}
    for i, c in enumerate(xs):
        for s, lab in enumerate(c):
            occ.setdefault(lab, []).append((i, s))
    for lab, where in sorted(occ.items()):
        if len(where) != 2:
            raise PDError("labels", f"arc {lab} used {len(where)} times, expected 2",
                          where=f"crossings {sorted({w[0] for w in where})}")
    fwd = _orient(xs, occ)
    comps = _trace(xs, fwd, occ)
    _check_planar(xs, occ)
    return PDCode(tuple(xs), tuple(fwd), comps, loops)


def _orient(xs, occ):
    """Solve for over-strand directions.

    state[(i, s)] is True when the arc at slot s points into crossing i.
    """
    state = {}
    for i in range(len(xs)):
        state[(i, 0)] = True
        state[(i, 2)] = False
    fwd: List[bool | None] = [None] * len(xs)

    def other_end(i, s):
        a, b = occ[xs[i][s]]
        return b if a == (i, s) else a

    def assign(i, s, val, queue):
        old = state.get((i, s))
        if old is None:
            state[(i, s)] = val
            queue.append((i, s))
        elif old != val:
            raise PDError("orientation", f"arc {xs[i][s]} would need two heads or two tails",
                          where=f"crossing {i}")

    def propagate(queue):
        while queue:
            i, s = queue.pop()
            val = state[(i, s)]
            j, t = other_end(i, s)
            assign(j, t, not val, queue)
            if s in (1, 3):
                assign(i, 4 - s, not val, queue)

    propagate([(i, s) for i in range(len(xs)) for s in (0, 2)])
    n = 2 * len(xs)
    for i, c in enumerate(xs):
        if state.get((i, 1)) is None:
            # no under-passes constrain this strand; fall back to label order
            b, d = c[1], c[3]
            forward = d == b + 1 or (b == n and d == 1) or not (b == d + 1 or (d == n and b == 1))
            assign(i, 1, forward, q := [])
            propagate(q)
    for i in range(len(xs)):
        fwd[i] = state[(i, 1)]
    return fwd


def _next_label(xs, fwd, occ_head):
    """label -> label that follows it along its component."""
    nxt = {}
    for lab, (i, s) in occ_head.items():
        if s == 0:
            nxt[lab] = xs[i][2]
        elif s == 1:
            nxt[lab] = xs[i][3]
        else:
            nxt[lab] = xs[i][1]
    return nxt


def _heads(xs, fwd):
    head = {}
    for i, c in enumerate(xs):
        for s in ((0, 1) if fwd[i] else (0, 3)):
            head[c[s]] = (i, s)
    return head


def _trace(xs, fwd, occ):
    nxt = _next_label(xs, fwd, _heads(xs, fwd))
    seen, comps = set(), []
    for start in sorted(nxt):
        if start in seen:
            continue
        comp, lab = [], start
        while lab not in seen:
            seen.add(lab)
            comp.append(lab)
            lab = nxt[lab]
        if lab != start:
            raise PDError("orientation", "strand succession does not close up", where=f"arc {start}")
        comps.append(tuple(comp))
    return tuple(comps)


def _check_planar(xs, occ):
    """Euler characteristic check: faces = crossings + 2 per connected piece."""
    if not xs:
        return
    darts = [(i, s) for i in range(len(xs)) for s in range(4)]

    def partner(i, s):
        a, b = occ[xs[i][s]]
        return b if a == (i, s) else a

    seen, faces = set(), 0
    for d in darts:
        if d in seen:
            continue
        faces += 1
        x = d
        while x not in seen:
            seen.add(x)
            j, t = partner(*x)
            x = (j, (t + 1) % 4)
    parent = list(range(len(xs)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for lab, ((i, _), (j, _)) in occ.items():
        parent[find(i)] = find(j)
    pieces = len({find(i) for i in range(len(xs))})
    if faces != len(xs) + 2 * pieces:
        raise PDError("planarity", f"{faces} faces for {len(xs)} crossings; not a planar diagram")


# ---------------------------------------------------------------------------
# Wirtinger presentation


def _generator_names(n):
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"g{i + 1}" for i in range(n)]


def _strand_classes(pd: PDCode):
    """Union arcs that continue each other over a crossing."""
    parent = {lab: lab for lab in pd.labels}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c in pd.crossings:
        ra, rb = find(c[1]), find(c[3])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    classes = sorted({find(lab) for lab in pd.labels})
    return {lab: classes.index(find(lab)) for lab in pd.labels}, len(classes)


def wirtinger(pd: PDCode) -> Tuple[GroupPresentation, AbelianizationMap]:
    """Wirtinger presentation of the link group and its meridian map to Z^mu.

    Generators are the over-strands (maximal arcs between under-passes), then
    one generator per crossingless loop.  The relator of crossing i reads
    g_o^e g_a g_o^-e g_c^-1 with e the crossing sign; one relator (the last
    crossing's within each connected piece of the diagram) is dropped.
    """
    cls, nstrand = _strand_classes(pd)
    n = nstrand + pd.loops
    names = _generator_names(n)
    comp_of = pd.component_of()
    comp_index = [0] * n
    for lab, g in cls.items():
        comp_index[g] = comp_of[lab]
    for j in range(pd.loops):
        comp_index[nstrand + j] = len(pd.components) + j

    # drop one relator per connected piece: the highest crossing index
    parent = list(range(len(pd.crossings)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    where: Dict[int, List[int]] = {}
    for i, c in enumerate(pd.crossings):
        for lab in c:
            where.setdefault(lab, []).append(i)
    for occ in where.values():
        parent[find(occ[0])] = find(occ[-1])
    last = {}
    for i in range(len(pd.crossings)):
        last[find(i)] = i
    dropped = set(last.values())

    rels = []
    for i, (c, e) in enumerate(zip(pd.crossings, pd.signs())):
        if i in dropped:
            continue
        o, a, cc = cls[c[1]], cls[c[0]], cls[c[2]]
        w = FreeWord([(o, e), (a, 1), (o, -e), (cc, -1)])
        if w:
            rels.append(w)
    components = {names[g]: comp_index[g] + 1 for g in range(n)}
    pres = GroupPresentation(tuple(names), tuple(rels), components)
    mu = pd.mu
    images = tuple(tuple(int(i == comp_index[g]) for i in range(mu)) for g in range(n))
    return pres, AbelianizationMap(mu, images).check(pres)


# ---------------------------------------------------------------------------
# diagram surgery


def relabel(pd: PDCode, order: Sequence[int] | None = None) -> PDCode:
    """Renumber arcs 1..2n consecutively along components.

    ``order`` permutes the components (default: current order).
    """
    comps = [pd.components[i] for i in (order if order is not None else range(len(pd.components)))]
    new, k = {}, 1
    for comp in comps:
        for lab in comp:
            new[lab] = k
            k += 1
    xs = [tuple(new[v] for v in c) for c in pd.crossings]
    out = pd_from_tuples(xs, pd.loops)
    return out


def delete_component(pd: PDCode, comp: int) -> Tuple[PDCode, Dict[int, int | None]]:
    """Erase component ``comp`` (0-based) from the diagram.

    Returns the sublink diagram (relabelled) and a map from old arc labels
    to new ones; arcs of the deleted component map to None.
    """
    if not 0 <= comp < len(pd.components):
        raise ValueError(f"no component {comp} with crossings")
    dead = set(pd.components[comp])
    parent = {lab: lab for lab in pd.labels}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    kept = []
    for c in pd.crossings:
        under_dead, over_dead = c[0] in dead, c[1] in dead
        if under_dead and over_dead:
            continue
        if over_dead:
            union(c[0], c[2])
        elif under_dead:
            union(c[1], c[3])
        else:
            kept.append(c)
    live = sorted(lab for lab in pd.labels if lab not in dead)
    classes = sorted({find(lab) for lab in live})
    used = {find(v) for c in kept for v in c}
    loop_classes = [r for r in classes if r not in used]
    # a loop class is an entire component with no crossings left
    loops = pd.loops + len({pd.component_of()[r] for r in loop_classes})
    ranks = {r: i + 1 for i, r in enumerate(c for c in classes if c in used)}
    xs = [tuple(ranks[find(v)] for v in c) for c in kept]
    sub = pd_from_tuples(xs, loops)
    # relabel along components, keeping the original component order
    first = {}
    for lab in live:
        r = find(lab)
        if r in ranks:
            first.setdefault(pd.component_of()[lab], ranks[r])
    sub_comp_of = sub.component_of()
    order = sorted(range(len(sub.components)),
                   key=lambda i: min(k for k, v in first.items() if sub_comp_of[v] == i))
    final = relabel(sub, order)
    # map old labels through: class rank -> relabelled rank
    step = {}
    k = 1
    for i in order:
        for lab in sub.components[i]:
            step[lab] = k
            k += 1
    mapping = {lab: (step[ranks[find(lab)]] if lab not in dead and find(lab) in ranks else None)
               for lab in pd.labels}
    return final, mapping


def sublink_homomorphism(pd: PDCode, comp: int):
    """The map from the link group onto the group of the sublink without ``comp``.

    Meridians of the deleted component go to 1.  Returns ``(sub_pd, images)``
    where ``images[g]`` is a :class:`FreeWord` in the sublink's Wirtinger
    generators for each Wirtinger generator ``g`` of ``pd``.
    """
    sub, mapping = delete_component(pd, comp)
    cls, nstrand = _strand_classes(pd)
    sub_cls, sub_nstrand = _strand_classes(sub) if sub.crossings else ({}, 0)
    comp_of = pd.component_of()
    # components that lost all their crossings become the first loops
    emptied = sorted({comp_of[lab] for lab, v in mapping.items() if v is None and comp_of[lab] != comp})
    images: List[FreeWord | None] = [None] * (nstrand + pd.loops)
    for lab, g in cls.items():
        ci = comp_of[lab]
        if ci == comp:
            images[g] = FreeWord()
        elif ci in emptied:
            images[g] = FreeWord.generator(sub_nstrand + emptied.index(ci))
        else:
            images[g] = FreeWord.generator(sub_cls[mapping[lab]])
    for j in range(pd.loops):
        images[nstrand + j] = FreeWord.generator(sub_nstrand + len(emptied) + j)
    return sub, images


def reverse_component(pd: PDCode, comp: int) -> PDCode:
    """Reverse the orientation of component ``comp``."""
    arcs = set(pd.components[comp])
    xs = [(c[2], c[3], c[0], c[1]) if c[0] in arcs else c for c in pd.crossings]
    out = pd_from_tuples(xs, pd.loops)
    comp_first = {lab: i for i, cc in enumerate(out.components) for lab in cc}
    return relabel(out, [comp_first[pd.components[i][0]] for i in range(len(pd.components))])


def connected_sum(pd1: PDCode, comp1: int, pd2: PDCode, comp2: int) -> PDCode:
    """Band ``pd2``'s component ``comp2`` into ``pd1``'s component ``comp1``.

    Components of the result: those of pd1 in order, then the remaining
    components of pd2.
    """
    if not pd1.crossings or not pd2.crossings:
        raise ValueError("connected sum needs diagrams with crossings")
    off = max(pd1.labels)
    xs = [list(c) for c in pd1.crossings] + [[v + off for v in c] for c in pd2.crossings]
    e = pd1.components[comp1][0]
    f = pd2.components[comp2][0] + off
    ends1 = pd1.ends()
    ends2 = {lab + off: ((i + len(pd1.crossings), s), (j + len(pd1.crossings), t))
             for lab, ((i, s), (j, t)) in pd2.ends().items()}
    (_, _), (hi, hs) = ends1[e]
    (_, _), (gi, gs) = ends2[f]
    # e now runs into f's head crossing, f into e's head crossing
    xs[hi][hs], xs[gi][gs] = f, e
    joined = pd_from_tuples([tuple(c) for c in xs], pd1.loops + pd2.loops)
    comp_first = {lab: i for i, comp in enumerate(joined.components) for lab in comp}
    order = [comp_first[pd1.components[i][0]] for i in range(len(pd1.components))]
    order += [comp_first[pd2.components[i][0] + off] for i in range(len(pd2.components)) if i != comp2]
    return relabel(joined, order)


HOPF = "X[1,3,2,4] X[3,1,4,2]"


def hopf_like(k1: PDCode | None, k2: PDCode | None) -> PDCode:
    """Hopf link with knot ``k1`` tied into component 1 and ``k2`` into 2.

    ``None`` stands for the unknot (no local knot).
    """
    pd = parse_pd(HOPF)
    if k1 is not None and k1.crossings:
        pd = connected_sum(pd, 0, k1, 0)
    if k2 is not None and k2.crossings:
        pd = connected_sum(pd, 1, k2, 0)
    return pd
