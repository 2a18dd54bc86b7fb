"""Representations, permutation searches, characters and covers."""

from __future__ import annotations

import itertools

import pytest

from twistnorm import fixtures
from twistnorm.covers import CoverError, cyclic_quotient, reidemeister_schreier
from twistnorm.fields import Field
from twistnorm.groups import FreeWord, GroupPresentation, abelianization
from twistnorm.reps import (PermutationAssignment, Representation, RepresentationError, count_characters,
                            enumerate_characters, format_cycles, mat_det, mat_mul, parse_cycles,
                            perm_compose, perm_eval, perm_inverse, perm_sign, permutation_matrix,
                            pullback, search_symmetric, standard_module, standard_module_matrix)
from twistnorm.smith import smith_normal_form

from conftest import F13, QQ, dunfield_cover, perm_sign_oracle, wirt


# ---------------------------------------------------------------------------
# representations


def test_trivial_rep_is_valid():
    for name in ("unknot", "trefoil", "hopf"):
        pres = fixtures.load_presentation(name)
        assert Representation.trivial(pres, QQ).is_valid(pres)


def test_braid_relation_check():
    tre = fixtures.load_presentation("trefoil")
    good = Representation(QQ, 2, tre.generators, ([[1, 1], [0, 1]], [[1, 0], [-1, 1]]))
    assert good.is_valid(tre)
    bad = Representation(QQ, 2, tre.generators, ([[1, 1], [0, 1]], [[1, 0], [1, 1]]))
    assert bad.first_violation(tre) == 0
    with pytest.raises(RepresentationError):
        bad.validate(tre)


def test_singular_image_rejected():
    tre = fixtures.load_presentation("trefoil")
    with pytest.raises(RepresentationError):
        Representation(QQ, 2, tre.generators, ([[1, 1], [1, 1]], [[1, 0], [0, 1]]))


def test_representation_json_roundtrip():
    pres, _ = wirt("11_440")
    rep = Representation.from_json(fixtures.load_json("11_440_s3_f13.json"), pres)
    assert Representation.from_json(rep.to_json(), pres) == rep
    assert rep.dim == 2 and rep.field == F13


# ---------------------------------------------------------------------------
# permutations


def test_cycle_notation_roundtrip():
    for s in itertools.permutations(range(4)):
        assert parse_cycles(format_cycles(s), 4) == s
    assert parse_cycles("(1 2)", 3) == (1, 0, 2)
    with pytest.raises(RepresentationError):
        parse_cycles("(1 4)", 3)


def test_perm_group_laws():
    S4 = list(itertools.permutations(range(4)))
    for s in S4[::3]:
        assert perm_compose(s, perm_inverse(s)) == tuple(range(4))
        assert perm_sign(s) == perm_sign_oracle(s)
        for t in S4[::5]:
            assert perm_sign(perm_compose(s, t)) == perm_sign(s) * perm_sign(t)
            # function composition: apply t first
            assert all(perm_compose(s, t)[i] == s[t[i]] for i in range(4))


def _all_homs(pres, q):
    S = list(itertools.permutations(range(q)))
    ident = tuple(range(q))
    for imgs in itertools.product(S, repeat=pres.ngens):
        if all(perm_eval(imgs, r, q) == ident for r in pres.relators):
            yield imgs


def _orbit(imgs, q):
    return {tuple(perm_compose(perm_compose(c, s), perm_inverse(c)) for s in imgs)
            for c in itertools.permutations(range(q))}


def test_trefoil_search_matches_exhaustive_enumeration():
    tre = fixtures.load_presentation("trefoil")
    found = search_symmetric(tre, 3)
    homs = [h for h in _all_homs(tre, 3) if not PermutationAssignment(3, h).is_abelian()]
    orbits = {frozenset(_orbit(h, 3)) for h in homs}
    assert len(found) == len(orbits) >= 1
    assert {frozenset(_orbit(a.perms, 3)) for a in found} == orbits
    # the dihedral colouring a -> (1 2), b -> (2 3) is among them
    target = (parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3))
    assert any(target in _orbit(a.perms, 3) for a in found)
    assert all(a.is_surjective() for a in found)


def test_search_on_wirtinger_trefoil_matches_exhaustive():
    pres, _ = wirt("trefoil")
    found = search_symmetric(pres, 3, nonabelian=False)
    orbits = {frozenset(_orbit(h, 3)) for h in _all_homs(pres, 3)}
    assert {frozenset(_orbit(a.perms, 3)) for a in found} == orbits


def test_unknot_search_counts_conjugacy_classes():
    u = fixtures.load_presentation("unknot")
    assert len(search_symmetric(u, 3, nonabelian=False)) == 3
    assert len(search_symmetric(u, 2, nonabelian=False)) == 2
    assert search_symmetric(u, 3) == []


def test_search_results_are_sorted_and_valid():
    pres, _ = wirt("11_440")
    found = search_symmetric(pres, 3, surjective=True)
    assert len(found) >= 1
    assert found == sorted(found, key=lambda a: a.perms)
    for a in found:
        a.check(pres)
        assert a.is_surjective() and a.is_transitive()


def test_search_limit():
    pres, _ = wirt("11_440")
    assert len(search_symmetric(pres, 3, limit=1)) == 1
    assert search_symmetric(pres, 3, limit=0) == []


# ---------------------------------------------------------------------------
# standard module


def test_standard_module_examples():
    F = F13
    assert standard_module_matrix((0, 1, 2), F) == [[1, 0], [0, 1]]
    assert standard_module_matrix(parse_cycles("(1 2)", 3), F) == [[0, 1], [1, 0]]


@pytest.mark.parametrize("q", [3, 4])
def test_standard_module_is_a_homomorphism_with_sign_determinant(q):
    F = Field(13)
    S = list(itertools.permutations(range(q)))
    for s in S:
        M = standard_module_matrix(s, F)
        assert mat_det(F, M) == F(perm_sign(s))
        for t in S[::4]:
            lhs = standard_module_matrix(perm_compose(s, t), F)
            assert lhs == mat_mul(F, M, standard_module_matrix(t, F))


def test_standard_module_complements_the_trivial_summand():
    # the permutation character is 1 + standard character
    F = Field(13)
    for s in itertools.permutations(range(4)):
        tr_perm = sum(permutation_matrix(s, F)[i][i] for i in range(4)) % 13
        M = standard_module_matrix(s, F)
        assert tr_perm == (1 + sum(M[i][i] for i in range(3))) % 13


def test_bundled_assignment_gives_bundled_rep():
    pres, _ = wirt("11_440")
    a = PermutationAssignment.from_json(fixtures.load_json("11_440_s3.json"), pres)
    assert a.is_surjective()
    rep = standard_module(a, pres, 13)
    assert rep == Representation.from_json(fixtures.load_json("11_440_s3_f13.json"), pres)


# ---------------------------------------------------------------------------
# characters


@pytest.mark.parametrize("gens,rels,count", [
    (["a"], ["a^2"], 2),
    (["a", "b"], ["a b a^-1 b^-1"], 36),
    (["a"], ["a^3"], 3),
])
def test_character_counts(gens, rels, count):
    pres = GroupPresentation.from_strings(gens, rels)
    chars = list(enumerate_characters(pres, 7))
    assert len(chars) == count == count_characters(pres, 7)
    assert len({c.matrices for c in chars}) == count


def test_character_count_formula_on_random_matrices(rng):
    for _ in range(30):
        n = rng.randint(1, 3)
        rels = []
        for _ in range(rng.randint(0, 2)):
            w = []
            for g in range(n):
                w += [(g, 1 if rng.random() < 0.5 else -1)] * rng.randint(0, 3)
            if FreeWord(w):
                rels.append(FreeWord(w))
        pres = GroupPresentation(tuple("abc"[:n]), tuple(rels))
        for p in (5, 7):
            # brute force over all assignments into F_p^*
            brute = 0
            for vals in itertools.product(range(1, p), repeat=n):
                if all(_char_eval(vals, r, p) == 1 for r in rels):
                    brute += 1
            assert count_characters(pres, p) == brute == len(list(enumerate_characters(pres, p)))


def _char_eval(vals, w, p):
    out = 1
    for g, e in w:
        out = out * pow(vals[g], e, p) % p
    return out


def test_character_limit():
    pres = GroupPresentation.from_strings(["a", "b"], ["a b a^-1 b^-1"])
    assert len(list(enumerate_characters(pres, 7, limit=5))) == 5


# ---------------------------------------------------------------------------
# covers


def test_cover_of_free_cyclic_group():
    Z = GroupPresentation(("a",), ())
    cov = reidemeister_schreier(Z, [(1, 0)])
    assert cov.index == 2
    assert cov.presentation.ngens == 1 and not cov.presentation.relators
    assert cov.words[0] in (FreeWord.generator(0, 2), FreeWord.generator(0, -2))
    M = [[1, 1], [0, 1]]
    rep = Representation(QQ, 2, ("a",), (M,))
    up = pullback(rep, cov.words, cov.presentation)
    assert up.matrices[0] == rep.evaluate(cov.words[0])
    assert up.matrices[0] in (((1, 2), (0, 1)), ((1, -2), (0, 1)))


def test_cover_of_z2():
    Z2 = GroupPresentation.from_strings(["a", "b"], ["a b a^-1 b^-1"])
    cov = reidemeister_schreier(Z2, [(1, 0), (0, 1)])
    psi = cov.pull_back_map(abelianization(Z2))
    assert psi.rationally_surjective
    snf = smith_normal_form(cov.presentation.exponent_matrix(), cov.presentation.ngens)
    assert cov.presentation.ngens - snf.rank == 2
    images = sorted(tuple(abs(x) for x in v) for v in psi.images)
    assert (2, 0) in images and (0, 1) in images


def test_trivial_quotient_echoes_the_presentation():
    pres, _ = wirt("trefoil")
    cov = reidemeister_schreier(pres, [(0,)] * pres.ngens)
    assert cov.presentation == pres
    assert all(w == FreeWord.generator(i) for i, w in enumerate(cov.words))


def test_cover_errors():
    pres, _ = wirt("trefoil")
    with pytest.raises(CoverError):
        reidemeister_schreier(pres, [(1, 0), (0, 1), (0, 1)])
    with pytest.raises(CoverError):
        reidemeister_schreier(pres, [(0, 1, 2)] * pres.ngens)


@pytest.mark.parametrize("n,torsion,rank", [(2, 3, 1), (3, 4, 1), (5, 1, 1), (6, 1, 3)])
def test_cyclic_covers_of_the_trefoil(n, torsion, rank):
    # H_1 of the n-fold cyclic cover is Z + Z[t]/(Delta, t^n - 1); its torsion
    # order is |prod Delta(zeta)| over nontrivial n-th roots when that is
    # nonzero, and each root of Delta among them adds a free summand
    pres, psi = wirt("trefoil")
    cov = reidemeister_schreier(pres, cyclic_quotient(psi, (1,), n))
    assert cov.index == n
    snf = smith_normal_form(cov.presentation.exponent_matrix(), cov.presentation.ngens)
    assert cov.presentation.ngens - snf.rank == rank
    prod = 1
    for d in snf.factors:
        prod *= d
    assert prod == torsion


def test_dunfield_double_cover():
    cover, cpsi = dunfield_cover()
    assert cover.index == 2
    assert cover.presentation.deficiency == 1
    assert cpsi.b == 2 and cpsi.rationally_surjective
    assert cover.euler_consistent()


def test_pulled_back_characters_are_valid():
    cover, _ = dunfield_cover()
    pres, _ = wirt("dunfield")
    for chi in enumerate_characters(pres, 7, limit=10):
        pullback(chi, cover.words, cover.presentation)
