from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from flagsem import proofnets as pn
from flagsem.coherence import Space, is_clique
from flagsem.formulas import Atom, Compound, atoms, parse_formula, random_formula, random_rewrite, variables
from flagsem.props import CHORDLESS, CORRECT, weakenings

CATALOG = pn.default_catalog()


def net(text, links=None, cuts=()):
    f = parse_formula(text)
    return pn.ProofStructure(f, links, cuts) if links is not None else pn.unique_matching(f, cuts)


# -- structures --------------------------------------------------------------


def test_structure_validation():
    f = parse_formula("(a|~a)*(a|~a)")
    assert len(list(pn.all_matchings(f))) == 2
    with pytest.raises(pn.StructureError):
        pn.unique_matching(f)
    with pytest.raises(pn.StructureError, match="not dual"):
        pn.ProofStructure(parse_formula("a|b"), [(0, 1)])
    with pytest.raises(pn.StructureError, match="no axiom link"):
        pn.ProofStructure(parse_formula("(a|~a)|b"), [(0, 1)])
    with pytest.raises(pn.StructureError, match="two axiom links"):
        pn.ProofStructure(f, [(0, 1), (0, 3), (2, 3)])
    with pytest.raises(pn.StructureError, match="K \\* ~K"):
        net("(a|~a)|((b|~b)*(b|~b))", [(0, 1), (2, 3), (4, 5)], cuts=["1"])


def test_structure_file_round_trip():
    text = "# comment\n((a|~a)*(a|~a))\nlink 0 3\nlink 1 2\n"
    pi = pn.parse_structure(text)
    assert pi.sorted_links() == [(0, 3), (1, 2)]
    assert pn.parse_structure(pn.format_structure(pi)) == pi
    for bad in ("", "a|~a\nlink 0\n", "a|~a\nfoo\n", "a|~a\ncut 2\n", "a|~a\nlink x y\n"):
        with pytest.raises((pn.StructureError, ValueError)):
            pn.parse_structure(bad)


# -- correctness -------------------------------------------------------------


def test_reference_verdicts():
    for text in CHORDLESS:
        pi = net(text)
        v = pn.is_correct(pi)
        assert not v
        assert pn.format_circuit(pi, v.circuit) == "a, ~c, c, ~a, a"
        assert pn.chords(pi, v.circuit) == []
    for text in CORRECT:
        assert pn.is_correct(net(text))
    assert pn.is_correct(net("a|~a"))


def test_circuit_structure():
    pi = net(CORRECT[0])
    circuits = list(pn.ae_circuits(pi))
    assert circuits  # the tensor creates circuits, each one has a chord
    for c in circuits:
        assert c.vertices[0] == c.vertices[-1]
        kinds = [k for k, _, _ in c.steps()]
        assert all(x != y for x, y in zip(kinds, kinds[1:]))
        assert kinds[0] != kinds[-1]
        assert len(set(c.vertices[:-1])) == len(c.vertices) - 1
        assert pn.chords(pi, c)


def test_tensor_of_axioms_fails():
    assert not pn.is_correct(net("a*~a"))
    assert not pn.is_correct(net("a;~a"))
    assert pn.is_correct(net("(a|~a)*(b|~b)"))


def test_circuit_cap():
    with pytest.raises(ValueError):
        list(pn.ae_circuits(net(CHORDLESS[0]), cap=5))


# -- experiments -------------------------------------------------------------


def test_experiment_examples():
    one = CATALOG["one"]
    pi = net("a|~a")
    assert pn.experiments(pi, {"a": one}) == {("*", "*")}
    mixed = CATALOG["mixed3"]
    pi = net("(a|~a)*(b|~b)")
    assert len(pn.experiments(pi, {"a": mixed, "b": mixed})) == 9
    empty = Space(set())
    space, res = pn.interpretation(net("a|~a"), {"a": empty})
    assert res == frozenset() and is_clique(space, res)


def test_cut_filters_disagreeing_experiments():
    # (a|~a) | ((a * ~a) as a cut) | (a|~a)  with links crossing the cut
    f = parse_formula("((a|~a)|(a*~a))|(a|~a)")
    pi = pn.ProofStructure(f, [(0, 3), (2, 5), (4, 1)], cuts=["01"])
    coh2 = CATALOG["coh2"]
    residual, keep = pn.residual_formula(pi)
    assert len(atoms(residual)) == 4 and keep == [0, 1, 4, 5]
    res = pn.experiments(pi, {"a": coh2})
    # links carry values v0 (0-3), v1 (2-5), v2 (4-1); the cut forces v1 == v2
    assert len(res) == 4
    assert all(t[0][1] == t[1][0] for t in res)


def test_cut_path_validation():
    f = parse_formula("(a|~a)|(b*~b)")
    with pytest.raises(pn.StructureError):
        pn.unique_matching(f, cuts=[""])
    pi = pn.unique_matching(f, cuts=["1"])
    assert pn.residual_formula(pi)[0] == parse_formula("a|~a")


def test_separating_interpretations():
    rep = pn.semantic_correctness_check(net(CHORDLESS[0]), CATALOG)
    assert not rep.all_cliques and rep.agrees
    assert rep.separating() == {"a": "coh2", "b": "coh2", "c": "coh2"}
    rep = pn.semantic_correctness_check(net(CORRECT[1]), CATALOG)
    assert rep.all_cliques and rep.separating() is None
    assert len(rep.outcomes) == 4 ** 3


def _formulas_with_pairs(n):
    """Every formula with n positive/negative pairs over variables a.. (all
    orderings, bracketings and connectives)."""
    def shapes(leaves):
        if len(leaves) == 1:
            yield leaves[0]
            return
        for k in range(1, len(leaves)):
            for l in shapes(leaves[:k]):
                for r in shapes(leaves[k:]):
                    for op in ("tensor", "par", "before"):
                        yield Compound(op, l, r)

    for names in ({"a"}, {"a", "b"}) if n == 2 else ({"a"},):
        multiset = [Atom(v) for v in sorted(names)] + [Atom(v, False) for v in sorted(names)]
        if len(names) < n:
            multiset = multiset * n
        for order in set(itertools.permutations(multiset)):
            yield from shapes(list(order))


def test_semantic_correctness_exhaustive_up_to_two_pairs():
    checked = incorrect = 0
    small = {k: CATALOG[k] for k in ("one", "coh2", "incoh2", "mixed3")}
    for n in (1, 2):
        for f in _formulas_with_pairs(n):
            for pi in pn.all_matchings(f):
                rep = pn.semantic_correctness_check(pi, small)
                assert rep.agrees, str(pi)
                checked += 1
                incorrect += not rep.verdict.correct
    assert checked > 1000 and incorrect > 0


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10 ** 7))
def test_semantic_correctness_on_random_three_pair_structures(seed):
    f = random_formula(random.Random(seed), ["a", "b", "c"], 3)
    for pi in pn.all_matchings(f):
        rep = pn.semantic_correctness_check(pi, CATALOG)
        assert rep.agrees, str(pi)


def test_semantics_against_independent_oracle():
    for text in CHORDLESS + CORRECT:
        pi = net(text)
        for interp in itertools.islice(pn.catalog_interpretations(["a", "b", "c"], CATALOG), 0, 64, 7):
            space, res = pn.interpretation(pi, interp)
            assert res == O.experiment_results(pi.formula, pi.links, interp)
            for s, t in itertools.product(res, repeat=2):
                assert space.rel3(s, t).name.lower() == O.formula_rel(pi.formula, interp, s, t)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 7))
def test_results_invariant_under_rewrites(seed):
    # one variable per link, so the unique matching follows the rewrite
    rng = random.Random(seed)
    f = random_formula(rng, ["p", "q", "r"], 3)
    if len(list(pn.all_matchings(f))) != 1:
        return
    pi = pn.unique_matching(f)
    g = random_rewrite(f, rng, steps=10)
    rho = pn.unique_matching(g)
    assert pi.dicograph.same_as(rho.dicograph)
    for interp in pn.catalog_interpretations(variables(f), CATALOG):
        s1, r1 = pn.interpretation(pi, interp)
        s2, r2 = pn.interpretation(rho, interp)
        assert len(r1) == len(r2)
        assert is_clique(s1, r1) == is_clique(s2, r2)


def test_weakening_preserves_correctness():
    rng = random.Random(11)
    seen = 0
    for _ in range(300):
        f = random_formula(rng, ["a", "b", "c"], 3)
        for pi in pn.all_matchings(f):
            if pn.is_correct(pi):
                for w in weakenings(pi):
                    seen += 1
                    assert pn.is_correct(w), (str(pi), str(w))
    assert seen > 50


# -- DOT ---------------------------------------------------------------------


def test_dot_export():
    pi = net(CHORDLESS[0])
    dot = pn.to_dot(pi.dicograph, pi.sorted_links())
    assert dot.count("->") == 8 + 2 + 3
    assert dot.count("style=bold") == 3
    assert dot == pn.to_dot(pi.dicograph, pi.sorted_links())
    assert '"a" -> "b";' in dot and '"a" -> "~c" [dir=none];' in dot
