from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from flagsem import coherence as coh
from flagsem.coherence import EQUAL, SCOH, SINCOH

ONE = coh.Space({"*"}, name="1")
AB_INCOH = coh.Space({"a", "b"}, name="1+1")
AB_COH = coh.Space({"a", "b"}, [("a", "b")], name="coh")


@st.composite
def spaces(draw, max_tokens=4):
    n = draw(st.integers(1, max_tokens))
    web = [str(i) for i in range(n)]
    pairs = [p for p in itertools.combinations(web, 2) if draw(st.booleans())]
    return coh.Space(web, pairs)


# -- rel3 and negation -------------------------------------------------------


def test_rel3_examples():
    assert coh.rel3(ONE, "*", "*") is EQUAL
    assert coh.rel3(AB_INCOH, "a", "b") is SINCOH
    assert coh.rel3(AB_COH, "a", "b") is SCOH


def test_rel3_rejects_foreign_tokens():
    with pytest.raises(coh.DomainError):
        coh.rel3(AB_COH, "a", "z")


def test_space_rejects_bad_pairs():
    with pytest.raises(ValueError):
        coh.Space({"a"}, [("a", "a")])
    with pytest.raises(coh.DomainError):
        coh.Space({"a"}, [("a", "b")])


def test_negation_examples():
    assert coh.negation(ONE) == ONE
    assert coh.negation(AB_INCOH).rel3("a", "b") is SCOH
    a = coh.Space({"0", "1", "2"}, [("0", "1")])
    assert coh.negation(coh.negation(a)) is a


@given(spaces())
def test_relation_is_a_partition(a):
    for x, y in itertools.product(a.web, repeat=2):
        r = a.rel3(x, y)
        assert (r is EQUAL) == (x == y)
        assert r is a.rel3(y, x)
        assert coh.negation(a).rel3(x, y) is r.dual()


# -- connective tables -------------------------------------------------------

ALL = (SCOH, EQUAL, SINCOH)
TO_O = {SCOH: O.SC, EQUAL: O.EQ, SINCOH: O.SI}


@pytest.mark.parametrize("kind", ["tensor", "par", "before", "lollipop"])
def test_tables_match_defining_clauses(kind):
    for r1, r2 in itertools.product(ALL, repeat=2):
        assert TO_O[coh.combine(kind, r1, r2)] == O.conn_rel(kind, TO_O[r1], TO_O[r2])


def test_table_cells_named_in_the_definitions():
    assert coh.combine("before", EQUAL, SCOH) is SCOH
    assert coh.combine("tensor", SCOH, SINCOH) is SINCOH
    assert coh.combine("tensor", SINCOH, SCOH) is SINCOH
    assert coh.combine("par", SINCOH, SCOH) is SCOH
    assert coh.combine("lollipop", EQUAL, SINCOH) is SINCOH
    assert coh.combine("lollipop", SCOH, SCOH) is SCOH


def test_after_is_swapped_before():
    a, b = coh.Space({"0", "1"}, [("0", "1")]), coh.Space({"x", "y", "z"}, [("x", "y")])
    aft, bef = coh.after(a, b), coh.before(b, a)
    for (s, t), (s2, t2) in itertools.product(aft.web, repeat=2):
        assert aft.rel3((s, t), (s2, t2)) is bef.rel3((t, s), (t2, s2))


@settings(max_examples=60)
@given(spaces(3), spaces(3))
def test_de_morgan_and_sandwich(a, b):
    na, nb = coh.negation(a), coh.negation(b)
    assert coh.negation(coh.par(a, b)) == coh.tensor(na, nb)
    assert coh.negation(coh.tensor(a, b)) == coh.par(na, nb)
    assert coh.negation(coh.before(a, b)) == coh.before(na, nb)
    assert coh.lollipop(a, b) == coh.par(na, b)
    assert coh.tensor(a, b).scoh_pairs <= coh.before(a, b).scoh_pairs <= coh.par(a, b).scoh_pairs


def test_de_morgan_exhaustive_up_to_four_tokens():
    """Exhaustive over 1..4-token webs with a fixed partner, both sides."""
    from flagsem.props import small_spaces

    four = [s for s in _all_spaces(4)]
    partners = small_spaces(2)
    for a in four:
        for b in partners:
            assert coh.negation(coh.before(a, b)) == coh.before(coh.negation(a), coh.negation(b))
            assert coh.negation(coh.par(b, a)) == coh.tensor(coh.negation(b), coh.negation(a))


def _all_spaces(n):
    web = [str(i) for i in range(n)]
    pairs = list(itertools.combinations(web, 2))
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        yield coh.Space(web, [p for p, b in zip(pairs, bits) if b])


def test_compound_tokens_are_pairs():
    t = coh.tensor(AB_COH, ONE)
    assert t.web == {("a", "*"), ("b", "*")}
    assert ("a", "*") in t and ("a", "b") not in t
    with pytest.raises(coh.DomainError):
        t.rel3(("a", "*"), "a")


# -- sp-orders ---------------------------------------------------------------


def test_sp_space_specialises():
    a, b, c = AB_COH, AB_INCOH, coh.Space({"0", "1", "2"}, [("1", "2")])
    assert coh.sp_space(coh.SpLeaf(0), [a]) is a
    assert coh.sp_space(coh.series(coh.SpLeaf(0), coh.SpLeaf(1)), [a, b]) == coh.before(a, b)
    assert coh.sp_space(coh.parallel(coh.SpLeaf(0), coh.SpLeaf(1)), [a, b]) == coh.par(a, b)
    left = coh.sp_space(coh.series(coh.series(coh.SpLeaf(0), coh.SpLeaf(1)), coh.SpLeaf(2)), [a, b, c])
    right = coh.sp_space(coh.series(coh.SpLeaf(0), coh.series(coh.SpLeaf(1), coh.SpLeaf(2))), [a, b, c])
    assert left == right
    nested = coh.before(coh.before(a, b), c)
    for s, t in itertools.product(left.web, repeat=2):
        assert left.rel3(s, t) is nested.rel3(((s[0], s[1]), s[2]), ((t[0], t[1]), t[2]))


def test_sp_space_arity_mismatch():
    with pytest.raises(ValueError):
        coh.sp_space(coh.series(coh.SpLeaf(0), coh.SpLeaf(1)), [AB_COH])


def test_sp_order_is_the_quoted_clause():
    # 0 ◁ (1 ⅋ 2): strict coherence wherever some i is strictly coherent and
    # every j strictly below i agrees
    order = coh.series(coh.SpLeaf(0), coh.parallel(coh.SpLeaf(1), coh.SpLeaf(2)))
    assert coh.sp_strict_order(order) == {(0, 1), (0, 2)}
    comps = [AB_COH, AB_INCOH, coh.Space({"a", "b"}, [("a", "b")])]
    sp = coh.sp_space(order, comps)
    for s, t in itertools.combinations(sorted(sp.web), 2):
        expect = any(
            comps[i].rel3(s[i], t[i]) is SCOH
            and all(s[j] == t[j] for j in range(3) if (j, i) in coh.sp_strict_order(order))
            for i in range(3)
        )
        assert (sp.rel3(s, t) is SCOH) == expect


# -- cliques and traces ------------------------------------------------------


def test_is_clique_examples():
    assert coh.is_clique(AB_INCOH, set())
    l_ab = coh.LinearTrace(AB_INCOH, ONE, {("a", "*"), ("b", "*")})
    assert coh.is_linear_trace(l_ab)
    bad = coh.LinearTrace(AB_COH, AB_INCOH, {("a", "a"), ("b", "b")})
    assert not coh.is_linear_trace(bad)


@given(spaces(3), st.data())
def test_subsets_of_cliques_are_cliques(a, data):
    toks = data.draw(st.sets(st.sampled_from(sorted(a.web))))
    if coh.is_clique(a, toks):
        for k in range(len(toks)):
            for sub in itertools.combinations(sorted(toks), k):
                assert coh.is_clique(a, sub)


def test_clique_dataclass_validates():
    coh.Clique(AB_COH, frozenset({"a", "b"}))
    with pytest.raises(ValueError):
        coh.Clique(AB_INCOH, frozenset({"a", "b"}))


def test_trace_apply_examples():
    l_ab = coh.LinearTrace(AB_INCOH, ONE, {("a", "*"), ("b", "*")})
    assert coh.trace_apply(l_ab, {"a"}).tokens == {"*"}
    assert coh.trace_apply(l_ab, set()).tokens == frozenset()
    ident = coh.identity_trace(AB_COH)
    assert coh.trace_apply(ident, {"a", "b"}).tokens == {"a", "b"}
    with pytest.raises(ValueError):
        coh.trace_apply(l_ab, {"a", "b"})


def test_trace_compose_examples():
    l_a = coh.LinearTrace(AB_INCOH, ONE, {("a", "*")})
    assert coh.trace_compose(l_a, coh.identity_trace(ONE)).pairs == l_a.pairs
    assert coh.trace_compose(coh.identity_trace(AB_INCOH), l_a).pairs == l_a.pairs
    with pytest.raises(ValueError):
        coh.trace_compose(l_a, l_a)


def test_linear_traces_preserve_cliques_and_compose():
    from flagsem.props import all_traces, small_spaces

    twos = [s for s in small_spaces(2) if len(s.web) == 2]
    for a, b, c in itertools.product(twos, repeat=3):
        for t1 in all_traces(a, b):
            for x in O.cliques(a.web, a.scoh_pairs):
                assert coh.is_clique(b, coh.trace_apply(t1, x).tokens)
            for t2 in all_traces(b, c):
                assert coh.is_linear_trace(coh.trace_compose(t1, t2))


def test_canonical_maps():
    for a, b in itertools.product([AB_COH, AB_INCOH], repeat=2):
        assert coh.is_linear_trace(coh.tensor_to_before(a, b))
        assert coh.is_linear_trace(coh.before_to_par(a, b))
        iso = coh.before_assoc_iso(a, b, a)
        assert coh.trace_compose(iso, iso.inverse()).pairs == coh.identity_trace(iso.source).pairs


# -- isomorphism search ------------------------------------------------------


def test_spaces_isomorphic():
    a = coh.Space({"0", "1", "2"}, [("0", "1")])
    assert coh.spaces_isomorphic(a, a) is not None
    b = coh.Space({"x", "y", "z"}, [("y", "z")])
    m = coh.spaces_isomorphic(a, b)
    assert m is not None and m["2"] == "x"
    assert coh.spaces_isomorphic(coh.before(AB_COH, AB_INCOH), coh.before(AB_INCOH, AB_COH)) is None
    bef = coh.before(AB_COH, AB_INCOH)
    m = coh.spaces_isomorphic(coh.negation(bef), coh.before(coh.negation(AB_COH), coh.negation(AB_INCOH)))
    assert m is not None


def test_isomorphism_cap():
    big = coh.Space({str(i) for i in range(9)})
    with pytest.raises(ValueError):
        coh.spaces_isomorphic(big, big)
    assert coh.spaces_isomorphic(big, big, max_web=9) is not None


@settings(max_examples=40)
@given(spaces(4), st.permutations(["0", "1", "2", "3"]))
def test_isomorphism_finds_relabellings(a, perm):
    m = dict(zip(sorted(a.web), perm))
    b = coh.Space({m[x] for x in a.web}, [tuple(m[x] for x in p) for p in a.scoh_pairs])
    found = coh.spaces_isomorphic(a, b)
    assert found is not None
    for x, y in itertools.product(a.web, repeat=2):
        assert a.rel3(x, y) is b.rel3(found[x], found[y])
