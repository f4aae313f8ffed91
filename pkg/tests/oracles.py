"""Brute-force reference implementations used by the tests.

Nothing here calls into the library's algorithms: trees are evaluated by
walking bits, relations are written out from their defining clauses, and
coherence of formula tokens is recomputed from scratch.
"""
from __future__ import annotations

import itertools

from flagsem.formulas import Atom
from flagsem.trees import Leaf, Node

SC, EQ, SI = "scoh", "equal", "sincoh"


def words(length: int) -> list[str]:
    """All 0/1 words of a length, in lexicographic order."""
    return ["".join(bits) for bits in itertools.product("01", repeat=length)]


def ev(t, word: str):
    """Value at ``word·0^ω`` by descending bit by bit."""
    i = 0
    while isinstance(t, Node):
        bit = word[i] if i < len(word) else "0"
        t = t.left if bit == "0" else t.right
        i += 1
    return t.token


def height(t) -> int:
    return 0 if isinstance(t, Leaf) else 1 + max(height(t.left), height(t.right))


def values(t, length: int) -> tuple:
    return tuple(ev(t, w) for w in words(length))


# -- binary coherence --------------------------------------------------------


def base_rel(scoh: set, a, b) -> str:
    if a == b:
        return EQ
    return SC if (a, b) in scoh or (b, a) in scoh else SI


def scoh_set(space) -> set:
    return {tuple(p) for p in space.scoh_pairs}


def conn_rel(kind: str, r1: str, r2: str) -> str:
    """Multiplicative relation of (α,β), (α′,β′) from the component relations."""
    if r1 == EQ and r2 == EQ:
        return EQ
    if kind == "tensor":  # coherent in both, not both equal
        return SC if r1 != SI and r2 != SI else SI
    if kind == "par":  # strictly coherent in one of them
        return SC if SC in (r1, r2) else SI
    if kind == "before":
        return SC if r1 == SC or (r1 == EQ and r2 == SC) else SI
    if kind == "lollipop":  # A⊥ ⅋ B
        flip = {SC: SI, SI: SC, EQ: EQ}[r1]
        return conn_rel("par", flip, r2)
    raise ValueError(kind)


def product_scoh(kind: str, sa: set, wa, sb: set, wb) -> set:
    web = list(itertools.product(wa, wb))
    out = set()
    for (a, b), (a2, b2) in itertools.combinations(web, 2):
        if conn_rel(kind, base_rel(sa, a, a2), base_rel(sb, b, b2)) == SC:
            out.add(frozenset(((a, b), (a2, b2))))
    return out


def cliques(web, scoh_pairs) -> set:
    """Every clique of a small explicit space."""
    web = sorted(web, key=repr)
    out = set()
    for k in range(len(web) + 1):
        for combo in itertools.combinations(web, k):
            if all(frozenset(p) in scoh_pairs for p in itertools.combinations(combo, 2)):
                out.add(frozenset(combo))
    return out


# -- flag --------------------------------------------------------------------


def flag_rel_definition(scoh: set, f, g, length: int) -> str:
    """∃w: f(w) ⌢ g(w) strictly and f, g agree below w; words of ``length``
    bits cover every leaf of trees of height ≤ ``length``."""
    if f == g:
        return EQ
    agree = True
    for w in words(length):
        a, b = ev(f, w), ev(g, w)
        if agree and a != b and base_rel(scoh, a, b) == SC:
            return SC
        agree = agree and a == b
    return SI


def lift_definition(pairs: set, f, g, length: int) -> bool:
    return all((ev(f, w), ev(g, w)) in pairs for w in words(length))


def hflag_definition(gamma_star: set, trees, length: int) -> bool:
    """∃w: {f_i(w)} ∈ Γ*(X) and every word below w sees a single value."""
    for w in words(length):
        vals = frozenset(ev(t, w) for t in trees)
        if len(vals) > 1:
            return vals in gamma_star
    return False


# -- hypercoherence ----------------------------------------------------------


def in_gamma(gamma_star, web, s) -> bool:
    s = frozenset(s)
    return bool(s) and s <= web and (len(s) == 1 or s in gamma_star)


def subsets(web, min_size=2):
    web = sorted(web, key=repr)
    for k in range(min_size, len(web) + 1):
        for combo in itertools.combinations(web, k):
            yield frozenset(combo)


def hc_tensor_definition(x, y) -> set:
    web = set(itertools.product(x.web, y.web))
    return {
        w for w in subsets(web)
        if in_gamma(x.gamma_star, x.web, {p[0] for p in w}) and in_gamma(y.gamma_star, y.web, {p[1] for p in w})
    }


def hc_lollipop_definition(x, y) -> set:
    web = set(itertools.product(x.web, y.web))
    out = set()
    for w in subsets(web):
        w1, w2 = {p[0] for p in w}, {p[1] for p in w}
        if in_gamma(x.gamma_star, x.web, w1):
            if not in_gamma(y.gamma_star, y.web, w2) or (len(w1) >= 2 and len(w2) < 2):
                continue
        out.add(w)
    return out


# -- formulas ----------------------------------------------------------------


def formula_rel(f, interp: dict, t1, t2) -> str:
    """Relation of two tokens of the space a formula denotes."""
    if isinstance(f, Atom):
        r = base_rel(scoh_set(interp[f.name]), t1, t2)
        return r if f.positive or r == EQ else {SC: SI, SI: SC}[r]
    return conn_rel(f.op, formula_rel(f.left, interp, t1[0], t2[0]), formula_rel(f.right, interp, t1[1], t2[1]))


def experiment_results(formula, links, interp: dict) -> set:
    """Cut-free experiments: one token per link, read back along the formula."""
    occ = []

    def collect(g):
        if isinstance(g, Atom):
            occ.append(g)
        else:
            collect(g.left)
            collect(g.right)

    collect(formula)
    links = sorted(tuple(sorted(l)) for l in links)
    out = set()
    for choice in itertools.product(*(sorted(interp[occ[u].name].web, key=repr) for u, _ in links)):
        val = {}
        for (u, v), tok in zip(links, choice):
            val[u] = val[v] = tok
        pos = iter(range(len(occ)))

        def build(g):
            if isinstance(g, Atom):
                return val[next(pos)]
            return (build(g.left), build(g.right))

        out.add(build(formula))
    return out
