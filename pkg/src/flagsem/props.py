"""Exhaustive property suites behind ``flagsem props``.

Each suite returns a list of :class:`PropertyResult`.  Bounds come from a
:class:`Config`; the defaults keep every suite to a few seconds.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import coherence as coh
from . import flag as fl
from . import hyper as hy
from . import proofnets as pn
from .formulas import Compound, compound_paths, parse_formula, replace_at, subformula
from .trees import Leaf, enumerate_trees, merge, split


@dataclass
class Config:
    max_depth: int = 3
    max_web: int = 8
    circuit_cap: int = pn.DEFAULT_CIRCUIT_CAP
    catalog: str = "default"

    def __post_init__(self):
        for name in ("max_depth", "max_web", "circuit_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.catalog not in CATALOGS:
            raise ValueError(f"unknown catalog {self.catalog!r}")


CATALOGS = {
    "default": pn.default_catalog,
    "small": lambda: {k: v for k, v in pn.default_catalog().items() if k in ("coh2", "incoh2")},
}


@dataclass
class PropertyResult:
    name: str
    ok: bool
    cases: int
    witness: str = ""

    def line(self) -> str:
        return f"{self.name}\t{'PASS' if self.ok else 'FAIL'}\t{self.witness}"


class _Check:
    """Counts cases and remembers the first counterexample."""

    def __init__(self, name):
        self.name, self.cases, self.witness = name, 0, None

    def __call__(self, ok, witness=""):
        self.cases += 1
        if not ok and self.witness is None:
            self.witness = str(witness)
        return ok

    def result(self) -> PropertyResult:
        return PropertyResult(self.name, self.witness is None, self.cases, self.witness or "")


def small_spaces(max_tokens: int = 3) -> list[coh.Space]:
    """Every coherence relation on webs {0}, {0,1}, …, up to ``max_tokens``."""
    out = []
    for n in range(1, max_tokens + 1):
        web = [str(i) for i in range(n)]
        pairs = list(itertools.combinations(web, 2))
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            chosen = [p for p, b in zip(pairs, bits) if b]
            out.append(coh.Space(web, chosen, name=f"S{n}:{''.join(map(str, bits))}"))
    return out


def all_traces(a, b):
    """Every linear trace between two small finite spaces."""
    cells = list(itertools.product(sorted(a.web), sorted(b.web)))
    for bits in itertools.product((0, 1), repeat=len(cells)):
        t = coh.LinearTrace(a, b, {c for c, bit in zip(cells, bits) if bit})
        if coh.is_linear_trace(t):
            yield t


# -- suites ------------------------------------------------------------------


def suite_before(cfg: Config) -> list[PropertyResult]:
    spaces = small_spaces(3)
    demorgan, sandwich, selfdual = _Check("de-morgan"), _Check("sandwich"), _Check("before-self-dual")
    for a, b in itertools.product(spaces, repeat=2):
        na, nb = coh.negation(a), coh.negation(b)
        demorgan(coh.negation(coh.par(a, b)) == coh.tensor(na, nb), (a.name, b.name))
        demorgan(coh.negation(coh.tensor(a, b)) == coh.par(na, nb), (a.name, b.name))
        selfdual(coh.negation(coh.before(a, b)) == coh.before(na, nb), (a.name, b.name))
        t, s, p = coh.tensor(a, b).scoh_pairs, coh.before(a, b).scoh_pairs, coh.par(a, b).scoh_pairs
        sandwich(t <= s <= p, (a.name, b.name))
    two = [s for s in spaces if len(s.web) == 2]
    lin = _Check("sandwich-traces-linear")
    for a, b in itertools.product(two, repeat=2):
        lin(coh.is_linear_trace(coh.tensor_to_before(a, b)), (a.name, b.name))
        lin(coh.is_linear_trace(coh.before_to_par(a, b)), (a.name, b.name))
    noncomm = _Check("before-non-commutative")
    a = coh.Space({"0", "1"}, [("0", "1")])
    b = coh.Space({"0", "1"})
    noncomm(coh.spaces_isomorphic(coh.before(a, b), coh.before(b, a), cfg.max_web) is None, "iso found")
    assoc = _Check("before-associative")
    for x, y, z in itertools.product(two, repeat=3):
        iso = coh.before_assoc_iso(x, y, z)
        assoc(coh.is_linear_trace(iso) and coh.is_linear_trace(iso.inverse()), (x.name, y.name, z.name))
    sp = _Check("sp-order-specialises")
    for x, y in itertools.product(two, repeat=2):
        sp(coh.sp_space(coh.series(coh.SpLeaf(0), coh.SpLeaf(1)), [x, y]) == coh.before(x, y))
        sp(coh.sp_space(coh.parallel(coh.SpLeaf(0), coh.SpLeaf(1)), [x, y]) == coh.par(x, y))
    return [c.result() for c in (demorgan, selfdual, sandwich, lin, noncomm, assoc, sp)]


def _pairs(trees):
    return itertools.combinations(trees, 2)


def suite_flag(cfg: Config) -> list[PropertyResult]:
    depth = min(cfg.max_depth, 3)
    selfdual, lemma, contraction = _Check("flag-self-dual"), _Check("flag-witness-minimal"), _Check("contraction")
    for space in small_spaces(3):
        if len(space.web) < 2:
            continue
        trees = enumerate_trees(sorted(space.web), depth)
        dual = coh.negation(space)
        for f, g in _pairs(trees):
            r, rd = fl.flag_rel3(space, f, g), fl.flag_rel3(dual, f, g)
            selfdual({r, rd} == {coh.SCOH, coh.SINCOH}, (space.name, str(f), str(g)))
            lemma(r is fl.flag_rel3_bruteforce(space, f, g), (space.name, str(f), str(g)))
            contraction(r is fl.contraction_rel3(space, f, g), (space.name, str(f), str(g)))
    bij = _Check("merge-split-bijection")
    trees = enumerate_trees(["a", "b"], depth)
    for t in trees:
        bij(merge(*split(t)) is t, str(t))
    for l, r in itertools.product(trees, repeat=2):
        bij(split(merge(l, r)) == (l, r), (str(l), str(r)))
    retract = _Check("retract")
    for space in small_spaces(3):
        embed, proj = fl.retract_embed(space), fl.retract_project(space)
        retract(coh.trace_compose(embed, proj).pairs == coh.identity_trace(space).pairs, space.name)
        retract(coh.is_linear_trace(embed) and coh.is_linear_trace(proj), space.name)
        back = coh.trace_compose(proj, embed).pairs
        fragment = enumerate_trees(sorted(space.web), 2)
        retract(back < {(t, t) for t in fragment} or len(space.web) < 2, space.name)
    return [c.result() for c in (selfdual, lemma, contraction, bij, retract)]


def suite_functor(cfg: Config) -> list[PropertyResult]:
    depth = min(cfg.max_depth, 3)
    two = [coh.Space({"0", "1"}, [("0", "1")], name="coh2"), coh.Space({"0", "1"}, name="incoh2")]
    trees = enumerate_trees(["0", "1"], depth)
    ident, comp, witness, linear = (
        _Check("flag-identity"), _Check("flag-composition"), _Check("compose-witness"), _Check("lift-linear"),
    )
    for a in two:
        lift = fl.FlagLift(coh.identity_trace(a))
        for f, g in itertools.product(trees, repeat=2):
            ident(((f, g) in lift) == (f is g), (str(f), str(g)))
    for a, b, c in itertools.product(two, repeat=3):
        for l1 in all_traces(a, b):
            lifted1 = fl.FlagLift(l1)
            fa, fb = fl.FlagSpace(a), fl.FlagSpace(b)
            sub = lifted1.restrict(trees, trees)
            linear(coh.is_linear_trace(sub), (a.name, b.name, sorted(l1.pairs)))
            for l2 in all_traces(b, c):
                lifted2 = fl.FlagLift(l2)
                composite = fl.FlagLift(coh.trace_compose(l1, l2))
                for f, h in itertools.product(trees, repeat=2):
                    direct = (f, h) in composite
                    mediated = any((f, g) in lifted1 and (g, h) in lifted2 for g in trees)
                    comp(direct == mediated, (sorted(l1.pairs), sorted(l2.pairs), str(f), str(h)))
                    if direct:
                        g = fl.flag_compose_witness(l1, l2, f, h)
                        witness((f, g) in lifted1 and (g, h) in lifted2, (str(f), str(h), str(g)))
    return [c.result() for c in (ident, comp, witness, linear)]


def suite_nomonad(cfg: Config) -> list[PropertyResult]:
    report = fl.verify_no_counit()
    check = _Check("no-counit")
    check(len(report.survivors) == 0, f"{len(report.survivors)} surviving candidates")
    res = check.result()
    res.cases = len(report.candidates)
    res.witness = res.witness or f"0 of {len(report.candidates)} candidates survive"
    return [res]


def hspaces(n: int) -> list[hy.Hypercoherence]:
    web = [str(i) for i in range(n)]
    subsets = list(hy.nonsingleton_subsets(web))
    out = []
    for bits in itertools.product((0, 1), repeat=len(subsets)):
        out.append(hy.Hypercoherence(web, {s for s, b in zip(subsets, bits) if b}, name=f"H{n}:{''.join(map(str, bits))}"))
    return out


def suite_hyper(cfg: Config) -> list[PropertyResult]:
    two = hspaces(2)
    checks = {k: _Check(k) for k in (
        "hc-lollipop-de-morgan", "hc-before-self-dual", "hc-before-associative", "hc-sandwich",
        "hflag-self-dual", "hflag-contraction", "hflag-retract",
    )}
    for x, y in itertools.product(two, repeat=2):
        lhs = hy.hc_lollipop(x, y)
        rhs = hy.hc_negation(hy.hc_tensor(x, hy.hc_negation(y)))
        checks["hc-lollipop-de-morgan"](lhs == rhs, (x.name, y.name))
        checks["hc-before-self-dual"](
            hy.hc_negation(hy.hc_before(x, y)) == hy.hc_before(hy.hc_negation(x), hy.hc_negation(y)), (x.name, y.name)
        )
        t, b, p = hy.hc_tensor(x, y), hy.hc_before(x, y), hy.hc_par(x, y)
        checks["hc-sandwich"](t.gamma_star <= b.gamma_star <= p.gamma_star, (x.name, y.name))
        for z in two:
            left = hy.hc_before(hy.hc_before(x, y), z)
            right = hy.hc_before(x, hy.hc_before(y, z))
            moved = {frozenset(((a, (b_, c)) for (a, b_), c in w)) for w in left.gamma_star}
            checks["hc-before-associative"](moved == right.gamma_star, (x.name, y.name, z.name))
    depth = min(cfg.max_depth, 3)
    for x in two + hspaces(3)[:: max(1, len(hspaces(3)) // 8)]:
        trees = enumerate_trees(sorted(x.web), depth if len(x.web) == 2 else 2)
        dual = hy.hc_negation(x)
        fx = hy.HFlag(x)
        for k in range(2, min(len(trees), 4) + 1):
            for fam in itertools.combinations(trees, k):
                a, b = hy.hflag_gamma_star(x, fam), hy.hflag_gamma_star(dual, fam)
                checks["hflag-self-dual"](a != b, (x.name, [str(t) for t in fam]))
                checks["hflag-contraction"](hy.hflag_contraction_holds(x, fam), (x.name, [str(t) for t in fam]))
        for k in range(2, len(x.web) + 1):
            for s in itertools.combinations(sorted(x.web), k):
                checks["hflag-retract"](
                    hy.hflag_gamma_star(x, [Leaf(a) for a in s]) == x.in_gamma_star(s), (x.name, s)
                )
        checks["hflag-retract"](hy.is_hc_morphism(hy.hflag_embed(x), x, fx), x.name)
        checks["hflag-retract"](hy.is_hc_morphism(hy.hflag_project(x), fx, x), x.name)
    return [c.result() for c in checks.values()]


CHORDLESS = ("((a*~c)|(~a*c));(b|~b)", "((a;~c)|(c;~a));(b|~b)")
CORRECT = ("((a|~a)*(~c|c));(b|~b)", "((a;~c)|(~a;c));(b|~b)")


def identify_variables(text: str, mapping: dict[str, str]) -> str:
    return "".join(mapping.get(ch, ch) for ch in text)


def variable_identifications(text: str):
    """The formula with its variables a, b, c merged along each set partition."""
    for target in ("abc", "aac", "abb", "aba", "aaa"):
        yield identify_variables(text, dict(zip("abc", target)))


def suite_nets(cfg: Config) -> list[PropertyResult]:
    catalog = CATALOGS[cfg.catalog]()
    ref, semantic, mono = _Check("reference-structures"), _Check("semantic-correctness"), _Check("weakening-monotone")
    for text in CHORDLESS:
        pi = pn.unique_matching(parse_formula(text))
        v = pn.is_correct(pi, cfg.circuit_cap)
        ref(not v and pn.format_circuit(pi, v.circuit) == "a, ~c, c, ~a, a", text)
    for text in CORRECT:
        ref(pn.is_correct(pn.unique_matching(parse_formula(text)), cfg.circuit_cap).correct, text)
    for text in CHORDLESS + CORRECT:
        for variant in variable_identifications(text):
            for pi in pn.all_matchings(parse_formula(variant)):
                report = pn.semantic_correctness_check(pi, catalog, cfg.circuit_cap)
                semantic(report.agrees, str(pi))
                if report.verdict.correct:
                    for weaker in weakenings(pi):
                        mono(pn.is_correct(weaker, cfg.circuit_cap).correct, str(weaker))
    return [c.result() for c in (ref, semantic, mono)]


def weakenings(pi: pn.ProofStructure):
    """Structures with one tensor turned into before, or one before into par."""
    step = {"tensor": "before", "before": "par"}
    for path in compound_paths(pi.formula):
        g = subformula(pi.formula, path)
        if g.op in step:
            yield pn.ProofStructure(replace_at(pi.formula, path, Compound(step[g.op], g.left, g.right)), pi.links)


SUITES = {
    "before": suite_before,
    "flag": suite_flag,
    "functor": suite_functor,
    "nomonad": suite_nomonad,
    "hyper": suite_hyper,
    "nets": suite_nets,
}


def run_suite(name: str, cfg: Config | None = None) -> list[PropertyResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](cfg or Config())
