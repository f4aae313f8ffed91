"""Handsome pomset proof structures: correctness and coherence semantics."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .coherence import CoherenceSpace, Multiplicative, Space, is_clique, negation
from .formulas import (
    Atom,
    Compound,
    Dicograph,
    Formula,
    atoms,
    dicograph_of,
    dual,
    format_formula,
    occurrence_span,
    parse_formula,
    subformula,
    variables,
)

DEFAULT_CIRCUIT_CAP = 20


class StructureError(ValueError):
    """The axiom links or cuts do not form a proof structure."""


@dataclass(frozen=True)
class ProofStructure:
    formula: Formula
    links: frozenset
    cuts: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "links", frozenset(frozenset(l) for l in self.links))
        object.__setattr__(self, "cuts", tuple(self.cuts))
        occ = atoms(self.formula)
        seen: set[int] = set()
        for link in self.links:
            if len(link) != 2:
                raise StructureError(f"axiom link {sorted(link)} must join two distinct atoms")
            u, v = sorted(link)
            for w in (u, v):
                if not 0 <= w < len(occ):
                    raise StructureError(f"occurrence {w} does not exist")
                if w in seen:
                    raise StructureError(f"occurrence {w} ({occ[w].label}) is in two axiom links")
                seen.add(w)
            if occ[u].dual() != occ[v]:
                raise StructureError(f"link {u}-{v} joins {occ[u].label} and {occ[v].label}, which are not dual")
        if len(seen) != len(occ):
            missing = sorted(set(range(len(occ))) - seen)
            raise StructureError(f"occurrences {missing} have no axiom link")
        for path in self.cuts:
            self._check_cut(path)

    def _check_cut(self, path):
        f = self.formula
        for bit in path:
            if isinstance(f, Atom) or f.op == "tensor":
                raise StructureError(f"cut {path!r} is not a conclusion (it is below an atom or a tensor)")
            f = f.left if bit == "0" else f.right
        if not isinstance(f, Compound) or f.op != "tensor" or dual(f.left) != f.right:
            raise StructureError(f"cut {path!r} is not of the form K * ~K")
        if not path:
            raise StructureError("the whole conclusion cannot be a cut")

    @cached_property
    def dicograph(self) -> Dicograph:
        return dicograph_of(self.formula)

    @cached_property
    def mate(self) -> tuple[int, ...]:
        m = [0] * len(atoms(self.formula))
        for link in self.links:
            u, v = tuple(link)
            m[u], m[v] = v, u
        return tuple(m)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.dicograph.labels

    def sorted_links(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(l)) for l in self.links)

    def __str__(self):
        return format_formula(self.formula) + "  " + " ".join(f"{u}-{v}" for u, v in self.sorted_links())


def all_matchings(formula: Formula, cuts: Iterable[str] = ()) -> Iterator[ProofStructure]:
    """Every proof structure on ``formula`` (all dual perfect matchings)."""
    occ = atoms(formula)
    per_var = []
    for v in variables(formula):
        pos = [i for i, a in enumerate(occ) if a.name == v and a.positive]
        neg = [i for i, a in enumerate(occ) if a.name == v and not a.positive]
        if len(pos) != len(neg):
            return
        per_var.append([list(zip(pos, perm)) for perm in itertools.permutations(neg)])
    for choice in itertools.product(*per_var):
        yield ProofStructure(formula, [l for links in choice for l in links], tuple(cuts))


def unique_matching(formula: Formula, cuts: Iterable[str] = ()) -> ProofStructure:
    found = list(itertools.islice(all_matchings(formula, cuts), 2))
    if len(found) != 1:
        raise StructureError("axiom links are ambiguous or impossible; list them with 'link i j'")
    return found[0]


# -- correctness criterion ---------------------------------------------------


@dataclass(frozen=True)
class Circuit:
    """A closed alternating path ``vertices[0] … vertices[-1] = vertices[0]``."""

    vertices: tuple[int, ...]
    first_step: str  # "R" or "B"

    def steps(self) -> list[tuple[str, int, int]]:
        kinds = itertools.cycle((self.first_step, "B" if self.first_step == "R" else "R"))
        return [(k, u, v) for k, u, v in zip(kinds, self.vertices, self.vertices[1:])]

    def r_links(self) -> frozenset:
        return frozenset(frozenset((u, v)) for k, u, v in self.steps() if k == "R")

    def key(self) -> frozenset:
        return frozenset((k, frozenset((u, v))) for k, u, v in self.steps())


@dataclass(frozen=True)
class Verdict:
    correct: bool
    circuit: Circuit | None = None

    def __bool__(self):
        return self.correct


def ae_circuits(pi: ProofStructure, cap: int = DEFAULT_CIRCUIT_CAP) -> Iterator[Circuit]:
    """Elementary circuits alternating R and B steps.

    B edges and R edges are walked both ways, R arcs only forward.  Each
    circuit is reported from its least vertex; a circuit made only of
    undirected links is reported once, starting with an R step.
    """
    n = len(pi.labels)
    if n > cap:
        raise ValueError(f"{n} atom occurrences exceed the circuit cap of {cap}")
    succ = pi.dicograph.successors
    mate = pi.mate
    seen = set()

    def dfs(start, first, u, kind, path, visited):
        nexts = (mate[u],) if kind == "B" else succ[u]
        for v in nexts:
            if v == start and kind != first:
                yield Circuit(tuple(path) + (start,), first)
            elif v > start and v not in visited:
                visited.add(v)
                path.append(v)
                yield from dfs(start, first, v, "R" if kind == "B" else "B", path, visited)
                path.pop()
                visited.discard(v)

    for s in range(n):
        for first in ("R", "B"):
            for c in dfs(s, first, s, first, [s], {s}):
                if c.key() not in seen:
                    seen.add(c.key())
                    yield c


def chords(pi: ProofStructure, circuit: Circuit) -> list[tuple[int, int]]:
    on = sorted(set(circuit.vertices))
    used = circuit.r_links()
    d = pi.dicograph
    return [
        (u, v)
        for u, v in itertools.combinations(on, 2)
        if d.linked(u, v) and frozenset((u, v)) not in used
    ]


def is_correct(pi: ProofStructure, cap: int = DEFAULT_CIRCUIT_CAP) -> Verdict:
    for c in ae_circuits(pi, cap):
        if not chords(pi, c):
            return Verdict(False, c)
    return Verdict(True)


def format_circuit(pi: ProofStructure, circuit: Circuit, sep: str = ", ") -> str:
    return sep.join(pi.labels[v] for v in circuit.vertices)


# -- coherence semantics -----------------------------------------------------


def formula_space(f: Formula, interp: Mapping[str, CoherenceSpace]) -> CoherenceSpace:
    if isinstance(f, Atom):
        if f.name not in interp:
            raise KeyError(f"no coherence space for variable {f.name!r}")
        space = interp[f.name]
        return space if f.positive else negation(space)
    return Multiplicative(f.op, formula_space(f.left, interp), formula_space(f.right, interp))


def residual_formula(pi: ProofStructure) -> tuple[Formula, list[int]]:
    """Conclusion with the cut formulas removed, and its occurrence indices."""
    f = pi.formula
    keep = list(range(len(atoms(f))))
    for path in sorted(pi.cuts, key=len, reverse=True):
        span = occurrence_span(pi.formula, path)
        keep = [i for i in keep if i not in span]
    drop = set(pi.cuts)

    def prune(g, path):
        if path in drop:
            return None
        if isinstance(g, Atom):
            return g
        left, right = prune(g.left, path + "0"), prune(g.right, path + "1")
        if left is None:
            return right
        if right is None:
            return left
        return Compound(g.op, left, right)

    return prune(f, ""), keep


def _token_of(f: Formula, values: list, start: int = 0):
    if isinstance(f, Atom):
        return values[start], start + 1
    left, k = _token_of(f.left, values, start)
    right, k = _token_of(f.right, values, k)
    return (left, right), k


def experiments(pi: ProofStructure, interp: Mapping[str, CoherenceSpace]) -> frozenset:
    """Results of all succeeding experiments, tokens of the residual conclusion."""
    occ = atoms(pi.formula)
    links = pi.sorted_links()
    choices = []
    for u, _ in links:
        space = interp[occ[u].name]
        choices.append(sorted(space.web, key=repr))
    cut_pairs = []
    for path in pi.cuts:
        k = subformula(pi.formula, path)
        span = occurrence_span(pi.formula, path)
        half = len(atoms(k.left))
        cut_pairs += [(span[i], span[half + i]) for i in range(half)]
    residual, keep = residual_formula(pi)
    results = set()
    values = [None] * len(occ)
    for assignment in itertools.product(*choices):
        for (u, v), tok in zip(links, assignment):
            values[u] = values[v] = tok
        if any(values[i] != values[j] for i, j in cut_pairs):
            continue
        results.add(_token_of(residual, [values[i] for i in keep])[0])
    return frozenset(results)


def interpretation(pi: ProofStructure, interp: Mapping[str, CoherenceSpace]) -> tuple[CoherenceSpace, frozenset]:
    residual, _ = residual_formula(pi)
    return formula_space(residual, interp), experiments(pi, interp)


def default_catalog() -> dict[str, Space]:
    return {
        "one": Space({"*"}, name="one"),
        "coh2": Space({"0", "1"}, [("0", "1")], name="coh2"),
        "incoh2": Space({"0", "1"}, name="incoh2"),
        "mixed3": Space({"0", "1", "2"}, [("0", "1"), ("1", "2")], name="mixed3"),
    }


def catalog_interpretations(names: Iterable[str], catalog: Mapping[str, Space] | None = None):
    catalog = catalog or default_catalog()
    names = list(names)
    for combo in itertools.product(sorted(catalog), repeat=len(names)):
        yield {n: catalog[c] for n, c in zip(names, combo)}


@dataclass
class SemanticReport:
    verdict: Verdict
    outcomes: list[tuple[dict, int, bool]] = field(default_factory=list)

    @property
    def all_cliques(self) -> bool:
        return all(ok for _, _, ok in self.outcomes)

    @property
    def agrees(self) -> bool:
        return self.verdict.correct == self.all_cliques

    def separating(self) -> dict | None:
        for names, _, ok in self.outcomes:
            if not ok:
                return names
        return None


def semantic_correctness_check(
    pi: ProofStructure,
    catalog: Mapping[str, Space] | None = None,
    cap: int = DEFAULT_CIRCUIT_CAP,
) -> SemanticReport:
    report = SemanticReport(is_correct(pi, cap))
    for interp in catalog_interpretations(variables(pi.formula), catalog):
        space, result = interpretation(pi, interp)
        names = {v: s.name for v, s in interp.items()}
        report.outcomes.append((names, len(result), is_clique(space, result)))
    return report


# -- structure files and DOT -------------------------------------------------


def parse_structure(text: str) -> ProofStructure:
    """Formula line, then ``link i j`` lines, then optional ``cut PATH`` lines.

    Without any link line the matching must be unique.  ``#`` starts a
    comment.  A cut path is a word over 0/1 (0 = left) or ``-`` for the root.
    """
    formula = None
    links, cuts = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if formula is None:
            formula = parse_formula(line)
            continue
        parts = line.split()
        if parts[0] == "link" and len(parts) == 3:
            try:
                links.append((int(parts[1]), int(parts[2])))
            except ValueError:
                raise StructureError(f"line {lineno}: link expects two occurrence indices") from None
        elif parts[0] == "cut" and len(parts) == 2:
            path = "" if parts[1] == "-" else parts[1]
            if set(path) - {"0", "1"}:
                raise StructureError(f"line {lineno}: cut path must be a 0/1 word")
            cuts.append(path)
        else:
            raise StructureError(f"line {lineno}: expected 'link i j' or 'cut PATH'")
    if formula is None:
        raise StructureError("no formula line")
    if not links:
        return unique_matching(formula, cuts)
    return ProofStructure(formula, links, tuple(cuts))


def format_structure(pi: ProofStructure) -> str:
    lines = [format_formula(pi.formula)]
    lines += [f"link {u} {v}" for u, v in pi.sorted_links()]
    lines += [f"cut {p or '-'}" for p in pi.cuts]
    return "\n".join(lines) + "\n"


def to_dot(d: Dicograph, links: Iterable[Iterable[int]] = (), name: str = "dicograph") -> str:
    names = d.vertex_names()
    q = lambda s: '"' + s.replace('"', '\\"') + '"'
    lines = [f"digraph {name} {{"]
    lines += [f"  {q(n)};" for n in sorted(names)]
    arcs = sorted((names[u], names[v]) for u, v in d.arcs)
    lines += [f"  {q(a)} -> {q(b)};" for a, b in arcs]
    edges = sorted(tuple(sorted(names[u] for u in e)) for e in d.edges)
    lines += [f"  {q(a)} -> {q(b)} [dir=none];" for a, b in edges]
    bold = sorted(tuple(sorted(names[u] for u in l)) for l in links)
    lines += [f"  {q(a)} -> {q(b)} [dir=none, style=bold, color=blue];" for a, b in bold]
    lines.append("}")
    return "\n".join(lines) + "\n"
