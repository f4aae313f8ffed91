"""Pomset formulas in negation normal form, their parser and dicographs.

ASCII syntax: ``*`` tensor, ``|`` par, ``;`` before, ``~a`` or ``a'``
for a negative atom.  Chains of one connective associate to the left;
mixing connectives needs parentheses.  ``~`` in front of a parenthesised
formula is pushed to the atoms by De Morgan.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

OPS = {"*": "tensor", "|": "par", ";": "before"}
OP_SYMBOL = {v: k for k, v in OPS.items()}
OP_UNICODE = {"tensor": "⊗", "par": "⅋", "before": "◁"}
DUAL_OP = {"tensor": "par", "par": "tensor", "before": "before"}


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Atom:
    name: str
    positive: bool = True

    def dual(self) -> "Atom":
        return Atom(self.name, not self.positive)

    @property
    def label(self) -> str:
        return self.name if self.positive else "~" + self.name

    @property
    def pretty(self) -> str:
        return self.name if self.positive else self.name + "⊥"


@dataclass(frozen=True)
class Compound:
    op: str
    left: "Formula"
    right: "Formula"

    def __post_init__(self):
        if self.op not in OP_SYMBOL:
            raise ValueError(f"unknown connective {self.op!r}")


Formula = Atom | Compound


def dual(f: Formula) -> Formula:
    """Negation pushed to the atoms (``before`` keeps its order)."""
    if isinstance(f, Atom):
        return f.dual()
    return Compound(DUAL_OP[f.op], dual(f.left), dual(f.right))


def atoms(f: Formula) -> list[Atom]:
    """Atom occurrences, left to right; list positions are occurrence indices."""
    if isinstance(f, Atom):
        return [f]
    return atoms(f.left) + atoms(f.right)


def variables(f: Formula) -> list[str]:
    return sorted({a.name for a in atoms(f)})


def subformula(f: Formula, path: str) -> Formula:
    for bit in path:
        if isinstance(f, Atom):
            raise ValueError(f"path {path!r} goes below an atom")
        f = f.left if bit == "0" else f.right
    return f


def occurrence_span(f: Formula, path: str) -> range:
    """Occurrence indices of the atoms under ``path``."""
    start = 0
    for bit in path:
        if isinstance(f, Atom):
            raise ValueError(f"path {path!r} goes below an atom")
        if bit == "1":
            start += len(atoms(f.left))
            f = f.right
        else:
            f = f.left
    return range(start, start + len(atoms(f)))


def replace_at(f: Formula, path: str, new: Formula) -> Formula:
    if not path:
        return new
    if path[0] == "0":
        return Compound(f.op, replace_at(f.left, path[1:], new), f.right)
    return Compound(f.op, f.left, replace_at(f.right, path[1:], new))


def compound_paths(f: Formula, path: str = "") -> list[str]:
    if isinstance(f, Atom):
        return []
    return [path] + compound_paths(f.left, path + "0") + compound_paths(f.right, path + "1")


# -- parser ------------------------------------------------------------------

_LEX = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while True:
        m = _LEX.match(text, pos)
        if not m:
            break
        if m.group(1):
            out.append(("ident", m.group(1), m.start(1)))
        elif m.group(2):
            ch = m.group(2)
            if ch not in "()*|;~'":
                raise FormulaSyntaxError(f"unexpected character {ch!r}", m.start(2))
            out.append((ch, ch, m.start(2)))
        else:
            break
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


def parse_formula(text: str) -> Formula:
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise FormulaSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        i += 1
        return tok

    def unary():
        nonlocal i
        kind, _, pos = peek()
        if kind == "~":
            i += 1
            return dual(unary())
        if kind == "(":
            i += 1
            f = expr()
            take(")")
        elif kind == "ident":
            f = Atom(take("ident")[1])
        else:
            what = "end of input" if kind == "eof" else repr(peek()[1])
            raise FormulaSyntaxError(f"expected a formula, found {what}", pos)
        while peek()[0] == "'":
            i += 1
            f = dual(f)
        return f

    def expr():
        nonlocal i
        f = unary()
        op = None
        while peek()[0] in OPS:
            sym, _, pos = peek()
            if op is not None and sym != op:
                raise FormulaSyntaxError("mixed connectives need parentheses", pos)
            op = sym
            i += 1
            f = Compound(OPS[sym], f, unary())
        return f

    f = expr()
    if peek()[0] != "eof":
        raise FormulaSyntaxError(f"unexpected {peek()[1]!r}", peek()[2])
    return f


def format_formula(f: Formula, unicode: bool = False) -> str:
    def atom(a):
        return a.pretty if unicode else a.label

    def go(g, parent, side):
        if isinstance(g, Atom):
            return atom(g)
        sym = OP_UNICODE[g.op] if unicode else OP_SYMBOL[g.op]
        body = f"{go(g.left, g.op, 0)}{' ' if unicode else ''}{sym}{' ' if unicode else ''}{go(g.right, g.op, 1)}"
        if parent is None or (parent == g.op and side == 0):
            return body
        return f"({body})"

    return go(f, None, 0)


# -- dicographs --------------------------------------------------------------


@dataclass(frozen=True)
class Dicograph:
    """R-arcs (directed, from ``before``) and R-edges (from ``tensor``)."""

    labels: tuple[str, ...]
    arcs: frozenset
    edges: frozenset

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        succ = [set() for _ in self.labels]
        for u, v in self.arcs:
            succ[u].add(v)
        for e in self.edges:
            u, v = tuple(e)
            succ[u].add(v)
            succ[v].add(u)
        return tuple(tuple(sorted(s)) for s in succ)

    def linked(self, u: int, v: int) -> bool:
        """Any R link between ``u`` and ``v``, either direction."""
        return (u, v) in self.arcs or (v, u) in self.arcs or frozenset((u, v)) in self.edges

    def vertex_names(self) -> list[str]:
        """Labels, suffixed with a rank when a label occurs more than once."""
        seen: dict[str, int] = {}
        total = {l: self.labels.count(l) for l in self.labels}
        names = []
        for l in self.labels:
            k = seen.get(l, 0)
            seen[l] = k + 1
            names.append(l if total[l] == 1 else f"{l}#{k}")
        return names

    def labelled(self) -> tuple[frozenset, frozenset]:
        names = self.vertex_names()
        return (
            frozenset((names[u], names[v]) for u, v in self.arcs),
            frozenset(frozenset(names[u] for u in e) for e in self.edges),
        )

    def same_as(self, other: "Dicograph") -> bool:
        """Equal up to a label-preserving renumbering of the vertices."""
        if sorted(self.labels) != sorted(other.labels):
            return False
        if len(set(self.labels)) == len(self.labels):
            return self.labelled() == other.labelled()
        n = len(self.labels)
        mapping: dict[int, int] = {}

        def extend(u):
            if u == n:
                return True
            for v in range(n):
                if v in mapping.values() or other.labels[v] != self.labels[u]:
                    continue
                ok = all(
                    ((u, w) in self.arcs) == ((v, mapping[w]) in other.arcs)
                    and ((w, u) in self.arcs) == ((mapping[w], v) in other.arcs)
                    and (frozenset((u, w)) in self.edges) == (frozenset((v, mapping[w])) in other.edges)
                    for w in mapping
                )
                if ok:
                    mapping[u] = v
                    if extend(u + 1):
                        return True
                    del mapping[u]
            return False

        return extend(0)


def dicograph_of(f: Formula) -> Dicograph:
    labels = tuple(a.label for a in atoms(f))
    arcs, edges = set(), set()

    def walk(g, start):
        if isinstance(g, Atom):
            return range(start, start + 1)
        left = walk(g.left, start)
        right = walk(g.right, left.stop)
        if g.op == "tensor":
            edges.update(frozenset((u, v)) for u in left for v in right)
        elif g.op == "before":
            arcs.update((u, v) for u in left for v in right)
        return range(start, right.stop)

    walk(f, 0)
    return Dicograph(labels, frozenset(arcs), frozenset(edges))


# -- rewriting up to the dicograph ------------------------------------------


def equivalent_rewrites(f: Formula) -> Iterator[Formula]:
    """One-step rewrites that keep the dicograph: commutativity of par and
    tensor, associativity of all three connectives."""
    for path in compound_paths(f):
        g = subformula(f, path)
        if g.op in ("par", "tensor"):
            yield replace_at(f, path, Compound(g.op, g.right, g.left))
        if isinstance(g.left, Compound) and g.left.op == g.op:
            yield replace_at(f, path, Compound(g.op, g.left.left, Compound(g.op, g.left.right, g.right)))
        if isinstance(g.right, Compound) and g.right.op == g.op:
            yield replace_at(f, path, Compound(g.op, Compound(g.op, g.left, g.right.left), g.right.right))


def random_rewrite(f: Formula, rng: random.Random, steps: int = 10) -> Formula:
    for _ in range(steps):
        options = list(equivalent_rewrites(f))
        if not options:
            break
        f = rng.choice(options)
    return f


def random_formula(rng: random.Random, variables: list[str], pairs: int) -> Formula:
    """A random formula with ``pairs`` positive and ``pairs`` negative atoms,
    each positive ``x`` matched by some ``~x``."""
    leaves: list[Formula] = []
    for _ in range(pairs):
        v = rng.choice(variables)
        leaves += [Atom(v), Atom(v, False)]
    rng.shuffle(leaves)
    while len(leaves) > 1:
        i = rng.randrange(len(leaves) - 1)
        op = rng.choice(("tensor", "par", "before"))
        leaves[i : i + 2] = [Compound(op, leaves[i], leaves[i + 1])]
    return leaves[0]
