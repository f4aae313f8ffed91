"""Coherence spaces, the multiplicative connectives and linear traces.

A space only has to answer two questions: is a token in the web, and how
do two tokens relate (``rel3``).  Explicit spaces store their strictly
coherent pairs; compound spaces answer structurally from their components,
so the web of a compound space is only enumerated when somebody asks for
it (``web``, ``scoh_pairs``, equality).
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Hashable, Iterable, Sequence

Token = Hashable


class DomainError(ValueError):
    """A token was given that does not belong to the web it is used in."""


class Rel3(enum.Enum):
    SINCOH = "⌣"
    EQUAL = "="
    SCOH = "⌢"

    def dual(self) -> "Rel3":
        if self is Rel3.SCOH:
            return Rel3.SINCOH
        if self is Rel3.SINCOH:
            return Rel3.SCOH
        return self

    def __str__(self):
        return self.value


SCOH, EQUAL, SINCOH = Rel3.SCOH, Rel3.EQUAL, Rel3.SINCOH

CONNECTIVES = ("tensor", "par", "before", "after", "lollipop")


def combine(kind: str, left: Rel3, right: Rel3) -> Rel3:
    """Relation of two pair-tokens from the relations of their components.

    This is the nine-cell table of each binary multiplicative.
    """
    if left is EQUAL and right is EQUAL:
        return EQUAL
    if kind == "tensor":
        return SINCOH if SINCOH in (left, right) else SCOH
    if kind == "par":
        return SCOH if SCOH in (left, right) else SINCOH
    if kind == "before":
        if left is SCOH or (left is EQUAL and right is SCOH):
            return SCOH
        return SINCOH
    if kind == "after":
        return combine("before", right, left)
    if kind == "lollipop":
        return combine("par", left.dual(), right)
    raise ValueError(f"unknown connective {kind!r}")


class CoherenceSpace:
    """Base class; subclasses implement ``__contains__`` and ``_rel``."""

    name: str | None = None

    def __contains__(self, token) -> bool:
        raise NotImplementedError

    def _rel(self, a, b) -> Rel3:
        """Relation of two web tokens, without membership checks."""
        raise NotImplementedError

    def _enumerate_web(self) -> Iterable:
        raise NotImplementedError

    def check(self, token) -> None:
        if token not in self:
            raise DomainError(f"{token!r} is not in the web of {self}")

    def rel3(self, a, b) -> Rel3:
        self.check(a)
        self.check(b)
        if a == b:
            return EQUAL
        return self._rel(a, b)

    def coherent(self, a, b) -> bool:
        return self.rel3(a, b) is not SINCOH

    @cached_property
    def web(self) -> frozenset:
        return frozenset(self._enumerate_web())

    @cached_property
    def scoh_pairs(self) -> frozenset:
        toks = sorted(self.web, key=repr)
        return frozenset(
            frozenset((a, b))
            for a, b in itertools.combinations(toks, 2)
            if self._rel(a, b) is SCOH
        )

    def __len__(self):
        return len(self.web)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, CoherenceSpace):
            return NotImplemented
        return self.web == other.web and self.scoh_pairs == other.scoh_pairs

    def __hash__(self):
        return hash(self.web)

    def explicit(self, name=None) -> "Space":
        """Materialise as an explicit :class:`Space` with the same relation."""
        return Space(self.web, self.scoh_pairs, name=name or self.name)


class Space(CoherenceSpace):
    """A finite space given by its web and its strictly coherent pairs."""

    def __init__(self, web: Iterable, scoh: Iterable = (), name: str | None = None):
        web = frozenset(web)
        pairs = set()
        for pair in scoh:
            pair = tuple(pair)
            if len(pair) != 2 or pair[0] == pair[1]:
                raise ValueError(f"coherent pair must have two distinct tokens: {pair!r}")
            a, b = pair
            if a not in web or b not in web:
                raise DomainError(f"pair {pair!r} mentions a token outside the web")
            pairs.add(frozenset((a, b)))
        self.__dict__["web"] = web
        self.__dict__["scoh_pairs"] = frozenset(pairs)
        self.name = name

    def __contains__(self, token) -> bool:
        try:
            return token in self.web
        except TypeError:
            return False

    def _rel(self, a, b) -> Rel3:
        return SCOH if frozenset((a, b)) in self.scoh_pairs else SINCOH

    def __repr__(self):
        return f"Space({sorted(self.web, key=repr)!r}, {len(self.scoh_pairs)} pairs, name={self.name!r})"

    def __str__(self):
        return self.name or repr(self)


class Negation(CoherenceSpace):
    def __init__(self, base: CoherenceSpace):
        self.base = base

    def __contains__(self, token):
        return token in self.base

    def _rel(self, a, b):
        return self.base._rel(a, b).dual()

    def _enumerate_web(self):
        return self.base.web

    def __str__(self):
        return f"({self.base})⊥"


class Multiplicative(CoherenceSpace):
    """``left * right`` for one of tensor, par, before, after, lollipop."""

    SYMBOLS = {"tensor": "⊗", "par": "⅋", "before": "◁", "after": "▷", "lollipop": "⊸"}

    def __init__(self, kind: str, left: CoherenceSpace, right: CoherenceSpace):
        if kind not in CONNECTIVES:
            raise ValueError(f"unknown connective {kind!r}")
        self.kind, self.left, self.right = kind, left, right

    def __contains__(self, token):
        return (
            isinstance(token, tuple)
            and len(token) == 2
            and token[0] in self.left
            and token[1] in self.right
        )

    def _rel(self, a, b):
        rl = EQUAL if a[0] == b[0] else self.left._rel(a[0], b[0])
        rr = EQUAL if a[1] == b[1] else self.right._rel(a[1], b[1])
        return combine(self.kind, rl, rr)

    def _enumerate_web(self):
        return itertools.product(self.left.web, self.right.web)

    def __str__(self):
        return f"({self.left} {self.SYMBOLS[self.kind]} {self.right})"


def negation(a: CoherenceSpace) -> CoherenceSpace:
    if isinstance(a, Negation):
        return a.base
    return Negation(a)


def tensor(a, b):
    return Multiplicative("tensor", a, b)


def par(a, b):
    return Multiplicative("par", a, b)


def before(a, b):
    return Multiplicative("before", a, b)


def after(a, b):
    """``a ▷ b``: tokens are ``(α, β)`` with α from ``a``; related as ``b ◁ a``."""
    return Multiplicative("after", a, b)


def lollipop(a, b):
    return Multiplicative("lollipop", a, b)


def rel3(space: CoherenceSpace, a, b) -> Rel3:
    return space.rel3(a, b)


# -- series-parallel orders --------------------------------------------------


@dataclass(frozen=True)
class SpLeaf:
    index: int


@dataclass(frozen=True)
class SpSeries:
    left: "SpOrder"
    right: "SpOrder"


@dataclass(frozen=True)
class SpParallel:
    left: "SpOrder"
    right: "SpOrder"


SpOrder = SpLeaf | SpSeries | SpParallel


def series(*parts: SpOrder) -> SpOrder:
    out = parts[0]
    for p in parts[1:]:
        out = SpSeries(out, p)
    return out


def parallel(*parts: SpOrder) -> SpOrder:
    out = parts[0]
    for p in parts[1:]:
        out = SpParallel(out, p)
    return out


def sp_positions(order: SpOrder) -> list[int]:
    if isinstance(order, SpLeaf):
        return [order.index]
    return sp_positions(order.left) + sp_positions(order.right)


def sp_strict_order(order: SpOrder) -> frozenset[tuple[int, int]]:
    """Pairs ``(j, i)`` with ``j`` strictly below ``i``."""
    if isinstance(order, SpLeaf):
        return frozenset()
    below = sp_strict_order(order.left) | sp_strict_order(order.right)
    if isinstance(order, SpSeries):
        below |= {
            (j, i) for j in sp_positions(order.left) for i in sp_positions(order.right)
        }
    return below


class SpSpace(CoherenceSpace):
    """The space of an sp-ordered family; tokens are n-tuples."""

    def __init__(self, order: SpOrder, spaces: Sequence[CoherenceSpace]):
        positions = sp_positions(order)
        if sorted(positions) != list(range(len(positions))):
            raise ValueError(f"sp-order leaves must be 0..n-1 exactly once, got {positions}")
        if len(positions) != len(spaces):
            raise ValueError(
                f"sp-order has {len(positions)} leaves but {len(spaces)} spaces were given"
            )
        self.order = order
        self.spaces = tuple(spaces)
        below = sp_strict_order(order)
        self._below = {i: frozenset(j for j, k in below if k == i) for i in positions}

    def __contains__(self, token):
        return (
            isinstance(token, tuple)
            and len(token) == len(self.spaces)
            and all(t in s for t, s in zip(token, self.spaces))
        )

    def _rel(self, a, b):
        for i, space in enumerate(self.spaces):
            if a[i] != b[i] and space._rel(a[i], b[i]) is SCOH:
                if all(a[j] == b[j] for j in self._below[i]):
                    return SCOH
        return SINCOH

    def _enumerate_web(self):
        return itertools.product(*(s.web for s in self.spaces))


def sp_space(order: SpOrder, spaces: Sequence[CoherenceSpace]) -> CoherenceSpace:
    if isinstance(order, SpLeaf):
        if len(spaces) != 1 or order.index != 0:
            raise ValueError("a single-leaf order takes exactly one space")
        return spaces[0]
    return SpSpace(order, spaces)


# -- cliques and traces ------------------------------------------------------


def is_clique(space, tokens: Iterable) -> bool:
    toks = list(tokens)
    if not all(t in space for t in toks):
        return False
    return all(space.rel3(a, b) is not SINCOH for a, b in itertools.combinations(toks, 2))


@dataclass(frozen=True)
class Clique:
    space: Any
    tokens: frozenset

    def __post_init__(self):
        object.__setattr__(self, "tokens", frozenset(self.tokens))
        if not is_clique(self.space, self.tokens):
            raise ValueError("tokens are not pairwise coherent in the web")

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class LinearTrace:
    """A set of (input, output) pairs between two spaces."""

    source: Any
    target: Any
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))

    def inverse(self) -> "LinearTrace":
        return LinearTrace(self.target, self.source, {(b, a) for a, b in self.pairs})

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


def is_linear_trace(t: LinearTrace) -> bool:
    """True iff the pairs form a clique of ``source ⊸ target``."""
    for a, b in t.pairs:
        if a not in t.source or b not in t.target:
            return False
    for (a, b), (a2, b2) in itertools.combinations(t.pairs, 2):
        if combine("lollipop", t.source.rel3(a, a2), t.target.rel3(b, b2)) is SINCOH:
            return False
    return True


def identity_trace(space: CoherenceSpace) -> LinearTrace:
    return LinearTrace(space, space, {(a, a) for a in space.web})


def trace_apply(t: LinearTrace, x) -> Clique:
    tokens = frozenset(x.tokens if isinstance(x, Clique) else x)
    if not is_clique(t.source, tokens):
        raise ValueError("argument is not a clique of the source space")
    return Clique(t.target, {b for a, b in t.pairs if a in tokens})


def _same_space(a, b) -> bool:
    return a is b or a == b


def trace_compose(t1: LinearTrace, t2: LinearTrace) -> LinearTrace:
    """``t2 ∘ t1``: first ``t1`` then ``t2``."""
    if not _same_space(t1.target, t2.source):
        raise ValueError("trace_compose: target of the first trace is not the source of the second")
    by_mid: dict = {}
    for b, c in t2.pairs:
        by_mid.setdefault(b, set()).add(c)
    pairs = {(a, c) for a, b in t1.pairs for c in by_mid.get(b, ())}
    return LinearTrace(t1.source, t2.target, pairs)


def before_assoc_iso(a, b, c) -> LinearTrace:
    """``A ◁ (B ◁ C) → (A ◁ B) ◁ C`` by re-pairing tokens."""
    pairs = {
        ((x, (y, z)), ((x, y), z)) for x in a.web for y in b.web for z in c.web
    }
    return LinearTrace(before(a, before(b, c)), before(before(a, b), c), pairs)


def tensor_to_before(a, b) -> LinearTrace:
    return LinearTrace(tensor(a, b), before(a, b), {(t, t) for t in itertools.product(a.web, b.web)})


def before_to_par(a, b) -> LinearTrace:
    return LinearTrace(before(a, b), par(a, b), {(t, t) for t in itertools.product(a.web, b.web)})


# -- isomorphism search ------------------------------------------------------


def spaces_isomorphic(a: CoherenceSpace, b: CoherenceSpace, max_web: int = 8) -> dict | None:
    """A web bijection preserving ``rel3`` both ways, or ``None``.

    Backtracking search; refuses webs larger than ``max_web``.
    """
    wa = sorted(a.web, key=repr)
    wb = sorted(b.web, key=repr)
    if max(len(wa), len(wb)) > max_web:
        raise ValueError(f"web size exceeds max_web={max_web}")
    if len(wa) != len(wb) or len(a.scoh_pairs) != len(b.scoh_pairs):
        return None

    def degree(space, t):
        return sum(1 for p in space.scoh_pairs if t in p)

    deg_b = {t: degree(b, t) for t in wb}
    wa.sort(key=lambda t: -degree(a, t))
    deg_a = {t: degree(a, t) for t in wa}
    mapping: dict = {}
    used: set = set()

    def extend(i):
        if i == len(wa):
            return True
        x = wa[i]
        for y in wb:
            if y in used or deg_b[y] != deg_a[x]:
                continue
            if all(a.rel3(x, x2) is b.rel3(y, mapping[x2]) for x2 in wa[:i]):
                mapping[x] = y
                used.add(y)
                if extend(i + 1):
                    return True
                del mapping[x]
                used.discard(y)
        return False

    return dict(mapping) if extend(0) else None
