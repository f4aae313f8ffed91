"""Hypercoherences and the flag modality on them.

A hypercoherence is stored through its strict atomic coherence ``Γ*``
(the non-singleton members of ``Γ``); singletons are always coherent.
Constructions materialise ``Γ*`` by enumerating subsets of the web, so
webs are capped at ``MAX_WEB`` tokens.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .coherence import DomainError
from .trees import GenericTree, Leaf, is_normal, iter_refinement, split, tokens

MAX_WEB = 12


def nonsingleton_subsets(web: Iterable) -> Iterable[frozenset]:
    web = sorted(web, key=repr)
    if len(web) > MAX_WEB:
        raise ValueError(f"web of {len(web)} tokens exceeds the cap of {MAX_WEB}")
    for k in range(2, len(web) + 1):
        for combo in itertools.combinations(web, k):
            yield frozenset(combo)


@dataclass(frozen=True)
class Hypercoherence:
    web: frozenset
    gamma_star: frozenset
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "web", frozenset(self.web))
        gs = frozenset(frozenset(w) for w in self.gamma_star)
        for w in gs:
            if len(w) < 2:
                raise ValueError("Γ* only holds sets of two or more tokens")
            if not w <= self.web:
                raise DomainError(f"{set(w)} is not a subset of the web")
        object.__setattr__(self, "gamma_star", gs)

    def __contains__(self, token):
        return token in self.web

    def in_gamma_star(self, w) -> bool:
        return frozenset(w) in self.gamma_star

    def in_gamma(self, w) -> bool:
        w = frozenset(w)
        if not w or not w <= self.web:
            return False
        return len(w) == 1 or w in self.gamma_star

    @property
    def gamma(self) -> frozenset:
        return self.gamma_star | {frozenset((a,)) for a in self.web}

    def __eq__(self, other):
        if not isinstance(other, Hypercoherence):
            return NotImplemented
        return self.web == other.web and self.gamma_star == other.gamma_star

    def __hash__(self):
        return hash((self.web, self.gamma_star))

    def __str__(self):
        return self.name or f"hspace({len(self.web)} tokens)"


def _projections(w):
    return frozenset(p[0] for p in w), frozenset(p[1] for p in w)


def hc_negation(x: Hypercoherence) -> Hypercoherence:
    return Hypercoherence(
        x.web, frozenset(nonsingleton_subsets(x.web)) - x.gamma_star, name=f"({x})⊥"
    )


def _product(x, y, member, name):
    web = frozenset(itertools.product(x.web, y.web))
    return Hypercoherence(web, {w for w in nonsingleton_subsets(web) if member(w, x, y)}, name=name)


def tensor_member(w, x, y) -> bool:
    w1, w2 = _projections(w)
    return x.in_gamma(w1) and y.in_gamma(w2)


def lollipop_member(w, x, y) -> bool:
    """Membership of a nonempty finite ``w`` in ``Γ(x ⊸ y)``."""
    w1, w2 = _projections(w)
    if x.in_gamma(w1):
        if not y.in_gamma(w2):
            return False
        if len(w1) >= 2 and len(w2) < 2:
            return False
    return True


def before_strict(w, x, y) -> bool:
    """Membership of ``w`` in ``Γ*(x ◁ y)``; ``x``, ``y`` need ``in_gamma_star``."""
    if len(w) < 2:
        return False
    w1, w2 = _projections(w)
    return x.in_gamma_star(w1) or (len(w1) == 1 and y.in_gamma_star(w2))


def hc_tensor(x: Hypercoherence, y: Hypercoherence) -> Hypercoherence:
    return _product(x, y, tensor_member, f"({x} ⊗ {y})")


def hc_par(x: Hypercoherence, y: Hypercoherence) -> Hypercoherence:
    return hc_negation(hc_tensor(hc_negation(x), hc_negation(y)))


def hc_lollipop(x: Hypercoherence, y: Hypercoherence) -> Hypercoherence:
    return _product(x, y, lollipop_member, f"({x} ⊸ {y})")


def hc_before(x: Hypercoherence, y: Hypercoherence) -> Hypercoherence:
    return _product(x, y, before_strict, f"({x} ◁ {y})")


def is_hc_morphism(pairs: Iterable[tuple], x, y) -> bool:
    """Every nonempty finite subset of ``pairs`` lies in ``Γ(x ⊸ y)``."""
    pairs = sorted(pairs, key=repr)
    for k in range(1, len(pairs) + 1):
        for w in itertools.combinations(pairs, k):
            if not lollipop_member(w, x, y):
                return False
    return True


# -- flag on hypercoherences -------------------------------------------------


def hflag_gamma_star(x: Hypercoherence, trees: Iterable[GenericTree]) -> bool:
    """Is the set of trees in ``Γ*(flag x)``?

    Scan the superposition of all trees in lexicographic order; the first
    leaf where they do not all agree decides.
    """
    trees = sorted(set(trees), key=str)
    for t in trees:
        for a in tokens(t):
            if a not in x:
                raise DomainError(f"tree token {a!r} is not in the web of {x}")
    if len(trees) < 2:
        return False
    for _, values in iter_refinement(trees):
        vals = frozenset(values)
        if len(vals) > 1:
            return x.in_gamma_star(vals)
    return False


class HFlag:
    """``flag x`` for a hypercoherence ``x``; intensional web."""

    def __init__(self, base: Hypercoherence):
        self.base = base

    def __contains__(self, t):
        return isinstance(t, GenericTree) and is_normal(t) and tokens(t) <= self.base.web

    def in_gamma_star(self, trees) -> bool:
        return hflag_gamma_star(self.base, trees)

    def in_gamma(self, trees) -> bool:
        trees = frozenset(trees)
        if not trees or not all(t in self for t in trees):
            return False
        return len(trees) == 1 or self.in_gamma_star(trees)

    def negation(self) -> "HFlag":
        return HFlag(hc_negation(self.base))


def hflag_contraction_holds(x: Hypercoherence, trees: Sequence[GenericTree]) -> bool:
    """``{h}`` ∈ Γ*(flag x)  ⟺  ``{(h0, h1)}`` ∈ Γ*(flag x ◁ flag x)."""
    fx = HFlag(x)
    return hflag_gamma_star(x, trees) == before_strict({split(h) for h in trees}, fx, fx)


def hflag_embed(x: Hypercoherence) -> set:
    return {(a, Leaf(a)) for a in x.web}


def hflag_project(x: Hypercoherence) -> set:
    return {(Leaf(a), a) for a in x.web}
