"""The flag modality on coherence spaces.

The web of ``flag A`` is the (infinite) set of normal generic trees over
``|A|``; it is never enumerated.  Everything here works pairwise, through
``first_difference``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .coherence import (
    EQUAL,
    SCOH,
    SINCOH,
    CoherenceSpace,
    DomainError,
    LinearTrace,
    Rel3,
    Space,
    before,
    negation,
    trace_compose,
)
from .trees import (
    GenericTree,
    Leaf,
    Node,
    evaluate,
    first_difference,
    is_normal,
    iter_refinement,
    merge,
    normalize,
    split,
    tokens,
    from_pairs,
)


class FlagSpace:
    """``flag A``: membership test plus ``rel3``; no enumerable web."""

    def __init__(self, base: CoherenceSpace):
        self.base = base

    def __contains__(self, t) -> bool:
        return isinstance(t, GenericTree) and is_normal(t) and all(a in self.base for a in tokens(t))

    def check(self, t):
        if t not in self:
            raise DomainError(f"{t} is not a normal tree over the web of {self.base}")

    def rel3(self, f: GenericTree, g: GenericTree) -> Rel3:
        return flag_rel3(self.base, f, g)

    def _rel(self, f, g) -> Rel3:
        return flag_rel3(self.base, f, g)

    def negation(self) -> "FlagSpace":
        return FlagSpace(negation(self.base))

    @property
    def web(self):
        raise TypeError("the web of a flag space is infinite")

    def __eq__(self, other):
        return isinstance(other, FlagSpace) and self.base == other.base

    def __hash__(self):
        return hash(("flag", self.base))

    def __str__(self):
        return f"flag({self.base})"


def _check_alphabet(space: CoherenceSpace, *trees: GenericTree):
    for t in trees:
        for a in tokens(t):
            if a not in space:
                raise DomainError(f"tree token {a!r} is not in the web of {space}")


def flag_rel3(space: CoherenceSpace, f: GenericTree, g: GenericTree) -> Rel3:
    """Classify ``f``, ``g`` in ``flag space``.

    The only possible witness of strict coherence is the least point where
    the two functions differ, so the base relation there decides.
    """
    _check_alphabet(space, f, g)
    m = first_difference(f, g)
    if m is None:
        return EQUAL
    return space.rel3(evaluate(f, m), evaluate(g, m))


def flag_rel3_bruteforce(space: CoherenceSpace, f: GenericTree, g: GenericTree) -> Rel3:
    """Same classification, searching every refinement leaf for a witness."""
    leaves = list(iter_refinement((f, g)))
    if all(a == b for _, (a, b) in leaves):
        return EQUAL
    for i, (_, (a, b)) in enumerate(leaves):
        if a != b and space.rel3(a, b) is SCOH and all(x == y for _, (x, y) in leaves[:i]):
            return SCOH
    return SINCOH


def flag_self_duality_check(space: CoherenceSpace, pairs: Iterable[tuple[GenericTree, GenericTree]]) -> bool:
    dual = negation(space)
    for f, g in pairs:
        r, rd = flag_rel3(space, f, g), flag_rel3(dual, f, g)
        if r is EQUAL or rd is EQUAL:
            if r is not rd:
                return False
        elif r is rd or SCOH not in (r, rd):
            return False
    return True


def contraction_rel3(space: CoherenceSpace, h: GenericTree, g: GenericTree) -> Rel3:
    """Relation of ``split h`` and ``split g`` in ``flag A ◁ flag A``."""
    fa = FlagSpace(space)
    return before(fa, fa).rel3(split(h), split(g))


def contraction_iso_check(space: CoherenceSpace, pairs: Iterable[tuple[GenericTree, GenericTree]]) -> bool:
    return all(flag_rel3(space, h, g) is contraction_rel3(space, h, g) for h, g in pairs)


def contraction_trace(space: CoherenceSpace, trees: Iterable[GenericTree]) -> LinearTrace:
    """The contraction trace ``{(h, (h0, h1))}`` restricted to ``trees``."""
    fa = FlagSpace(space)
    return LinearTrace(fa, before(fa, fa), {(h, split(h)) for h in trees})


# -- retract -----------------------------------------------------------------


def retract_embed(space: CoherenceSpace) -> LinearTrace:
    """``a ↦`` the constant tree ``a``."""
    return LinearTrace(space, FlagSpace(space), {(a, Leaf(a)) for a in space.web})


def retract_project(space: CoherenceSpace) -> LinearTrace:
    """Constant tree ``a`` ↦ ``a``; undefined on non-constant trees."""
    return retract_embed(space).inverse()


def project(t: GenericTree) -> Hashable | None:
    t = normalize(t)
    return t.token if isinstance(t, Leaf) else None


# -- functor action ----------------------------------------------------------


@dataclass(frozen=True)
class FlagLift:
    """Membership test for ``flag ℓ = {(f, g) | ∀w (f(w), g(w)) ∈ ℓ}``."""

    trace: LinearTrace
    _pairs: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_pairs", frozenset(self.trace.pairs))

    @property
    def source(self):
        return FlagSpace(self.trace.source)

    @property
    def target(self):
        return FlagSpace(self.trace.target)

    def __contains__(self, pair) -> bool:
        f, g = pair
        _check_alphabet(self.trace.source, f)
        _check_alphabet(self.trace.target, g)
        return all(p in self._pairs for _, p in iter_refinement((f, g)))

    def restrict(self, sources: Iterable[GenericTree], targets: Iterable[GenericTree]) -> LinearTrace:
        targets = list(targets)
        pairs = {(f, g) for f in sources for g in targets if (f, g) in self}
        return LinearTrace(self.source, self.target, pairs)


def flag_lift(trace: LinearTrace) -> FlagLift:
    return FlagLift(trace)


def flag_lift_contains(trace: LinearTrace, f: GenericTree, g: GenericTree) -> bool:
    return (f, g) in FlagLift(trace)


def flag_compose_witness(l1: LinearTrace, l2: LinearTrace, f: GenericTree, h: GenericTree) -> GenericTree:
    """A tree ``g`` with ``(f, g) ∈ flag l1`` and ``(g, h) ∈ flag l2``.

    Requires ``(f, h) ∈ flag(l2 ∘ l1)``.  One middle token is chosen per
    leaf of the superposition of ``f`` and ``h``; the result is normalised.
    """
    if not flag_lift_contains(trace_compose(l1, l2), f, h):
        raise ValueError("(f, h) is not in the lift of the composite trace")
    after_first: dict = {}
    for a, b in l1.pairs:
        after_first.setdefault(a, set()).add(b)
    cover = []
    for m, (a, c) in iter_refinement((f, h)):
        mids = sorted((b for b in after_first.get(a, ()) if (b, c) in l2.pairs), key=repr)
        cover.append((m, mids[0]))
    return from_pairs(cover)


# -- non-comonad certificate -------------------------------------------------

ONE = Space({"*"}, name="1")
ONE_PLUS_ONE = Space({"a", "b"}, name="1⊕1")
STAR = Leaf("*")


@dataclass
class CounitCandidate:
    component: frozenset  # candidate r at 1⊕1, restricted to the fragment
    at_one: frozenset  # candidate r at 1
    failures: list[str]

    @property
    def survives(self) -> bool:
        return not self.failures


@dataclass
class CounitReport:
    fragment: tuple
    candidates: list[CounitCandidate]

    @property
    def survivors(self) -> list[CounitCandidate]:
        return [c for c in self.candidates if c.survives]

    @property
    def square_survivors(self) -> list[CounitCandidate]:
        """Candidates passing the three naturality squares alone."""
        return [c for c in self.candidates if not any(f.startswith("square") for f in c.failures)]


def counit_maps():
    return {
        "a": LinearTrace(ONE_PLUS_ONE, ONE, {("a", "*")}),
        "b": LinearTrace(ONE_PLUS_ONE, ONE, {("b", "*")}),
        "ab": LinearTrace(ONE_PLUS_ONE, ONE, {("a", "*"), ("b", "*")}),
    }


def verify_no_counit() -> CounitReport:
    """Exhaustively refute a natural transformation ``flag → Id``.

    Candidates are every relation ``r`` from the fragment
    ``{a, b, <a b>}`` of ``|flag(1⊕1)|`` to ``{a, b}`` together with every
    ``r1 ∈ {∅, Id_1}``.  Each is tested against the squares
    ``r1 ∘ flag(ℓx) = ℓx ∘ r`` for x in a, b, ab on the fragment, and
    against the counit law at ``1`` (``flag 1 ≅ 1``, so ``r1 ∘ δ1 = Id``
    forces ``r1 = Id_1``).
    """
    fragment = (Leaf("a"), Leaf("b"), Node(Leaf("a"), Leaf("b")))
    cells = [(t, x) for t in fragment for x in ("a", "b")]
    maps = counit_maps()
    candidates = []
    for bits in itertools.product((0, 1), repeat=len(cells)):
        r = frozenset(c for c, bit in zip(cells, bits) if bit)
        for r1 in (frozenset(), frozenset({("*", "*")})):
            failures = []
            if not r1:
                failures.append("counit law at 1")
            for name, ell in maps.items():
                lifted = FlagLift(ell)
                lhs = {(t, "*") for t in fragment if (t, STAR) in lifted and ("*", "*") in r1}
                rhs = {(t, "*") for t, y in r if (y, "*") in ell.pairs}
                if lhs != rhs:
                    failures.append(f"square {name}")
            candidates.append(CounitCandidate(r, r1, failures))
    return CounitReport(fragment, candidates)
