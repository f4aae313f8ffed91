"""Generic trees: finite binary trees encoding continuous maps 2^ω → M.

Trees are hash-consed, so two structurally equal trees are the same object
and equality is an identity test.  A word ``m`` (a ``str`` over ``0``/``1``)
stands for the infinite word ``m·0^ω``.
"""
from __future__ import annotations

import random
import re
import weakref
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Iterable, Iterator, Sequence


class CoverError(ValueError):
    """A set of (word, token) pairs is not a prefix cover of 2^ω."""


class GenericTree:
    __slots__ = ("__weakref__",)

    def __setattr__(self, key, value):
        raise AttributeError("generic trees are immutable")

    def __str__(self):
        return format_tree(self)


class Leaf(GenericTree):
    __slots__ = ("token",)
    _table: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()

    def __new__(cls, token: Hashable):
        key = (type(token), token)
        self = cls._table.get(key)
        if self is None:
            self = object.__new__(cls)
            object.__setattr__(self, "token", token)
            cls._table[key] = self
        return self

    def __reduce__(self):
        return (Leaf, (self.token,))

    def __repr__(self):
        return f"Leaf({self.token!r})"


class Node(GenericTree):
    __slots__ = ("left", "right")
    _table: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()

    def __new__(cls, left: GenericTree, right: GenericTree):
        if not isinstance(left, GenericTree) or not isinstance(right, GenericTree):
            raise TypeError("Node children must be generic trees")
        key = (left, right)
        self = cls._table.get(key)
        if self is None:
            self = object.__new__(cls)
            object.__setattr__(self, "left", left)
            object.__setattr__(self, "right", right)
            cls._table[key] = self
        return self

    def __reduce__(self):
        return (Node, (self.left, self.right))

    def __repr__(self):
        return f"Node({self.left!r}, {self.right!r})"


# -- structure ---------------------------------------------------------------


def is_redex(t: GenericTree) -> bool:
    return isinstance(t, Node) and isinstance(t.left, Leaf) and t.left is t.right


def is_normal(t: GenericTree) -> bool:
    if isinstance(t, Leaf):
        return True
    return not is_redex(t) and is_normal(t.left) and is_normal(t.right)


def normalize(t: GenericTree) -> GenericTree:
    """Normal form under ``<x x> → x``."""
    if isinstance(t, Leaf):
        return t
    left, right = normalize(t.left), normalize(t.right)
    if isinstance(left, Leaf) and left is right:
        return left
    return Node(left, right)


def redexes(t: GenericTree, path: str = "") -> list[str]:
    """Paths of every ``<x x>`` subterm."""
    if isinstance(t, Leaf):
        return []
    here = [path] if is_redex(t) else []
    return here + redexes(t.left, path + "0") + redexes(t.right, path + "1")


def subtree(t: GenericTree, path: str) -> GenericTree:
    for bit in path:
        t = t.left if bit == "0" else t.right
    return t


def contract(t: GenericTree, path: str) -> GenericTree:
    """Rewrite the redex at ``path`` once."""
    if not path:
        if not is_redex(t):
            raise ValueError("no redex at this position")
        return t.left
    if isinstance(t, Leaf):
        raise ValueError("path leaves the tree")
    if path[0] == "0":
        return Node(contract(t.left, path[1:]), t.right)
    return Node(t.left, contract(t.right, path[1:]))


def size(t: GenericTree) -> int:
    return 1 if isinstance(t, Leaf) else 1 + size(t.left) + size(t.right)


def depth(t: GenericTree) -> int:
    """Number of levels: a single leaf has depth 1."""
    return 1 if isinstance(t, Leaf) else 1 + max(depth(t.left), depth(t.right))


def leaf_count(t: GenericTree) -> int:
    return 1 if isinstance(t, Leaf) else leaf_count(t.left) + leaf_count(t.right)


def tokens(t: GenericTree) -> frozenset:
    if isinstance(t, Leaf):
        return frozenset((t.token,))
    return tokens(t.left) | tokens(t.right)


def split(t: GenericTree) -> tuple[GenericTree, GenericTree]:
    """The two halves ``w ↦ t(0w)`` and ``w ↦ t(1w)``."""
    if isinstance(t, Leaf):
        return t, t
    return t.left, t.right


def merge(left: GenericTree, right: GenericTree) -> GenericTree:
    return normalize(Node(left, right))


def constant(t: GenericTree):
    """The token of a constant function, else ``None``."""
    t = normalize(t)
    return t.token if isinstance(t, Leaf) else None


# -- words -------------------------------------------------------------------

_WORD = re.compile(r"[01]*\Z")


def check_word(m: str) -> str:
    if not isinstance(m, str) or not _WORD.match(m):
        raise ValueError(f"not a bit word: {m!r}")
    return m


def point_key(m: str) -> str:
    """Canonical name of the point ``m·0^ω``."""
    return m.rstrip("0")


def word_lt(m1: str, m2: str) -> bool:
    """Lexicographic order of the points ``m1·0^ω`` and ``m2·0^ω``."""
    n = max(len(m1), len(m2))
    return m1.ljust(n, "0") < m2.ljust(n, "0")


def evaluate(f: GenericTree, m: str = "") -> Hashable:
    """Value of ``f`` at ``m·0^ω``."""
    check_word(m)
    i = 0
    while isinstance(f, Node):
        f = f.right if i < len(m) and m[i] == "1" else f.left
        i += 1
    return f.token


# -- prefix covers -----------------------------------------------------------


def to_pairs(f: GenericTree) -> frozenset[tuple[str, Hashable]]:
    out = []

    def walk(t, prefix):
        if isinstance(t, Leaf):
            out.append((prefix, t.token))
        else:
            walk(t.left, prefix + "0")
            walk(t.right, prefix + "1")

    walk(f, "")
    return frozenset(out)


def check_cover(cover: Iterable[tuple[str, Hashable]]) -> dict[str, Hashable]:
    """Validate the unique-prefix condition; return word → token."""
    table: dict[str, Hashable] = {}
    for m, a in cover:
        if not isinstance(m, str) or not _WORD.match(m):
            raise CoverError(f"not a bit word: {m!r}")
        if m in table and table[m] != a:
            raise CoverError(f"word {m!r} carries two tokens")
        table[m] = a
    words = sorted(table)
    for w1, w2 in zip(words, words[1:]):
        if w2.startswith(w1):
            raise CoverError(f"overlap: {w1!r} is a prefix of {w2!r}")
    if sum(Fraction(1, 2 ** len(m)) for m in words) != 1:
        raise CoverError("gap: some infinite words have no prefix in the cover")
    return table


def from_pairs(cover: Iterable[tuple[str, Hashable]]) -> GenericTree:
    """Tree of a prefix cover, normalised (mergeable siblings are merged)."""
    table = check_cover(cover)

    def build(prefix):
        if prefix in table:
            return Leaf(table[prefix])
        return Node(build(prefix + "0"), build(prefix + "1"))

    return normalize(build(""))


# -- refinements -------------------------------------------------------------


def iter_refinement(trees: Sequence[GenericTree], prefix: str = "") -> Iterator[tuple[str, tuple]]:
    """Leaves of the superposition of ``trees``, in lexicographic order."""
    if all(isinstance(t, Leaf) for t in trees):
        yield prefix, tuple(t.token for t in trees)
        return
    yield from iter_refinement([t.left if isinstance(t, Node) else t for t in trees], prefix + "0")
    yield from iter_refinement([t.right if isinstance(t, Node) else t for t in trees], prefix + "1")


def common_refinement(f: GenericTree, g: GenericTree) -> list[tuple[str, Hashable, Hashable]]:
    return [(m, a, b) for m, (a, b) in iter_refinement((f, g))]


def refine(trees: Sequence[GenericTree]) -> list[tuple[str, tuple]]:
    return list(iter_refinement(tuple(trees)))


@lru_cache(maxsize=1 << 16)
def _first_difference(f: GenericTree, g: GenericTree) -> str | None:
    # lazy scan of the common refinement, stopping at the first split leaf
    if f is g:
        return None
    if isinstance(f, Leaf) and isinstance(g, Leaf):
        return ""
    (f0, f1), (g0, g1) = split(f), split(g)
    m = _first_difference(f0, g0)
    if m is not None:
        return "0" + m
    m = _first_difference(f1, g1)
    return None if m is None else "1" + m


def first_difference(f: GenericTree, g: GenericTree) -> str | None:
    """Word ``m`` such that ``m·0^ω`` is the least point where f and g differ.

    ``None`` iff f and g denote the same function.
    """
    if f is g:
        return None
    return _first_difference(f, g)


# -- enumeration and random generation ---------------------------------------


def enumerate_trees(alphabet: Iterable[Hashable], max_depth: int) -> list[GenericTree]:
    """Every normal tree over ``alphabet`` of depth at most ``max_depth``."""
    alphabet = list(alphabet)
    if max_depth < 1:
        return []
    leaves = [Leaf(a) for a in alphabet]
    level = list(leaves)
    for _ in range(max_depth - 1):
        level = leaves + [
            Node(l, r) for l in level for r in level if not (isinstance(l, Leaf) and l is r)
        ]
    return level


def random_tree(
    rng: random.Random,
    alphabet: Sequence[Hashable],
    max_depth: int = 5,
    split_prob: float = 0.6,
) -> GenericTree:
    """A random, not necessarily normal, term."""
    if max_depth <= 1 or rng.random() > split_prob:
        return Leaf(rng.choice(alphabet))
    return Node(
        random_tree(rng, alphabet, max_depth - 1, split_prob),
        random_tree(rng, alphabet, max_depth - 1, split_prob),
    )


# -- text syntax -------------------------------------------------------------

_TREE_TOKEN = re.compile(r"\s*(?:(<)|(>)|([^\s<>]+))")


def format_tree(t: GenericTree) -> str:
    if isinstance(t, Leaf):
        return str(t.token)
    return f"<{format_tree(t.left)} {format_tree(t.right)}>"


def parse_tree(text: str) -> GenericTree:
    """Parse ``a`` / ``<T T>``; leaf tokens are kept as strings."""
    pos = 0

    def parse():
        nonlocal pos
        m = _TREE_TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            raise ValueError(f"unexpected end of tree at position {pos}")
        pos = m.end()
        if m.group(1):
            left = parse()
            right = parse()
            m2 = _TREE_TOKEN.match(text, pos)
            if not m2 or not m2.group(2):
                raise ValueError(f"expected '>' at position {pos}")
            pos = m2.end()
            return Node(left, right)
        if m.group(2):
            raise ValueError(f"unexpected '>' at position {m.start(2)}")
        return Leaf(m.group(3))

    tree = parse()
    if text[pos:].strip():
        raise ValueError(f"trailing input at position {pos}")
    return tree


def format_cover(cover: Iterable[tuple[str, Hashable]]) -> str:
    return "\n".join(f"{m or '-'} {a}" for m, a in sorted(cover, key=lambda p: p[0].ljust(64, "0")))


def parse_cover(text: str) -> frozenset[tuple[str, str]]:
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CoverError(f"line {lineno}: expected 'bitword token'")
        m = "" if parts[0] in ("-", "ε") else parts[0]
        if not _WORD.match(m):
            raise CoverError(f"line {lineno}: not a bit word: {m!r}")
        pairs.append((m, parts[1]))
    return frozenset(pairs)
