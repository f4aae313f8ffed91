"""Text literals for finite spaces.

::

    space NAME { tokens: a, b, c; scoh: (a,b), (b,c); }
    hspace NAME { tokens: a, b, c; gamma: {a,b}, {a,b,c}; }

Reflexivity and singletons are implicit.  ``#`` starts a comment.
"""
from __future__ import annotations

import re

from .coherence import Space
from .hyper import Hypercoherence

_LEX = re.compile(r"\s*(?:#[^\n]*|([A-Za-z0-9_*'.+-]+)|([{}();:,]))")


class LiteralError(ValueError):
    pass


def _tokens(text: str) -> list[tuple[str, int]]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _LEX.match(text, pos)
        if not m or m.end() == pos:
            raise LiteralError(f"unexpected character {text[pos]!r} at position {pos}")
        if m.group(1) or m.group(2):
            out.append((m.group(1) or m.group(2), m.start(1) if m.group(1) else m.start(2)))
        pos = m.end()
    return out


class _Reader:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, expected=None):
        if self.i >= len(self.toks):
            raise LiteralError(f"unexpected end of input, expected {expected or 'a token'}")
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            raise LiteralError(f"expected {expected!r} at position {pos}, found {tok!r}")
        self.i += 1
        return tok

    def name(self):
        tok = self.take()
        if tok in "{}();:,":
            raise LiteralError(f"expected a name, found {tok!r}")
        return tok

    def group(self, open_, close):
        self.take(open_)
        items = [self.name()]
        while self.peek() == ",":
            self.take(",")
            items.append(self.name())
        self.take(close)
        return items


def parse_literals(text: str) -> dict:
    """All ``space``/``hspace`` blocks of ``text``, by name."""
    r = _Reader(text)
    out: dict = {}
    while r.peek() is not None:
        kind = r.take()
        if kind not in ("space", "hspace"):
            raise LiteralError(f"expected 'space' or 'hspace', found {kind!r}")
        name = r.name()
        r.take("{")
        web, related = [], []
        while r.peek() != "}":
            field = r.name()
            r.take(":")
            if field == "tokens":
                if r.peek() != ";":
                    web.append(r.name())
                    while r.peek() == ",":
                        r.take(",")
                        web.append(r.name())
            elif field == ("scoh" if kind == "space" else "gamma"):
                opener, closer = ("(", ")") if kind == "space" else ("{", "}")
                if r.peek() == opener:
                    related.append(r.group(opener, closer))
                    while r.peek() == ",":
                        r.take(",")
                        related.append(r.group(opener, closer))
            else:
                raise LiteralError(f"unknown field {field!r} in {kind} {name}")
            r.take(";")
        r.take("}")
        if name in out:
            raise LiteralError(f"{name} is defined twice")
        try:
            if kind == "space":
                out[name] = Space(web, [tuple(p) for p in related], name=name)
            else:
                gamma = [frozenset(g) for g in related if len(set(g)) > 1]
                out[name] = Hypercoherence(frozenset(web), frozenset(gamma), name=name)
        except ValueError as e:
            raise LiteralError(f"{kind} {name}: {e}") from None
    return out


def format_space(space, name: str | None = None) -> str:
    name = name or space.name or "A"
    toks = sorted(space.web, key=str)
    pairs = sorted(tuple(sorted(p, key=str)) for p in space.scoh_pairs)
    scoh = ", ".join(f"({a},{b})" for a, b in pairs)
    return f"space {name} {{ tokens: {', '.join(map(str, toks))}; scoh: {scoh}; }}"


def format_hspace(x: Hypercoherence, name: str | None = None) -> str:
    name = name or x.name or "X"
    toks = sorted(x.web, key=str)
    gamma = sorted((sorted(map(str, w)) for w in x.gamma_star), key=lambda w: (len(w), w))
    body = ", ".join("{" + ",".join(w) + "}" for w in gamma)
    return f"hspace {name} {{ tokens: {', '.join(map(str, toks))}; gamma: {body}; }}"
