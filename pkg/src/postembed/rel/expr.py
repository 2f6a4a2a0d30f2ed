"""Rational expressions over word pairs, compiled to normalized transducers.

Expressions are small immutable trees.  ``a | b`` is union, ``a * b`` is
concatenation, ``e.star()``, ``e.plus()`` and ``e.inv()`` do what they say.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from ..codes import lex
from . import nfa as _nfa
from .nfa import Nfa
from .transducer import (
    AlphabetMismatch,
    Transducer,
    t_compose,
    t_concat,
    t_embedding,
    t_empty,
    t_identity,
    t_pair,
    t_plus,
    t_star,
    t_union,
)


class RelExpr:
    def __or__(self, other):
        return Union((self, other))

    def __mul__(self, other):
        return Concat((self, other))

    def star(self):
        return Star(self)

    def plus(self):
        return Plus(self)

    def inv(self):
        return Inverse(self)

    def then(self, other):
        return Compose(self, other)


@dataclass(frozen=True)
class Empty(RelExpr):
    pass


@dataclass(frozen=True)
class Pair(RelExpr):
    u: str
    v: str


@dataclass(frozen=True, eq=False)
class Id(RelExpr):
    lang: Nfa
    text: str = ""


@dataclass(frozen=True)
class Union(RelExpr):
    parts: tuple


@dataclass(frozen=True)
class Concat(RelExpr):
    parts: tuple


@dataclass(frozen=True)
class Star(RelExpr):
    body: RelExpr


@dataclass(frozen=True)
class Plus(RelExpr):
    body: RelExpr


@dataclass(frozen=True)
class Compose(RelExpr):
    left: RelExpr
    right: RelExpr


@dataclass(frozen=True)
class Inverse(RelExpr):
    body: RelExpr


@dataclass(frozen=True)
class Embed(RelExpr):
    alphabet: str


@dataclass(frozen=True, eq=False)
class Machine(RelExpr):
    """A precompiled transducer used as a leaf."""

    t: Transducer


def pair(u: str, v: str) -> Pair:
    return Pair(u, v)


def identity(lang, alphabet="") -> Id:
    if isinstance(lang, str):
        return Id(_nfa.regex(lang, alphabet).minimize(), lang)
    return Id(lang)


def union(*parts) -> RelExpr:
    return Union(tuple(parts)) if parts else Empty()


def concat(*parts) -> RelExpr:
    return Concat(tuple(parts))


def embedding(alphabet) -> Embed:
    return Embed("".join(sorted(set(alphabet))))


def syms(word: str) -> RelExpr:
    """Id over the single word ``word``."""
    return Pair(word, word)


def compile(e: RelExpr) -> Transducer:  # noqa: A001 - the natural name here
    if isinstance(e, Empty):
        return t_empty()
    if isinstance(e, Pair):
        return t_pair(e.u, e.v)
    if isinstance(e, Id):
        return t_identity(e.lang)
    if isinstance(e, Union):
        return t_union(*(compile(p) for p in e.parts))
    if isinstance(e, Concat):
        return t_concat(*(compile(p) for p in e.parts))
    if isinstance(e, Star):
        return t_star(compile(e.body))
    if isinstance(e, Plus):
        return t_plus(compile(e.body))
    if isinstance(e, Compose):
        left, right = compile(e.left), compile(e.right)
        if left.out_alpha and right.in_alpha and not (left.out_alpha & right.in_alpha):
            raise AlphabetMismatch(
                f"composition: outputs {sorted(left.out_alpha)} vs inputs {sorted(right.in_alpha)}"
            )
        return t_compose(left, right)
    if isinstance(e, Inverse):
        return compile(e.body).inverse()
    if isinstance(e, Embed):
        return t_embedding(e.alphabet)
    if isinstance(e, Machine):
        return e.t
    raise TypeError(f"not a relation expression: {e!r}")


# ------------------------------------------------------------ text syntax


class RelSyntaxError(ValueError):
    pass


def parse(text: str, alphabet: str = "") -> RelExpr:
    """Parse the text form.

    Grammar, loosest first: ``;`` composition, ``|`` union, ``.``
    concatenation, postfix ``*`` and ``+``, atoms ``(u,v)``, ``id[regex]``,
    ``emb`` or ``emb[symbols]``, ``inv atom``, ``empty`` and parentheses.
    Words inside a pair atom are lexed literally, so ``(a0|,a1|)`` is fine.
    """
    s = text
    pos = 0

    def ws():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def at(tok):
        ws()
        return s.startswith(tok, pos)

    def eat(tok):
        nonlocal pos
        if not at(tok):
            raise RelSyntaxError(f"expected {tok!r} at {pos} in {text!r}")
        pos += len(tok)

    def comp():
        e = alt()
        while at(";"):
            eat(";")
            e = Compose(e, alt())
        return e

    def alt():
        parts = [cat()]
        while at("|"):
            eat("|")
            parts.append(cat())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def cat():
        parts = [post()]
        while at("."):
            eat(".")
            parts.append(post())
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def post():
        e = atom()
        while True:
            if at("*"):
                eat("*")
                e = Star(e)
            elif at("+"):
                eat("+")
                e = Plus(e)
            else:
                return e

    def bracket():
        nonlocal pos
        eat("[")
        depth = 1
        start = pos
        while pos < len(s):
            if s[pos] == "\\":
                pos += 2
                continue
            if s[pos] == "[":
                depth += 1
            elif s[pos] == "]":
                depth -= 1
                if depth == 0:
                    body = s[start:pos]
                    pos += 1
                    return body
            pos += 1
        raise RelSyntaxError(f"unclosed [ in {text!r}")

    def atom():
        nonlocal pos
        ws()
        if at("id"):
            eat("id")
            body = bracket()
            return identity(body, alphabet)
        if at("emb"):
            eat("emb")
            if at("["):
                return embedding(lex(bracket()))
            if not alphabet:
                raise RelSyntaxError("emb needs an alphabet")
            return embedding(alphabet)
        if at("inv"):
            eat("inv")
            return Inverse(atom())
        if at("empty"):
            eat("empty")
            return Empty()
        if at("("):
            # a pair atom has a top-level comma before its closing parenthesis
            j, depth = pos + 1, 0
            while j < len(s):
                if s[j] == "(":
                    depth += 1
                elif s[j] == ")":
                    if depth == 0:
                        break
                    depth -= 1
                elif s[j] == "," and depth == 0:
                    break
                j += 1
            if j < len(s) and s[j] == ",":
                k = s.find(")", j)
                if k < 0:
                    raise RelSyntaxError(f"unclosed pair in {text!r}")
                u, v = s[pos + 1:j], s[j + 1:k]
                pos = k + 1
                return Pair(_word(u), _word(v))
            eat("(")
            e = comp()
            eat(")")
            return e
        raise RelSyntaxError(f"unexpected input at {pos}: {s[pos:pos + 10]!r}")

    e = comp()
    ws()
    if pos != len(s):
        raise RelSyntaxError(f"trailing input at {pos} in {text!r}")
    return e


def _word(t: str) -> str:
    t = t.strip()
    return "" if t in ("", "-", "ε") else lex(t)


def render(e: RelExpr) -> str:
    from ..codes import show

    def w(x):
        return show(x) if x else "-"

    if isinstance(e, Empty):
        return "empty"
    if isinstance(e, Pair):
        return f"({w(e.u)},{w(e.v)})"
    if isinstance(e, Id):
        if not e.text:
            raise ValueError("identity over an automaton has no text form")
        return f"id[{e.text}]"
    if isinstance(e, Union):
        return "(" + " | ".join(render(p) for p in e.parts) + ")"
    if isinstance(e, Concat):
        return "(" + ".".join(render(p) for p in e.parts) + ")"
    if isinstance(e, Star):
        return f"({render(e.body)})*"
    if isinstance(e, Plus):
        return f"({render(e.body)})+"
    if isinstance(e, Compose):
        return f"({render(e.left)} ; {render(e.right)})"
    if isinstance(e, Inverse):
        return f"inv ({render(e.body)})"
    if isinstance(e, Embed):
        return f"emb[{show(e.alphabet)}]"
    raise ValueError("precompiled leaves have no text form")


def fold_union(parts) -> RelExpr:
    parts = list(parts)
    return reduce(lambda a, b: a | b, parts) if parts else Empty()
