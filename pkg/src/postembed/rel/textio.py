"""The line-oriented transducer text format.

::

    alphabet: a0 a1 # |
    states: q0 q1
    initial: q0
    final: q1
    trans: q0 a0/- q1
    trans: q1 -/a0 q0

Symbols are written as in ``codes.show`` (``a<d>``, ``#``, ``|`` and any
other single character); ``-`` is the empty side of a transition.
"""
from __future__ import annotations

from ..codes import lex
from .transducer import Transducer


class TextFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def sym_token(c: str) -> str:
    return f"a{c}" if c.isdigit() else c


def _sym(tok: str, lineno: int) -> str:
    if tok == "-":
        return ""
    s = lex(tok)
    if len(s) != 1:
        raise TextFormatError(f"expected one symbol, got {tok!r}", lineno)
    return s


TRANSDUCER_KEYS = ("alphabet", "states", "initial", "final", "trans")


def parse_transducer(lines, first_line: int = 1) -> Transducer:
    """Parse declarations.  Blank lines are skipped and ``;;`` starts a comment."""
    alphabet: list = []
    states: list = []
    initial: list = []
    final: list = []
    trans: list = []
    for i, raw in enumerate(lines, first_line):
        line = raw.split(";;")[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in TRANSDUCER_KEYS:
            raise TextFormatError(f"unknown declaration {line!r}", i)
        toks = rest.split()
        if key == "alphabet":
            alphabet.extend(_sym(t, i) for t in toks)
        elif key == "states":
            states.extend(toks)
        elif key == "initial":
            initial.extend(toks)
        elif key == "final":
            final.extend(toks)
        else:
            if len(toks) != 3 or "/" not in toks[1]:
                raise TextFormatError("transitions look like 'trans: p a/- q'", i)
            a, _, b = toks[1].partition("/")
            trans.append((toks[0], _sym(a, i), _sym(b, i), toks[2], i))
    index = {q: j for j, q in enumerate(states)}
    for q in initial + final + [t[0] for t in trans] + [t[3] for t in trans]:
        if q not in index:
            index[q] = len(index)
            states.append(q)
    norm = []
    for p, a, b, q, i in trans:
        if (a == "") == (b == ""):
            raise TextFormatError("a transition reads one symbol or writes one symbol", i)
        if alphabet and (a or b) not in alphabet:
            raise TextFormatError(f"symbol {a or b!r} is not in the alphabet", i)
        norm.append((index[p], a, b, index[q]))
    return Transducer(
        len(states), norm, [index[q] for q in initial], [index[q] for q in final],
        alphabet, alphabet, tuple(states),
    )


def format_transducer(t: Transducer) -> str:
    name = t.state_name
    syms = sorted(t.alphabet)
    out = [
        "alphabet: " + " ".join(sym_token(c) for c in syms),
        "states: " + " ".join(name(q) for q in range(t.n)),
        "initial: " + " ".join(name(q) for q in sorted(t.initial)),
        "final: " + " ".join(name(q) for q in sorted(t.final)),
    ]
    for s, a, b, d in sorted(t.trans):
        label = f"{sym_token(a)}/-" if a else f"-/{sym_token(b)}"
        out.append(f"trans: {name(s)} {label} {name(d)}")
    return "\n".join(out) + "\n"
