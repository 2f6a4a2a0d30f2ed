"""Instance files: a ``kind:`` line followed by a body in the matching format.

Kinds and their bodies:

``transducer``  transducer declarations (see ``rel.textio``)
``relexpr``     ``alphabet:`` and one or more ``expr:`` lines (joined)
``semithue``    ``alphabet:`` and rules ``u -> v``; optionally ``source:``,
                ``target:``, ``n:``, ``k:``, ``code:`` for the reductions
``lcs``         ``alphabet:``, transitions ``q : ?a !b : q2``, ``from: q x``,
                ``to: q x`` and an optional ``bound: <sym> <count>``
``ordinal``     ``value:`` and an optional ``counter:``
``lr``          ``source:``, ``target:``, optional ``separator:``, then a
                relation given as transducer declarations or ``expr:`` lines
``ep``          a relation as above, or ``pair: L ; L2`` regex lines, or
                ``morph: a -> u , v`` lines
``lt``          ``source:`` and a relation
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .codes import lex, show
from .ordinals import coerce, render
from .rel import nfa as N
from .rel.expr import RelSyntaxError, compile, parse as parse_expr
from .rel.textio import TRANSDUCER_KEYS, TextFormatError, format_transducer, parse_transducer, sym_token
from .rel.transducer import Transducer
from .rewrite_systems import LCSystem, SemiThueSystem

KINDS = ("transducer", "relexpr", "semithue", "lcs", "ordinal", "lr", "ep", "lt")


class InstanceError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class InstanceFile:
    kind: str
    fields: dict = field(default_factory=dict)
    relation: Transducer | None = None
    system: object = None
    pairs: list = field(default_factory=list)
    morphism: object = None


def _word(text: str) -> str:
    text = text.strip()
    return "" if text in ("", "ε", "-") else lex(text)


def _relation(body: list):
    """Transducer declarations or ``expr:`` lines, with their line numbers."""
    if not body:
        return None
    exprs = [(i, rest) for i, key, rest in body if key == "expr"]
    alpha = "".join(_word(rest) for _, key, rest in body if key == "alphabet")
    if exprs:
        text = " ".join(rest for _, rest in exprs)
        try:
            return compile(parse_expr(text, alpha))
        except RelSyntaxError as exc:
            raise InstanceError(str(exc), exprs[0][0]) from exc
    lines = [f"{key}: {rest}" for _, key, rest in body]
    try:
        return parse_transducer(lines, body[0][0])
    except TextFormatError as exc:
        raise InstanceError(str(exc).split(": ", 1)[-1], exc.line) from exc


def parse_instance(text: str) -> InstanceFile:
    rows = []
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";;")[0].strip()
        if line:
            rows.append((i, line))
    if not rows or not rows[0][1].startswith("kind:"):
        raise InstanceError("the first line must be 'kind: <tag>'", rows[0][0] if rows else 1)
    kind = rows[0][1].partition(":")[2].strip()
    if kind not in KINDS:
        raise InstanceError(f"unknown kind {kind!r}", rows[0][0])
    inst = InstanceFile(kind)
    rel_body, rules, trans = [], [], []
    for i, line in rows[1:]:
        if kind == "semithue" and "->" in line and ":" not in line:
            u, _, v = line.partition("->")
            rules.append((_word(u), _word(v)))
            continue
        if kind == "lcs" and line.count(":") == 2:
            q, instrs, q2 = (s.strip() for s in line.split(":"))
            ops = []
            for tok in instrs.split():
                if tok[0] not in "?!":
                    raise InstanceError(f"instruction {tok!r} must start with ? or !", i)
                ops.append((tok[0], _word(tok[1:])))
            trans.append((q, tuple(ops), q2))
            continue
        key, sep, rest = line.partition(":")
        key, rest = key.strip(), rest.strip()
        if not sep:
            raise InstanceError(f"cannot read {line!r}", i)
        if key in TRANSDUCER_KEYS or key == "expr":
            rel_body.append((i, key, rest))
            if key != "alphabet" or kind in ("transducer", "relexpr", "lr", "ep", "lt"):
                continue
        if key == "pair":
            a, bar, b = rest.partition(";")
            if not bar:
                raise InstanceError("pairs look like 'pair: L ; L2'", i)
            try:
                inst.pairs.append((N.regex(a.strip()), N.regex(b.strip())))
            except N.RegexError as exc:
                raise InstanceError(str(exc), i) from exc
            continue
        if key == "morph":
            a, arrow, uv = rest.partition("->")
            u, comma, v = uv.partition(",")
            if not arrow or not comma:
                raise InstanceError("morphisms look like 'morph: a -> u , v'", i)
            inst.fields.setdefault("morph", []).append((_word(a), _word(u), _word(v)))
            continue
        inst.fields[key] = rest
    if kind in ("transducer", "relexpr", "lr", "ep", "lt"):
        inst.relation = _relation(rel_body)
    if kind == "semithue":
        alpha = _word(inst.fields.get("alphabet", "")) or None
        try:
            inst.system = SemiThueSystem.of(rules, alpha)
        except ValueError as exc:
            raise InstanceError(str(exc)) from exc
    if kind == "lcs":
        states = sorted({t[0] for t in trans} | {t[2] for t in trans})
        inst.system = LCSystem(tuple(states), _word(inst.fields.get("alphabet", "")), tuple(trans))
    if "morph" in inst.fields:
        from .deciders import MorphismPair

        ms = inst.fields.pop("morph")
        inst.morphism = MorphismPair(
            "".join(a for a, _, _ in ms), {a: u for a, u, _ in ms}, {a: v for a, _, v in ms}
        )
    if kind == "ordinal":
        try:
            coerce(inst.fields.get("value", ""))
        except ValueError as exc:
            raise InstanceError(str(exc)) from exc
    return inst


def read_instance(path: str) -> InstanceFile:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def words(inst: InstanceFile, key: str) -> str:
    if key not in inst.fields:
        raise InstanceError(f"missing '{key}:' line")
    return _word(inst.fields[key])


def conf(inst: InstanceFile, key: str) -> tuple:
    if key not in inst.fields:
        raise InstanceError(f"missing '{key}:' line")
    q, _, x = inst.fields[key].partition(" ")
    return (q, _word(x))


# ------------------------------------------------------------ writing


def _w(word: str) -> str:
    return show(word)


def format_lr(t: Transducer, source: str, target: str, separator: str | None = None) -> str:
    head = ["kind: lr", f"source: {_w(source)}", f"target: {_w(target)}"]
    if separator:
        head.append(f"separator: {sym_token(separator)}")
    return "\n".join(head) + "\n" + format_transducer(t)


def format_ep(t: Transducer) -> str:
    return "kind: ep\n" + format_transducer(t)


def format_lt(t: Transducer, source: str) -> str:
    return f"kind: lt\nsource: {_w(source)}\n" + format_transducer(t)


def format_lcs(c: LCSystem, src, dst, bound=None) -> str:
    out = ["kind: lcs", "alphabet: " + " ".join(sym_token(a) for a in c.alphabet)]
    for q, instrs, q2 in c.transitions:
        ops = " ".join(op + (_w(a) if a else "ε") for op, a in instrs)
        out.append(f"{q} : {ops} : {q2}")
    out.append(f"from: {src[0]} {_w(src[1])}")
    out.append(f"to: {dst[0]} {_w(dst[1])}")
    if bound is not None:
        out.append(f"bound: {sym_token(bound[0])} {bound[1]}")
    return "\n".join(out) + "\n"


def format_semithue(sys: SemiThueSystem, **extra) -> str:
    out = ["kind: semithue", "alphabet: " + " ".join(sym_token(a) for a in sys.alphabet)]
    out += [f"{_w(u)} -> {_w(v)}" for u, v in sys.rules]
    out += [f"{k}: {v}" for k, v in extra.items()]
    return "\n".join(out) + "\n"


def format_ordinal(a, counter: int | None = None) -> str:
    out = f"kind: ordinal\nvalue: {render(coerce(a))}\n"
    if counter is not None:
        out += f"counter: {counter}\n"
    return out
