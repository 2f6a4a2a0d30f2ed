"""Ordinal codes over the symbols a_0..a_(k-1) and '#', and the sequence formats.

Words are plain ``str`` values holding one character per symbol: ``a_i`` is
the digit ``str(i)``, ``#`` and ``|`` stand for themselves.  ``lex`` and
``show`` convert to and from the ``a0a1#|`` text rendering.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .ordinals import ZERO, Ordinal, OrdinalError, coerce, left_subtract

HASH = "#"
SEP = "|"


class MalformedSequence(ValueError):
    pass


def sym(i: int) -> str:
    if not 0 <= i <= 9:
        raise ValueError("symbol index out of range 0..9")
    return str(i)


def phi(b: str) -> int:
    return int(b)


def lex(text: str) -> str:
    """Text rendering to internal word: ``a<d>`` is one symbol, spaces ignored."""
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "a" and i + 1 < len(text) and text[i + 1].isdigit():
            out.append(text[i + 1])
            i += 2
        elif ch in "ε":
            i += 1
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def show(word: str) -> str:
    return "".join(f"a{c}" if c.isdigit() else c for c in word) if word else "ε"


def alphabet(k: int) -> str:
    """Sigma_k as a string of symbols."""
    if k < 1:
        raise ValueError("k must be positive")
    return "".join(sym(i) for i in range(k))


# ------------------------------------------------------------ words


def is_pure_word(w: str) -> bool:
    return all(a >= b for a, b in zip(w, w[1:]))


def beta(w: str) -> Ordinal:
    res = ZERO
    for b in w:
        res = res + Ordinal.omega_pow(phi(b))
    return res


def beta_inverse(a, k: int) -> str:
    a = coerce(a)
    out = []
    for e, c in a.terms:
        if not e.is_finite() or int(e) >= k:
            raise OrdinalError(f"{a} is not below w^{k}")
        out.append(sym(int(e)) * c)
    return "".join(out)


# ------------------------------------------------------------ codes


def split_code(x: str) -> list:
    """``w1#w2#...#wp#w_(p+1)`` as the list of its p+1 segments."""
    return x.split(HASH)


def pi(x: str) -> Ordinal:
    # pi(w1#...#wp#w') = w^beta(w1...wp) + ... + w^beta(w1)
    segs = split_code(x)[:-1]
    res = ZERO
    acc = ZERO
    monos = []
    for w in segs:
        acc = acc + beta(w)
        monos.append(acc)
    for e in reversed(monos):
        res = res + Ordinal.omega_pow(e)
    return res


def pi_inverse(a, k: int) -> str:
    a = coerce(a)
    exps = []
    for e, c in a.terms:
        exps.extend([e] * c)
    if exps and exps[0] >= Ordinal.omega_pow(k):
        raise OrdinalError(f"{a} is not below w^(w^{k})")
    # exps = beta_1 >= ... >= beta_p; segments read from the smallest up
    out = []
    prev = ZERO
    for e in reversed(exps):
        out.append(beta_inverse(left_subtract(e, prev), k) + HASH)
        prev = e
    return "".join(out)


_PURE_CODE = re.compile("(?:9*8*7*6*5*4*3*2*1*0*#)*")


def is_pure_code(x: str) -> bool:
    """Pure codes are exactly the words (pure word #)*; the tests check this against purify."""
    return _PURE_CODE.fullmatch(x) is not None


def _k_of(x: str) -> int:
    digits = [int(c) for c in x if c.isdigit()]
    return max(digits) + 1 if digits else 1


def purify(x: str) -> str:
    return pi_inverse(pi(x), _k_of(x))


def head_purify(head: str, x: str) -> str:
    """``p(b x)`` for a pure code ``x``: keep ``b`` iff x starts with # or a_j, j <= i."""
    if x and (x[0] == HASH or x[0] <= head):
        return head + x
    return x


# ------------------------------------------------------------ configurations


@dataclass(frozen=True)
class Conf:
    code: str
    counter: int

    def flatten(self) -> str:
        return self.code + SEP + HASH * self.counter


def conf_encode(a, n: int, k: int) -> str:
    return pi_inverse(a, k) + SEP + HASH * n


def conf_parse(c: str) -> Conf:
    if c.count(SEP) != 1:
        raise MalformedSequence(f"not a configuration: {show(c)}")
    code, counter = c.split(SEP)
    if set(counter) - {HASH}:
        raise MalformedSequence(f"counter must be #*: {show(c)}")
    if not is_pure_code(code):
        raise MalformedSequence(f"code is not pure: {show(c)}")
    return Conf(code, len(counter))


def conf_decode(c: str) -> tuple:
    conf = conf_parse(c)
    return pi(conf.code), conf.counter


def is_conf(c: str) -> bool:
    try:
        conf_parse(c)
    except MalformedSequence:
        return False
    return True


# ------------------------------------------------------------ sequences

STATES = ("Fw", "Fw1", "Fw2", "Bw", "Bw1", "Bw2", "Sim", "End")
STATE_WIDTH = 3


def state_bits(q: str) -> str:
    """Fixed-width binary name of a machine state, over a_0/a_1."""
    i = STATES.index(q)
    return format(i, f"0{STATE_WIDTH}b")


def state_of_bits(bits: str) -> str:
    if len(bits) != STATE_WIDTH or set(bits) - {"0", "1"}:
        raise MalformedSequence(f"bad state field {show(bits)}")
    return STATES[int(bits, 2)]


@dataclass(frozen=True)
class Seq:
    state: str
    working: str
    code: str
    counter: str
    time: str | None = None

    def flatten(self) -> str:
        parts = [state_bits(self.state), self.working, self.code, self.counter]
        if self.time is not None:
            parts.append(self.time)
        return SEP.join(parts)

    def __str__(self):
        return show(self.flatten())


_WORKING = re.compile(r"[0-9]*#*")
_COUNTER = re.compile(r"[#01]*")


def seq_parse(word: str, segments: int = 4) -> Seq:
    parts = word.split(SEP)
    if len(parts) != segments:
        raise MalformedSequence(f"expected {segments} segments: {show(word)}")
    state = state_of_bits(parts[0])
    working, code, counter = parts[1], parts[2], parts[3]
    if not _WORKING.fullmatch(working) or not is_pure_word(working.rstrip(HASH)):
        raise MalformedSequence(f"bad working segment: {show(word)}")
    if not is_pure_code(code):
        raise MalformedSequence(f"code segment is not pure: {show(word)}")
    if not _COUNTER.fullmatch(counter):
        raise MalformedSequence(f"bad counter segment: {show(word)}")
    time = None
    if segments == 5:
        time = parts[4]
        if set(time) - {HASH}:
            raise MalformedSequence(f"bad time segment: {show(word)}")
    return Seq(state, working, code, counter, time)


def seq_flatten(s: Seq) -> str:
    return s.flatten()
