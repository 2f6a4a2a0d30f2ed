"""Ordinals below epsilon_0 in Cantor normal form, and Hardy computations.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` monomials with
strictly decreasing exponents, so ``w^w*1 + w^2*3 + 5`` is three monomials.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterator


class OrdinalError(ValueError):
    pass


class NotALimitError(OrdinalError):
    pass


class SubtrahendTooLargeError(OrdinalError):
    pass


class BudgetExhausted(RuntimeError):
    """Raised when an evaluator runs out of steps.

    ``partial`` holds whatever the computation had reached, e.g. the current
    Hardy configuration, a frontier or an antichain.
    """

    def __init__(self, message, partial=None, steps=None):
        super().__init__(message)
        self.partial = partial
        self.steps = steps


def _cmp(a: "Ordinal", b: "Ordinal") -> int:
    if a is b:
        return 0
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple = ()

    def __post_init__(self):
        prev = None
        for t in self.terms:
            if not (isinstance(t, tuple) and len(t) == 2):
                raise OrdinalError(f"bad monomial {t!r}")
            e, c = t
            if not isinstance(e, Ordinal) or not isinstance(c, int) or c < 1:
                raise OrdinalError(f"bad monomial {t!r}")
            if prev is not None and _cmp(prev, e) <= 0:
                raise OrdinalError("exponents must strictly decrease")
            prev = e

    # construction helpers

    @staticmethod
    def nat(n: int) -> "Ordinal":
        if n < 0:
            raise OrdinalError("negative natural")
        return Ordinal(((ZERO, n),)) if n else ZERO

    @staticmethod
    def omega_pow(e: "Ordinal | int", c: int = 1) -> "Ordinal":
        return Ordinal(((coerce(e), c),))

    # comparisons

    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            other = coerce(other)
        return _cmp(self, other) < 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.nat(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    # arithmetic

    def __add__(self, other):
        other = coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        head_e, head_c = other.terms[0]
        keep = list(self.terms)
        while keep and _cmp(keep[-1][0], head_e) < 0:
            keep.pop()
        if keep and keep[-1][0] == head_e:
            keep[-1] = (head_e, keep[-1][1] + head_c)
            return Ordinal(tuple(keep) + other.terms[1:])
        return Ordinal(tuple(keep) + other.terms)

    def __radd__(self, other):
        return coerce(other) + self

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return all(e.is_zero() for e, _ in self.terms)

    def __int__(self):
        if not self.is_finite():
            raise OrdinalError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def last_exponent(self) -> "Ordinal":
        return self.terms[-1][0]

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Ordinal({render(self)!r})"


ZERO = Ordinal(())
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def coerce(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ordinal.nat(x)
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"cannot make an ordinal from {x!r}")


def compare(a, b) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return _cmp(coerce(a), coerce(b))


def classify(a) -> str:
    a = coerce(a)
    if a.is_zero():
        return "zero"
    return "successor" if a.last_exponent().is_zero() else "limit"


def predecessor(a: Ordinal) -> Ordinal:
    """The ``b`` with ``b + 1 == a``; ``a`` must be a successor."""
    if classify(a) != "successor":
        raise OrdinalError(f"{a} is not a successor")
    c = a.terms[-1][1]
    if c == 1:
        return Ordinal(a.terms[:-1])
    return Ordinal(a.terms[:-1] + ((ZERO, c - 1),))


def fund_seq(lam, n: int) -> Ordinal:
    """The n-th element of the standard fundamental sequence of a limit."""
    lam = coerce(lam)
    if classify(lam) != "limit":
        raise NotALimitError(f"{lam} is not a limit ordinal")
    if n < 0:
        raise OrdinalError("negative index")
    e, c = lam.terms[-1]
    prefix = lam.terms[:-1] + (((e, c - 1),) if c > 1 else ())
    if classify(e) == "successor":
        if n == 0:
            return Ordinal(prefix)
        return Ordinal(prefix + ((predecessor(e), n),))
    return Ordinal(prefix + ((fund_seq(e, n), 1),))


def norm(a) -> int:
    """Number of omega symbols: |0| = 0, |w^a| = 1 + |a|, additive."""
    a = coerce(a)
    return sum(c * (1 + norm(e)) for e, c in a.terms)


def left_subtract(big, small) -> Ordinal:
    """The unique ``r`` with ``small + r == big``."""
    big, small = coerce(big), coerce(small)
    if _cmp(small, big) > 0:
        raise SubtrahendTooLargeError(f"{small} > {big}")
    for i, ((eb, cb), (es, cs)) in enumerate(zip(big.terms, small.terms)):
        if eb != es:
            return Ordinal(big.terms[i:])
        if cb != cs:
            return Ordinal(((eb, cb - cs),) + big.terms[i + 1:])
    return Ordinal(big.terms[len(small.terms):])


# ----------------------------------------------------------- Hardy steps


@dataclass(frozen=True)
class HardyConfig:
    ordinal: Ordinal
    counter: int

    def __iter__(self):
        yield self.ordinal
        yield self.counter


def _config(c) -> HardyConfig:
    if isinstance(c, HardyConfig):
        return c
    a, n = c
    return HardyConfig(coerce(a), n)


def hardy_step_fwd(c) -> HardyConfig:
    a, n = _config(c)
    kind = classify(a)
    if kind == "zero":
        raise OrdinalError("zero ordinal: computation complete")
    if kind == "successor":
        return HardyConfig(predecessor(a), n + 1)
    return HardyConfig(fund_seq(a, n), n)


def limit_inverses(a: Ordinal, n: int) -> set:
    """All limits ``lam`` with ``fund_seq(lam, n) == a``."""
    if a.is_zero():
        return set()
    out = set()
    f, c = a.terms[-1]
    rest = a.terms[:-1]
    # the tail w^f * n came from a successor exponent f + 1
    if c == n:
        out.add(Ordinal(rest) + Ordinal.omega_pow(f + 1))
    # the last monomial w^f came from w^e with fund_seq(e, n) == f
    if c == 1:
        for e in limit_inverses(f, n):
            if not rest or _cmp(rest[-1][0], e) >= 0:
                out.add(Ordinal(rest) + Ordinal.omega_pow(e))
    return out


def hardy_step_bwd(c) -> set:
    a, n = _config(c)
    out = set()
    if n >= 1:
        out.add(HardyConfig(a + 1, n - 1))
    if n > 1:
        out.update(HardyConfig(lam, n) for lam in limit_inverses(a, n))
    return out


def hardy_run(a, n: int, budget: int) -> tuple:
    """Run the forward computation to the end.

    Returns ``(value, steps)``.  The step count is the number of single
    forward steps; finite tails and single-omega tails are jumped over in
    bulk but counted exactly.
    """
    a = coerce(a)
    steps = 0
    while a.terms:
        e, c = a.terms[-1]
        if e.is_zero():
            take = min(c, budget - steps)
            if take <= 0:
                raise BudgetExhausted("budget exhausted", HardyConfig(a, n), steps)
            n += take
            steps += take
            a = Ordinal(a.terms[:-1] + (((e, c - take),) if take < c else ()))
            continue
        if e == ONE and steps + 1 + n <= budget:
            # H^(g + w)(n) = H^g(2n), taking 1 + n steps
            steps += 1 + n
            n *= 2
            a = Ordinal(a.terms[:-1] + (((e, c - 1),) if c > 1 else ()))
            continue
        if steps >= budget:
            raise BudgetExhausted("budget exhausted", HardyConfig(a, n), steps)
        a, n = hardy_step_fwd((a, n))
        steps += 1
    return n, steps


def hardy_eval(a, n: int, budget: int) -> int:
    return hardy_run(a, n, budget)[0]


def fast_growing(a, n: int, budget: int) -> int:
    return hardy_eval(Ordinal.omega_pow(coerce(a)), n, budget)


def hardy_trace(a, n: int, budget: int) -> Iterator[HardyConfig]:
    """Yield every configuration of the forward computation, one per step."""
    c = HardyConfig(coerce(a), n)
    yield c
    steps = 0
    while not c.ordinal.is_zero():
        if steps >= budget:
            raise BudgetExhausted("budget exhausted", c, steps)
        c = hardy_step_fwd(c)
        steps += 1
        yield c


# ----------------------------------------------------------- enumeration


def ordinals_of_norm(k: int) -> list:
    """All ordinals of norm exactly ``k``, in increasing order."""
    return sorted(_of_norm(k))


_norm_cache: dict = {}


def _of_norm(k: int) -> frozenset:
    if k in _norm_cache:
        return _norm_cache[k]
    if k == 0:
        res = frozenset([ZERO])
    else:
        # a monomial w^e has norm 1 + |e|; split k into a sum of monomials
        # with non-increasing exponents
        monos = []
        for j in range(1, k + 1):
            monos.extend(Ordinal.omega_pow(e) for e in _of_norm(j - 1))
        res = set()

        def build(acc: Ordinal, left: int):
            if left == 0:
                res.add(acc)
                return
            for m in monos:
                w = norm(m)
                if w > left:
                    continue
                if acc.terms and _cmp(acc.terms[-1][0], m.terms[0][0]) < 0:
                    continue
                build(acc + m, left - w)

        build(ZERO, k)
        res = frozenset(res)
    _norm_cache[k] = res
    return res


def ordinals_up_to_norm(k: int) -> list:
    out = []
    for j in range(k + 1):
        out.extend(_of_norm(j))
    return sorted(out)


# ----------------------------------------------------------- text syntax

_TOKEN = re.compile(r"\s*(?:(\d+)|(w)|(\^)|(\*)|(\+)|(\()|(\)))")


def _tokens(text: str) -> list:
    out, i = [], 0
    text = text.strip()
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise OrdinalError(f"unexpected character at {i}: {text[i:]!r}")
        out.append(next(g for g in m.groups() if g is not None))
        i = m.end()
        while i < len(text) and text[i].isspace():
            i += 1
    return out


def parse(text: str) -> Ordinal:
    """Parse ``w^(E)*C + ... + C``; terms must already be in normal form."""
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        t = peek()
        if t is None or (expected is not None and t != expected):
            raise OrdinalError(f"expected {expected or 'token'} in {text!r}")
        pos += 1
        return t

    def term() -> tuple:
        t = peek()
        if t is not None and t.isdigit():
            take()
            return ZERO, int(t)
        take("w")
        e = ONE
        if peek() == "^":
            take()
            t = peek()
            if t == "(":
                take()
                e = expr()
                take(")")
            elif t == "w":
                take()
                e = OMEGA
            elif t is not None and t.isdigit():
                take()
                e = Ordinal.nat(int(t))
            else:
                raise OrdinalError(f"bad exponent in {text!r}")
        c = 1
        if peek() == "*":
            take()
            t = take()
            if not t.isdigit():
                raise OrdinalError(f"bad coefficient in {text!r}")
            c = int(t)
        return e, c

    def expr() -> Ordinal:
        monos = [term()]
        while peek() == "+":
            take()
            monos.append(term())
        monos = [(e, c) for e, c in monos if c > 0]
        for (e1, _), (e2, _) in zip(monos, monos[1:]):
            if _cmp(e1, e2) <= 0:
                raise OrdinalError(f"not in Cantor normal form: {text!r}")
        return Ordinal(tuple(monos))

    result = expr()
    if pos != len(toks):
        raise OrdinalError(f"trailing input in {text!r}")
    return result


def render(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
        elif e == ONE:
            parts.append(f"w*{c}")
        elif e.is_finite():
            parts.append(f"w^{int(e)}*{c}")
        else:
            parts.append(f"w^({render(e)})*{c}")
    return "+".join(parts)


def pretty(a: Ordinal) -> str:
    """Shorter human rendering, e.g. ``w^w+w*2+3``; also accepted by parse."""
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
            continue
        if e == ONE:
            base = "w"
        elif e.is_finite() or e == OMEGA:
            base = f"w^{pretty(e)}"
        else:
            base = f"w^({pretty(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)
