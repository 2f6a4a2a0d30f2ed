"""Hardy computations as rewriting on encoded configurations.

``rh_step`` is the big-step relation on ``code|#^n`` configurations.  The
forward and backward machines break each big step into small steps that
only ever change a word's length by one, over four-segment sequences
``state|working|code|counter``.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .codes import (
    HASH,
    SEP,
    MalformedSequence,
    alphabet,
    conf_parse,
    head_purify,
    pi,
    seq_parse,
    state_bits,
    sym,
)
from .ordinals import BudgetExhausted
from .rel import nfa as N
from .rel.expr import Id, Pair, RelExpr, compile, concat, fold_union
from .rel.search import image, lossy_images_max
from .rel.transducer import Transducer


# ------------------------------------------------------------ big steps


def rh_step(c: str) -> set:
    """One step of R_0, R_1 or R_2 on a configuration word ``x|#^n``."""
    try:
        conf = conf_parse(c)
    except MalformedSequence:
        return set()
    x, n = conf.code, conf.counter
    out = set()
    if x.startswith(HASH):
        out.add(x[1:] + SEP + HASH * (n + 1))
        return out
    if n <= 1 or not x:
        return out
    first = x.index(HASH)
    w, b, rest = x[:first - 1], x[first - 1], x[first + 1:]
    i = int(b)
    if i == 0:
        code = w + HASH * n + head_purify(b, rest)
    else:
        code = w + sym(i - 1) * n + HASH + head_purify(b, rest)
    out.add(code + SEP + HASH * n)
    return out


def rh_closure(c: str, limit: int = 100000) -> list:
    """The (deterministic) chain of big steps from ``c``."""
    chain = [c]
    while len(chain) <= limit:
        nxt = rh_step(chain[-1])
        if not nxt:
            return chain
        chain.append(min(nxt))
    raise BudgetExhausted("closure too long", chain)


# ------------------------------------------------------------ small steps


@dataclass(frozen=True)
class MachineSpec:
    k: int
    direction: str = "forward"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.direction not in ("forward", "backward"):
            raise ValueError("direction is forward or backward")


def machine_alphabet(k: int) -> str:
    return "".join(sorted(set(alphabet(k)) | {"0", "1", HASH, SEP}))


@lru_cache(maxsize=None)
def _languages(k: int) -> dict:
    sig = alphabet(k)
    # pure words: a_(k-1)* ... a_0*
    pure = N.concat(*(N.star(N.word_nfa(sym(i))) for i in reversed(range(k))))
    codes = N.star(N.concat(pure, N.word_nfa(HASH)))
    langs = {"P": pure.minimize(), "C": codes.minimize()}
    anything = N.sigma_star(sig + HASH)
    for i in range(k):
        low = N.concat(N.symbol_set_nfa(sig[: i + 1] + HASH), anything)
        high = N.union(N.word_nfa(""), N.concat(N.symbol_set_nfa(sig[i + 1:]), anything))
        langs[f"C<={i}"] = N.intersect(codes, low).minimize()
        langs[f"C>{i}"] = N.intersect(codes, high).minimize()
        langs[f"P${i}"] = N.intersect(pure, N.concat(N.sigma_star(sig), N.word_nfa(sym(i)))).minimize()
    return langs


def _pp(u, v) -> RelExpr:
    return Pair(u, v)


def _copy(ch: str) -> RelExpr:
    return Pair(ch, ch)


def _copies(ch: str) -> RelExpr:
    return Pair(ch, ch).star()


def _head_purify(k: int, i: int) -> RelExpr:
    """x -> p(a_i x) on pure codes x."""
    L = _languages(k)
    return (_pp("", sym(i)) * Id(L[f"C<={i}"])) | Id(L[f"C>{i}"])


def rule_exprs(k: int, names=("Fw", "Fw1", "Fw2")) -> dict:
    """The small-step rules as expressions, with the three state names given."""
    q, q1, q2 = (state_bits(s) for s in names)
    L = _languages(k)
    P, C = Id(L["P"]), Id(L["C"])
    bar = _copy(SEP)
    rules = {}
    # successor: drop the leading # of the code, add one # to the counter
    rules["rFw0"] = concat(
        _pp(q + SEP + SEP, q + SEP + SEP), _pp(HASH, ""), C, bar, _copies(HASH), _pp("", HASH)
    )
    # limit with a_0 last in the first segment: start moving the counter
    rules["rFw10"] = concat(
        _pp(q + SEP + SEP, q1 + SEP), P, _pp("0" + HASH, HASH + SEP), _head_purify(k, 0),
        bar, _copies(HASH), _pp(HASH + HASH, HASH + "0"),
    )
    rules["rFw11"] = concat(
        _pp(q1 + SEP, q1 + SEP), P, _copies(HASH), _pp("", HASH), bar, C, bar,
        _copies(HASH), _pp(HASH, "0"), Pair("0", "0").plus(),
    )
    rules["rFw13"] = concat(
        _pp(q1 + SEP, q + SEP + SEP), P, Pair(HASH, HASH).plus(), _pp(SEP, ""), C, bar,
        _pp("00", HASH + HASH), Pair("0", HASH).star(),
    )
    if k >= 2:
        rules["rFw20"] = concat(
            _pp(q + SEP + SEP, q2 + SEP), P,
            fold_union(
                _pp(sym(i) + HASH, sym(i - 1) + SEP) * _head_purify(k, i) for i in range(1, k)
            ),
            bar, _copies(HASH), _pp(HASH + HASH, HASH + "0"),
        )
        ends = fold_union(Id(L[f"P${j}"]) * _pp("", sym(j)) for j in range(k - 1))
        rules["rFw21"] = concat(
            _pp(q2 + SEP, q2 + SEP), ends, bar, C, bar,
            _copies(HASH), _pp(HASH, "0"), Pair("0", "0").plus(),
        )
        ending = fold_union(Id(L[f"P${j}"]) for j in range(k - 1))
        rules["rFw23"] = concat(
            _pp(q2 + SEP, q + SEP + SEP), ending, _pp(SEP, HASH), C, bar,
            _pp("00", HASH + HASH), Pair("0", HASH).star(),
        )
    return rules


def fw_expr(k: int) -> RelExpr:
    return fold_union(rule_exprs(k).values())


def bw_expr(k: int) -> RelExpr:
    return fold_union(rule_exprs(k, ("Bw", "Bw1", "Bw2")).values()).inv()


@lru_cache(maxsize=None)
def _build(k: int, direction: str) -> Transducer:
    return compile(fw_expr(k) if direction == "forward" else bw_expr(k))


def build_machine(spec: MachineSpec) -> Transducer:
    return _build(spec.k, spec.direction)


# ------------------------------------------------------------ sequences


def start_seq(code: str, n: int, direction: str = "forward", time: int | None = None) -> str:
    q = "Fw" if direction == "forward" else "Bw"
    parts = [state_bits(q), "", code, HASH * n]
    if time is not None:
        parts.append(HASH * time)
    return SEP.join(parts)


def normal_conf(word: str, direction: str = "forward"):
    """``(code, counter)`` when ``word`` is in normal shape ``q||code|#^m``, else None."""
    q = "Fw" if direction == "forward" else "Bw"
    try:
        s = seq_parse(word)
    except MalformedSequence:
        return None
    if s.state != q or s.working or set(s.counter) - {HASH}:
        return None
    return s.code, len(s.counter)


def rename_states(word: str, mapping: dict) -> str:
    """Replace the state field, e.g. forward names by backward ones."""
    s = seq_parse(word, word.count(SEP) + 1)
    parts = word.split(SEP)
    parts[0] = state_bits(mapping.get(s.state, s.state))
    return SEP.join(parts)


FW_TO_BW = {"Fw": "Bw", "Fw1": "Bw1", "Fw2": "Bw2"}


@dataclass
class ClosureResult:
    parents: dict
    normal: dict = field(default_factory=dict)
    expanded: int = 0

    def trace(self, word: str) -> list:
        out = [word]
        while self.parents.get(out[-1]) is not None:
            out.append(self.parents[out[-1]])
        return out[::-1]

    @property
    def reached(self) -> set:
        return set(self.parents)


def parse_loss(policy: str):
    if policy in ("none", "subwords"):
        return policy, None, None
    if policy.startswith("random:"):
        _, seed, rate = policy.split(":")
        return "random", int(seed), float(rate)
    raise ValueError(f"unknown loss policy {policy!r}")


def _lose(rng: random.Random, w: str, rate: float) -> str:
    return "".join(c for c in w if rng.random() >= rate)


def run_closure(
    spec: MachineSpec,
    start: str,
    lossy: str = "none",
    budget: int = 100000,
    keep: Callable[[str], bool] | None = None,
) -> ClosureResult:
    """Breadth-first closure of the (lossy) small-step relation from ``start``.

    ``lossy`` is ``none``, ``subwords`` (images of every subword, taken as
    the subword-maximal images) or ``random:<seed>:<rate>`` (each symbol is
    dropped with probability ``rate`` before and after every step).
    ``keep`` optionally filters which successors are explored.
    Normal-shape sequences are collected in ``normal`` as word -> (code, m).
    """
    t = build_machine(spec)
    kind, seed, rate = parse_loss(lossy)
    rng = random.Random(seed)
    res = ClosureResult({start: None})
    queue = deque([start])
    while queue:
        if res.expanded >= budget:
            raise BudgetExhausted("closure budget exhausted", sorted(queue), res.expanded)
        u = queue.popleft()
        res.expanded += 1
        nc = normal_conf(u, spec.direction)
        if nc is not None:
            res.normal[u] = nc
        if kind == "none":
            succ = image(t, u)
        elif kind == "subwords":
            succ = lossy_images_max(t, u)
        else:
            succ = {_lose(rng, v, rate) for v in image(t, _lose(rng, u, rate))}
        for v in sorted(succ):
            if v in res.parents or (keep is not None and not keep(v)):
                continue
            res.parents[v] = u
            queue.append(v)
    return res


def counters_reached(res: ClosureResult, direction: str = "forward") -> set:
    """Counters m of reached sequences ``q|||#^m`` (empty code)."""
    return {m for code, m in res.normal.values() if code == ""}


def decode_normal(res: ClosureResult) -> set:
    """Hardy configurations (ordinal, counter) of all reached normal shapes."""
    return {(pi(code), m) for code, m in res.normal.values()}
