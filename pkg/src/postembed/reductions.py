"""Instance constructions: semi-Thue reachability to LR and LT, LR to EP and LCS.

Every construction returns a small dataclass holding the emitted relation
(as an expression and as a compiled transducer) together with its source
and target words, so that the deciders can be run on it directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .embedding import embeds
from .codes import HASH, SEP, alphabet, is_pure_code, state_bits, sym
from .hardy_machine import bw_expr, machine_alphabet, rule_exprs
from .rel import nfa as N
from .rel.classes import UnboundedDiscrepancy, offsets, resynchronize
from .rel.expr import Id, Machine, Pair, RelExpr, compile, concat, fold_union
from .rel.search import post_nfa
from .rel.transducer import Transducer, t_concat, t_pair, t_star
from .rewrite_systems import LCSystem, SemiThueSystem

BOT = "⊥"
FRESH_SEP = "$"


class MalformedInstance(ValueError):
    pass


class DegenerateInstance(ValueError):
    pass


@dataclass
class LRInstance:
    relation: Transducer
    source: str
    target: str
    expr: RelExpr | None = None
    # a symbol the relation never creates or loses unnoticed; reused as $
    separator: str | None = None
    parts: dict = field(default_factory=dict)


@dataclass
class EPInstance:
    relation: Transducer
    expr: RelExpr | None = None
    separator: str = FRESH_SEP


@dataclass
class LTInstance:
    relation: Transducer
    source: str
    expr: RelExpr | None = None
    parts: dict = field(default_factory=dict)


@dataclass
class LCSInstance:
    system: LCSystem
    source: tuple
    target: tuple
    separator: str = FRESH_SEP
    # (symbol, most copies) holding on every reachable configuration
    bound: tuple | None = None
    # predicate holding on every reachable configuration
    invariant: "ChannelInvariant | None" = None


def _check_st(sys: SemiThueSystem, y: str, y2: str, n: int, k: int, start_code):
    if k < 1 or n < 2:
        raise MalformedInstance("need k >= 1 and n > 1")
    for word in (y, y2, *(c for r in sys.rules for c in r)):
        if set(word) - {"0", "1"}:
            raise MalformedInstance(f"semi-Thue words must be over a0, a1: {word!r}")
    code = sym(k - 1) * n + HASH if start_code is None else start_code
    if set(code) - set(alphabet(k) + HASH) or not is_pure_code(code):
        raise MalformedInstance(f"start code {code!r} is not a pure code over k={k}")
    return code


def _hashes() -> RelExpr:
    return Pair(HASH, HASH).star()


def _bits01() -> RelExpr:
    return Id(N.star(N.symbol_set_nfa("01")).minimize(), "[a0a1]*")


def sim_expr(sys: SemiThueSystem) -> RelExpr:
    """One semi-Thue step on ``q_Sim|||y#...#``, padded with # to keep the length."""
    head = Pair(state_bits("Sim") + SEP * 3, state_bits("Sim") + SEP * 3)
    steps = []
    for u, v in sys.rules:
        d = len(u) - len(v)
        pad = Pair("", HASH * d) if d > 0 else Pair(HASH * -d, "")
        steps.append(concat(_bits01(), Pair(u, v), _bits01(), _hashes(), pad))
    return concat(head, fold_union(steps))


def init_expr(y: str) -> RelExpr:
    return concat(
        Pair(state_bits("Fw") + SEP * 3, state_bits("Sim") + SEP * 3), Pair(HASH * len(y), y), _hashes()
    )


def fin_expr(y2: str) -> RelExpr:
    return concat(
        Pair(state_bits("Sim") + SEP * 3, state_bits("Bw") + SEP * 3), Pair(y2, HASH * len(y2)), _hashes()
    )


def st_to_lr(sys: SemiThueSystem, y: str, y2: str, n: int, k: int, start_code: str | None = None) -> LRInstance:
    """R = Fw | Init | Sim | Fin | Bw with source q_Fw||code|#^n and target q_Bw||code|#^n."""
    code = _check_st(sys, y, y2, n, k, start_code)
    fw = fold_union(rule_exprs(k).values())
    parts = {"Fw": fw, "Init": init_expr(y), "Sim": sim_expr(sys), "Fin": fin_expr(y2), "Bw": bw_expr(k)}
    e = fold_union(parts.values())
    src = SEP.join([state_bits("Fw"), "", code, HASH * n])
    dst = SEP.join([state_bits("Bw"), "", code, HASH * n])
    return LRInstance(compile(e), src, dst, e, SEP, parts)


def _time(e: RelExpr, extra: RelExpr | None = None) -> RelExpr:
    tail = [Pair(SEP, SEP), _hashes()]
    if extra is not None:
        tail.append(extra)
    return concat(e, *tail)


def st_to_lt(sys: SemiThueSystem, y: str, y2: str, n: int, k: int, start_code: str | None = None) -> LTInstance:
    """The time-budget variant over five-segment sequences, with an End loop on success.

    The forward successor rule adds one # to both the counter and the time
    segment.  The two need not be equal in the input (equality of the two
    lengths is not a regular condition).
    """
    code = _check_st(sys, y, y2, n, k, start_code)
    fw_rules = rule_exprs(k)
    fw = fold_union(
        _time(r, Pair("", HASH) if name == "rFw0" else None) for name, r in fw_rules.items()
    )
    end_src = SEP.join([state_bits("Bw"), "", code, HASH * n, ""])
    end_dst = SEP.join([state_bits("End"), "", code, HASH * n, ""])
    # the loop keeps all five segments: with binary state names, a loop on
    # arbitrary words would let losses forge the End state out of data bits
    segment = N.star(N.symbol_set_nfa(machine_alphabet(k).replace(SEP, "")))
    rest = N.concat(*([N.word_nfa(SEP), segment] * 4)).minimize()
    end = concat(Pair(end_src, end_dst), _hashes()) | concat(
        Pair(state_bits("End"), state_bits("End")), Id(rest, "(|[^|]*)^4")
    )
    parts = {
        "Fw": fw,
        "Init": _time(init_expr(y)),
        "Sim": _time(sim_expr(sys), Pair(HASH, "")),
        "Fin": _time(fin_expr(y2)),
        "Bw": _time(bw_expr(k)),
        "End": end,
    }
    e = fold_union(parts.values())
    src = SEP.join([state_bits("Fw"), "", code, HASH * n, HASH * n])
    return LTInstance(compile(e), src, e, parts)


def _separator(inst: LRInstance) -> str:
    if inst.separator is not None:
        return inst.separator
    if FRESH_SEP in inst.relation.alphabet:
        raise MalformedInstance(f"{FRESH_SEP!r} already used by the relation")
    return FRESH_SEP


def _nondegenerate(inst: LRInstance):
    if inst.source == inst.target:
        raise DegenerateInstance("source equals target; the LR answer is trivially yes")


def lr_to_ep_rat(inst: LRInstance) -> EPInstance:
    """($w'$, $) . (R . ($,$))+ . (e, w$): embedded pairs spell lossy runs from w to w'."""
    _nondegenerate(inst)
    s = _separator(inst)
    body = concat(Machine(inst.relation), Pair(s, s)).plus()
    e = concat(Pair(s + inst.target + s, s), body, Pair("", inst.source + s))
    return EPInstance(compile(e), e, s)


def padded(t: Transducer, s: str, bot: str = BOT) -> Transducer:
    """R_bot = {(u s bot^m, v s bot^p) : (u, v) in R, |u| + m = |v| + p}.

    Built from the reachable (state, offset) pairs of R; needs bounded
    length discrepancy.
    """
    t = t.trim()
    offs = offsets(t)
    if offs is None:
        raise UnboundedDiscrepancy("padding needs bounded length discrepancy")
    index = {p: i for i, p in enumerate(sorted(offs))}
    raw = []
    for (q, o), i in index.items():
        for a, ds in t.reads(q).items():
            for d in ds:
                raw.append((i, a, "", index[(d, o + 1)]))
        for b, d in t.writes(q):
            raw.append((i, "", b, index[(d, o - 1)]))
    n = len(index)
    loop = n
    raw.append((loop, bot, bot, loop))
    finals = {loop}
    for (q, o), i in index.items():
        if q in t.final:
            # o = |u| - |v| so far: pad the shorter side
            raw.append((i, s + bot * max(0, -o), s + bot * max(0, o), loop))
    init = [index[(q, 0)] for q in t.initial]
    return Transducer.from_raw(n + 1, raw, init, finals, t.in_alpha | {s, bot}, t.out_alpha | {s, bot})


def lr_to_ep_sync(inst: LRInstance, synchronize: bool = True, max_states: int | None = None) -> EPInstance:
    """($w'$, $) . R_bot+ . (e, w$) . (e, bot)*.

    With ``synchronize`` the bounded-discrepancy prefix is resynchronized
    and the bot tail appended, giving a transducer in synchronous form.
    Without it the same relation comes as a plain concatenation, which is
    what a search can afford when the resynchronized form is too large.
    """
    _nondegenerate(inst)
    s = _separator(inst)
    rb = padded(inst.relation, s)
    prefix = t_concat(t_pair(s + inst.target + s, s), rb, t_star(rb), t_pair("", inst.source + s))
    if synchronize:
        t = resynchronize(prefix, pad=BOT, max_states=max_states)
    else:
        t = t_concat(prefix, t_star(t_pair("", BOT)))
    return EPInstance(t, Machine(t), s)


def lr_to_lcs(inst: LRInstance) -> LCSInstance:
    """A channel system that cycles through w$ applying one symbol move per transition.

    Passes end by reading $ and writing it back, either towards an initial
    state (next pass) or into q_f.  Exiting through ?$!$ rather than a silent
    move keeps the target channel w'$ in phase with a completed pass.
    """
    _nondegenerate(inst)
    s = _separator(inst)
    t = inst.relation
    trans = [("qi", (), q) for q in sorted(t.initial)]
    for src, a, b, dst in t.trans:
        trans.append((src, (("?", a),) if a else (("!", b),), dst))
    cycle = (("?", s), ("!", s))
    for q in sorted(t.final):
        for q2 in sorted(t.initial):
            trans.append((q, cycle, q2))
        trans.append((q, cycle, "qf"))
    states = ("qi", "qf") + tuple(range(t.n))
    alpha = "".join(sorted(t.alphabet | {s}))
    system = LCSystem(states, alpha, tuple(trans))
    extra = _surplus(t, s)
    bound = None if extra is None else (s, inst.source.count(s) + 1 + extra)
    inv = None if s in t.alphabet else ChannelInvariant(t, inst.source, s)
    return LCSInstance(system, ("qi", inst.source + s), ("qf", inst.target + s), s, bound, inv)


def _surplus(t: Transducer, s: str) -> int:
    """Most copies of ``s`` a partial run writes beyond those it reads.

    None unless complete runs never gain copies; only then does the count in
    the channel stay below the initial one plus this surplus.
    """
    seen = {(q, 0) for q in t.initial}
    todo = list(seen)
    cap = t.n + 1
    while todo:
        q, k = todo.pop()
        moves = [(d, -1 if a == s else 0) for a, ds in t.reads(q).items() for d in ds]
        moves += [(d, 1 if b == s else 0) for b, d in t.writes(q)]
        for d, w in moves:
            x = (d, k + w)
            if x not in seen and k + w >= -cap:
                if k + w > cap:
                    return None
                seen.add(x)
                todo.append(x)
    if any(k > 0 for q, k in seen if q in t.final):
        return None
    return max(k for _, k in seen)


class ChannelInvariant:
    """Per-state downward-closed sets holding every reachable channel, for a fresh ``s``.

    Mid pass, at transducer state q, the channel is a lossy copy of the
    unread input, the separator, and what the run has written so far.  The
    input is the source or an output of the relation, and the run reached q
    on a subword of a prefix of it, so both parts are regular and come from
    the product of the transducer with an automaton for the downward
    closure of the inputs.  Automata are built per state on first use.

    A reused separator breaks the split: a pass may end on a copy of ``s``
    from the unread input, leaving old input in front of the new output.
    """

    def __init__(self, t: Transducer, w: str, s: str):
        if s in t.alphabet:
            raise ValueError("the channel invariant needs a fresh separator")
        self.s = s
        self.w = w
        sigma = N.sigma_star(sorted(t.in_alpha))
        inputs = N.union(N.word_nfa(w), post_nfa(t, sigma))
        self.lower = N.downward_closure(inputs.trim()).minimize()
        self._between = N.downward_closure(N.concat(self.lower, N.word_nfa(s))).minimize()
        adj = self.lower._adj()
        start = next(iter(self.lower.initial))
        index, order, delta = {}, [], []

        def idx(p):
            if p not in index:
                index[p] = len(order)
                order.append(p)
            return index[p]

        for q in sorted(t.initial):
            idx((q, start))
        i = 0
        while i < len(order):
            q, a = order[i]
            for c, ds in t.reads(q).items():
                if c in adj[a]:
                    for d in ds:
                        delta.append((i, "", idx((d, adj[a][c][0]))))
            for b, d in t.writes(q):
                delta.append((i, b, idx((d, a))))
            i += 1
        self._n_init = len(t.initial)
        self._pairs = order
        self._written = tuple(delta)
        self._cache: dict = {}

    def automaton(self, q) -> N.Nfa:
        if q in self._cache:
            return self._cache[q]
        init = frozenset(range(self._n_init))
        low = self.lower
        parts = []
        for j, (tq, a) in enumerate(self._pairs):
            if tq != q:
                continue
            left = N.Nfa(low.n, low.delta, frozenset([a]), low.final, low.alphabet)
            right = N.Nfa(len(self._pairs), self._written, init, frozenset([j]))
            parts.append(N.concat(left, N.word_nfa(self.s), right.trim()))
        lang = N.union(*parts) if parts else N.empty_lang()
        d = N.downward_closure(lang.trim()).minimize()
        self._cache[q] = d
        return d

    def __call__(self, conf) -> bool:
        q, x = conf
        if q == "qi":
            return embeds(x, self.w + self.s)
        if q == "qf":
            return self._between.accepts(x)
        return self.automaton(q).accepts(x)
