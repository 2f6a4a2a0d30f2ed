"""Decision procedures for lossy reachability, termination and Post embedding.

Lossy reachability (LR) and channel reachability go backwards over
upward-closed sets kept as antichains of minimal words.  Lossy
termination walks the tree of maximal lossy successors.  The embedding
problem (EP) is searched exhaustively up to a length budget in general,
and decided outright in the unary, recognizable, two-morphism and
rewriting cases.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .embedding import Antichain, embeds
from .ordinals import BudgetExhausted
from .rel import nfa as N
from .rel.classes import UnboundedDiscrepancy, discrepancy_bound
from .rel.expr import RelExpr, compile
from .rel.parikh import NotUnary, parikh_linear_sets, simple_loops, simple_runs
from .rel.search import lossy_images_max, min_covering_predecessors, post_nfa
from .rel.transducer import Transducer
from .rewrite_systems import LCSystem, SemiThueSystem, min_predecessors

TERMINATING = "terminating"
NONTERMINATING = "nonterminating"


def _as_transducer(t) -> Transducer:
    return compile(t) if isinstance(t, RelExpr) else t


# ------------------------------------------------------------ lossy reachability


@dataclass
class Coverability:
    """Outcome of a backward coverability run.

    ``antichain`` holds the minimal words of the set of words that reach the
    target in at least one lossy step; ``parents`` maps every word ever added
    to the word whose predecessor it is.
    """

    verdict: bool
    antichain: list
    parents: dict
    expansions: int
    stabilized: bool
    target: object = None
    witness: object = None
    history: list = field(default_factory=list)

    def trace(self) -> list:
        """Source, then each intermediate minimal word, then the target."""
        if not self.verdict or self.witness is None:
            return []
        src, m = self.witness
        out = [src]
        if m == self.target and src == self.target:
            return out
        x = self.parents[m]
        while x != self.target:
            out.append(x)
            x = self.parents[x]
        out.append(self.target)
        return out


def _coverability(pre, source, target, budget, early, keyed=False, record=False) -> Coverability:
    chain = Antichain(keyed=keyed)
    parents = {}
    history = []
    queue = deque()

    def push(x, parent):
        if chain.add(x):
            parents.setdefault(x, parent)
            queue.append(x)
            if record:
                history.append(x)

    for x in sorted(pre(target), key=str):
        push(x, target)
    expansions = 0
    witness = None
    while queue:
        if early and chain.covers(source):
            break
        if expansions >= budget:
            raise BudgetExhausted("coverability budget exhausted", chain.elements(), expansions)
        x = queue.popleft()
        if x not in chain:
            continue
        expansions += 1
        for y in sorted(pre(x), key=str):
            push(y, x)
    stabilized = not queue
    verdict = source == target or chain.covers(source)
    if verdict and source != target:
        k, w = source if keyed else (None, source)
        for m in chain.elements():
            mk, mw = m if keyed else (None, m)
            if mk == k and embeds(mw, w):
                witness = (source, m)
                break
    elif verdict:
        witness = (source, target)
    return Coverability(verdict, chain.elements(), parents, expansions, stabilized, target, witness, history)


def lr_coverability(t, w: str, w2: str, budget: int = 100000, early: bool = True, record: bool = False) -> Coverability:
    """Backward coverability for ``w ->* w2`` under the lossy relation.

    Starts from the minimal predecessors of ``w2`` and saturates.  A run
    with ``early`` stops as soon as ``w`` is covered; otherwise it runs to
    stabilization.
    """
    t = _as_transducer(t)
    return _coverability(lambda v: min_covering_predecessors(t, v), w, w2, budget, early, record=record)


def decide_lr(t, w: str, w2: str, budget: int = 100000) -> bool:
    """Is ``w2`` reachable from ``w`` by zero or more lossy steps?

    Zero steps only when ``w == w2``: a superword of ``w2`` still needs one
    application of the relation.
    """
    return lr_coverability(t, w, w2, budget).verdict


def is_stable(t, elements) -> bool:
    """Every predecessor of every element is already covered."""
    t = _as_transducer(t)
    chain = Antichain()
    for m in elements:
        chain.add(m)
    return all(chain.covers(p) for m in elements for p in min_covering_predecessors(t, m))


def decide_lr_bounded(t, w: str, w2: str, chain_budget: int, len_budget: int) -> bool:
    """Witness search with at most ``chain_budget`` lossy steps through
    minimal words of length at most ``len_budget``."""
    t = _as_transducer(t)
    if w == w2:
        return True
    layer = Antichain()
    for m in min_covering_predecessors(t, w2, len_budget):
        if len(m) <= len_budget:
            layer.add(m)
    frontier = list(layer)
    for _ in range(chain_budget):
        if layer.covers(w):
            return True
        nxt = []
        for x in frontier:
            for m in min_covering_predecessors(t, x, len_budget):
                if len(m) <= len_budget and layer.add(m):
                    nxt.append(m)
        frontier = [m for m in nxt if m in layer]
        if not frontier:
            break
    return layer.covers(w)


def lossy_forward_reach(t, w: str, maxlen: int, budget: int = 10**4) -> N.Nfa:
    """Minimal DFA of the words reachable from ``w`` in at least one lossy step
    through words of length <= maxlen.

    The set is downward closed, so it is saturated as a whole: one round maps
    the current set through the relation and closes it downwards.
    """
    t = _as_transducer(t)
    cap = N.up_to_length(t.in_alpha | t.out_alpha | set(w), maxlen)

    def step(lang):
        return N.intersect(N.downward_closure(post_nfa(t, lang)), cap)

    cur = step(N.subwords_nfa(w)).minimize()
    for _ in range(budget):
        nxt = N.union(cur, step(cur)).minimize()
        if _same_dfa(nxt, cur):
            return cur
        cur = nxt
    raise BudgetExhausted("forward search budget exhausted", cur)


def _same_dfa(a: N.Nfa, b: N.Nfa) -> bool:
    # minimize() numbers states canonically
    return (a.n, sorted(a.delta), a.final) == (b.n, sorted(b.delta), b.final)


# ------------------------------------------------------------ lossy termination


@dataclass
class LTResult:
    verdict: str
    nodes: int
    lasso: list = field(default_factory=list)


def decide_lt_bld(t, w: str, budget: int = 100000) -> LTResult:
    """Does every lossy run from ``w`` terminate?

    Explores the tree of subword-maximal lossy successors.  A node lying above
    one of its ancestors repeats forever; a node lying below a node already
    shown terminating is terminating too.
    """
    t = _as_transducer(t)
    if discrepancy_bound(t) is None:
        raise UnboundedDiscrepancy("lossy termination needs bounded length discrepancy")
    dead = []  # words proved terminating
    memo = {}
    nodes = 0

    def succ(x):
        r = memo.get(x)
        if r is None:
            r = sorted(lossy_images_max(t, x), key=lambda v: (-len(v), v))
            memo[x] = r
        return r

    def known_dead(x):
        return any(embeds(x, d) for d in dead)

    path = [w]
    iters = [iter(succ(w))]
    while iters:
        try:
            y = next(iters[-1])
        except StopIteration:
            dead.append(path.pop())
            iters.pop()
            continue
        if known_dead(y):
            continue
        for anc in path:
            if embeds(anc, y):
                return LTResult(NONTERMINATING, nodes, path[path.index(anc):] + [y])
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted("termination budget exhausted", list(path), nodes)
        path.append(y)
        iters.append(iter(succ(y)))
    return LTResult(TERMINATING, nodes)


# ------------------------------------------------------------ channel systems


def compress_lcs(c: LCSystem, keep) -> LCSystem:
    """Eliminate states outside ``keep`` that have one incoming or one outgoing transition.

    Each path through an eliminated state becomes a single transition whose
    instructions are the concatenation.  Losses may happen anywhere, so
    running the joined instructions at once covers the same channels.
    """
    trans = list(dict.fromkeys(c.transitions))
    keep = set(keep)
    while True:
        ins: dict = {}
        outs: dict = {}
        for t in trans:
            outs.setdefault(t[0], []).append(t)
            ins.setdefault(t[2], []).append(t)
        victim = None
        for q in sorted(set(ins) | set(outs), key=str):
            if q in keep:
                continue
            i, o = ins.get(q, []), outs.get(q, [])
            if any(t[0] == q for t in i):
                continue
            if len(i) <= 1 or len(o) <= 1:
                victim = q
                break
        if victim is None:
            break
        i, o = ins.get(victim, []), outs.get(victim, [])
        gone = set(i) | set(o)
        trans = [t for t in trans if t not in gone]
        trans += [(a, ia + ob, d) for a, ia, _ in i for _, ob, d in o]
        trans = list(dict.fromkeys(trans))
    states = tuple(q for q in c.states if q in keep or any(q in (t[0], t[2]) for t in trans))
    return LCSystem(states, c.alphabet, tuple(trans))


def _lcs_pre(c: LCSystem):
    by_dst: dict = {}
    for s, instrs, d in c.transitions:
        by_dst.setdefault(d, []).append((s, instrs))
    cache: dict = {}

    def pre(conf):
        q, x = conf
        out = set()
        for s, instrs in by_dst.get(q, ()):
            key = (instrs, x)
            ps = cache.get(key)
            if ps is None:
                ps = cache[key] = min_predecessors(instrs, x)
            out.update((s, p) for p in ps)
        return out

    return pre


def lcs_coverability(c: LCSystem, src, dst, budget: int = 100000, early: bool = True, invariant=None) -> Coverability:
    """Backward coverability on channel configurations.

    ``invariant`` optionally describes a downward-closed set of channel
    words that contains every channel reachable from ``src``: a pair
    ``(symbol, count)`` bounding the copies of one symbol, an automaton
    whose language is already downward closed, or a predicate on
    configurations (downward closed for each state).  Predecessors
    outside it cannot be reached, so dropping them keeps the verdict.
    """
    pre = _lcs_pre(compress_lcs(c, {src[0], dst[0]}))
    if invariant is not None:
        ok = _channel_test(invariant)
        base = pre

        def pre(conf):
            return {x for x in base(conf) if ok(x)}

    return _coverability(pre, tuple(src), tuple(dst), budget, early, keyed=True)


def _channel_test(invariant):
    if isinstance(invariant, tuple):
        a, most = invariant
        return lambda conf: conf[1].count(a) <= most
    if isinstance(invariant, N.Nfa):
        return lambda conf: invariant.accepts(conf[1])
    return invariant


def decide_lcs_reach(c: LCSystem, src, dst, budget: int = 100000, invariant=None) -> bool:
    """Is ``dst`` reachable from ``src`` with losses allowed before and after each transition?"""
    return lcs_coverability(c, src, dst, budget, invariant=invariant).verdict


# ------------------------------------------------------------ Post embedding, bounded


def decide_ep_bounded(e, len_budget: int, max_configs: int = 2 * 10**6):
    """A pair (u, v) of the relation with u a subword of v, |u|, |v| <= len_budget.

    Returns the witness of least total length, lexicographically least among
    those, or None when there is none within the budget.  The search runs
    over (state, side, buffer, |u|, |v|) where the buffer holds either the
    input not yet matched (side "u") or output still usable by later input
    (side "v"); matching is greedy in both cases.  A configuration is
    dropped when another one in the same state has a better buffer and
    prefixes that are no longer (and lexicographically no larger when the
    totals tie), since every completion of the first also completes the
    second.
    """
    t = _as_transducer(e)
    reads, writes, final = t._reads, t._writes, t.final
    by_state: dict = {}
    layer = {}
    for q in sorted(t.initial):
        layer[(q, "", "", 0, 0)] = ("", "")
    configs = 0
    for total in range(2 * len_budget + 1):
        if not layer:
            return None
        hits = [uv for (q, side, _, _, _), uv in layer.items() if side != "u" and q in final]
        if hits:
            return min(hits)
        nxt: dict = {}
        for (q, side, buf, lu, lv), (u, v) in sorted(layer.items(), key=lambda kv: kv[1]):
            if _dominated(by_state, q, side, buf, lu, lv, (u, v)):
                continue
            by_state.setdefault(q, []).append((side, buf, lu, lv, (u, v)))
            configs += 1
            if configs > max_configs:
                raise BudgetExhausted("embedding search exceeded its configuration cap", None, configs)
            if lu < len_budget:
                for a, ds in reads[q].items():
                    ns, nb = _after_read(side, buf, a)
                    for d in ds:
                        _offer(nxt, (d, ns, nb, lu + 1, lv), (u + a, v))
            if lv < len_budget:
                for b, d in writes[q]:
                    ns, nb = _after_write(side, buf, b)
                    _offer(nxt, (d, ns, nb, lu, lv + 1), (u, v + b))
        layer = nxt
    return None


def _after_read(side, buf, a):
    if side == "u":
        return side, buf + a
    i = buf.find(a)
    if i < 0:
        return "u", a
    rest = buf[i + 1 :]
    return ("v" if rest else ""), rest


def _after_write(side, buf, b):
    if side == "u":
        if buf[0] == b:
            rest = buf[1:]
            return ("u" if rest else ""), rest
        return side, buf
    return "v", buf + b


def _better(side2, buf2, side, buf) -> bool:
    """Is buffer 2 at least as useful as buffer 1 for completing a witness?"""
    if side == "u":
        return side2 != "u" or embeds(buf2, buf)
    if side == "":
        return side2 != "u"
    return side2 == "v" and embeds(buf, buf2)


def _offer(layer: dict, key, uv):
    old = layer.get(key)
    if old is None or uv < old:
        layer[key] = uv


def _dominated(by_state, q, side, buf, lu, lv, uv) -> bool:
    for side2, b2, lu2, lv2, uv2 in by_state.get(q, ()):
        if lu2 <= lu and lv2 <= lv and _better(side2, b2, side, buf):
            if lu2 + lv2 < lu + lv or uv2 <= uv:
                return True
    return False


# ------------------------------------------------------------ Post embedding, decidable cases


def decide_ep_unary(t) -> bool:
    """EP on a one-letter alphabet: compare lengths along simple runs and loops."""
    t = _as_transducer(t)
    if len(t.in_alpha | t.out_alpha) > 1:
        raise NotUnary("unary EP needs a single letter on both sides")
    t = t.trim()
    if not t.n:
        return False
    if any(w[0] <= w[1] for _, w in simple_runs(t)):
        return True
    return any(w[0] < w[1] for _, w in simple_loops(t))


def unary_witness_lengths(t):
    """The linear sets behind ``decide_ep_unary``, for inspection."""
    return parikh_linear_sets(_as_transducer(t))


def decide_ep_rec(pairs) -> bool:
    """Some pair (L, L') with a word of L embedded in a word of L'."""
    for lang, lang2 in pairs:
        if not N.intersect(lang, N.downward_closure(lang2)).is_empty():
            return True
    return False


@dataclass(frozen=True)
class MorphismPair:
    domain: str
    u: dict
    v: dict

    def __post_init__(self):
        for a in self.domain:
            if a not in self.u or a not in self.v:
                raise ValueError(f"morphisms are not total on {a!r}")

    def images(self, x: str) -> tuple:
        return "".join(self.u[a] for a in x), "".join(self.v[a] for a in x)


def decide_ep_2morph(m: MorphismPair) -> bool:
    """Is u(x) a subword of v(x) for some nonempty x?  Single letters suffice."""
    return any(embeds(m.u[a], m.v[a]) for a in m.domain)


def decide_ep_rewr(sys: SemiThueSystem) -> bool:
    """Does some one-step rewrite embed its source in its result?  Contexts cancel."""
    return any(embeds(u, v) for u, v in sys.rules)


__all__ = [
    "Coverability",
    "LTResult",
    "MorphismPair",
    "NONTERMINATING",
    "TERMINATING",
    "decide_ep_2morph",
    "decide_ep_bounded",
    "decide_ep_rec",
    "decide_ep_rewr",
    "decide_ep_unary",
    "decide_lcs_reach",
    "decide_lr",
    "decide_lr_bounded",
    "decide_lt_bld",
    "is_stable",
    "lcs_coverability",
    "lossy_forward_reach",
    "lr_coverability",
]
