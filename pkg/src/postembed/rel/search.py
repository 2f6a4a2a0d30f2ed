"""Membership, images, lossy steps and minimal covering predecessors."""
from __future__ import annotations

from collections import deque

from ..embedding import embeds
from . import nfa as _nfa
from .nfa import Nfa
from .transducer import Transducer


def relate_pair(t: Transducer, u: str, v: str) -> bool:
    start = [(q, 0, 0) for q in t.initial]
    seen = set(start)
    queue = deque(start)
    lu, lv = len(u), len(v)
    while queue:
        q, i, j = queue.popleft()
        if i == lu and j == lv and q in t.final:
            return True
        nxt = []
        if i < lu:
            nxt.extend((d, i + 1, j) for d in t.reads(q).get(u[i], ()))
        if j < lv:
            nxt.extend((d, i, j + 1) for b, d in t.writes(q) if b == v[j])
        for c in nxt:
            if c not in seen:
                seen.add(c)
                queue.append(c)
    return False


# ------------------------------------------------------------ images


def _write_closure_back(t: Transducer, states) -> frozenset:
    seen = set(states)
    todo = list(seen)
    rw = t._rev_writes
    while todo:
        q = todo.pop()
        for _, s in rw[q]:
            if s not in seen:
                seen.add(s)
                todo.append(s)
    return frozenset(seen)


def _alive_table(t: Transducer, u: str) -> list:
    """alive[i]: states from which u[i:] can be read to acceptance."""
    cache = t._cache.setdefault("alive_step", {})
    end = t._cache.get("alive_end")
    if end is None:
        end = _write_closure_back(t, t.final)
        t._cache["alive_end"] = end
    rr = t._rev_reads
    alive = [None] * (len(u) + 1)
    cur = end
    alive[len(u)] = cur
    for i in range(len(u) - 1, -1, -1):
        key = (cur, u[i])
        nxt = cache.get(key)
        if nxt is None:
            pre = set()
            a = u[i]
            for d in cur:
                pre.update(rr[d].get(a, ()))
            nxt = _write_closure_back(t, pre)
            if len(cache) < 200000:
                cache[key] = nxt
        alive[i] = cur = nxt
    return alive


def image(t: Transducer, u: str, maxlen: int | None = None) -> set:
    """All v with (u, v) in the relation and |v| <= maxlen.

    Depth-first over accepting runs only (dead branches are pruned with a
    backward liveness table), so the cost is linear in |u| times the number
    of accepting runs.  Without ``maxlen`` the relation must have bounded
    length discrepancy.
    """
    if maxlen is None:
        from .classes import discrepancy_bound

        b = discrepancy_bound(t)
        if b is None:
            raise ValueError("unbounded discrepancy: give maxlen")
        maxlen = len(u) + b
    alive = _alive_table(t, u)
    n = len(u)
    results = set()
    out = []
    reads, writes, final = t._reads, t._writes, t.final
    # pending branch points: (state, position, output length, symbol to write)
    stack = [(q0, 0, 0, "") for q0 in sorted(t.initial, reverse=True) if q0 in alive[0]]
    while stack:
        q, i, ol, b = stack.pop()
        del out[ol:]
        if b:
            out.append(b)
            ol += 1
        # follow the run while it is deterministic
        while True:
            if i == n and q in final:
                results.add("".join(out))
            moves = []
            if ol < maxlen:
                al = alive[i]
                for c, d in writes[q]:
                    if d in al:
                        moves.append((d, i, c))
            if i < n:
                al = alive[i + 1]
                for d in reads[q].get(u[i], ()):
                    if d in al:
                        moves.append((d, i + 1, ""))
            if not moves:
                break
            for d, j, c in reversed(moves[1:]):
                stack.append((d, j, ol, c))
            q, i, c = moves[0]
            if c:
                out.append(c)
                ol += 1
    return results


def image_bounded(t: Transducer, u: str, maxlen: int) -> set:
    return image(t, u, maxlen)


def has_image(t: Transducer, u: str) -> bool:
    alive = _alive_table(t, u)
    return bool(alive[0] & t.initial)


def post_nfa(t: Transducer, lang: Nfa) -> Nfa:
    """Automaton for the image of a regular language."""
    index, order, delta = {}, [], []
    adj = lang._adj()

    def idx(p):
        if p not in index:
            index[p] = len(order)
            order.append(p)
        return index[p]

    for q in sorted(t.initial):
        for s in sorted(lang.initial):
            idx((q, s))
    i = 0
    while i < len(order):
        q, s = order[i]
        for d in adj[s].get("", ()):
            delta.append((i, "", idx((q, d))))
        for a, qs in t.reads(q).items():
            for e in adj[s].get(a, ()):
                for r in qs:
                    delta.append((i, "", idx((r, e))))
        for b, r in t.writes(q):
            delta.append((i, b, idx((r, s))))
        i += 1
    init = frozenset(index[(q, s)] for q in t.initial for s in lang.initial)
    fin = frozenset(j for j, (q, s) in enumerate(order) if q in t.final and s in lang.final)
    return Nfa(len(order), tuple(delta), init, fin, t.out_alpha).trim()


def pre_nfa(t: Transducer, lang: Nfa) -> Nfa:
    return post_nfa(t.inverse(), lang)


def lossy_step_bounded(t: Transducer, u: str, maxlen: int) -> set:
    """{v : |v| <= maxlen, u1 <= u, v <= v1, (u1, v1) in the relation}."""
    out = post_nfa(t, _nfa.subwords_nfa(u))
    return set(_nfa.downward_closure(out).words(maxlen))


def lossy_images_max(t: Transducer, u: str) -> set:
    """The subword-maximal elements of R(subwords of u); needs bounded discrepancy."""
    from .classes import discrepancy_bound
    from ..embedding import maximal

    b = discrepancy_bound(t)
    if b is None:
        raise ValueError("unbounded discrepancy")
    out = post_nfa(t, _nfa.subwords_nfa(u))
    return maximal(out.words(len(u) + b))


# ------------------------------------------------------------ predecessors


def min_covering_predecessors(t: Transducer, v: str, bound: int | None = None) -> set:
    """The subword-minimal u whose image meets the upward closure of v.

    Breadth-first over input prefixes, each tracked by the set of product
    states (transducer state, matched prefix of v).  A prefix is dropped if
    it already contains a found word or if a shorter prefix with the same
    state set embeds in it.  Minimal words are no longer than
    ``|Q| * (|v| + 1)``.
    """
    lv = len(v)
    if bound is None:
        bound = t.n * (lv + 1)
    # product states are encoded as q * (lv + 1) + j
    width = lv + 1
    coacc = _coaccessible_product(t, v)
    if not any(q * width in coacc for q in t.initial):
        return set()
    closure_cache: dict = {}
    writes = t._writes

    def closure(states):
        seen = set(states)
        todo = list(seen)
        while todo:
            x = todo.pop()
            q, j = divmod(x, width)
            for b, d in writes[q]:
                nj = j + 1 if j < lv and v[j] == b else j
                y = d * width + nj
                if y in coacc and y not in seen:
                    seen.add(y)
                    todo.append(y)
        return frozenset(seen)

    reads = t._reads
    accepting = frozenset(q * width + lv for q in t.final)
    step_cache: dict = {}

    def step(states, a):
        key = (states, a)
        res = step_cache.get(key)
        if res is None:
            nxt = set()
            for x in states:
                q, j = divmod(x, width)
                for d in reads[q].get(a, ()):
                    y = d * width + j
                    if y in coacc:
                        nxt.add(y)
            res = closure_cache.get(frozenset(nxt))
            if res is None:
                res = closure(nxt)
                closure_cache[frozenset(nxt)] = res
            step_cache[key] = res
        return res

    start = closure(q * width for q in t.initial if q * width in coacc)
    found = []
    kept: dict = {}
    frontier = [("", start)]
    syms = sorted(t.in_alpha)
    for length in range(bound + 1):
        nxt_frontier = []
        for p, S in frontier:
            if any(embeds(m, p) for m in found):
                continue
            if S & accepting:
                found.append(p)
                continue
            bucket = kept.setdefault(S, [])
            if any(embeds(o, p) for o in bucket):
                continue
            bucket.append(p)
            if length == bound:
                continue
            for a in syms:
                T = step(S, a)
                if T:
                    nxt_frontier.append((p + a, T))
        frontier = nxt_frontier
        if not frontier:
            break
    return set(found)


def _coaccessible_product(t: Transducer, v: str) -> frozenset:
    lv = len(v)
    width = lv + 1
    rr, rw = t._rev_reads, t._rev_writes
    start = [q * width + lv for q in t.final]
    seen = set(start)
    todo = list(start)
    while todo:
        x = todo.pop()
        q, j = divmod(x, width)
        preds = []
        for srcs in rr[q].values():
            preds.extend(s * width + j for s in srcs)
        for b, s in rw[q]:
            # greedy matching: from j' the write b leads to j
            if j > 0 and v[j - 1] == b:
                preds.append(s * width + j - 1)
            if j == lv or v[j] != b:
                preds.append(s * width + j)
        for y in preds:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)
