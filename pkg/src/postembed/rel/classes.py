"""Length-discrepancy analysis and resynchronization."""
from __future__ import annotations

from collections import deque

from ..ordinals import BudgetExhausted
from .transducer import Transducer, _reach


class UnboundedDiscrepancy(ValueError):
    pass


def _weight(a: str) -> int:
    return 1 if a else -1


def _sccs(t: Transducer) -> list:
    """Strongly connected components (iterative Tarjan)."""
    adj = [[] for _ in range(t.n)]
    for s, _, _, d in t.trans:
        adj[s].append(d)
    index, low, on, stack, comp = {}, {}, set(), [], [-1] * t.n
    counter = 0
    ncomp = 0
    for root in range(t.n):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on.add(v)
            if i < len(adj[v]):
                work.append((v, i + 1))
                w = adj[v][i]
                if w not in index:
                    work.append((w, 0))
                elif w in on:
                    low[v] = min(low[v], index[w])
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    return comp


def offsets(t: Transducer):
    """(state, input-minus-output) pairs on accessible and co-accessible states, or None if unbounded.

    Unbounded exactly when a cycle among those states has nonzero weight;
    otherwise each state carries finitely many offsets.  States keep the
    numbering of ``t``.
    """
    cached = t._cache.get("offsets", False)
    if cached is not False:
        return cached
    useful = _useful(t)
    comp = _sccs(t)
    pot = {}
    for root in sorted(useful):
        if root in pot:
            continue
        pot[root] = 0
        queue = deque([root])
        while queue:
            q = queue.popleft()
            moves = [(d, 1) for ds in t.reads(q).values() for d in ds]
            moves += [(d, -1) for _, d in t.writes(q)]
            for d, w in moves:
                if d in useful and comp[d] == comp[q] and d not in pot:
                    pot[d] = pot[q] + w
                    queue.append(d)
    for s, a, b, d in t.trans:
        if s in useful and d in useful and comp[s] == comp[d] and pot[d] != pot[s] + _weight(a):
            t._cache["offsets"] = None
            return None
    seen = {(q, 0) for q in t.initial if q in useful}
    queue = deque(seen)
    while queue:
        q, o = queue.popleft()
        moves = [(d, o + 1) for ds in t.reads(q).values() for d in ds]
        moves += [(d, o - 1) for _, d in t.writes(q)]
        for x in moves:
            if x[0] in useful and x not in seen:
                seen.add(x)
                queue.append(x)
    t._cache["offsets"] = frozenset(seen)
    return t._cache["offsets"]


def _useful(t: Transducer) -> set:
    fwd = [[] for _ in range(t.n)]
    bwd = [[] for _ in range(t.n)]
    for s, _, _, d in t.trans:
        fwd[s].append(d)
        bwd[d].append(s)
    return _reach(fwd, t.initial) & _reach(bwd, t.final)


def discrepancy_bound(t: Transducer):
    """max |len(u) - len(v)| over the relation, or None when unbounded."""
    offs = offsets(t)
    if offs is None:
        return None
    fin = [abs(o) for q, o in offs if q in t.final]
    return max(fin, default=0)


def bld_check(t: Transducer, b: int) -> bool:
    d = discrepancy_bound(t)
    return d is not None and d <= b


def is_length_preserving(t: Transducer) -> bool:
    return bld_check(t, 0)


def resynchronize(t: Transducer, pad: str | None = None, max_states: int | None = None) -> Transducer:
    """An equivalent transducer in read-then-write lockstep plus a one-sided tail.

    States are (original state, side, pending buffer).  A move of the
    original transducer either grows the buffer or, when the opposite side is
    pending, emits one synchronous (read, write) pair.  After an original
    final state the buffer is flushed by one-sided moves.

    With ``pad`` the result realizes ``t . (e, pad)*``: pending reads are
    first paired with pad symbols, and the remaining pads form the tail.
    Buffers hold actual symbols, so the size can be exponential in the
    discrepancy; ``max_states`` caps it.
    """
    t = t.trim()
    offs = offsets(t)
    if offs is None:
        raise UnboundedDiscrepancy("relation has unbounded length discrepancy")
    index, order, raw = {}, [], []

    def idx(p):
        if p not in index:
            if max_states is not None and len(order) >= max_states:
                raise BudgetExhausted("resynchronization exceeded its state cap", None, len(order))
            index[p] = len(order)
            order.append(p)
        return index[p]

    for q in sorted(t.initial):
        idx(("run", q, "", ""))
    finals = set()
    i = 0
    while i < len(order):
        node = order[i]
        kind = node[0]
        if kind == "run":
            _, q, side, buf = node
            for a, ds in t.reads(q).items():
                for d in ds:
                    if side == "out" and buf:
                        nb = buf[1:]
                        raw.append((i, a, buf[0], idx(("run", d, "out" if nb else "", nb))))
                    else:
                        raw.append((i, "", "", idx(("run", d, "in", buf + a))))
            for b, d in t.writes(q):
                if side == "in" and buf:
                    nb = buf[1:]
                    raw.append((i, buf[0], b, idx(("run", d, "in" if nb else "", nb))))
                else:
                    raw.append((i, "", "", idx(("run", d, "out", buf + b))))
            if q in t.final:
                raw.append((i, "", "", idx(("tail", side, buf))))
        elif kind == "tail":
            _, side, buf = node
            if pad is None:
                if not buf:
                    finals.add(i)
                elif side == "in":
                    raw.append((i, buf[0], "", idx(("tail", side, buf[1:]))))
                else:
                    raw.append((i, "", buf[0], idx(("tail", side, buf[1:]))))
            elif not buf:
                raw.append((i, "", "", idx(("pad",))))
            elif side == "in":
                raw.append((i, buf[0], pad, idx(("tail", side, buf[1:]))))
                raw.append((i, "", "", idx(("flush", buf))))
            else:
                raw.append((i, "", buf[0], idx(("tail", side, buf[1:]))))
        elif kind == "flush":
            buf = node[1]
            if buf:
                raw.append((i, buf[0], "", idx(("flush", buf[1:]))))
            else:
                finals.add(i)
        else:
            finals.add(i)
            raw.append((i, "", pad, i))
        i += 1
    init = [index[("run", q, "", "")] for q in t.initial]
    out_alpha = t.out_alpha | ({pad} if pad else set())
    return Transducer.from_raw(len(order), raw, init, finals, t.in_alpha, out_alpha)


def is_synchronous_form(t: Transducer) -> bool:
    """Every accepting run spells (read write)* followed by reads only or writes only."""
    # pattern states: 0 = between pairs, 1 = after a read, 2 = read tail,
    # 3 = write tail, 4 = violation
    table = {
        (0, "R"): 1, (0, "W"): 3,
        (1, "W"): 0, (1, "R"): 2,
        (2, "R"): 2, (2, "W"): 4,
        (3, "W"): 3, (3, "R"): 4,
    }
    co = set(t.final)
    bwd = [[] for _ in range(t.n)]
    for s, _, _, d in t.trans:
        bwd[d].append(s)
    todo = list(co)
    while todo:
        q = todo.pop()
        for s in bwd[q]:
            if s not in co:
                co.add(s)
                todo.append(s)
    seen = {(q, 0) for q in t.initial}
    todo = list(seen)
    while todo:
        q, p = todo.pop()
        for s, a, b, d in t.trans:
            if s != q:
                continue
            np = table[(p, "R" if a else "W")]
            if np == 4:
                if d in co:
                    return False
                continue
            x = (d, np)
            if x not in seen:
                seen.add(x)
                todo.append(x)
    return True
