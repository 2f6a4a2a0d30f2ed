"""Parikh images of transducers over one-letter alphabets."""
from __future__ import annotations

from dataclasses import dataclass

from .transducer import Transducer


class NotUnary(ValueError):
    pass


@dataclass(frozen=True)
class LinearSet:
    """{base + sum of multiples of periods}, as (input length, output length) pairs."""

    base: tuple
    periods: frozenset

    def contains(self, x: int, y: int, limit: int = 64) -> bool:
        todo = [(x - self.base[0], y - self.base[1])]
        seen = set()
        while todo:
            p = todo.pop()
            if p == (0, 0):
                return True
            if p in seen or p[0] < 0 or p[1] < 0 or len(seen) > limit * limit:
                continue
            seen.add(p)
            todo.extend((p[0] - a, p[1] - b) for a, b in self.periods if (a, b) != (0, 0))
        return False


def _check_unary(t: Transducer):
    if len(t.in_alpha) > 1 or len(t.out_alpha) > 1:
        raise NotUnary("both alphabets must have at most one symbol")


def _moves(t: Transducer, q: int):
    for ds in t.reads(q).values():
        for d in ds:
            yield d, (1, 0)
    for _, d in t.writes(q):
        yield d, (0, 1)


def simple_runs(t: Transducer) -> list:
    """(states visited, length pair) for every accepting run repeating no state."""
    out = []
    for q0 in t.initial:
        stack = [(q0, (q0,), (0, 0))]
        while stack:
            q, path, w = stack.pop()
            if q in t.final:
                out.append((path, w))
            for d, (a, b) in _moves(t, q):
                if d not in path:
                    stack.append((d, path + (d,), (w[0] + a, w[1] + b)))
    return out


def simple_loops(t: Transducer) -> list:
    """(states, length pair) of every simple cycle, each listed once from its least state."""
    out = []
    for q0 in range(t.n):
        stack = [(q0, (q0,), (0, 0))]
        while stack:
            q, path, w = stack.pop()
            for d, (a, b) in _moves(t, q):
                nw = (w[0] + a, w[1] + b)
                if d == q0:
                    out.append((path, nw))
                elif d > q0 and d not in path:
                    stack.append((d, path + (d,), nw))
    return out


def parikh_linear_sets(t: Transducer) -> set:
    """Linear sets whose union is contained in the Parikh image.

    One set per simple accepting run, with the simple loops touching it as
    periods, and one per simple loop, carried by a shortest accepting run
    through it.  Every simple loop of the trimmed transducer appears as a
    period somewhere.
    """
    _check_unary(t)
    t = t.trim()
    runs = simple_runs(t)
    loops = simple_loops(t)
    res = set()
    for path, w in runs:
        ps = frozenset(lw for lp, lw in loops if set(lp) & set(path))
        res.add(LinearSet(w, ps))
    for lp, lw in loops:
        carrier = _carrier(t, lp[0])
        if carrier is not None:
            res.add(LinearSet(carrier, frozenset([lw])))
    return res


def _carrier(t: Transducer, q: int):
    """Length pair of a shortest accepting run through ``q``."""
    from collections import deque

    def bfs(sources, targets, reverse=False):
        best = {s: (0, 0) for s in sources}
        queue = deque(sources)
        adj = [[] for _ in range(t.n)]
        for s in range(t.n):
            for d, w in _moves(t, s):
                if reverse:
                    adj[d].append((s, w))
                else:
                    adj[s].append((d, w))
        while queue:
            x = queue.popleft()
            for y, w in adj[x]:
                if y not in best:
                    best[y] = (best[x][0] + w[0], best[x][1] + w[1])
                    queue.append(y)
        cands = [best[x] for x in targets if x in best]
        return min(cands, key=sum) if cands else None

    a = bfs(list(t.initial), [q])
    b = bfs([q], list(t.final))
    if a is None or b is None:
        return None
    return (a[0] + b[0], a[1] + b[1])
