"""Normalized finite transducers.

Every transition either reads one symbol or writes one symbol.  Transitions
are ``(src, read, write, dst)`` with exactly one of ``read``/``write`` empty.
Construction goes through ``from_raw``, which accepts arbitrary word labels
and epsilon moves, splits labels, removes epsilon moves and trims.
"""
from __future__ import annotations

from collections import deque

from .nfa import Nfa


class AlphabetMismatch(ValueError):
    pass


class Transducer:
    __slots__ = (
        "n", "trans", "initial", "final", "in_alpha", "out_alpha", "names",
        "_reads", "_writes", "_rev_reads", "_rev_writes", "_cache",
    )

    def __init__(self, n, trans, initial, final, in_alpha=(), out_alpha=(), names=None):
        self.n = n
        self.trans = tuple(trans)
        self.initial = frozenset(initial)
        self.final = frozenset(final)
        ia, oa = set(in_alpha), set(out_alpha)
        for s, a, b, d in self.trans:
            if (a == "") == (b == "") or len(a) > 1 or len(b) > 1:
                raise ValueError(f"transition {(s, a, b, d)} is not normalized")
            if not (0 <= s < n and 0 <= d < n):
                raise ValueError("state out of range")
            if a:
                ia.add(a)
            else:
                oa.add(b)
        self.in_alpha = frozenset(ia)
        self.out_alpha = frozenset(oa)
        self.names = names
        reads = [dict() for _ in range(n)]
        writes = [[] for _ in range(n)]
        rev_reads = [dict() for _ in range(n)]
        rev_writes = [[] for _ in range(n)]
        for s, a, b, d in self.trans:
            if a:
                reads[s].setdefault(a, []).append(d)
                rev_reads[d].setdefault(a, []).append(s)
            else:
                writes[s].append((b, d))
                rev_writes[d].append((b, s))
        self._reads = tuple({a: tuple(v) for a, v in m.items()} for m in reads)
        self._writes = tuple(tuple(v) for v in writes)
        self._rev_reads = tuple({a: tuple(v) for a, v in m.items()} for m in rev_reads)
        self._rev_writes = tuple(tuple(v) for v in rev_writes)
        self._cache = {}

    def __repr__(self):
        return f"<Transducer {self.n} states, {len(self.trans)} transitions>"

    @property
    def alphabet(self) -> frozenset:
        return self.in_alpha | self.out_alpha

    def state_name(self, q: int) -> str:
        return self.names[q] if self.names else f"q{q}"

    # ------------------------------------------------------------ building

    @staticmethod
    def from_raw(n, raw, initial, final, in_alpha=(), out_alpha=()) -> "Transducer":
        """Normalize transitions labelled by arbitrary word pairs.

        ``raw`` holds ``(src, u, v, dst)``: read the word ``u`` then write ``v``.
        """
        trans = []
        eps = []
        for s, u, v, d in raw:
            labels = [(a, "") for a in u] + [("", b) for b in v]
            if not labels:
                eps.append((s, d))
                continue
            cur = s
            for i, (a, b) in enumerate(labels):
                if i == len(labels) - 1:
                    nxt = d
                else:
                    nxt = n
                    n += 1
                trans.append((cur, a, b, nxt))
                cur = nxt
        if eps:
            trans, final = _remove_eps(n, trans, eps, final)
        return Transducer(n, trans, initial, final, in_alpha, out_alpha).trim()

    def trim(self) -> "Transducer":
        """Keep accessible and co-accessible states, renumbered in BFS order."""
        fwd = [[] for _ in range(self.n)]
        bwd = [[] for _ in range(self.n)]
        for s, _, _, d in self.trans:
            fwd[s].append(d)
            bwd[d].append(s)
        co = _reach(bwd, self.final)
        order = []
        seen = set()
        queue = deque(sorted(q for q in self.initial if q in co))
        seen.update(queue)
        while queue:
            q = queue.popleft()
            order.append(q)
            for d in fwd[q]:
                if d in co and d not in seen:
                    seen.add(d)
                    queue.append(d)
        idx = {q: i for i, q in enumerate(order)}
        trans = sorted(
            {(idx[s], a, b, idx[d]) for s, a, b, d in self.trans if s in idx and d in idx}
        )
        names = [self.names[q] for q in order] if self.names else None
        return Transducer(
            len(order),
            trans,
            [idx[q] for q in self.initial if q in idx],
            [idx[q] for q in self.final if q in idx],
            self.in_alpha,
            self.out_alpha,
            names,
        )

    # ------------------------------------------------------------ algebra

    def inverse(self) -> "Transducer":
        return Transducer(
            self.n,
            [(s, b, a, d) for s, a, b, d in self.trans],
            self.initial,
            self.final,
            self.out_alpha,
            self.in_alpha,
            self.names,
        )

    def shifted(self, k: int) -> tuple:
        return tuple((s + k, a, b, d + k) for s, a, b, d in self.trans)

    # ------------------------------------------------------------ adjacency

    def reads(self, q: int) -> dict:
        return self._reads[q]

    def writes(self, q: int) -> tuple:
        return self._writes[q]

    def input_nfa(self) -> Nfa:
        """Projection on the input component (the domain)."""
        return Nfa(
            self.n,
            tuple((s, a, d) for s, a, b, d in self.trans),
            self.initial,
            self.final,
            self.in_alpha,
        )

    def output_nfa(self) -> Nfa:
        return self.inverse().input_nfa()

    def underlying_nfa(self) -> Nfa:
        """Automaton over tagged letters: ('<a') for reads, ('>b') for writes."""
        return Nfa(
            self.n,
            tuple((s, a or b, d) for s, a, b, d in self.trans),
            self.initial,
            self.final,
        )


def _reach(adj, sources) -> set:
    seen = set(sources)
    todo = list(seen)
    while todo:
        s = todo.pop()
        for d in adj[s]:
            if d not in seen:
                seen.add(d)
                todo.append(d)
    return seen


def _remove_eps(n, trans, eps, final):
    eadj = [[] for _ in range(n)]
    for s, d in eps:
        eadj[s].append(d)
    out_by = [[] for _ in range(n)]
    for t in trans:
        out_by[t[0]].append(t)
    final = set(final)
    new = set()
    new_final = set(final)
    for q in range(n):
        clos = _reach(eadj, [q])
        if clos & final:
            new_final.add(q)
        for p in clos:
            for _, a, b, d in out_by[p]:
                new.add((q, a, b, d))
    return sorted(new), new_final


# ------------------------------------------------------------ combinators


def t_union(*ts: Transducer) -> Transducer:
    n, trans, init, fin = 0, [], [], []
    ia, oa = set(), set()
    for t in ts:
        trans.extend(t.shifted(n))
        init.extend(q + n for q in t.initial)
        fin.extend(q + n for q in t.final)
        ia |= t.in_alpha
        oa |= t.out_alpha
        n += t.n
    return Transducer(n, trans, init, fin, ia, oa).trim()


def t_concat(*ts: Transducer) -> Transducer:
    if not ts:
        return t_pair("", "")
    n, raw = 0, []
    init = fin = None
    ia, oa = set(), set()
    for t in ts:
        raw.extend(t.shifted(n))
        if init is None:
            init = [q + n for q in t.initial]
        else:
            raw.extend((f, "", "", q + n) for f in fin for q in t.initial)
        fin = [q + n for q in t.final]
        ia |= t.in_alpha
        oa |= t.out_alpha
        n += t.n
    return Transducer.from_raw(n, raw, init, fin, ia, oa)


def t_star(t: Transducer) -> Transducer:
    k = t.n
    raw = list(t.shifted(0))
    raw += [(k, "", "", q) for q in t.initial]
    raw += [(f, "", "", k) for f in t.final]
    return Transducer.from_raw(k + 1, raw, [k], [k], t.in_alpha, t.out_alpha)


def t_plus(t: Transducer) -> Transducer:
    return t_concat(t, t_star(t))


def t_pair(u: str, v: str) -> Transducer:
    return Transducer.from_raw(2, [(0, u, v, 1)], [0], [1])


def t_empty() -> Transducer:
    return Transducer(0, [], [], [])


def t_identity(lang: Nfa) -> Transducer:
    """Id over the language of ``lang``."""
    raw = []
    n = lang.n
    for s, a, d in lang.delta:
        raw.append((s, a, a, d))
    return Transducer.from_raw(n, raw, lang.initial, lang.final, lang.alphabet, lang.alphabet)


def t_embedding(alphabet) -> Transducer:
    """The subword order: ``(u, v)`` with ``u`` a subword of ``v``."""
    alphabet = sorted(alphabet)
    trans = []
    n = 1 + len(alphabet)
    for i, a in enumerate(alphabet):
        trans.append((0, "", a, 0))
        trans.append((0, a, "", i + 1))
        trans.append((i + 1, "", a, 0))
    return Transducer(n, trans, [0], [0], alphabet, alphabet).trim()


def t_compose(t1: Transducer, t2: Transducer) -> Transducer:
    """Pairs (u, w) with (u, v) in t1 and (v, w) in t2."""
    index = {}
    order = []
    raw = []

    def idx(p):
        if p not in index:
            index[p] = len(order)
            order.append(p)
        return index[p]

    for p in sorted(t1.initial):
        for q in sorted(t2.initial):
            idx((p, q))
    i = 0
    while i < len(order):
        p, q = order[i]
        for a, ds in t1.reads(p).items():
            for d in ds:
                raw.append((i, a, "", idx((d, q))))
        for b, e in t2.writes(q):
            raw.append((i, "", b, idx((p, e))))
        for b, d in t1.writes(p):
            for e in t2.reads(q).get(b, ()):
                raw.append((i, "", "", idx((d, e))))
        i += 1
    init = [index[(p, q)] for p in t1.initial for q in t2.initial]
    fin = [j for j, (p, q) in enumerate(order) if p in t1.final and q in t2.final]
    return Transducer.from_raw(len(order), raw, init, fin, t1.in_alpha, t2.out_alpha)


def restrict_input(t: Transducer, lang: Nfa) -> Transducer:
    """Keep the pairs whose input is in ``lang``."""
    return t_compose(t_identity(lang), t)


def restrict_output(t: Transducer, lang: Nfa) -> Transducer:
    return t_compose(t, t_identity(lang))
