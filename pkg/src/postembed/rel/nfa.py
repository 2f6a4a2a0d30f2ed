"""Small nondeterministic automata over one-character symbols.

Epsilon moves use the empty string as label.  Automata are immutable once
built; every operation returns a fresh one.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..codes import lex


class RegexError(ValueError):
    pass


@dataclass(frozen=True)
class Nfa:
    n: int
    delta: tuple  # tuple of (src, label, dst)
    initial: frozenset
    final: frozenset
    alphabet: frozenset = field(default=frozenset())

    # --- cached adjacency -----------------------------------------------

    def _adj(self):
        cached = self.__dict__.get("_adj_cache")
        if cached is None:
            adj = [dict() for _ in range(self.n)]
            for s, a, d in self.delta:
                adj[s].setdefault(a, []).append(d)
            cached = tuple({a: tuple(ds) for a, ds in m.items()} for m in adj)
            object.__setattr__(self, "_adj_cache", cached)
        return cached

    def eclose(self, states) -> frozenset:
        adj = self._adj()
        seen = set(states)
        todo = list(seen)
        while todo:
            s = todo.pop()
            for d in adj[s].get("", ()):
                if d not in seen:
                    seen.add(d)
                    todo.append(d)
        return frozenset(seen)

    def step(self, states, a: str) -> frozenset:
        adj = self._adj()
        nxt = set()
        for s in states:
            nxt.update(adj[s].get(a, ()))
        return self.eclose(nxt)

    def start(self) -> frozenset:
        return self.eclose(self.initial)

    def accepts(self, w: str) -> bool:
        cur = self.start()
        for a in w:
            cur = self.step(cur, a)
            if not cur:
                return False
        return bool(cur & self.final)

    def symbols(self) -> frozenset:
        return frozenset(a for _, a, _ in self.delta if a) | self.alphabet

    # --- structure -------------------------------------------------------

    def trim(self) -> "Nfa":
        fwd = _reach(self.n, [(s, d) for s, _, d in self.delta], self.initial)
        bwd = _reach(self.n, [(d, s) for s, _, d in self.delta], self.final)
        keep = sorted(fwd & bwd)
        return self._restrict(keep)

    def _restrict(self, keep) -> "Nfa":
        idx = {s: i for i, s in enumerate(keep)}
        delta = tuple(
            (idx[s], a, idx[d]) for s, a, d in self.delta if s in idx and d in idx
        )
        return Nfa(
            len(keep),
            delta,
            frozenset(idx[s] for s in self.initial if s in idx),
            frozenset(idx[s] for s in self.final if s in idx),
            self.alphabet,
        )

    def is_empty(self) -> bool:
        fwd = _reach(self.n, [(s, d) for s, _, d in self.delta], self.initial)
        return not (fwd & self.final)

    def determinize(self) -> "Nfa":
        """Subset construction; the result is deterministic and epsilon-free."""
        start = self.start()
        index = {start: 0}
        order = [start]
        delta = []
        syms = sorted(self.symbols())
        i = 0
        while i < len(order):
            cur = order[i]
            for a in syms:
                nxt = self.step(cur, a)
                if not nxt:
                    continue
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                delta.append((i, a, index[nxt]))
            i += 1
        final = frozenset(j for j, s in enumerate(order) if s & self.final)
        return Nfa(len(order), tuple(delta), frozenset([0]), final, self.alphabet).trim()

    def minimize(self) -> "Nfa":
        """Minimal trim DFA (Moore partition refinement on the determinized automaton)."""
        d = self.determinize()
        if d.n == 0:
            return d
        syms = sorted(d.symbols())
        adj = d._adj()
        block = [1 if s in d.final else 0 for s in range(d.n)]
        while True:
            sig = {}
            new = []
            for s in range(d.n):
                key = (block[s],) + tuple(
                    block[adj[s][a][0]] if a in adj[s] else -1 for a in syms
                )
                new.append(sig.setdefault(key, len(sig)))
            if len(sig) == len(set(block)):
                break
            block = new
        # renumber blocks in BFS order from the start
        start = block[next(iter(d.initial))]
        order = {start: 0}
        queue = deque([start])
        rep = {}
        for s in range(d.n):
            rep.setdefault(block[s], s)
        delta = []
        while queue:
            b = queue.popleft()
            s = rep[b]
            for a in syms:
                if a in adj[s]:
                    tb = block[adj[s][a][0]]
                    if tb not in order:
                        order[tb] = len(order)
                        queue.append(tb)
                    delta.append((order[b], a, order[tb]))
        final = frozenset(order[block[s]] for s in d.final if block[s] in order)
        return Nfa(len(order), tuple(delta), frozenset([0]), final, d.alphabet)

    # --- enumeration -----------------------------------------------------

    def words(self, max_len: int) -> list:
        """All accepted words of length at most ``max_len``, shortlex ordered."""
        t = self.trim()
        out = []
        frontier = {"": t.start()}
        syms = sorted(t.symbols())
        for length in range(max_len + 1):
            for w in sorted(frontier):
                if frontier[w] & t.final:
                    out.append(w)
            if length == max_len:
                break
            nxt = {}
            for w, cur in frontier.items():
                for a in syms:
                    s = t.step(cur, a)
                    if s:
                        nxt[w + a] = s
            frontier = nxt
            if not frontier:
                break
        return out

    def shortest_word(self):
        """A shortlex-least accepted word, or None."""
        cur = self.start()
        seen = {cur}
        queue = deque([(cur, "")])
        syms = sorted(self.symbols())
        while queue:
            s, w = queue.popleft()
            if s & self.final:
                return w
            for a in syms:
                nxt = self.step(s, a)
                if nxt and nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, w + a))
        return None


def _reach(n, edges, sources) -> set:
    adj = [[] for _ in range(n)]
    for s, d in edges:
        adj[s].append(d)
    seen = set(sources)
    todo = list(seen)
    while todo:
        s = todo.pop()
        for d in adj[s]:
            if d not in seen:
                seen.add(d)
                todo.append(d)
    return seen


# ------------------------------------------------------------ constructors


def empty_lang(alphabet="") -> Nfa:
    return Nfa(1, (), frozenset([0]), frozenset(), frozenset(alphabet))


def word_nfa(w: str, alphabet="") -> Nfa:
    delta = tuple((i, a, i + 1) for i, a in enumerate(w))
    return Nfa(len(w) + 1, delta, frozenset([0]), frozenset([len(w)]), frozenset(alphabet) | set(w))


def sigma_star(alphabet) -> Nfa:
    return Nfa(1, tuple((0, a, 0) for a in sorted(alphabet)), frozenset([0]), frozenset([0]), frozenset(alphabet))


def up_to_length(alphabet, n: int) -> Nfa:
    """Every word of length at most ``n``."""
    delta = tuple((i, a, i + 1) for i in range(n) for a in sorted(alphabet))
    return Nfa(n + 1, delta, frozenset([0]), frozenset(range(n + 1)), frozenset(alphabet))


def symbol_set_nfa(symbols) -> Nfa:
    return Nfa(2, tuple((0, a, 1) for a in sorted(symbols)), frozenset([0]), frozenset([1]), frozenset(symbols))


def _shift(a: Nfa, k: int):
    return tuple((s + k, x, d + k) for s, x, d in a.delta)


def union(*parts: Nfa) -> Nfa:
    n, delta, init, fin, alpha = 0, [], set(), set(), set()
    for p in parts:
        delta.extend(_shift(p, n))
        init.update(s + n for s in p.initial)
        fin.update(s + n for s in p.final)
        alpha |= p.alphabet
        n += p.n
    if n == 0:
        return empty_lang()
    return Nfa(n, tuple(delta), frozenset(init), frozenset(fin), frozenset(alpha))


def concat(*parts: Nfa) -> Nfa:
    if not parts:
        return word_nfa("")
    res = parts[0]
    for p in parts[1:]:
        k = res.n
        delta = list(res.delta) + list(_shift(p, k))
        delta += [(f, "", i + k) for f in res.final for i in p.initial]
        res = Nfa(
            res.n + p.n,
            tuple(delta),
            res.initial,
            frozenset(f + k for f in p.final),
            res.alphabet | p.alphabet,
        )
    return res


def star(a: Nfa) -> Nfa:
    k = a.n
    delta = list(a.delta)
    delta += [(k, "", i) for i in a.initial]
    delta += [(f, "", k) for f in a.final]
    return Nfa(k + 1, tuple(delta), frozenset([k]), frozenset([k]), a.alphabet)


def plus(a: Nfa) -> Nfa:
    return concat(a, star(a))


def optional(a: Nfa) -> Nfa:
    return union(a, word_nfa(""))


def intersect(a: Nfa, b: Nfa) -> Nfa:
    """Product automaton; epsilon moves interleave."""
    index = {}
    delta = []
    order = []
    adj_a, adj_b = a._adj(), b._adj()

    def idx(p):
        if p not in index:
            index[p] = len(order)
            order.append(p)
        return index[p]

    for s in a.initial:
        for t in b.initial:
            idx((s, t))
    i = 0
    while i < len(order):
        s, t = order[i]
        for d in adj_a[s].get("", ()):
            delta.append((i, "", idx((d, t))))
        for d in adj_b[t].get("", ()):
            delta.append((i, "", idx((s, d))))
        for x, ds in adj_a[s].items():
            if not x:
                continue
            for d in ds:
                for e in adj_b[t].get(x, ()):
                    delta.append((i, x, idx((d, e))))
        i += 1
    init = frozenset(index[(s, t)] for s in a.initial for t in b.initial)
    fin = frozenset(j for j, (s, t) in enumerate(order) if s in a.final and t in b.final)
    return Nfa(len(order), tuple(delta), init, fin, a.alphabet | b.alphabet)


def downward_closure(a: Nfa) -> Nfa:
    extra = tuple((s, "", d) for s, x, d in a.delta if x)
    return Nfa(a.n, a.delta + extra, a.initial, a.final, a.alphabet)


def upward_closure(a: Nfa, alphabet) -> Nfa:
    loops = tuple((s, x, s) for s in range(a.n) for x in sorted(alphabet))
    return Nfa(a.n, a.delta + loops, a.initial, a.final, a.alphabet | frozenset(alphabet))


def subwords_nfa(w: str) -> Nfa:
    """Accepts exactly the subwords of ``w``."""
    return downward_closure(word_nfa(w))


def superwords_nfa(w: str, alphabet) -> Nfa:
    return upward_closure(word_nfa(w), alphabet)


def embeds_lang(a: Nfa, b: Nfa) -> bool:
    """Is some word of ``a`` a subword of some word of ``b``?"""
    return not intersect(a, downward_closure(b)).is_empty()


# ------------------------------------------------------------ regular expressions

_SPECIAL = set("|*+?().[]\\")


def _regex_tokens(text: str) -> list:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "\\":
            if i + 1 >= len(text):
                raise RegexError("dangling escape")
            toks.append(("sym", text[i + 1]))
            i += 2
        elif ch == "[":
            j = text.find("]", i)
            if j < 0:
                raise RegexError("unclosed [")
            toks.append(("set", lex(text[i + 1:j])))
            i = j + 1
        elif ch in _SPECIAL:
            toks.append((ch, ch))
            i += 1
        elif ch == "a" and i + 1 < len(text) and text[i + 1].isdigit():
            toks.append(("sym", text[i + 1]))
            i += 2
        elif ch == "ε":
            toks.append(("eps", ""))
            i += 1
        else:
            toks.append(("sym", ch))
            i += 1
    return toks


def regex(text: str, alphabet="") -> Nfa:
    """Parse a regular expression.

    Symbols follow the word lexing (``a3`` is one symbol); ``.`` is any symbol
    of ``alphabet``; ``[..]`` is a symbol class; ``\\x`` escapes; ``()`` and
    ``ε`` denote the empty word.
    """
    toks = _regex_tokens(text)
    pos = 0
    alphabet = frozenset(alphabet)

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def alt():
        nonlocal pos
        parts = [seq()]
        while peek() == "|":
            pos += 1
            parts.append(seq())
        return parts[0] if len(parts) == 1 else union(*parts)

    def seq():
        parts = []
        while peek() not in (None, "|", ")"):
            parts.append(post())
        return concat(*parts) if parts else word_nfa("")

    def post():
        nonlocal pos
        a = atom()
        while peek() in ("*", "+", "?"):
            op = toks[pos][0]
            pos += 1
            a = star(a) if op == "*" else plus(a) if op == "+" else optional(a)
        return a

    def atom():
        nonlocal pos
        kind, val = toks[pos] if pos < len(toks) else (None, None)
        if kind == "sym":
            pos += 1
            return word_nfa(val)
        if kind == "eps":
            pos += 1
            return word_nfa("")
        if kind == "set":
            pos += 1
            return symbol_set_nfa(val)
        if kind == ".":
            pos += 1
            if not alphabet:
                raise RegexError("'.' needs an alphabet")
            return symbol_set_nfa(alphabet)
        if kind == "(":
            pos += 1
            a = alt()
            if peek() != ")":
                raise RegexError("unbalanced parenthesis")
            pos += 1
            return a
        raise RegexError(f"unexpected token {val!r} in {text!r}")

    res = alt()
    if pos != len(toks):
        raise RegexError(f"trailing input in {text!r}")
    return Nfa(res.n, res.delta, res.initial, res.final, res.alphabet | alphabet)
