"""Semi-Thue systems and lossy channel systems."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .embedding import subwords
from .ordinals import BudgetExhausted


@dataclass(frozen=True)
class SemiThueSystem:
    alphabet: str
    rules: tuple  # of (u, v)

    def __post_init__(self):
        for u, v in self.rules:
            if set(u + v) - set(self.alphabet):
                raise ValueError(f"rule {(u, v)} leaves the alphabet")

    @staticmethod
    def of(rules, alphabet=None) -> "SemiThueSystem":
        rules = tuple(sorted(set(rules)))
        if alphabet is None:
            alphabet = "".join(sorted({c for u, v in rules for c in u + v}))
        return SemiThueSystem(alphabet, rules)


def st_step(sys: SemiThueSystem, w: str) -> set:
    out = set()
    for u, v in sys.rules:
        start = 0
        while True:
            i = w.find(u, start)
            if i < 0:
                break
            out.add(w[:i] + v + w[i + len(u):])
            if i >= len(w):
                break
            start = i + 1
    return out


def st_reach_bounded(sys: SemiThueSystem, y: str, y2: str, maxlen: int, budget: int = 10**6) -> bool:
    """Breadth-first search for y ->* y2 through words of length <= maxlen."""
    if y == y2:
        return True
    seen = {y}
    queue = deque([y])
    while queue:
        if len(seen) > budget:
            raise BudgetExhausted("semi-Thue search budget exhausted", sorted(queue))
        w = queue.popleft()
        for x in sorted(st_step(sys, w)):
            if x == y2:
                return True
            if len(x) <= maxlen and x not in seen:
                seen.add(x)
                queue.append(x)
    return False


# ------------------------------------------------------------ channel systems


@dataclass(frozen=True)
class LCSystem:
    """States, alphabet and transitions ``(q, instructions, q2)``.

    An instruction is ``("?", a)`` (read ``a`` at the head) or ``("!", a)``
    (write ``a`` at the tail).
    """

    states: tuple
    alphabet: str
    transitions: tuple


def run_instructions(instrs, x: str):
    """Channel content after executing ``instrs`` on ``x`` without loss, or None."""
    for op, a in instrs:
        if op == "?":
            if not x.startswith(a):
                return None
            x = x[len(a):]
        else:
            x = x + a
    return x


def lcs_step(c: LCSystem, q, x: str) -> set:
    out = set()
    for s, instrs, d in c.transitions:
        if s == q:
            y = run_instructions(instrs, x)
            if y is not None:
                out.add((d, y))
    return out


def lcs_lossy_step(c: LCSystem, q, x: str) -> set:
    """Steps with loss before and after the transition (instructions run atomically)."""
    out = set()
    for x0 in subwords(x):
        for d, y in lcs_step(c, q, x0):
            out.update((d, z) for z in subwords(y))
    return out


def lcs_reach_bounded(c: LCSystem, src, dst, maxlen: int, budget: int = 10**6) -> bool:
    """Forward lossy search, keeping channel contents of length <= maxlen."""
    if src == dst:
        return True
    seen = {src}
    queue = deque([src])
    while queue:
        if len(seen) > budget:
            raise BudgetExhausted("channel search budget exhausted", sorted(queue))
        q, x = queue.popleft()
        for nxt in sorted(lcs_lossy_step(c, q, x)):
            if nxt == dst:
                return True
            if len(nxt[1]) <= maxlen and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def split_instructions(instrs) -> tuple:
    """Break multi-symbol reads and writes into single-symbol ones."""
    return tuple((op, ch) for op, word in instrs for ch in word)


def min_predecessors(instrs, target: str) -> set:
    """Minimal x such that running ``instrs`` on x yields a superword of ``target``.

    Works backwards on conditions (p, m, exact): the channel starts with p
    and the rest embeds m, or (exact) the channel is p itself.  Every
    condition's least word p.m is a genuine predecessor and every
    predecessor lies above one of them.
    """
    from .embedding import minimal

    conds = {("", target, False)}
    for op, a in reversed(split_instructions(instrs)):
        nxt = set()
        for p, m, exact in conds:
            if op == "?":
                nxt.add((a + p, m, exact))
                continue
            if not exact:
                nxt.add((p, m[:-1] if m.endswith(a) else m, False))
            if not m and p.endswith(a):
                nxt.add((p[:-1], "", True))
        conds = nxt
    return minimal(p + m for p, m, _ in conds)
