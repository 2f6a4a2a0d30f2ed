"""The subword order on words and antichains of words."""
from __future__ import annotations

from itertools import combinations


def embeds(u: str, v: str) -> bool:
    """True when ``u`` is a (scattered) subword of ``v``."""
    if len(u) > len(v):
        return False
    it = iter(v)
    return all(c in it for c in u)


def subwords(w: str) -> set:
    out = set()
    for r in range(len(w) + 1):
        for idx in combinations(range(len(w)), r):
            out.add("".join(w[i] for i in idx))
    return out


def minimal(words) -> set:
    ws = sorted(set(words), key=lambda w: (len(w), w))
    keep = []
    for w in ws:
        if not any(embeds(m, w) for m in keep):
            keep.append(w)
    return set(keep)


def maximal(words) -> set:
    ws = sorted(set(words), key=lambda w: (-len(w), w))
    keep = []
    for w in ws:
        if not any(embeds(w, m) for m in keep):
            keep.append(w)
    return set(keep)


class Antichain:
    """Minimal elements of an upward-closed set.

    Elements are words, or ``(state, word)`` pairs when ``keyed`` is set, in
    which case only pairs with equal states are compared.
    """

    def __init__(self, keyed: bool = False):
        self.keyed = keyed
        self._by_key: dict = {}

    def _split(self, x):
        return x if self.keyed else (None, x)

    def covers(self, x) -> bool:
        """Is ``x`` in the upward closure?"""
        k, w = self._split(x)
        return any(embeds(m, w) for m in self._by_key.get(k, ()))

    def add(self, x) -> bool:
        """Insert ``x``; returns False when it was already covered."""
        k, w = self._split(x)
        bucket = self._by_key.setdefault(k, [])
        for m in bucket:
            if embeds(m, w):
                return False
        bucket[:] = [m for m in bucket if not embeds(w, m)]
        bucket.append(w)
        return True

    def __contains__(self, x) -> bool:
        k, w = self._split(x)
        return w in self._by_key.get(k, ())

    def __iter__(self):
        for k, ws in self._by_key.items():
            for w in ws:
                yield (k, w) if self.keyed else w

    def __len__(self):
        return sum(len(ws) for ws in self._by_key.values())

    def elements(self) -> list:
        return sorted(self, key=lambda x: (str(x[0]), len(x[1]), x[1]) if self.keyed else (len(x), x))
