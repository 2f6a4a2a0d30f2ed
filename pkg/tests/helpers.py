"""Small random objects and brute-force oracles shared by the tests."""
import itertools
import random

from postembed.embedding import embeds, minimal
from postembed.rel.transducer import Transducer


def random_transducer(seed, alphabet="ab", states=3, moves=6, out_alphabet=None):
    rng = random.Random(seed)
    out_alphabet = out_alphabet or alphabet
    n = rng.randint(1, states)
    trans = set()
    for _ in range(rng.randint(1, moves)):
        s, d = rng.randrange(n), rng.randrange(n)
        if rng.random() < 0.5:
            trans.add((s, rng.choice(alphabet), "", d))
        else:
            trans.add((s, "", rng.choice(out_alphabet), d))
    final = {rng.randrange(n) for _ in range(rng.randint(1, 2))}
    return Transducer(n, sorted(trans), [0], final, alphabet, out_alphabet)


def pairs_upto(t, maxlen):
    """Every (u, v) of the relation with |u|, |v| <= maxlen, by exploring runs."""
    out = set()
    seen = set()
    todo = [(q, "", "") for q in t.initial]
    while todo:
        cfg = todo.pop()
        if cfg in seen:
            continue
        seen.add(cfg)
        q, u, v = cfg
        if q in t.final:
            out.add((u, v))
        for s, a, b, d in t.trans:
            if s == q and len(u + a) <= maxlen and len(v + b) <= maxlen:
                todo.append((d, u + a, v + b))
    return out


def words_upto(alphabet, maxlen):
    for n in range(maxlen + 1):
        for w in itertools.product(alphabet, repeat=n):
            yield "".join(w)


def brute_min_covering(t, v, maxlen):
    """Minimal u (|u| <= maxlen) having an image above v."""
    good = [u for u, x in pairs_upto(t, maxlen) if embeds(v, x)]
    return minimal(good)


def random_word(rng, alphabet, maxlen):
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, maxlen)))


def random_lr(seed):
    """An LR instance with |Q| <= 4, |Sigma| <= 3 and |w|, |w'| <= 4."""
    rng = random.Random(seed)
    alphabet = "abc"[: rng.randint(1, 3)]
    t = random_transducer(rng.randrange(10**9), alphabet, states=4, moves=9)
    return t, random_word(rng, alphabet, 4), random_word(rng, alphabet, 4)
