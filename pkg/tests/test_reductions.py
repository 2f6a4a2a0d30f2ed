import random

import pytest
from hypothesis import given, strategies as st

from helpers import pairs_upto, random_transducer, random_word
from postembed import deciders as D
from postembed.codes import SEP, seq_parse, state_bits
from postembed.embedding import embeds
from postembed.rel.classes import (
    UnboundedDiscrepancy,
    bld_check,
    discrepancy_bound,
    is_length_preserving,
    is_synchronous_form,
)
from postembed.rel.expr import compile, parse
from postembed.rel.transducer import Transducer
from postembed.reductions import (
    BOT,
    ChannelInvariant,
    DegenerateInstance,
    LRInstance,
    MalformedInstance,
    lr_to_ep_rat,
    lr_to_ep_sync,
    lr_to_lcs,
    padded,
    st_to_lr,
    st_to_lt,
)
from postembed.rewrite_systems import SemiThueSystem, lcs_lossy_step, st_reach_bounded

SWAP = SemiThueSystem.of([("01", "10")], "01")


@pytest.fixture(scope="module")
def k1_family():
    # same semi-Thue pair as the k=2 acceptance family, with a cheaper budget code
    return {
        True: st_to_lr(SWAP, "0011", "1100", 2, 1, "0#"),
        False: st_to_lr(SWAP, "1100", "0011", 2, 1, "0#"),
    }


def test_st_to_lr_shape():
    inst = st_to_lr(SWAP, "0011", "1100", 2, 2, "1#")
    assert inst.source == SEP.join([state_bits("Fw"), "", "1#", "##"])
    assert inst.target == SEP.join([state_bits("Bw"), "", "1#", "##"])
    assert len(inst.relation.alphabet) == 4
    assert bld_check(inst.relation, 1)
    for name in ("Sim", "Init", "Fin"):
        assert discrepancy_bound(compile(inst.parts[name])) == 0
    assert inst.separator == SEP


def test_st_to_lr_default_code():
    inst = st_to_lr(SWAP, "01", "10", 2, 2)
    assert seq_parse(inst.source).code == "11#"


@pytest.mark.parametrize(
    "args",
    [("0", "1", 1, 2, None), ("0", "1", 2, 0, None), ("02", "1", 2, 2, None), ("0", "1", 2, 2, "01#"), ("0", "1", 2, 2, "2#")],
)
def test_st_to_lr_rejects_bad_input(args):
    with pytest.raises(MalformedInstance):
        st_to_lr(SWAP, *args)


@pytest.mark.parametrize("polarity", [True, False])
def test_k1_family_matches_semi_thue(k1_family, polarity):
    inst = k1_family[polarity]
    y, y2 = ("0011", "1100") if polarity else ("1100", "0011")
    assert st_reach_bounded(SWAP, y, y2, 4) == polarity
    assert D.decide_lr(inst.relation, inst.source, inst.target) == polarity


def test_k1_positive_trace_is_reliable(k1_family):
    from postembed.rel.search import image

    inst = k1_family[True]
    trace = D.lr_coverability(inst.relation, inst.source, inst.target).trace()
    states = [seq_parse(w).state for w in trace]
    for x, y in zip(trace, trace[1:]):
        assert y in image(inst.relation, x)
    # Fw phase, then Sim, then Bw, each a single block
    blocks = []
    for s in states:
        b = s[:2] if s != "Sim" else "Sim"
        if not blocks or blocks[-1] != b:
            blocks.append(b)
    assert blocks == ["Fw", "Sim", "Bw"]


# ------------------------------------------------------------ EP


def tiny_lr(seed):
    rng = random.Random(seed)
    while True:
        t = random_transducer(rng.randrange(10**9), "ab", states=3, moves=7)
        if t.trim().n and discrepancy_bound(t) is not None:
            w, w2 = random_word(rng, "ab", 2), random_word(rng, "ab", 2)
            if w != w2:
                return LRInstance(t, w, w2)


def split_on(word, s):
    return word.split(s)


@given(st.integers(0, 10**6))
def test_ep_rat_separator_counts(seed):
    inst = tiny_lr(seed)
    e = lr_to_ep_rat(inst)
    for u, v in pairs_upto(e.relation, 12):
        assert u.count("$") == v.count("$")


@pytest.mark.parametrize("seed", range(40))
def test_ep_rat_agrees_with_lr(seed):
    inst = tiny_lr(seed)
    lr = D.decide_lr(inst.relation, inst.source, inst.target)
    wit = D.decide_ep_bounded(lr_to_ep_rat(inst).relation, 16)
    assert (wit is not None) == lr
    if wit is None:
        return
    u, v = wit
    us, vs = split_on(u, "$"), split_on(v, "$")
    # $ w' $ u_1 $ ... $ u_n $  against  $ v_1 $ ... $ v_n $ w $
    assert us[0] == "" and vs[0] == "" and us[-1] == "" and vs[-1] == ""
    assert us[1] == inst.target and vs[-2] == inst.source
    chain = us[1:-1]
    images = vs[1:-2]
    assert len(chain) == len(images) + 1
    for i, img in enumerate(images):
        assert embeds(chain[i], img)
        assert (chain[i + 1], img) in pairs_upto(inst.relation, max(len(chain[i + 1]), len(img)))


def test_ep_rat_needs_distinct_words():
    t = compile(parse("(a,b)"))
    with pytest.raises(DegenerateInstance):
        lr_to_ep_rat(LRInstance(t, "a", "a"))
    with pytest.raises(MalformedInstance):
        lr_to_ep_rat(LRInstance(compile(parse("($,a)", "$a")), "a", "$"))


@given(st.integers(0, 10**6))
def test_padded_is_length_preserving(seed):
    t = tiny_lr(seed).relation
    p = padded(t, "$")
    assert is_length_preserving(p)
    base = pairs_upto(t, 3)
    got = pairs_upto(p, 6)
    for u, v in base:
        m = max(len(u), len(v))
        assert (u + "$" + BOT * (m - len(u)), v + "$" + BOT * (m - len(v))) in got
    for x, y in got:
        u, v = x.split("$")[0], y.split("$")[0]
        assert (u, v) in pairs_upto(t, 6)


def test_padded_needs_bounded_discrepancy():
    with pytest.raises(UnboundedDiscrepancy):
        padded(compile(parse("(a,-)*")), "$")


@pytest.mark.parametrize("seed", range(25))
def test_ep_sync_agrees_with_lr(seed):
    inst = tiny_lr(seed)
    e = lr_to_ep_sync(inst, max_states=50000)
    assert is_synchronous_form(e.relation)
    lr = D.decide_lr(inst.relation, inst.source, inst.target)
    wit = D.decide_ep_bounded(e.relation, 16)
    assert (wit is not None) == lr
    if wit is None:
        return
    u, v = wit
    # $ u_n $ bot^m ... against $ v_n $ bot^p ...: embedded blocks keep m_i <= p_i
    ub, vb = u.split("$")[2:], v.split("$")[2:]
    assert len(ub) == len(vb)
    for x, y in zip(ub, vb):
        m, p = len(x) - len(x.lstrip(BOT)), len(y) - len(y.lstrip(BOT))
        assert m <= p


def test_ep_sync_plain_form_has_the_same_pairs():
    inst = tiny_lr(3)
    a = lr_to_ep_sync(inst, synchronize=False).relation
    b = lr_to_ep_sync(inst).relation
    assert pairs_upto(a, 9) == pairs_upto(b, 9)


# ------------------------------------------------------------ LT


def test_st_to_lt_shape():
    inst = st_to_lt(SWAP, "0011", "1100", 2, 2, "1#")
    assert inst.source == SEP.join([state_bits("Fw"), "", "1#", "##", "##"])
    assert bld_check(inst.relation, 1)
    sim = compile(inst.parts["Sim"])
    for u, v in pairs_upto(sim, 20):
        assert len(u) == len(v) + 1


@pytest.mark.parametrize("polarity", [True, False])
def test_lt_k1_family(polarity):
    y, y2 = ("0011", "1100") if polarity else ("1100", "0011")
    inst = st_to_lt(SWAP, y, y2, 2, 1, "0#")
    res = D.decide_lt_bld(inst.relation, inst.source, budget=10**6)
    assert res.verdict == (D.NONTERMINATING if polarity else D.TERMINATING)


# ------------------------------------------------------------ LCS


def test_lcs_shape(k1_family):
    inst = k1_family[True]
    lc = lr_to_lcs(inst)
    assert lc.separator == SEP
    assert set(lc.system.alphabet) == set(inst.relation.alphabet)
    assert lc.source == ("qi", inst.source + SEP) and lc.target == ("qf", inst.target + SEP)
    assert lc.invariant is None and lc.bound is not None
    fresh = lr_to_lcs(LRInstance(inst.relation, inst.source, inst.target))
    assert len(fresh.system.alphabet) == len(inst.relation.alphabet) + 1
    assert fresh.invariant is not None


@pytest.mark.parametrize("polarity", [True, False])
def test_lcs_k1_family_reusing_the_separator(k1_family, polarity):
    lc = lr_to_lcs(k1_family[polarity])
    assert D.decide_lcs_reach(lc.system, lc.source, lc.target, 10**6, invariant=lc.bound) == polarity


@pytest.mark.parametrize("seed", range(30))
def test_lcs_agrees_with_lr(seed):
    inst = tiny_lr(seed)
    lc = lr_to_lcs(inst)
    lr = D.decide_lr(inst.relation, inst.source, inst.target)
    assert D.decide_lcs_reach(lc.system, lc.source, lc.target) == lr
    assert D.decide_lcs_reach(lc.system, lc.source, lc.target, invariant=lc.invariant) == lr


def random_channel_lr(rng, alphabet):
    n = rng.randint(1, 4)
    trans = set()
    for _ in range(rng.randint(1, 7)):
        s, d, a = rng.randrange(n), rng.randrange(n), rng.choice(alphabet)
        trans.add((s, a, "", d) if rng.random() < 0.5 else (s, "", a, d))
    return Transducer(n, sorted(trans), [0], [rng.randrange(n)], alphabet, alphabet)


@pytest.mark.parametrize("seed", range(30))
def test_channel_invariant_holds_on_reachable_configurations(seed):
    rng = random.Random(seed)
    t = random_channel_lr(rng, "ab")
    w, w2 = random_word(rng, "ab", 3), random_word(rng, "ab", 3)
    if w == w2:
        return
    lc = lr_to_lcs(LRInstance(t, w, w2))
    seen, todo = {lc.source}, [lc.source]
    while todo and len(seen) < 1500:
        c = todo.pop()
        assert lc.invariant(c)
        for d in lcs_lossy_step(lc.system, *c):
            if len(d[1]) <= 7 and d not in seen:
                seen.add(d)
                todo.append(d)


def test_channel_invariant_refuses_a_reused_separator():
    t = compile(parse("(|,a)", "a|"))
    with pytest.raises(ValueError):
        ChannelInvariant(t, "a", "|")
