import pytest
from hypothesis import given, strategies as st

from helpers import brute_min_covering, pairs_upto, random_transducer, words_upto
from postembed.embedding import embeds
from postembed.rel import nfa as N
from postembed.rel.classes import (
    discrepancy_bound,
    is_length_preserving,
    is_synchronous_form,
    resynchronize,
)
from postembed.rel.expr import Pair, RelSyntaxError, compile, parse, render
from postembed.rel.search import (
    image,
    lossy_images_max,
    min_covering_predecessors,
    post_nfa,
    pre_nfa,
    relate_pair,
)
from postembed.rel.transducer import Transducer, t_compose, t_concat, t_star, t_union

seeds = st.integers(0, 10**6)


def rel(text, alpha="ab"):
    return compile(parse(text, alpha))


def test_pair_and_union():
    t = rel("(a,b) | (ab,-)")
    assert pairs_upto(t, 3) == {("a", "b"), ("ab", "")}


def test_star_and_concat():
    t = rel("(a,bb)* . (b,-)")
    assert pairs_upto(t, 4) == {("b", ""), ("ab", "bb"), ("aab", "bbbb")}


def test_identity_and_embedding():
    t = rel("id[a*b]")
    assert ("aab", "aab") in pairs_upto(t, 3)
    e = rel("emb[ab]")
    got = pairs_upto(e, 3)
    assert all(embeds(u, v) for u, v in got)
    assert ("b", "ab") in got and ("ba", "ab") not in got
    assert ("01", "001") in pairs_upto(compile(parse("emb[a0a1]")), 3)
    assert ("10", "01") not in pairs_upto(compile(parse("emb[a0a1]")), 3)
    assert image(e, "ab", 2) == {"ab"}


def test_inverse_and_compose():
    t = rel("inv (a,bb)")
    assert pairs_upto(t, 2) == {("bb", "a")}
    c = rel("(a,b) ; (b,aa)")
    assert pairs_upto(c, 2) == {("a", "aa")}


@pytest.mark.parametrize("bad", ["(a,b", "id[a", "(a,b) |", "x"])
def test_parse_errors(bad):
    with pytest.raises(RelSyntaxError):
        parse(bad, "ab")


@given(seeds)
def test_render_reparses(seed):
    t = random_transducer(seed)
    e = parse("(a,b)* . (ab,-) | (b,a)+", "ab")
    assert pairs_upto(compile(parse(render(e), "ab")), 4) == pairs_upto(compile(e), 4)


@given(seeds)
def test_relate_pair_agrees_with_runs(seed):
    t = random_transducer(seed)
    got = pairs_upto(t, 3)
    for u in words_upto("ab", 3):
        for v in words_upto("ab", 3):
            assert relate_pair(t, u, v) == ((u, v) in got)


@given(seeds, st.text("ab", max_size=3))
def test_image_agrees_with_runs(seed, u):
    t = random_transducer(seed)
    expect = {v for x, v in pairs_upto(t, 6) if x == u and len(v) <= 4}
    assert image(t, u, 4) == expect


@given(seeds)
def test_post_and_pre(seed):
    t = random_transducer(seed)
    lang = N.regex("a*b")
    post = post_nfa(t, lang)
    pre = pre_nfa(t, lang)
    pairs = pairs_upto(t, 4)
    for u, v in pairs:
        if lang.accepts(u):
            assert post.accepts(v)
        if lang.accepts(v):
            assert pre.accepts(u)


@given(seeds, seeds)
def test_compose_union_concat(s1, s2):
    t1, t2 = random_transducer(s1), random_transducer(s2)
    p1, p2 = pairs_upto(t1, 3), pairs_upto(t2, 3)
    assert {p for p in pairs_upto(t_union(t1, t2), 3)} == p1 | p2
    cat = pairs_upto(t_concat(t1, t2), 3)
    assert cat == {(a + c, b + d) for a, b in p1 for c, d in p2 if len(a + c) <= 3 and len(b + d) <= 3} & cat | {
        (a + c, b + d) for a, b in pairs_upto(t1, 3) for c, d in pairs_upto(t2, 3) if len(a + c) <= 3 and len(b + d) <= 3
    }
    comp = pairs_upto(t_compose(t1, t2), 2)
    wide1, wide2 = pairs_upto(t1, 6), pairs_upto(t2, 6)
    for u, w in comp:
        assert any(x == u and (v, w) in wide2 for x, v in wide1)


@given(seeds)
def test_star_contains_iterates(seed):
    t = random_transducer(seed)
    s = pairs_upto(t_star(t), 4)
    assert ("", "") in s
    assert {p for p in pairs_upto(t, 4)} <= s


def test_discrepancy():
    assert discrepancy_bound(rel("(a,b)*")) == 0
    assert discrepancy_bound(rel("(ab,b)* . (a,-)")) is None
    assert discrepancy_bound(rel("(ab,b) | (a,aaa)")) == 2
    assert is_length_preserving(rel("(a,b).(b,a)"))


@given(seeds)
def test_discrepancy_bound_matches_pairs(seed):
    t = random_transducer(seed)
    b = discrepancy_bound(t)
    pairs = pairs_upto(t, 8)
    if b is not None:
        assert all(abs(len(u) - len(v)) <= b for u, v in pairs)
        small = pairs_upto(t, 2 * t.n + 2 + b)
        assert max((abs(len(u) - len(v)) for u, v in small), default=0) == b
    else:
        # some pair far from the diagonal exists
        assert max(abs(len(u) - len(v)) for u, v in pairs_upto(t, 3 * t.n + 6)) > 1


@given(seeds)
def test_resynchronize_is_equivalent(seed):
    t = random_transducer(seed)
    if discrepancy_bound(t) is None:
        return
    r = resynchronize(t)
    assert is_synchronous_form(r)
    assert pairs_upto(r, 4) == pairs_upto(t, 4)


@given(seeds)
def test_resynchronize_with_pad(seed):
    t = random_transducer(seed)
    if discrepancy_bound(t) is None:
        return
    r = resynchronize(t, pad="z")
    assert is_synchronous_form(r)
    base = pairs_upto(t, 4)
    want = {(u, v + "z" * k) for u, v in base for k in range(5) if len(v) + k <= 4}
    assert pairs_upto(r, 4) == want


def test_synchronous_form_check():
    assert is_synchronous_form(rel("(a,b)*.(ab,-)"))
    assert not is_synchronous_form(rel("(a,-).(-,b).(-,b).(a,-)"))


@given(seeds, st.text("ab", max_size=3))
def test_min_covering_predecessors(seed, v):
    t = random_transducer(seed)
    bound = t.n * (len(v) + 1)
    got = min_covering_predecessors(t, v)
    assert got == brute_min_covering(t, v, bound)


@given(seeds, st.text("ab", max_size=4))
def test_lossy_images_max(seed, u):
    t = random_transducer(seed)
    b = discrepancy_bound(t)
    if b is None:
        return
    from postembed.embedding import maximal, subwords

    expect = maximal(
        v2 for x, v in pairs_upto(t, len(u) + b) for v2 in [v] if x in subwords(u)
    )
    assert lossy_images_max(t, u) == expect


def test_transducer_validation():
    with pytest.raises(ValueError):
        Transducer(1, [(0, "a", "b", 0)], [0], [0])
    with pytest.raises(ValueError):
        Transducer(1, [(0, "a", "", 1)], [0], [0])
