"""The decidable corners of the embedding problem."""
from postembed import deciders as D
from postembed.rel import nfa as N
from postembed.rel.expr import compile, parse
from postembed.rewrite_systems import SemiThueSystem

# unary relations: decided through Parikh images
for text in ("(a,aa)+", "(a,-) . (a,a)*", "(aa,a)* . (a,aaa)"):
    t = compile(parse(text, "a"))
    print(f"{text:22} {D.decide_ep_unary(t)}")

# recognizable relations: some u in L_i embeds in some v in L'_i?
pairs = [(N.regex("aa*", "ab"), N.regex("b*", "ab")), (N.regex("ab", "ab"), N.regex("ba*b", "ab"))]
print("rec", D.decide_ep_rec(pairs[:1]), D.decide_ep_rec(pairs))

# two morphisms: a single letter decides
m = D.MorphismPair("ab", {"a": "xx", "b": "y"}, {"a": "x", "b": "xy"})
print("2morph", D.decide_ep_2morph(m))

# rewriting: does some rule's left side embed in its right side?
print("rewr", D.decide_ep_rewr(SemiThueSystem.of([("a", "ba")])), D.decide_ep_rewr(SemiThueSystem.of([("ab", "ba")])))

# general rational relations only get a bounded search
print("bounded", D.decide_ep_bounded(compile(parse("(-,ba).(a,-)", "ab")), 4))
