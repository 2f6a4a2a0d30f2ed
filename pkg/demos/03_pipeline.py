"""A semi-Thue question turned into lossy reachability, then into LCS and LT.

The rule a0a1 -> a1a0 sorts a word; 0011 ->* 1100 holds, the reverse does
not.  With start code a1# and n = 2 the workspace is H^(w^w)(2) = 8 cells.
"""
import time

from postembed import codes as C
from postembed import deciders as D
from postembed.reductions import LRInstance, lr_to_lcs, st_to_lr, st_to_lt
from postembed.rel.expr import compile
from postembed.rel.search import image
from postembed.rewrite_systems import SemiThueSystem, st_reach_bounded

swap = SemiThueSystem.of([("01", "10")], "01")

for y, y2 in (("0011", "1100"), ("1100", "0011")):
    inst = st_to_lr(swap, y, y2, 2, 2, "1#")
    t0 = time.time()
    lr = D.decide_lr(inst.relation, inst.source, inst.target)
    print(f"{C.show(y)} ->* {C.show(y2)}: rewriting {st_reach_bounded(swap, y, y2, 8)}, lossy reachability {lr} ({time.time() - t0:.1f}s)")

    lc = lr_to_lcs(LRInstance(inst.relation, inst.source, inst.target))
    print("  channel system:", D.decide_lcs_reach(lc.system, lc.source, lc.target, 10**6, invariant=lc.invariant))
    lt = st_to_lt(swap, y, y2, 2, 2, "1#")
    print("  termination:", D.decide_lt_bld(lt.relation, lt.source, 10**6).verdict)

# the positive run, labelled by the part of the relation used at each step
inst = st_to_lr(swap, "0011", "1100", 2, 2, "1#")
parts = {name: compile(e) for name, e in inst.parts.items()}
trace = D.lr_coverability(inst.relation, inst.source, inst.target).trace()
print(C.show(trace[0]))
for x, y in zip(trace, trace[1:]):
    used = next(name for name, p in parts.items() if y in image(p, x))
    print(f"  {used:4} {C.show(y)}")
