"""The forward Hardy machine as a transducer, run with and without losses."""
from postembed import codes as C
from postembed import ordinals as O
from postembed.hardy_machine import MachineSpec, build_machine, counters_reached, run_closure, start_seq
from postembed.rel.classes import discrepancy_bound

spec = MachineSpec(2)
t = build_machine(spec)
print("states", t.n, "transitions", len(t.trans), "discrepancy", discrepancy_bound(t))

a, n = O.parse("w^w"), 2
start = start_seq(C.pi_inverse(a, 2), n)
res = run_closure(spec, start)
print("from", C.show(start), "the counter ends at", counters_reached(res), "=", O.hardy_eval(a, n, 10**6))

# the normal shapes met on the way are Hardy configurations
for w, (code, m) in sorted(res.normal.items(), key=lambda kv: -len(kv[1][0])):
    print(f"  {C.show(w):24} {O.render(C.pi(code)):>12} {m}")

# with losses the machine can only fall short of the Hardy value
lossy = run_closure(spec, start, "subwords")
print("lossy runs end at", sorted(counters_reached(lossy)), "from", len(lossy.parents), "sequences")

# a seeded random loss usually breaks a sequence early
for seed in range(3):
    r = run_closure(spec, start, f"random:{seed}:0.005")
    print("seed", seed, "reached", len(r.parents), "largest counter", max(m for _, m in r.normal.values()))
