import pytest
from postembed import codes as C
from postembed import ordinals as O
from postembed.hardy_machine import (
    MachineSpec,
    build_machine,
    counters_reached,
    decode_normal,
    machine_alphabet,
    normal_conf,
    rename_states,
    rh_closure,
    rh_step,
    run_closure,
    start_seq,
)
from postembed.rel.classes import discrepancy_bound

SMALL = ["0", "1", "2", "w", "w+1", "w*2", "w^2", "w^w"]


def test_rh_step_follows_hardy_steps():
    for text in ["w*2+1", "w^2", "w^(w+1)", "w^w*2", "w^(w*2)"]:
        a = O.parse(text)
        for n in (2, 3):
            c = C.conf_encode(a, n, 2)
            (nxt,) = rh_step(c)
            assert C.conf_decode(nxt) == tuple(O.hardy_step_fwd((a, n)))


def test_rh_closure_ends_at_the_hardy_value():
    for text in SMALL:
        a = O.parse(text)
        chain = rh_closure(C.conf_encode(a, 2, 2))
        assert chain[-1] == C.SEP + C.HASH * O.hardy_eval(a, 2, 10**5)


def test_rh_step_rejects_garbage():
    assert rh_step("01|#") == set()
    assert rh_step("#") == set()


@pytest.mark.parametrize("k", [1, 2, 3])
def test_machine_is_1_bld(k):
    assert discrepancy_bound(build_machine(MachineSpec(k))) == 1
    assert discrepancy_bound(build_machine(MachineSpec(k, "backward"))) == 1


@pytest.mark.parametrize("k", [2, 3])
def test_machine_alphabet_size(k):
    assert len(machine_alphabet(k)) == k + 2
    assert build_machine(MachineSpec(k)).alphabet <= set(machine_alphabet(k))


def test_spec_validation():
    with pytest.raises(ValueError):
        MachineSpec(0)
    with pytest.raises(ValueError):
        MachineSpec(2, "sideways")


@pytest.mark.parametrize("k,text,n", [(1, "w*2", 2), (1, "w^2", 2), (2, "w^w", 2), (2, "w*3", 2), (2, "w^2+1", 2)])
def test_forward_closure_computes_hardy(k, text, n):
    a = O.parse(text)
    res = run_closure(MachineSpec(k), start_seq(C.pi_inverse(a, k), n))
    assert counters_reached(res) == {O.hardy_eval(a, n, 10**5)}
    # every normal shape met on the way is a configuration of the Hardy run
    trace = {(c.ordinal, c.counter) for c in O.hardy_trace(a, n, 10**5)}
    assert decode_normal(res) <= trace
    assert (O.ZERO, O.hardy_eval(a, n, 10**5)) in decode_normal(res)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_losses_never_increase_the_counter(seed):
    res = run_closure(MachineSpec(2), start_seq("1#", 2), lossy=f"random:{seed}:0.05")
    assert all(m <= 8 for m in counters_reached(res))


def test_backward_closure_returns_to_the_start():
    a = O.parse("w^2")
    fwd = run_closure(MachineSpec(1), start_seq(C.pi_inverse(a, 1), 2))
    bwd_names = {"Fw": "Bw", "Fw1": "Bw1", "Fw2": "Bw2"}
    seen = {rename_states(w, bwd_names) for w in fwd.reached}
    h = O.hardy_eval(a, 2, 10**5)
    res = run_closure(MachineSpec(1, "backward"), start_seq("", h, "backward"), keep=seen.__contains__)
    assert start_seq(C.pi_inverse(a, 1), 2, "backward") in res.reached


def test_normal_conf():
    assert normal_conf(start_seq("1#", 2)) == ("1#", 2)
    assert normal_conf(start_seq("1#", 2, "backward")) is None
    assert normal_conf(start_seq("1#", 2, "backward"), "backward") == ("1#", 2)
    assert normal_conf("000|1|1#|##") is None
    assert normal_conf("nonsense") is None


def test_start_seq_with_time():
    assert start_seq("1#", 2, time=3) == "000||1#|##|###"


@pytest.mark.parametrize("text", ["w+1", "w^2", "w^w"])
def test_every_reached_word_is_a_sequence(text):
    a = O.parse(text)
    res = run_closure(MachineSpec(2), start_seq(C.pi_inverse(a, 2), 2))
    for w in res.reached:
        C.seq_parse(w)
