import pytest
from hypothesis import given, strategies as st

from postembed import ordinals
from postembed.instances import (
    InstanceError,
    conf,
    format_lcs,
    format_lr,
    format_ordinal,
    format_semithue,
    parse_instance,
    words,
)
from postembed.rel.textio import TextFormatError, format_transducer, parse_transducer
from postembed.rewrite_systems import LCSystem, SemiThueSystem

from helpers import pairs_upto, random_transducer


@given(st.integers(0, 10**6))
def test_transducer_text_round_trip(seed):
    t = random_transducer(seed, alphabet="01#|")
    back = parse_transducer(format_transducer(t).splitlines())
    assert back.n == t.n
    assert pairs_upto(back, 4) == pairs_upto(t, 4)


def test_lr_file_round_trip():
    t = random_transducer(3, alphabet="01|")
    inst = parse_instance(format_lr(t, "0|1", "1|", separator="|"))
    assert inst.kind == "lr"
    assert words(inst, "source") == "0|1"
    assert words(inst, "target") == "1|"
    assert inst.fields["separator"] == "|"
    assert pairs_upto(inst.relation, 3) == pairs_upto(t, 3)


def test_lcs_file_round_trip():
    c = LCSystem(("p", "q"), "01", (("p", (("?", "0"), ("!", "1")), "q"), ("q", (("!", ""),), "p")))
    inst = parse_instance(format_lcs(c, ("p", "00"), ("q", "1"), bound=("|", 3)))
    assert set(inst.system.transitions) == set(c.transitions)
    assert inst.system.alphabet == "01"
    assert conf(inst, "from") == ("p", "00")
    assert conf(inst, "to") == ("q", "1")
    assert inst.fields["bound"] == "| 3"


def test_semithue_file_round_trip():
    sys_ = SemiThueSystem.of([("01", "10"), ("1", "")], alphabet="01")
    inst = parse_instance(format_semithue(sys_, source="a0a1", n=2))
    assert inst.system.rules == sys_.rules
    assert words(inst, "source") == "01"
    assert inst.fields["n"] == "2"


@pytest.mark.parametrize("text", ["w^w", "w^(w+1)*2+3", "0", "w^(w^w)"])
def test_ordinal_file_round_trip(text):
    inst = parse_instance(format_ordinal(text, counter=3))
    assert ordinals.compare(ordinals.parse(inst.fields["value"]), ordinals.parse(text)) == 0
    assert inst.fields["counter"] == "3"


def test_relexpr_file():
    inst = parse_instance("kind: relexpr\nalphabet: a0 a1\nexpr: (a0,a1)*\n")
    assert ("00", "11") in pairs_upto(inst.relation, 2)


def test_comments_and_blank_lines():
    inst = parse_instance(";; header\n\nkind: ordinal ;; tag\nvalue: w\n")
    assert inst.fields["value"] == "w"


@pytest.mark.parametrize(
    "text, line",
    [
        ("value: w\n", 1),
        ("kind: bogus\n", 1),
        ("kind: lcs\nalphabet: a0\np : #a0 : q\n", 3),
        ("kind: lr\nsource: a0\ntarget: a1\ntrans: p a0/a1 q\n", 4),
        ("kind: relexpr\nalphabet: a0\n\nexpr: (a0,\n", 4),
        ("kind: ep\npair: a0*\n", 2),
        ("kind: lt\nsource: a0\nnonsense\n", 3),
    ],
)
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(InstanceError) as exc:
        parse_instance(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_transducer_error_line():
    with pytest.raises(TextFormatError) as exc:
        parse_transducer(["alphabet: a0", "trans: p a1/- q"])
    assert exc.value.line == 2


def test_missing_field():
    inst = parse_instance("kind: lr\nexpr: (a0,a1)\n")
    with pytest.raises(InstanceError, match="source"):
        words(inst, "source")
