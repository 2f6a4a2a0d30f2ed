import pytest

from postembed import codes, ordinals
from postembed.cli import run
from postembed.instances import parse_instance, read_instance

POS_LR = """kind: lr
source: a0
target: a1a1
alphabet: a0 a1
states: p q r
initial: p
final: r
trans: p a0/- q
trans: q -/a1 r
trans: r -/a1 r
"""

NEG_LR = POS_LR.replace("target: a1a1", "target: a0a0")

ST = """kind: semithue
alphabet: a0 a1
a0a1 -> a1a0
source: a0a1
target: a1a0
n: 2
k: 1
code: a0#
"""


def _file(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_ordinal_eval(capsys):
    assert run(["ordinal", "eval", "w", "3"]) == 0
    out = capsys.readouterr().out
    assert "value: 6" in out and out.startswith("steps:")


def test_flags_before_and_after_subcommand(capsys):
    assert run(["--porcelain", "ordinal", "eval", "w", "3"]) == 0
    assert run(["ordinal", "eval", "w", "3", "--porcelain"]) == 0
    assert capsys.readouterr().out.split() == ["6", "6"]
    assert run(["--budget", "3", "ordinal", "eval", "w", "3"]) == 2


def test_budget_exhaustion_is_unknown(capsys):
    assert run(["ordinal", "eval", "w^w", "3", "--budget", "100"]) == 2
    assert "budget" in capsys.readouterr().err


def test_code_pi(capsys):
    assert run(["code", "pi", "a1a0#"]) == 0
    assert capsys.readouterr().out.strip() == "w^(w*1+1)*1"


@pytest.mark.parametrize("argv", [["code", "pi", "a1a0#"], ["code", "purify", "a1#a0a1#"], ["ordinal", "fseq", "w^w", "2"]])
def test_printed_values_reparse(capsys, argv):
    assert run(argv + ["--porcelain"]) == 0
    out = capsys.readouterr().out.strip()
    if argv[1] == "purify":
        assert codes.lex(out) == codes.purify(codes.lex(argv[2]))
    else:
        assert ordinals.render(ordinals.parse(out)) == out


def test_code_pinv_round_trip(capsys):
    assert run(["--porcelain", "code", "pinv", "w^(w*1+1)*1"]) == 0
    word = capsys.readouterr().out.strip()
    assert run(["--porcelain", "code", "pi", word]) == 0
    assert capsys.readouterr().out.strip() == "w^(w*1+1)*1"


def test_ordinal_cmp_and_norm(capsys):
    assert run(["--porcelain", "ordinal", "cmp", "w", "w^2"]) == 0
    assert run(["--porcelain", "ordinal", "norm", "w^2*3+1"]) == 0
    assert capsys.readouterr().out.split()[0] == "<"


def test_hardy_trace_ends_at_value(capsys):
    assert run(["hardy", "trace", "w", "2"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "0 4"


def test_usage_errors(capsys):
    assert run([]) == 64
    assert run(["ordinal", "eval", "w"]) == 64
    assert run(["nope"]) == 64
    assert run(["decide", "lr", "/nonexistent/file"]) == 64


def test_parse_errors(tmp_path, capsys):
    assert run(["ordinal", "eval", "w^", "2"]) == 65
    bad = _file(tmp_path, "bad.lr", "kind: lr\nsource: a0\ntrans: p a0/a1 q\n")
    assert run(["decide", "lr", bad]) == 65
    assert "line 3" in capsys.readouterr().err


def test_decide_lr_both_ways(tmp_path, capsys):
    assert run(["decide", "lr", _file(tmp_path, "p.lr", POS_LR)]) == 0
    assert "antichain size" in capsys.readouterr().out
    assert run(["--porcelain", "decide", "lr", _file(tmp_path, "n.lr", NEG_LR)]) == 1
    assert capsys.readouterr().out.strip() == "no"


def test_decide_ep_needs_maxlen(tmp_path):
    f = _file(tmp_path, "e.ep", "kind: ep\nalphabet: a0\nexpr: (a0,a0a0)\n")
    assert run(["decide", "ep", f]) == 64
    assert run(["decide", "ep", f, "--maxlen", "3"]) == 0


def test_decide_easy_cases(tmp_path):
    unary = _file(tmp_path, "u.ep", "kind: ep\nalphabet: a0\nexpr: (a0a0,a0)*\n")
    assert run(["decide", "ep1", unary]) == 0
    rec = _file(tmp_path, "r.ep", "kind: ep\npair: a ; b\n")
    assert run(["decide", "eprec", rec]) == 1
    morph = _file(tmp_path, "m.ep", "kind: ep\nmorph: a0 -> a0 , a0a0\n")
    assert run(["decide", "ep2m", morph]) == 0
    rw = _file(tmp_path, "w.st", "kind: semithue\nalphabet: a0\na0 -> a0a0\n")
    assert run(["decide", "eprw", rw]) in (0, 1)


def test_reduce_then_decide(tmp_path, capsys):
    st = _file(tmp_path, "s.st", ST)
    lr = str(tmp_path / "s.lr")
    assert run(["reduce", "st2lr", st, "-o", lr]) == 0
    inst = read_instance(lr)
    assert inst.kind == "lr" and inst.fields["separator"] == "|"
    assert run(["--porcelain", "decide", "lr", lr]) == 0
    lcs = str(tmp_path / "s.lcs")
    assert run(["reduce", "lr2lcs", lr, "-o", lcs]) == 0
    assert read_instance(lcs).kind == "lcs"
    assert run(["reduce", "lr2ep", lr, "-o", str(tmp_path / "s.ep")]) == 0
    assert read_instance(str(tmp_path / "s.ep")).kind == "ep"


def test_reduce_to_stdout_parses(tmp_path, capsys):
    assert run(["reduce", "st2lt", _file(tmp_path, "s.st", ST)]) == 0
    inst = parse_instance(capsys.readouterr().out)
    assert inst.kind == "lt" and inst.relation is not None


def test_rel_commands(tmp_path, capsys):
    f = _file(tmp_path, "p.lr", POS_LR)
    assert run(["rel", "check-bld", f, "--porcelain"]) == 1
    assert capsys.readouterr().out.strip() == "unbounded"
    assert run(["rel", "image", f, "a0", "--maxlen", "3"]) == 0
    assert capsys.readouterr().out.split() == ["a1", "a1a1", "a1a1a1"]
    assert run(["rel", "compile", f]) == 0
    assert parse_instance(capsys.readouterr().out).relation.n == 3


def test_machine_build_and_run(capsys):
    assert run(["machine", "build", "--k", "1"]) == 0
    assert parse_instance(capsys.readouterr().out).kind == "transducer"
    assert run(["machine", "run", "--k", "1", "--start", "a0a0a0||a0#|##"]) == 0
    assert capsys.readouterr().out.strip()


def test_machine_run_rejects_malformed_start():
    assert run(["machine", "run", "--k", "1", "--start", "||a0#|##"]) == 65


def test_machine_run_is_deterministic_under_seed(capsys):
    argv = ["machine", "run", "--k", "1", "--start", "a0a0a0||a0#|##", "--loss", "random:0:0.3", "--seed", "5"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first
