"""Command-line front end.

Exit codes: 0 yes (or success), 1 no, 2 unknown within the budget,
64 usage error, 65 parse error.
"""
from __future__ import annotations

import argparse
import sys

from . import codes, ordinals
from .codes import lex, show
from .deciders import (
    NONTERMINATING,
    decide_ep_2morph,
    decide_ep_bounded,
    decide_ep_rec,
    decide_ep_rewr,
    decide_ep_unary,
    decide_lt_bld,
    lcs_coverability,
    lr_coverability,
)
from .hardy_machine import MachineSpec, build_machine, normal_conf, parse_loss, run_closure
from .instances import (
    InstanceError,
    conf,
    format_ep,
    format_lcs,
    format_lr,
    format_lt,
    read_instance,
    words,
)
from .ordinals import BudgetExhausted, OrdinalError
from .rel.classes import UnboundedDiscrepancy, discrepancy_bound, resynchronize
from .rel.parikh import NotUnary
from .rel.search import image
from .rel.textio import format_transducer
from .reductions import LRInstance, lr_to_ep_rat, lr_to_ep_sync, lr_to_lcs, st_to_lr, st_to_lt

YES, NO, UNKNOWN, USAGE, PARSE = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ordinal(text: str):
    try:
        return ordinals.parse(text)
    except (OrdinalError, ValueError) as exc:
        raise InstanceError(f"bad ordinal {text!r}: {exc}") from exc


def _out(args, line: str, porcelain: str | None = None):
    if args.porcelain:
        if porcelain is not None:
            print(porcelain)
    else:
        print(line)


def _verdict(args, ok: bool, detail: str = "") -> int:
    word = "yes" if ok else "no"
    _out(args, f"{word}{(' (' + detail + ')') if detail else ''}", word)
    return YES if ok else NO


# ------------------------------------------------------------ ordinal, hardy, code


def cmd_ordinal(args) -> int:
    a = _ordinal(args.ordinal)
    if args.op == "eval":
        n = _int(args.rest, 0, "counter")
        value, steps = ordinals.hardy_run(a, n, args.budget)
        _out(args, f"steps: {steps}\nvalue: {value}", str(value))
    elif args.op == "cmp":
        b = _ordinal(_arg(args.rest, 0, "second ordinal"))
        c = ordinals.compare(a, b)
        sign = "<" if c < 0 else ">" if c > 0 else "="
        _out(args, f"{ordinals.render(a)} {sign} {ordinals.render(b)}", sign)
    elif args.op == "fseq":
        n = _int(args.rest, 0, "index")
        r = ordinals.render(ordinals.fund_seq(a, n))
        _out(args, r, r)
    else:
        k = ordinals.norm(a)
        _out(args, f"norm: {k}", str(k))
    return YES


def cmd_hardy(args) -> int:
    a = _ordinal(args.ordinal)
    if args.op == "eval":
        f = ordinals.fast_growing if args.fast else ordinals.hardy_eval
        v = f(a, args.counter, args.budget)
        _out(args, f"value: {v}", str(v))
        return YES
    for c in ordinals.hardy_trace(a, args.counter, args.budget):
        print(f"{ordinals.render(c.ordinal)} {c.counter}")
    return YES


def cmd_code(args) -> int:
    if args.op == "pi":
        r = ordinals.render(codes.pi(lex(args.value)))
        _out(args, r, r)
    elif args.op == "pinv":
        r = show(codes.pi_inverse(_ordinal(args.value), args.k))
        _out(args, r, r)
    else:
        r = show(codes.purify(lex(args.value)))
        _out(args, r, r)
    return YES


# ------------------------------------------------------------ relations and machines


def _relation(path: str):
    inst = read_instance(path)
    if inst.relation is None:
        raise InstanceError(f"{path}: no relation in a {inst.kind} file")
    return inst, inst.relation


def cmd_rel(args) -> int:
    _, t = _relation(args.file)
    if args.op == "compile":
        sys.stdout.write("kind: transducer\n" + format_transducer(t))
        return YES
    if args.op == "check-bld":
        b = discrepancy_bound(t)
        label = "unbounded" if b is None else str(b)
        ok = b is not None and (args.bound is None or b <= args.bound)
        _out(args, f"discrepancy: {label}", label)
        return YES if ok else NO
    if args.op == "resync":
        sys.stdout.write("kind: transducer\n" + format_transducer(resynchronize(t)))
        return YES
    if args.word is None:
        raise UsageError("rel image needs a word")
    for v in sorted(image(t, lex(args.word), args.maxlen), key=lambda w: (len(w), w)):
        print(show(v))
    return YES


def cmd_machine(args) -> int:
    spec = MachineSpec(args.k, args.direction)
    if args.op == "build":
        sys.stdout.write("kind: transducer\n" + format_transducer(build_machine(spec)))
        return YES
    if args.start is None:
        raise UsageError("machine run needs --start")
    codes.seq_parse(lex(args.start))
    loss = args.loss
    if parse_loss(loss)[0] == "random" and args.seed is not None:
        _, _, rate = parse_loss(loss)
        loss = f"random:{args.seed}:{rate}"
    res = run_closure(spec, lex(args.start), loss, args.budget)
    if args.trace:
        for w in res.trace(lex(args.trace)):
            print(show(w))
        return YES if lex(args.trace) in res.parents else NO
    for w in sorted(res.normal, key=lambda w: (len(w), w)):
        code, m = res.normal[w]
        print(f"{show(w)}  {ordinals.render(codes.pi(code))} {m}")
    return YES


# ------------------------------------------------------------ deciders


def _lr_parts(path: str):
    inst, t = _relation(path)
    return inst, t, words(inst, "source"), words(inst, "target")


def cmd_decide(args) -> int:
    p = args.problem
    if p == "lr":
        _, t, w, w2 = _lr_parts(args.file)
        r = lr_coverability(t, w, w2, args.budget)
        if r.verdict:
            for x in r.trace():
                _out(args, "  " + show(x))
        return _verdict(args, r.verdict, f"antichain size {len(r.antichain)}, {r.expansions} expansions")
    if p == "lt":
        inst, t = _relation(args.file)
        r = decide_lt_bld(t, words(inst, "source"), args.budget)
        for x in r.lasso:
            _out(args, "  " + show(x))
        _out(args, f"{r.verdict} ({r.nodes} nodes)", r.verdict)
        return YES if r.verdict == NONTERMINATING else NO
    if p == "lcs":
        inst = read_instance(args.file)
        bound = None
        if "bound" in inst.fields:
            s, _, c = inst.fields["bound"].partition(" ")
            bound = (lex(s), int(c))
        r = lcs_coverability(inst.system, conf(inst, "from"), conf(inst, "to"), args.budget, invariant=bound)
        return _verdict(args, r.verdict, f"antichain size {len(r.antichain)}, {r.expansions} expansions")
    if p == "ep":
        _, t = _relation(args.file)
        if args.maxlen is None:
            raise UsageError("decide ep needs --maxlen")
        wit = decide_ep_bounded(t, args.maxlen)
        if wit is None:
            _out(args, f"none within length {args.maxlen}", "unknown")
            return UNKNOWN
        _out(args, f"witness: {show(wit[0])} , {show(wit[1])}", f"{show(wit[0])} {show(wit[1])}")
        return YES
    inst = read_instance(args.file)
    if p == "ep1":
        if inst.relation is None:
            raise InstanceError("no relation in file")
        return _verdict(args, decide_ep_unary(inst.relation))
    if p == "eprec":
        return _verdict(args, decide_ep_rec(inst.pairs))
    if p == "ep2m":
        if inst.morphism is None:
            raise InstanceError("no 'morph:' lines in file")
        return _verdict(args, decide_ep_2morph(inst.morphism))
    if inst.system is None or inst.kind != "semithue":
        raise InstanceError("eprw needs a semithue file")
    return _verdict(args, decide_ep_rewr(inst.system))


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _lr_instance(path: str) -> LRInstance:
    inst, t, w, w2 = _lr_parts(path)
    sep = inst.fields.get("separator")
    return LRInstance(t, w, w2, separator=lex(sep) if sep else None)


def cmd_reduce(args) -> int:
    r = args.reduction
    if r in ("st2lr", "st2lt"):
        inst = read_instance(args.file)
        if inst.kind != "semithue":
            raise InstanceError("expected a semithue file")
        y, y2 = words(inst, "source"), words(inst, "target")
        n, k = int(inst.fields.get("n", 2)), int(inst.fields.get("k", 2))
        code = words(inst, "code") if "code" in inst.fields else None
        if r == "st2lr":
            out = st_to_lr(inst.system, y, y2, n, k, code)
            _emit(args, format_lr(out.relation, out.source, out.target, out.separator))
        else:
            out = st_to_lt(inst.system, y, y2, n, k, code)
            _emit(args, format_lt(out.relation, out.source))
        return YES
    lr = _lr_instance(args.file)
    if r == "lr2ep":
        _emit(args, format_ep(lr_to_ep_rat(lr).relation))
    elif r == "lr2sync":
        _emit(args, format_ep(lr_to_ep_sync(lr, max_states=args.budget).relation))
    else:
        out = lr_to_lcs(lr)
        _emit(args, format_lcs(out.system, out.source, out.target, out.bound))
    return YES


# ------------------------------------------------------------ wiring


def _arg(rest, i, what):
    if len(rest) <= i:
        raise UsageError(f"missing {what}")
    return rest[i]


def _int(rest, i, what) -> int:
    try:
        return int(_arg(rest, i, what))
    except ValueError as exc:
        raise UsageError(f"{what} must be an integer") from exc


def _globals(top: bool) -> argparse.ArgumentParser:
    # below the subcommand the flags must not reset values given before it
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    g = _Parser(add_help=False)
    g.add_argument("--budget", type=int, default=d(100000), help="step budget for searches")
    g.add_argument("--seed", type=int, default=d(None), help="seed for randomized procedures")
    g.add_argument("--maxlen", type=int, default=d(None), help="length bound for bounded searches")
    g.add_argument("--porcelain", action="store_true", default=d(False), help="stable minimal output")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _globals(False)
    p = _Parser(prog="postembed", description=__doc__.splitlines()[0], parents=[_globals(True)])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    o = sub.add_parser("ordinal", parents=[common], help="ordinal arithmetic and Hardy values")
    o.add_argument("op", choices=["eval", "cmp", "fseq", "norm"])
    o.add_argument("ordinal")
    o.add_argument("rest", nargs="*")
    o.set_defaults(func=cmd_ordinal)

    h = sub.add_parser("hardy", parents=[common], help="Hardy computations")
    h.add_argument("op", choices=["trace", "eval"])
    h.add_argument("ordinal")
    h.add_argument("counter", type=int)
    h.add_argument("--fast", action="store_true", help="fast-growing F_a instead of H^a")
    h.set_defaults(func=cmd_hardy)

    c = sub.add_parser("code", parents=[common], help="ordinal codes")
    c.add_argument("op", choices=["pi", "pinv", "purify"])
    c.add_argument("value")
    c.add_argument("--k", type=int, default=2)
    c.set_defaults(func=cmd_code)

    r = sub.add_parser("rel", parents=[common], help="rational relations")
    r.add_argument("op", choices=["compile", "check-bld", "resync", "image"])
    r.add_argument("file")
    r.add_argument("word", nargs="?")
    r.add_argument("--bound", type=int, default=None)
    r.set_defaults(func=cmd_rel)

    m = sub.add_parser("machine", parents=[common], help="forward and backward Hardy machines")
    m.add_argument("op", choices=["build", "run"])
    m.add_argument("--k", type=int, default=2)
    m.add_argument("--direction", choices=["forward", "backward"], default="forward")
    m.add_argument("--start", default=None, help="start sequence, e.g. 'a0a0a0||a1#|##'")
    m.add_argument("--loss", default="none", help="none | subwords | random:<seed>:<rate>")
    m.add_argument("--trace", default=None, help="print the steps reaching this sequence")
    m.set_defaults(func=cmd_machine)

    d = sub.add_parser("decide", parents=[common], help="decision procedures")
    d.add_argument("problem", choices=["lr", "lt", "lcs", "ep", "ep1", "eprec", "ep2m", "eprw"])
    d.add_argument("file")
    d.set_defaults(func=cmd_decide)

    x = sub.add_parser("reduce", parents=[common], help="instance constructions")
    x.add_argument("reduction", choices=["st2lr", "lr2ep", "lr2sync", "st2lt", "lr2lcs"])
    x.add_argument("file")
    x.add_argument("-o", "--output", default=None)
    x.set_defaults(func=cmd_reduce)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    except (InstanceError, OrdinalError, codes.MalformedSequence, ValueError) as exc:
        if isinstance(exc, (UnboundedDiscrepancy, NotUnary)):
            print(f"error: {exc}", file=sys.stderr)
            return USAGE
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE
    except BudgetExhausted as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return UNKNOWN
    except FileNotFoundError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
