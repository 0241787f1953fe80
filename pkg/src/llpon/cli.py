"""Command-line front end; every subcommand prints one JSON report on stdout."""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from .checks import CHECKS, Params, run_check
from .codec import list_decode
from .errors import FormulaSyntaxError, InvalidArity, UnknownSymbol
from .formula import format_formula, parse_formula
from .model import Env, Proven, Refuted, eval_model, llpo_certificate, parse_definition
from .prcodes import (
    clause_table,
    eval_good_via_codes,
    eval_very_good_via_codes,
    good_bound,
    vgood_bound,
)
from .realize import Machine, Pair, Stream, k2_apply_prefix, k2_echo, k2_constant, k2_parallel, race_at
from .trees import format_tree, parse_tree, shape


def _report(command: str, params: dict, started: float, failures=(), samples: int = 1, seed: int = 0, **extra):
    out = {
        "command": command,
        "params": params,
        "samples": samples,
        "failures": list(failures),
        "seed": seed,
        "elapsed_ms": int((time.perf_counter() - started) * 1000),
    }
    out.update(extra)
    return out


def certificate_json(cert) -> dict:
    return {
        "tree": format_tree(cert.tree),
        "target": cert.target,
        "leaves": [{"path": list(p), "annotation": a} for p, a in sorted(cert.leaves.items())],
    }


def _cmd_check(args) -> dict:
    if args.n < 2:
        raise InvalidArity(f"--n must be at least 2, got {args.n}")
    params = Params(n=args.n, samples=args.samples, max_depth=args.max_depth, max_switch=args.max_switch)
    return run_check(args.lemma, args.seed, params)


def _cmd_eval(args) -> dict:
    started = time.perf_counter()
    funcs = dict(parse_definition(d) for d in args.defs)
    env = Env(funcs, args.n, args.fuel)
    phi = parse_formula(args.formula, known=funcs)
    status = eval_model(phi, env)
    params = {"n": args.n, "fuel": args.fuel, "defs": args.defs, "formula": format_formula(phi)}
    extra = {"status": type(status).__name__, "fuel_spent": status.fuel_spent}
    if isinstance(status, Proven):
        extra["certificate"] = certificate_json(status.certificate)
        extra["witnesses"] = sorted(status.witnesses)
    elif isinstance(status, Refuted):
        extra["counterexample"] = status.counterexample
    return _report("eval", params, started, **extra)


def _cmd_encode(args) -> dict:
    started = time.perf_counter()
    t = parse_tree(args.tree)
    s = shape(t)
    return _report(
        "encode-tree",
        {"tree": format_tree(t)},
        started,
        shape=s,
        goodBound=good_bound(s),
        vgoodBound=vgood_bound(s),
        goodViaCodes=eval_good_via_codes(t),
        veryGoodViaCodes=eval_very_good_via_codes(t),
        clauses=clause_table(s),
    )


def _demo_llpo(args) -> dict:
    started = time.perf_counter()
    pos = None if args.one_at is None or args.one_at < 0 else args.one_at
    cert = llpo_certificate(pos, args.n)
    return _report(
        "demo llpo",
        {"n": args.n, "one_at": pos},
        started,
        certificate=format_tree(cert.tree),
        certifies=sorted(cert.leaves.values()),
    )


def _demo_dovetail(args) -> dict:
    started = time.perf_counter()
    ones = Machine.total(lambda m: 1, name="ones")
    zero3 = Machine.total(lambda m: 0 if m == 3 else 1, name="zero at 3")
    succ = Machine.total(lambda n: n + 1, lambda n: 2, name="succ")
    halting = Machine.total(lambda d: Machine.total(lambda z: Pair(succ, 0)), name="a1")
    cases = [
        ("track all ones, second algorithm halts", Machine.total(lambda d: Pair(ones, 0)), halting),
        ("zero at 3, second algorithm diverges", Machine.total(lambda d: Pair(zero3, 0)), Machine.diverge()),
        ("zero at 3, second algorithm halts", Machine.total(lambda d: Pair(zero3, 0)), halting),
    ]
    trace = []
    for label, a0, a1 in cases:
        for n in range(args.inputs):
            r = race_at(a0, a1, 0, n, args.budget)
            trace.append({"case": label, "n": n, "value": r.value, "winner": r.winner, "rounds": r.rounds})
    return _report("demo dovetail", {"inputs": args.inputs, "budget": args.budget}, started, trace=trace)


def _demo_k2(args) -> dict:
    started = time.perf_counter()
    beta = Stream(lambda code: 5 if len(list_decode(code)) > 3 else 0, name="answer 4 after 3 reads")
    with_zero = Stream(lambda i: 0 if i == 2 else 1, name="zero at 2")
    trace = [
        {"apply": "echo | const 2", "out": k2_apply_prefix(k2_echo(), Stream.const(2), 4, args.length)},
        {"apply": "answer 3 | const 9", "out": k2_apply_prefix(k2_constant(3), Stream.const(9), 0, args.length)},
        {"apply": "par(beta) | const 1", "out": k2_apply_prefix(k2_parallel(beta), Stream.const(1), 4, args.length)},
        {"apply": "beta | const 1", "out": k2_apply_prefix(beta, Stream.const(1), 4, args.length)},
        {"apply": "par(beta) | zero at 2", "out": k2_apply_prefix(k2_parallel(beta), with_zero, 4, args.length)},
    ]
    return _report("demo k2", {"length": args.length}, started, trace=trace)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="llpon", description="LLPO_n topological model workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check-lemma", help="run a randomised property suite")
    check.add_argument("lemma", choices=sorted(CHECKS))
    check.add_argument("--n", type=int, default=2)
    check.add_argument("--samples", type=int, default=200)
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--max-depth", type=int, default=3)
    check.add_argument("--max-switch", type=int, default=8)
    check.set_defaults(run=_cmd_check)

    ev = sub.add_parser("eval", help="evaluate a closed formula")
    ev.add_argument("--n", type=int, default=2)
    ev.add_argument("--fuel", type=int, default=100)
    ev.add_argument("--def", dest="defs", action="append", default=[], metavar="NAME=KIND@ARG")
    ev.add_argument("--formula", required=True)
    ev.set_defaults(run=_cmd_eval)

    enc = sub.add_parser("encode-tree", help="show the code and clause table of a tree")
    enc.add_argument("--tree", required=True)
    enc.set_defaults(run=_cmd_encode)

    demo = sub.add_parser("demo", help="canned demonstrations")
    demos = demo.add_subparsers(dest="demo", required=True)
    llpo = demos.add_parser("llpo")
    llpo.add_argument("--n", type=int, default=2)
    llpo.add_argument("--one-at", type=int, default=None, help="position of the single 1 (omit or -1 for none)")
    llpo.set_defaults(run=_demo_llpo)
    dov = demos.add_parser("dovetail")
    dov.add_argument("--inputs", type=int, default=4)
    dov.add_argument("--budget", type=int, default=200)
    dov.set_defaults(run=_demo_dovetail)
    k2 = demos.add_parser("k2")
    k2.add_argument("--length", type=int, default=6)
    k2.set_defaults(run=_demo_k2)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.run(args)
    except (FormulaSyntaxError, UnknownSymbol, InvalidArity, ValueError) as exc:
        print(f"llpon: error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(report, sort_keys=False))
    return 1 if report["failures"] else 0


def main() -> None:
    sys.exit(run())
