"""Randomised property checks behind ``llpon check-lemma`` and the acceptance suite.

Each check draws ``samples`` instances from a seeded :class:`random.Random`
and returns a list of serialisable failure records (empty on success).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Mapping, Optional

from .formula import (
    Add,
    And,
    App,
    Eq,
    Exists,
    Falsum,
    Forall,
    Formula,
    Implies,
    Lt,
    Mul,
    Not,
    Num,
    Or,
    Term,
    Var,
    format_formula,
)
from .model import Env, FunctionSymbol, Proven, Unknown, eval_model, llpo_certificate
from .prcodes import eval_good_via_codes, eval_very_good_via_codes
from .realize import Machine, Pair, Stream, k2_apply_prefix, k2_parallel, race_at
from .codec import list_decode, list_encode
from .errors import BudgetExhausted
from .sampling import random_family, random_good_tree, random_tree
from .topology import SubsetFamily, build_witness, compactify, intersect, refine, witness_arity
from .trees import Node, cover0, format_tree, is_good, is_very_good, reachable_nil_paths


@dataclass(frozen=True)
class Params:
    n: int = 2
    samples: int = 200
    max_depth: int = 3
    max_switch: int = 8


CheckFn = Callable[[random.Random, Params], list]

# -- trees and codes --------------------------------------------------------------


def check_covvgood(rng: random.Random, p: Params) -> list:
    out = []
    for i in range(p.samples):
        t = random_good_tree(rng, p.n, p.max_depth, p.max_switch)
        if cover0(t) != is_very_good(t):
            out.append({"sample": i, "tree": format_tree(t)})
    return out


def check_prgood(rng: random.Random, p: Params) -> list:
    out = []
    for i in range(p.samples):
        t = random_tree(rng, p.n, p.max_depth, p.max_switch)
        want, got = is_good(t), eval_good_via_codes(t)
        if want != got:
            out.append({"sample": i, "tree": format_tree(t), "oracle": want, "codes": got})
    return out


def check_prvgood(rng: random.Random, p: Params) -> list:
    out = []
    for i in range(p.samples):
        t = random_tree(rng, p.n, p.max_depth, p.max_switch)
        want, got = is_very_good(t), eval_very_good_via_codes(t)
        if want != got:
            out.append({"sample": i, "tree": format_tree(t), "oracle": want, "codes": got})
    return out


# -- topology ---------------------------------------------------------------------


def check_intersect(rng: random.Random, p: Params) -> list:
    out = []
    for i in range(p.samples):
        t = random_good_tree(rng, p.n, p.max_depth, p.max_switch)
        s = random_good_tree(rng, p.n, p.max_depth, p.max_switch)
        r = intersect(t, s)
        if not is_good(r) or (cover0(r) and not (cover0(t) and cover0(s))):
            out.append({"sample": i, "t": format_tree(t), "s": format_tree(s), "r": format_tree(r)})
    return out


def check_refine(rng: random.Random, p: Params) -> list:
    """Output is good and its cover lies in the union of the assigned covers."""
    out = []
    for i in range(p.samples):
        t = random_good_tree(rng, p.n, p.max_depth, p.max_switch)
        assign = {
            path: random_good_tree(rng, p.n, max(p.max_depth - 1, 0), p.max_switch)
            for path in reachable_nil_paths(t)
        }
        r = refine(t, assign)
        landed = any(cover0(a) for a in assign.values())
        if not is_good(r) or (cover0(r) and not (landed and cover0(t))):
            out.append({"sample": i, "t": format_tree(t), "r": format_tree(r)})
    return out


def _random_choice(rng: random.Random, fam: SubsetFamily):
    members = fam.true_indices()
    picks: dict = {}

    def choose(path):
        if path not in picks:
            picks[path] = rng.choice(members)
        return picks[path]

    return choose


def check_compact(rng: random.Random, p: Params) -> list:
    out = []
    for i in range(p.samples):
        t = random_good_tree(rng, p.n, p.max_depth, p.max_switch)
        fam = random_family(rng, max_members=4)
        js, s = compactify(t, fam, _random_choice(rng, fam))
        ok = (
            js
            and all(fam.contains(j) for j in js)
            and len(js) <= max(1, sum(1 for _ in reachable_nil_paths(t)))
            and is_good(s)
            and (not cover0(s) or cover0(t))
        )
        if not ok:
            out.append({"sample": i, "tree": format_tree(t), "J": sorted(js), "members": sorted(fam.members)})
    return out


def check_buildwitness(rng: random.Random, p: Params) -> list:
    out = []
    n = p.n
    for i in range(p.samples):
        k = rng.randint(1, n - 1)
        t = random_good_tree(rng, n, p.max_depth, p.max_switch)
        fam = random_family(rng, max_members=k)
        j, s = build_witness(t, fam, k, _random_choice(rng, fam))
        ok = is_good(s)
        if isinstance(s, Node):
            ok = ok and all(node_arity == witness_arity(n, k) for node_arity in _arities(s))
        if is_very_good(t):
            ok = ok and fam.contains(j)
        if k == 1:
            ok = ok and j == fam.first()
        if not ok:
            out.append({"sample": i, "k": k, "tree": format_tree(t), "members": sorted(fam.members), "j": j})
    return out


def _arities(t):
    if isinstance(t, Node):
        yield t.arity
        for c in t.subtrees:
            yield from _arities(c)


# -- model --------------------------------------------------------------------------


def llpo_disjunction(g: str, n: int) -> Formula:
    phi = None
    for c in range(n):
        arg = Mul(Num(n), Var("x"))
        if c:
            arg = Add(arg, Num(c))
        d = Forall("x", None, Eq(App(g, arg), Num(0)))
        phi = d if phi is None else Or(phi, d)
    return phi


def check_llpo_sound(rng: random.Random, p: Params) -> list:
    """Exhaustive over the 1-position (None and 0..50); ``samples`` is ignored."""
    out = []
    n = p.n
    phi = llpo_disjunction("g", n)
    for pos in [None] + list(range(51)):
        cert = llpo_certificate(pos, n)
        status = eval_model(phi, Env({"g": FunctionSymbol.unit(pos)}, n, fuel=10))
        ok = is_good(cert.tree) and isinstance(status, Proven) and is_good(status.certificate.tree)
        if ok:
            annotated = status.witnesses
            ok = bool(annotated) and all(pos is None or pos % n != k for k in annotated)
        if not ok:
            out.append({"one_at": pos, "status": type(status).__name__})
    return out


_FUNCS = ("f", "g", "h")


def random_env(rng: random.Random, n: int = 2, fuel: int = 20) -> Env:
    funcs = {}
    for name in _FUNCS:
        kind = rng.randrange(3)
        if kind == 0:
            funcs[name] = FunctionSymbol.unit(rng.choice([None] + list(range(6))))
        elif kind == 1:
            funcs[name] = FunctionSymbol.const(rng.randint(0, 3))
        else:
            funcs[name] = FunctionSymbol.table([rng.randint(0, 4) for _ in range(rng.randint(1, 5))])
    return Env(funcs, n, fuel)


def random_term(rng: random.Random, scope: list, depth: int = 2) -> Term:
    roll = rng.random()
    if depth == 0 or roll < 0.3:
        if scope and rng.random() < 0.6:
            return Var(rng.choice(scope))
        return Num(rng.randint(0, 5))
    if roll < 0.65:
        return App(rng.choice(_FUNCS), random_term(rng, scope, depth - 1))
    op = Add if roll < 0.85 else Mul
    return op(random_term(rng, scope, depth - 1), random_term(rng, scope, depth - 1))


def random_formula(
    rng: random.Random, depth: int = 3, scope: Optional[list] = None, unbounded: float = 0.0
) -> Formula:
    """Random closed formula over f, g, h; ``unbounded`` is the chance a quantifier has no bound."""
    scope = scope or []
    roll = rng.random()
    if depth == 0 or roll < 0.25:
        if rng.random() < 0.05:
            return Falsum()
        atom = Eq if rng.random() < 0.5 else Lt
        return atom(random_term(rng, scope), random_term(rng, scope))
    if roll < 0.6:
        var = f"x{len(scope)}"
        bound = None if rng.random() < unbounded else Num(rng.randint(0, 4))
        if bound is not None and scope and rng.random() < 0.3:
            bound = Add(Var(rng.choice(scope)), Num(1))
        body = random_formula(rng, depth - 1, scope + [var], unbounded)
        return (Forall if rng.random() < 0.5 else Exists)(var, bound, body)
    if roll < 0.7:
        return Not(random_formula(rng, depth - 1, scope, unbounded))
    op = rng.choice([And, Or, Implies])
    return op(
        random_formula(rng, depth - 1, scope, unbounded), random_formula(rng, depth - 1, scope, unbounded)
    )


def classical_truth(phi: Formula, funcs: Mapping[str, Callable[[int], int]], horizon: Optional[int] = None) -> bool:
    """Plain two-valued evaluation; unbounded quantifiers range below ``horizon``."""

    def term(t: Term, rho: dict) -> int:
        if isinstance(t, Num):
            return t.value
        if isinstance(t, Var):
            return rho[t.name]
        if isinstance(t, App):
            return funcs[t.fn](term(t.arg, rho))
        a, b = term(t.left, rho), term(t.right, rho)
        return a + b if isinstance(t, Add) else a * b

    def holds(phi: Formula, rho: dict) -> bool:
        if isinstance(phi, Falsum):
            return False
        if isinstance(phi, Eq):
            return term(phi.left, rho) == term(phi.right, rho)
        if isinstance(phi, Lt):
            return term(phi.left, rho) < term(phi.right, rho)
        if isinstance(phi, Not):
            return not holds(phi.body, rho)
        if isinstance(phi, And):
            return holds(phi.left, rho) and holds(phi.right, rho)
        if isinstance(phi, Or):
            return holds(phi.left, rho) or holds(phi.right, rho)
        if isinstance(phi, Implies):
            return not holds(phi.left, rho) or holds(phi.right, rho)
        if phi.bound is None:
            if horizon is None:
                raise ValueError("unbounded quantifier needs a horizon")
            top = horizon
        else:
            top = term(phi.bound, rho)
        test = all if isinstance(phi, Forall) else any
        return test(holds(phi.body, {**rho, phi.var: x}) for x in range(top))

    return holds(phi, {})


def check_soundness(rng: random.Random, p: Params) -> list:
    """Bounded formulas are decided and agree with classical truth; fuel monotonicity on a quarter as many."""
    out = []
    for i in range(p.samples):
        env = random_env(rng, p.n)
        phi = random_formula(rng, depth=3)
        status = eval_model(phi, env)
        truth = classical_truth(phi, env.funcs)
        good_cert = not isinstance(status, Proven) or is_good(status.certificate.tree)
        if isinstance(status, Unknown) or isinstance(status, Proven) != truth or not good_cert:
            out.append({"sample": i, "formula": format_formula(phi), "status": type(status).__name__, "truth": truth})
    for i in range(max(1, p.samples // 4)):
        env = random_env(rng, p.n)
        phi = random_formula(rng, depth=3, unbounded=0.6)
        low = rng.randint(0, 12)
        high = low + rng.randint(1, 12)
        a = eval_model(phi, Env(env.funcs, env.n, low))
        b = eval_model(phi, Env(env.funcs, env.n, high))
        if not isinstance(a, Unknown) and type(a) is not type(b):
            out.append({"monotonicity": i, "formula": format_formula(phi), "fuel": [low, high],
                        "status": [type(a).__name__, type(b).__name__]})
    return out


# -- realizers ------------------------------------------------------------------------


@dataclass(frozen=True)
class DovetailInstance:
    a0_cost: int
    track_cost: int
    zero_at: Optional[int]
    a1_cost: Optional[int]
    apply_cost: int
    fn_cost: int
    offset: int

    def machines(self):
        zero_at = self.zero_at
        track = Machine.total(lambda m: 0 if m == zero_at else 1, lambda m: self.track_cost, "track")
        a0 = Machine.total(lambda d: Pair(track, 0), lambda d: self.a0_cost, "a0")
        fn = Machine.total(lambda n: n + self.offset, lambda n: self.fn_cost, "shift")
        if self.a1_cost is None:
            return a0, Machine.diverge("a1")
        e = Machine.total(lambda z: Pair(fn, self.offset), lambda z: self.apply_cost, "a1 d")
        return a0, Machine.total(lambda d: e, lambda d: self.a1_cost, "a1")

    def expected(self, n: int):
        """``(value, winner, steps)`` by counting steps; None if neither halts."""
        first = None
        if self.zero_at is not None:
            first = self.a0_cost + 1 + (self.zero_at + 1) * (self.track_cost + 1)
        second = None
        if self.a1_cost is not None:
            second = self.a1_cost + self.apply_cost + self.fn_cost + 3
        if first is not None and (second is None or first <= second):
            return 0, 1, first
        if second is not None:
            return n + self.offset, 2, second
        return None


def random_dovetail_instance(rng: random.Random, zero: bool) -> DovetailInstance:
    return DovetailInstance(
        a0_cost=rng.randint(0, 4),
        track_cost=rng.randint(0, 3),
        zero_at=rng.randint(0, 6) if zero else None,
        a1_cost=(rng.choice([None, rng.randint(0, 30)]) if zero else rng.randint(0, 8)),
        apply_cost=rng.randint(0, 4),
        fn_cost=rng.randint(0, 4),
        offset=rng.randint(1, 5),
    )


def check_dovetail(rng: random.Random, p: Params) -> list:
    out = []
    budget = 200
    for i in range(p.samples):
        inst = random_dovetail_instance(rng, zero=i % 2 == 1)
        a0, a1 = inst.machines()
        for n in range(4):
            want = inst.expected(n)
            try:
                got = race_at(a0, a1, 0, n, budget)
                result = (got.value, got.winner, got.rounds)
            except BudgetExhausted:
                result = None
            if want is not None and want[2] > budget:
                want = None
            if result != want:
                out.append({"sample": i, "n": n, "instance": inst.__dict__, "got": result, "want": want})
                break
    return out


def random_beta(rng: random.Random) -> Stream:
    """Answers ``h(n)`` after reading ``L(n)`` oracle values, 0 before."""
    lengths = [rng.randint(0, 4) for _ in range(8)]
    answers = [rng.randint(0, 9) for _ in range(8)]

    def entry(code: int) -> int:
        query = list_decode(code)
        if not query:
            return 0
        n = query[0] % 8
        return answers[n] + 1 if len(query) - 1 >= lengths[n] else 0

    return Stream(entry, name="beta")


def check_k2(rng: random.Random, p: Params) -> list:
    out = []
    for i in range(p.samples):
        beta = random_beta(rng)
        par = k2_parallel(beta)
        for _ in range(8):
            seq = [rng.randint(0, 40)] + [rng.choice([1, 1, 1, 0, 2]) for _ in range(rng.randint(0, 4))]
            code = list_encode(seq)
            want = 1 if any(m != 1 for m in seq[1:]) else beta(code)
            if par(code) != want:
                out.append({"sample": i, "query": seq})
        ones = Stream.const(1)
        lhs = k2_apply_prefix(par, ones, 8, 32)
        rhs = k2_apply_prefix(beta, ones, 8, 32)
        if lhs != rhs:
            out.append({"sample": i, "lhs": repr(lhs), "rhs": repr(rhs)})
    return out


CHECKS: dict[str, CheckFn] = {
    "covvgood": check_covvgood,
    "prgood": check_prgood,
    "prvgood": check_prvgood,
    "intersect": check_intersect,
    "refine": check_refine,
    "compact": check_compact,
    "buildwitness": check_buildwitness,
    "llpo-sound": check_llpo_sound,
    "soundness": check_soundness,
    "dovetail": check_dovetail,
    "k2": check_k2,
}


def run_check(name: str, seed: int, params: Params) -> dict:
    """Run one named check and package the JSON report."""
    start = time.perf_counter()
    failures = CHECKS[name](random.Random(seed), params)
    samples = 52 if name == "llpo-sound" else params.samples
    return {
        "command": f"check-lemma {name}",
        "params": {
            "n": params.n,
            "max_depth": params.max_depth,
            "max_switch": params.max_switch,
        },
        "samples": samples,
        "failures": failures,
        "seed": seed,
        "elapsed_ms": int((time.perf_counter() - start) * 1000),
    }
