"""Certificate-producing evaluator for arithmetic formulas over the one-point topology.

A closed formula gets one of three verdicts:

``Proven``   0 lies in its truth value; carries a good-tree certificate whose
             cover lies inside the truth value, with reachable leaves
             annotated by the disjunct or witness they land in.
``Refuted``  the truth value is empty; a finite counterexample was found.
``Unknown``  the fuel ran out.

Atoms and bounded quantifiers are decided exactly.  Unbounded quantifiers
search below the fuel; a universal is settled early when every function it
mentions is eventually constant along the relevant terms.  Disjunctions of
the shape ``(forall x. g(n*x+0) = 0) \\/ ... \\/ (forall x. g(n*x+n-1) = 0)``
with ``g`` registered as unit-support are proven by the residue-track tree
(see :func:`llpo_certificate`) before anything else is tried.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence, Union

from .errors import InvalidArity, NotProven, UnknownSymbol, WitnessCountViolated
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
    disjuncts,
    format_formula,
    free_vars,
    subst,
    term_vars,
)
from .omega import is_one, llpo_split
from .topology import CoverCertificate, SubsetFamily, build_witness
from .trees import NIL, Tree, all_ones, leaf_node, reachable_nil_paths

# -- environment ----------------------------------------------------------------


@dataclass(frozen=True)
class FunctionSymbol:
    """A registered unary function with the metadata the evaluator can exploit.

    ``stable_from``: ``fn(x) == fn(stable_from)`` for every ``x >= stable_from``.
    ``unit_support``: values are bits with at most one 1, located at ``unit_at``.
    """

    fn: Callable[[int], int]
    stable_from: Optional[int] = None
    unit_support: bool = False
    unit_at: Optional[int] = None
    descriptor: str = "opaque"

    def __call__(self, x: int) -> int:
        return self.fn(x)

    @classmethod
    def unit(cls, pos: Optional[int]) -> "FunctionSymbol":
        if pos is None:
            return cls(lambda x: 0, 0, True, None, "unit@none")
        return cls(lambda x: 1 if x == pos else 0, pos + 1, True, pos, f"unit@{pos}")

    @classmethod
    def const(cls, c: int) -> "FunctionSymbol":
        return cls(lambda x: c, 0, c == 0, None, f"const@{c}")

    @classmethod
    def table(cls, values: Sequence[int]) -> "FunctionSymbol":
        """``values`` then the last value forever."""
        vals = tuple(values)
        if not vals:
            raise ValueError("table needs at least one value")
        last = len(vals) - 1
        ones = [i for i, v in enumerate(vals) if v == 1]
        unit = set(vals) <= {0, 1} and len(ones) <= 1 and vals[-1] == 0
        return cls(
            lambda x: vals[x] if x < last else vals[last],
            last,
            unit,
            ones[0] if unit and ones else None,
            "table@" + ",".join(map(str, vals)),
        )


def parse_definition(text: str) -> tuple[str, FunctionSymbol]:
    """``name=unit@5`` | ``name=unit@none`` | ``name=const@3`` | ``name=table@0,1,0``."""
    name, sep, rhs = text.partition("=")
    name = name.strip()
    if not sep or not name.isidentifier():
        raise ValueError(f"bad definition {text!r}; expected name=kind@arg")
    kind, _, arg = rhs.strip().partition("@")
    if kind == "unit":
        return name, FunctionSymbol.unit(None if arg == "none" else int(arg))
    if kind == "const":
        return name, FunctionSymbol.const(int(arg))
    if kind == "table":
        return name, FunctionSymbol.table([int(v) for v in arg.split(",")])
    raise ValueError(f"unknown function kind {kind!r}")


@dataclass
class Env:
    funcs: Mapping[str, FunctionSymbol] = field(default_factory=dict)
    n: int = 2
    fuel: int = 100

    def __post_init__(self):
        if self.n < 2:
            raise InvalidArity(f"model arity must be at least 2, got {self.n}")
        self.funcs = {
            k: v if isinstance(v, FunctionSymbol) else FunctionSymbol(v) for k, v in self.funcs.items()
        }


# -- verdicts -------------------------------------------------------------------


@dataclass(frozen=True)
class Proven:
    certificate: CoverCertificate
    fuel_spent: int = 0

    @property
    def witnesses(self) -> frozenset:
        return frozenset(self.certificate.leaves.values())


@dataclass(frozen=True)
class Refuted:
    counterexample: str
    fuel_spent: int = 0


@dataclass(frozen=True)
class Unknown:
    fuel_spent: int


Status = Union[Proven, Refuted, Unknown]

# -- certificates -----------------------------------------------------------------


def llpo_certificate(one_pos: Optional[int], n: int) -> CoverCertificate:
    """Residue-track tree for a bit sequence whose only 1 (if any) is at ``one_pos``.

    Branch k carries ``ONE`` exactly when the sequence vanishes on the
    residue class ``k mod n``, and is annotated with k.
    """
    labels = llpo_split(one_pos, n)
    tree = leaf_node(labels)
    leaves = {(k,): k for k, a in enumerate(labels) if is_one(a)}
    return CoverCertificate(tree, f"LLPO_{n} residue classes", leaves)


def _nil_cert(target: str, annotation=None) -> CoverCertificate:
    return CoverCertificate(NIL, target, {(): annotation} if annotation is not None else {})


def _relabel(cert: CoverCertificate, annotation, target: str) -> CoverCertificate:
    return CoverCertificate(cert.tree, target, {p: annotation for p in reachable_nil_paths(cert.tree)})


# -- evaluator --------------------------------------------------------------------

_MAX_EXPANSION = 10_000


class _Evaluator:
    def __init__(self, env: Env):
        self.env = env
        self.spent = 0

    # terms
    def term(self, t: Term) -> int:
        if isinstance(t, Num):
            return t.value
        if isinstance(t, Var):
            raise ValueError(f"free variable {t.name!r}")
        if isinstance(t, App):
            return self.func(t.fn)(self.term(t.arg))
        if isinstance(t, Add):
            return self.term(t.left) + self.term(t.right)
        return self.term(t.left) * self.term(t.right)

    def func(self, name: str) -> FunctionSymbol:
        try:
            return self.env.funcs[name]
        except KeyError:
            raise UnknownSymbol(f"unregistered function symbol {name!r}") from None

    # formulas; results are ("P", cert) | ("R", reason) | ("U", None)
    def eval(self, phi: Formula):
        target = format_formula(phi)
        if isinstance(phi, Falsum):
            return "R", "false"
        if isinstance(phi, (Eq, Lt)):
            a, b = self.term(phi.left), self.term(phi.right)
            ok = a == b if isinstance(phi, Eq) else a < b
            return ("P", _nil_cert(target)) if ok else ("R", f"{target} fails: {a} vs {b}")
        if isinstance(phi, Not):
            kind, payload = self.eval(Implies(phi.body, Falsum()))
            return (kind, _nil_cert(target)) if kind == "P" else (kind, payload)
        if isinstance(phi, And):
            left = self.eval(phi.left)
            if left[0] == "R":
                return left
            right = self.eval(phi.right)
            if right[0] == "R":
                return right
            if left[0] == right[0] == "P":
                return "P", _nil_cert(target)
            return "U", None
        if isinstance(phi, Implies):
            ante = self.eval(phi.left)
            if ante[0] == "R":
                return "P", _nil_cert(target)
            cons = self.eval(phi.right)
            if cons[0] == "P":
                return "P", _nil_cert(target)
            if ante[0] == "P" and cons[0] == "R":
                return "R", f"premise holds but {cons[1]}"
            return "U", None
        if isinstance(phi, Or):
            return self.disjunction(disjuncts(phi), target)
        if isinstance(phi, Forall):
            if phi.bound is None:
                return self.forall_unbounded(phi, target)
            return self.forall_bounded(phi, target)
        if phi.bound is None:
            return self.exists_unbounded(phi, target)
        return self.exists_bounded(phi, target)

    def disjunction(self, ds: list, target: str):
        hint = self.llpo_hint(ds)
        if hint is not None:
            return "P", hint
        results = []
        for i, d in enumerate(ds):
            r = self.eval(d)
            if r[0] == "P":
                return "P", _relabel(r[1], i, target)
            results.append(r)
        if all(r[0] == "R" for r in results):
            return "R", "; ".join(r[1] for r in results)
        return "U", None

    def forall_bounded(self, phi: Forall, target: str):
        undecided = False
        for x in range(self.term(phi.bound)):
            r = self.eval(subst(phi.body, phi.var, x))
            if r[0] == "R":
                return "R", f"{phi.var}={x}: {r[1]}"
            undecided |= r[0] == "U"
        return ("U", None) if undecided else ("P", _nil_cert(target))

    def exists_bounded(self, phi: Exists, target: str):
        bound = self.term(phi.bound)
        hint = self.llpo_exists_hint(phi, bound)
        if hint is not None:
            return "P", hint
        undecided = False
        for x in range(bound):
            r = self.eval(subst(phi.body, phi.var, x))
            if r[0] == "P":
                return "P", _relabel(r[1], x, target)
            undecided |= r[0] == "U"
        return ("U", None) if undecided else ("R", f"no {phi.var} below {bound}")

    def forall_unbounded(self, phi: Forall, target: str):
        settle = eventual_threshold(phi.body, phi.var, self)
        undecided = False
        for x in range(self.env.fuel):
            self.spent += 1
            r = self.eval(subst(phi.body, phi.var, x))
            if r[0] == "R":
                return "R", f"{phi.var}={x}: {r[1]}"
            undecided |= r[0] == "U"
            if settle is not None and x >= settle and not undecided:
                return "P", _nil_cert(target)
        return "U", None

    def exists_unbounded(self, phi: Exists, target: str):
        for x in range(self.env.fuel):
            self.spent += 1
            r = self.eval(subst(phi.body, phi.var, x))
            if r[0] == "P":
                return "P", _relabel(r[1], x, target)
        return "U", None

    # LLPO_n pattern
    def residue_of(self, d: Formula):
        """``(g, c)`` when ``d`` reads ``forall x. g(n*x + c) = 0``."""
        if not (isinstance(d, Forall) and d.bound is None and isinstance(d.body, Eq)):
            return None
        left, right = d.body.left, d.body.right
        if isinstance(left, Num) and isinstance(right, App):
            left, right = right, left
        if not (isinstance(left, App) and right == Num(0)):
            return None
        coeffs = affine(left.arg, d.var)
        if coeffs is None or coeffs[0] != self.env.n:
            return None
        return left.fn, coeffs[1]

    def llpo_hint(self, ds: list) -> Optional[CoverCertificate]:
        n = self.env.n
        if len(ds) != n:
            return None
        found = [self.residue_of(d) for d in ds]
        if any(f is None for f in found):
            return None
        names = {g for g, _ in found}
        if len(names) != 1 or [c for _, c in found] != list(range(n)):
            return None
        g = self.env.funcs.get(names.pop())
        if g is None or not g.unit_support:
            return None
        return llpo_certificate(g.unit_at, n)

    def llpo_exists_hint(self, phi: Exists, bound: int) -> Optional[CoverCertificate]:
        if bound != self.env.n:
            return None
        return self.llpo_hint([subst(phi.body, phi.var, c) for c in range(bound)])


def affine(t: Term, var: str) -> Optional[tuple[int, int]]:
    """``(a, c)`` with ``t == a*var + c`` for linear ground-coefficient terms."""
    if isinstance(t, Num):
        return 0, t.value
    if isinstance(t, Var):
        return (1, 0) if t.name == var else None
    if isinstance(t, Add):
        l, r = affine(t.left, var), affine(t.right, var)
        if l is None or r is None:
            return None
        return l[0] + r[0], l[1] + r[1]
    if isinstance(t, Mul):
        l, r = affine(t.left, var), affine(t.right, var)
        if l is None or r is None:
            return None
        if l[0] == 0:
            return l[1] * r[0], l[1] * r[1]
        if r[0] == 0:
            return r[1] * l[0], r[1] * l[1]
    return None


# -- eventual constancy ------------------------------------------------------------


def _term_shape(t: Term, x: str, ev: _Evaluator):
    """``("c", value, N)``: equals value for x >= N; ``("g", N)``: >= x for x >= N."""
    if x not in term_vars(t):
        return "c", ev.term(t), 0
    if isinstance(t, Var):
        return "g", 0
    if isinstance(t, App):
        inner = _term_shape(t.arg, x, ev)
        if inner is None:
            return None
        f = ev.func(t.fn)
        if inner[0] == "c":
            return "c", f(inner[1]), inner[2]
        if f.stable_from is None:
            return None
        return "c", f(f.stable_from), max(inner[1], f.stable_from)
    l, r = _term_shape(t.left, x, ev), _term_shape(t.right, x, ev)
    if l is None or r is None:
        return None
    N = max(l[-1], r[-1])
    if l[0] == r[0] == "c":
        v = l[1] + r[1] if isinstance(t, Add) else l[1] * r[1]
        return "c", v, N
    if isinstance(t, Mul):
        const = l if l[0] == "c" else r if r[0] == "c" else None
        if const is not None and const[1] == 0:
            return "c", 0, N
    return "g", N


def eventual_threshold(phi: Formula, x: str, ev: _Evaluator) -> Optional[int]:
    """Some N such that the truth of ``phi`` does not change for x >= N, if one is evident."""
    if x not in free_vars(phi):
        return 0
    if isinstance(phi, (Eq, Lt)):
        l, r = _term_shape(phi.left, x, ev), _term_shape(phi.right, x, ev)
        if l is None or r is None:
            return None
        N = max(l[-1], r[-1])
        if l[0] == r[0] == "c":
            return N
        if l[0] == r[0] == "g":
            return None
        if isinstance(phi, Eq):
            v = l[1] if l[0] == "c" else r[1]
            return max(N, v + 1)
        if l[0] == "g":
            return max(N, r[1])
        return max(N, l[1] + 1)
    if isinstance(phi, Not):
        return eventual_threshold(phi.body, x, ev)
    if isinstance(phi, (And, Or, Implies)):
        a = eventual_threshold(phi.left, x, ev)
        b = eventual_threshold(phi.right, x, ev)
        return None if a is None or b is None else max(a, b)
    if phi.bound is None or phi.var == x:
        return None
    shape = _term_shape(phi.bound, x, ev)
    if shape is None or shape[0] != "c" or shape[1] > _MAX_EXPANSION:
        return None
    N = shape[2]
    for y in range(shape[1]):
        t = eventual_threshold(subst(phi.body, phi.var, y), x, ev)
        if t is None:
            return None
        N = max(N, t)
    return N


# -- public API ---------------------------------------------------------------------


def eval_model(phi: Formula, env: Env) -> Status:
    if free_vars(phi):
        raise ValueError(f"formula has free variables: {sorted(free_vars(phi))}")
    ev = _Evaluator(env)
    kind, payload = ev.eval(phi)
    if kind == "P":
        return Proven(payload, ev.spent)
    if kind == "R":
        return Refuted(payload, ev.spent)
    return Unknown(ev.spent)


def witness_bound(phi: Formula, env: Env) -> frozenset:
    """Finite set of candidates that a proof of ``exists x. ...`` ranges over."""
    if not isinstance(phi, Exists):
        raise TypeError("witness_bound expects an existential formula")
    status = eval_model(phi, env)
    if not isinstance(status, Proven):
        raise NotProven(f"{format_formula(phi)} evaluated to {type(status).__name__}")
    return status.witnesses


def herbrand_bound(J) -> int:
    """Strict upper bound m with some witness below m."""
    return max(J) + 1


def choose_with_trees(
    phi: Callable[[int, int], bool],
    X: int,
    k: int,
    n: int,
    y_bound: int = 64,
    start: Optional[Callable[[int], Tree]] = None,
) -> tuple[dict, list]:
    """Bounded choice: for each x < X a value f(x) and a good tree guarding it.

    Each row must have between 1 and ``k`` witnesses below ``y_bound``.  The
    tree for x is obtained by shrinking ``start(x)`` (default: the all-``ONE``
    n-node) through :func:`build_witness`; if it is very good then
    ``phi(x, f(x))`` holds.
    """
    if not 1 <= k < n:
        raise InvalidArity(f"need 1 <= k < n, got k={k}, n={n}")
    f, trees = {}, []
    for x in range(X):
        count = sum(1 for y in range(y_bound) if phi(x, y))
        if not 1 <= count <= k:
            raise WitnessCountViolated(f"row {x} has {count} witnesses, expected 1..{k}")
        fam = SubsetFamily(lambda y, x=x: phi(x, y), y_bound)
        tree = all_ones(n) if start is None else start(x)
        f[x], s = build_witness(tree, fam, k)
        trees.append(s)
    return f, trees
