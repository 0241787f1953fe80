"""Step-budgeted machines, the parallel dovetail combinator and K2 stream application.

A :class:`Machine` is a host generator function ``prog(x)``: every ``yield``
is one computation step and the ``return`` value is the result.  Results
may be numbers, other machines or :class:`Pair` values, which is enough to
express the curried application ``(a d)_0 m`` of a partial combinatory
algebra without an enumeration of programs.

Streams are total maps on the naturals.  Application follows the usual
prefix-interrogation rule: ``(alpha | beta)(n) = m`` when
``alpha(<n, beta(0), ..., beta(k-1)>) = m + 1`` for some k and alpha
answers 0 on all shorter queries.  Queries are coded with the list codec of
:mod:`llpon.codec`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Any, Callable, Generator, Optional, Union

from .codec import list_decode, list_encode
from .errors import ApplicationUndefined, BudgetExhausted

Program = Callable[[int], Generator[None, None, Any]]

# -- machines ---------------------------------------------------------------


@dataclass(frozen=True)
class Halted:
    value: Any
    steps: int


@dataclass(frozen=True)
class Running:
    budget: int


class Machine:
    """A partial map presented as a step generator; pure per input."""

    def __init__(self, prog: Program, name: str = "machine"):
        self.prog = prog
        self.name = name

    def __repr__(self) -> str:
        return f"Machine({self.name})"

    def steps(self, x: int) -> Generator[None, None, Any]:
        return self.prog(x)

    def run(self, x: int, budget: int) -> Union[Halted, Running]:
        """Run on ``x`` for at most ``budget`` steps."""
        gen = self.prog(x)
        taken = 0
        while True:
            try:
                next(gen)
            except StopIteration as stop:
                return Halted(stop.value, taken)
            taken += 1
            if taken > budget:
                return Running(budget)

    @classmethod
    def total(cls, fn: Callable[[int], Any], cost: Callable[[int], int] = lambda x: 1, name: str = "total"):
        def prog(x):
            for _ in range(cost(x)):
                yield
            return fn(x)

        return cls(prog, name)

    @classmethod
    def constant(cls, value: Any, cost: int = 1, name: str = "const"):
        return cls.total(lambda x: value, lambda x: cost, name)

    @classmethod
    def diverge(cls, name: str = "diverge"):
        def prog(x):
            while True:
                yield

        return cls(prog, name)


class Lazy:
    """A suspended value, forced at most once."""

    def __init__(self, thunk: Callable[[], Any]):
        self._thunk = thunk
        self._lock = threading.Lock()
        self._done = False
        self._value = None

    def force(self) -> Any:
        with self._lock:
            if not self._done:
                self._value = self._thunk()
                self._done = True
            return self._value


@dataclass(frozen=True)
class Pair:
    fst: Any
    snd: Any


def pair(a: Any, b: Any) -> Pair:
    return Pair(a, b)


def fst(p: Pair) -> Any:
    return p.fst


def snd(p: Pair) -> Any:
    v = p.snd
    return v.force() if isinstance(v, Lazy) else v


def evaluate(m: Machine, x: int) -> Generator[None, None, Any]:
    """Step through ``m`` on ``x`` inside another machine (use with ``yield from``).

    The application itself costs one step, so a loop of applications always
    makes progress.
    """
    yield
    return (yield from m.steps(x))


# -- dovetail -----------------------------------------------------------------


@dataclass(frozen=True)
class RaceResult:
    value: Any
    winner: int
    rounds: int


def _scan_track(a0: Machine, d: int) -> Generator[None, None, int]:
    track = fst((yield from evaluate(a0, d)))
    m = 0
    while True:
        if (yield from evaluate(track, m)) != 1:
            return 0
        m += 1


def _second(a1: Machine, d: int, n: int) -> Generator[None, None, Any]:
    e = yield from evaluate(a1, d)
    p = yield from evaluate(e, 0)
    return (yield from evaluate(fst(p), n))


def race(a0: Machine, a1: Machine, d: int, n: int) -> Generator[None, None, RaceResult]:
    """Strictly alternate one step of each algorithm, the track scan first.

    Yields once per completed round; the scan wins ties.
    """
    first, second = _scan_track(a0, d), _second(a1, d, n)
    rounds = 0
    while True:
        try:
            next(first)
        except StopIteration as stop:
            return RaceResult(stop.value, 1, rounds)
        try:
            next(second)
        except StopIteration as stop:
            return RaceResult(stop.value, 2, rounds)
        rounds += 1
        yield


def race_at(a0: Machine, a1: Machine, d: int, n: int, budget: int) -> RaceResult:
    result = Machine(lambda x: race(a0, a1, d, x)).run(n, budget)
    if isinstance(result, Running):
        raise BudgetExhausted(n, budget)
    return result.value


def dovetail(a0: Machine, a1: Machine, d: int, budget: int) -> Callable[[int], Any]:
    """The map ``n -> (b d)_0 n``, each argument allowed ``budget`` rounds.

    Output is 0 if a non-1 entry of the track ``(a0 d)_0`` is found first,
    and ``(a1 d 0)_0 n`` if that evaluation finishes first.
    """
    cache: dict = {}
    lock = threading.Lock()

    def value(n: int) -> Any:
        with lock:
            if n not in cache:
                cache[n] = race_at(a0, a1, d, n, budget).value
            return cache[n]

    return value


def ip_realizer(a0: Machine, a1: Machine) -> Machine:
    """``b`` with ``b d = p (dovetail machine) (lazy (a1 d 0)_1)``.

    The second component is only computed if someone projects it, since
    ``a1 d`` need not denote.
    """

    def prog(d: int):
        dov = Machine(lambda n: _race_value(a0, a1, d, n), name=f"dovetail@{d}")

        def second_component():
            e = a1.run(d, _UNBOUNDED)
            p = e.value.run(0, _UNBOUNDED)
            return snd(p.value)

        return Pair(dov, Lazy(second_component))
        yield  # pragma: no cover

    return Machine(prog, name="ip")


_UNBOUNDED = 10**9


def _race_value(a0, a1, d, n):
    return (yield from race(a0, a1, d, n)).value


# -- K2 streams ---------------------------------------------------------------


class Stream:
    """Total map on naturals, memoised; safe to share between threads."""

    def __init__(self, fn: Callable[[int], int], name: str = "stream"):
        self._fn = fn
        self._memo: dict = {}
        self._lock = threading.RLock()
        self.name = name

    def __repr__(self) -> str:
        return f"Stream({self.name})"

    def __call__(self, i: int) -> int:
        with self._lock:
            if i not in self._memo:
                self._memo[i] = self._fn(i)
            return self._memo[i]

    def prefix(self, k: int) -> list[int]:
        return [self(i) for i in range(k)]

    @property
    def inspected(self) -> frozenset:
        with self._lock:
            return frozenset(self._memo)

    @classmethod
    def const(cls, c: int) -> "Stream":
        return cls(lambda i: c, name=f"const {c}")


@dataclass(frozen=True)
class Undefined:
    argument: int


def k2_value(alpha: Stream, beta: Stream, n: int, fuel: int) -> Optional[int]:
    """``(alpha | beta)(n)`` consulting at most ``fuel`` oracle values, else None."""
    for k in range(fuel + 1):
        v = alpha(list_encode([n] + beta.prefix(k)))
        if v > 0:
            return v - 1
    return None


def k2_apply(alpha: Stream, beta: Stream, fuel: int) -> Stream:
    """Lazy application; reading an undefined entry raises ApplicationUndefined."""

    def entry(n: int) -> int:
        v = k2_value(alpha, beta, n, fuel)
        if v is None:
            raise ApplicationUndefined(n, fuel)
        return v

    return Stream(entry, name=f"({alpha.name} | {beta.name})")


def k2_apply_prefix(alpha: Stream, beta: Stream, fuel: int, length: int) -> Union[list, Undefined]:
    out = []
    for n in range(length):
        v = k2_value(alpha, beta, n, fuel)
        if v is None:
            return Undefined(n)
        out.append(v)
    return out


def k2_parallel(beta: Stream) -> Stream:
    """``alpha_beta``: answers 1 once the oracle shows a non-1 entry, else defers to beta."""

    def entry(code: int) -> int:
        query = list_decode(code)
        if any(m != 1 for m in query[1:]):
            return 1
        return beta(code)

    return Stream(entry, name=f"par({beta.name})")


def k2_constant(m: int) -> Stream:
    """Answers ``m`` without consulting the oracle."""
    return Stream(lambda code: m + 1, name=f"answer {m}")


def k2_echo() -> Stream:
    """Reads one oracle value and outputs it."""

    def entry(code: int) -> int:
        query = list_decode(code)
        return query[1] + 1 if len(query) >= 2 else 0

    return Stream(entry, name="echo")


def k2_silent() -> Stream:
    return Stream(lambda code: 0, name="silent")
