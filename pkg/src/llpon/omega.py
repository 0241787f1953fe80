"""Decreasing binary sequences (the lattice N-infinity).

Two representations live side by side:

* closed forms, ``ONE`` (constantly 1) and ``ZeroFrom(k)`` (1 below ``k``,
  0 from ``k`` on), on which every lattice question is decidable;
* ``Opaque`` sequences backed by an arbitrary total bit generator, which can
  only be inspected pointwise and searched with a fuel bound.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from .errors import InvalidArity, MalformedSequence, RequiresClosedForm


@dataclass(frozen=True)
class ConstOne:
    def __repr__(self) -> str:
        return "ONE"


@dataclass(frozen=True)
class ZeroFrom:
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("switch point must be a natural number")


ONE = ConstOne()
ZERO = ZeroFrom(0)


@dataclass(eq=False)
class Opaque:
    """A sequence known only through its generator.

    Values are memoised in order, so asking for index ``i`` forces every
    index below it; an increase anywhere in the forced prefix raises
    :class:`MalformedSequence`.  The memo is guarded by a lock, which keeps
    concurrent reads linearizable.
    """

    gen: Callable[[int], int]
    _memo: list = field(default_factory=list, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def inspected(self) -> int:
        return len(self._memo)

    def at(self, i: int) -> int:
        with self._lock:
            memo = self._memo
            while len(memo) <= i:
                j = len(memo)
                bit = self.gen(j)
                if bit not in (0, 1):
                    raise MalformedSequence(f"generator returned {bit!r} at index {j}")
                if memo and bit > memo[-1]:
                    raise MalformedSequence(f"sequence increases at index {j}")
                memo.append(bit)
            return memo[i]


Omega = Union[ConstOne, ZeroFrom, Opaque]
ClosedOmega = Union[ConstOne, ZeroFrom]


def is_closed(w: Omega) -> bool:
    return isinstance(w, (ConstOne, ZeroFrom))


def eval_at(w: Omega, i: int) -> int:
    if isinstance(w, ConstOne):
        return 1
    if isinstance(w, ZeroFrom):
        return 1 if i < w.k else 0
    return w.at(i)


def switch_point(w: Omega) -> int:
    """Index from which a closed form is constant (0 for ``ONE``)."""
    if isinstance(w, ConstOne):
        return 0
    if isinstance(w, ZeroFrom):
        return w.k
    raise RequiresClosedForm("opaque sequences have no known switch point")


def join(a: Omega, b: Omega) -> Omega:
    if isinstance(a, ConstOne) or isinstance(b, ConstOne):
        return ONE
    if isinstance(a, ZeroFrom) and isinstance(b, ZeroFrom):
        return ZeroFrom(max(a.k, b.k))
    return Opaque(lambda i: max(eval_at(a, i), eval_at(b, i)))


def meet(a: Omega, b: Omega) -> Omega:
    if isinstance(a, ConstOne):
        return b
    if isinstance(b, ConstOne):
        return a
    if isinstance(a, ZeroFrom) and isinstance(b, ZeroFrom):
        return ZeroFrom(min(a.k, b.k))
    return Opaque(lambda i: min(eval_at(a, i), eval_at(b, i)))


def join_all(ws: Iterable[Omega]) -> Omega:
    ws = list(ws)
    if not ws:
        raise ValueError("join_all needs a nonempty list")
    out = ws[0]
    for w in ws[1:]:
        out = join(out, w)
    return out


def meet_all(ws: Iterable[Omega]) -> Omega:
    ws = list(ws)
    if not ws:
        raise ValueError("meet_all needs a nonempty list")
    out = ws[0]
    for w in ws[1:]:
        out = meet(out, w)
    return out


def is_one(w: Omega) -> bool:
    if isinstance(w, ConstOne):
        return True
    if isinstance(w, ZeroFrom):
        return False
    raise RequiresClosedForm("equality with the top element is undecidable for opaque sequences")


@dataclass(frozen=True)
class Found:
    index: int


@dataclass(frozen=True)
class NotFoundWithin:
    fuel: int


def search_zero(w: Omega, fuel: int) -> Union[Found, NotFoundWithin]:
    """Find the least index below ``fuel`` where ``w`` is 0."""
    if isinstance(w, ConstOne):
        return NotFoundWithin(fuel)
    if isinstance(w, ZeroFrom):
        return Found(w.k) if w.k < fuel else NotFoundWithin(fuel)
    for i in range(fuel):
        if w.at(i) == 0:
            return Found(i)
    return NotFoundWithin(fuel)


def llpo_split(one_pos: Optional[int], n: int) -> list[ClosedOmega]:
    """Residue tracks of a sequence with at most one 1, at position ``one_pos``.

    Track ``k`` (0-based) at ``i`` is ``1 - max(g(n*i' + k) for i' <= i)``.
    """
    if n < 2:
        raise InvalidArity(f"arity must be at least 2, got {n}")
    tracks: list[ClosedOmega] = [ONE] * n
    if one_pos is not None:
        q, r = divmod(one_pos, n)
        tracks[r] = ZeroFrom(q)
    return tracks


def format_omega(w: Omega) -> str:
    if isinstance(w, ConstOne):
        return "one"
    if isinstance(w, ZeroFrom):
        return f"zf:{w.k}"
    raise RequiresClosedForm("opaque sequences have no text form")


def parse_omega(text: str) -> ClosedOmega:
    text = text.strip()
    if text == "one":
        return ONE
    if text.startswith("zf:") and text[3:].isdigit():
        return ZeroFrom(int(text[3:]))
    raise ValueError(f"not an omega literal: {text!r}")
