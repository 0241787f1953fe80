"""Goodness and very-goodness read off the (shape, data) encoding of a tree.

Everything here looks at a tree only through ``shape(T)`` and the bit stream
``data_at(T, .)``.  A clause of a shape carries index tracks ``i -> position``
into the data stream; goodness is the conjunction over all clauses of

    (c = 1 -> forall i. D(f(i)) = 1)  ->  forall i. not (D(g0(i)) = 0 and D(g1(i)) = 0)

Clause numbering for a node of arity n with children shapes s_1..s_n:
first the clauses of each child in order (``c = 1``, guarded by that child's
label), then the n(n-1) ordered pairs of distinct label indices (``c = 0``).
Pair number ``p`` is ``(p // (n-1), l1')`` where ``l1 = p % (n-1)`` and
``l1'`` skips over ``p // (n-1)``.  Data positions are 0-based: label k of a
node lives at ``2n*i + 2k`` and position j of child k at ``2n*j + 2k + 1``.

The unbounded quantifiers over i are decided exactly on closed-form trees:
every track becomes constant below :func:`track_horizon`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from .codec import list_decode
from .errors import ClauseIndexOutOfRange
from .omega import switch_point
from .trees import Nil, Tree, data_at, depth, require_closed, shape

Track = Callable[[int], int]


def _zero(i: int) -> int:
    return 0


@lru_cache(maxsize=None)
def _children(s: int) -> tuple:
    return tuple(list_decode(s))


@lru_cache(maxsize=None)
def good_bound(s: int) -> int:
    kids = _children(s)
    if not kids:
        return 0
    n = len(kids)
    return sum(good_bound(c) for c in kids) + n * (n - 1)


@dataclass(frozen=True)
class GoodClause:
    l: int
    c_flag: int
    f_track: Track
    g0_track: Track
    g1_track: Track
    child: Optional[int] = None
    pair: Optional[tuple] = None


@dataclass(frozen=True)
class VGoodClause:
    l: int
    f_track: Track
    child: int = 0


def _relocate(track: Track, n: int, k: int) -> Track:
    return lambda i: 2 * n * track(i) + 2 * k + 1


def _label(n: int, k: int) -> Track:
    return lambda i: 2 * n * i + 2 * k


def _interleave(n: int, k: int, inner: Track) -> Track:
    def f(i: int) -> int:
        half, odd = divmod(i, 2)
        if odd:
            return 2 * n * inner(half) + 2 * k + 1
        return 2 * n * half + 2 * k

    return f


@lru_cache(maxsize=None)
def good_clause(l: int, s: int) -> GoodClause:
    bound = good_bound(s)
    if not 0 <= l < bound:
        raise ClauseIndexOutOfRange(f"clause {l} out of range [0, {bound}) for shape {s}")
    kids = _children(s)
    n = len(kids)
    offset = 0
    for k, c in enumerate(kids):
        width = good_bound(c)
        if l < offset + width:
            sub = good_clause(l - offset, c)
            if sub.c_flag == 1:
                f = _interleave(n, k, sub.f_track)
            else:
                f = _label(n, k)
            return GoodClause(
                l, 1, f, _relocate(sub.g0_track, n, k), _relocate(sub.g1_track, n, k), child=k
            )
        offset += width
    l0, l1 = divmod(l - offset, n - 1)
    l1p = l1 if l1 < l0 else l1 + 1
    return GoodClause(l, 0, _zero, _label(n, l0), _label(n, l1p), pair=(l0, l1p))


@lru_cache(maxsize=None)
def vgood_bound(s: int) -> int:
    """Number of root-to-Nil branch paths of the shape (0 for nil itself)."""
    kids = _children(s)
    return sum(1 if c == 0 else vgood_bound(c) for c in kids)


@lru_cache(maxsize=None)
def vgood_clause(l: int, s: int) -> VGoodClause:
    bound = vgood_bound(s)
    if not 0 <= l < bound:
        raise ClauseIndexOutOfRange(f"clause {l} out of range [0, {bound}) for shape {s}")
    kids = _children(s)
    n = len(kids)
    offset = 0
    for k, c in enumerate(kids):
        width = 1 if c == 0 else vgood_bound(c)
        if l < offset + width:
            if c == 0:
                return VGoodClause(l, _label(n, k), child=k)
            sub = vgood_clause(l - offset, c)
            return VGoodClause(l, _interleave(n, k, sub.f_track), child=k)
        offset += width
    raise AssertionError("unreachable: clause index inside bound")


def stabilization_bound(t: Tree) -> int:
    require_closed(t)
    return _stab(t)


def _stab(t: Tree) -> int:
    if isinstance(t, Nil):
        return 0
    pts = [switch_point(a) for a in t.labels] + [_stab(c) for c in t.subtrees]
    return 1 + max(pts)


def track_horizon(t: Tree) -> int:
    """Length of the prefix that decides ``forall i`` on every clause track.

    Label-reading tracks settle by ``stabilization_bound``; each level of
    interleaving halves the rate at which deeper labels are read, so the
    bound is scaled by ``2**depth``.
    """
    return (stabilization_bound(t) + 1) * 2 ** depth(t)


def _reader(t: Tree) -> Callable[[int], int]:
    cache: dict = {}

    def read(j: int) -> int:
        v = cache.get(j)
        if v is None:
            v = cache[j] = data_at(t, j)
        return v

    return read


def _all_ones(read, track: Track, horizon: int) -> bool:
    return all(read(track(i)) == 1 for i in range(horizon))


def _good_via_codes(t: Tree, read, horizon: int) -> bool:
    s = shape(t)
    for l in range(good_bound(s)):
        cl = good_clause(l, s)
        if cl.c_flag == 1 and not _all_ones(read, cl.f_track, horizon):
            continue
        g0, g1 = cl.g0_track, cl.g1_track
        if any(read(g0(i)) == 0 and read(g1(i)) == 0 for i in range(horizon)):
            return False
    return True


def eval_good_via_codes(t: Tree) -> bool:
    require_closed(t)
    return _good_via_codes(t, _reader(t), track_horizon(t))


def eval_very_good_via_codes(t: Tree) -> bool:
    """Very good = good and some path clause reads only 1s.

    ``nil`` has no path clauses under the counting convention and is
    answered directly.
    """
    require_closed(t)
    if isinstance(t, Nil):
        return True
    read, horizon = _reader(t), track_horizon(t)
    if not _good_via_codes(t, read, horizon):
        return False
    s = shape(t)
    return any(
        _all_ones(read, vgood_clause(l, s).f_track, horizon) for l in range(vgood_bound(s))
    )


def failing_path_clauses(t: Tree) -> dict:
    """For each path clause, the first index where its track reads 0.

    Clauses whose track is all ones up to the horizon are omitted.
    """
    require_closed(t)
    if isinstance(t, Nil):
        return {}
    read, horizon = _reader(t), track_horizon(t)
    s = shape(t)
    out = {}
    for l in range(vgood_bound(s)):
        f = vgood_clause(l, s).f_track
        for i in range(horizon):
            if read(f(i)) == 0:
                out[l] = i
                break
    return out


def clause_table(s: int, sample: int = 4) -> list[dict]:
    """Human-readable summary of the goodness clauses of a shape."""
    rows = []
    for l in range(good_bound(s)):
        cl = good_clause(l, s)
        rows.append(
            {
                "l": l,
                "c": cl.c_flag,
                "kind": "pair" if cl.c_flag == 0 else "child",
                "child": cl.child,
                "pair": list(cl.pair) if cl.pair else None,
                "f": [cl.f_track(i) for i in range(sample)],
                "g0": [cl.g0_track(i) for i in range(sample)],
                "g1": [cl.g1_track(i) for i in range(sample)],
            }
        )
    return rows
