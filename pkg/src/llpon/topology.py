"""Witness manipulation in the one-point formal topology of good n-trees.

A subset of the one-point space {0} is just a proposition, so an indexed
family of subsets is a membership predicate ``j -> bool`` searched below a
bound.  ``0 <| p`` is witnessed by a good tree whose cover lies inside p.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Union

from .errors import ArityMismatch, IncompleteAssignment, InvalidArity, OverlapBoundViolated, SearchExhausted
from .omega import is_one
from .trees import NIL, Nil, Node, Tree, cover0, is_good

Path = tuple
LeafChoice = Callable[[Path], int]


@dataclass(frozen=True)
class SubsetFamily:
    contains: Callable[[int], bool]
    search_bound: int
    members: Optional[frozenset] = field(default=None, compare=False)

    @classmethod
    def of(cls, members: Iterable[int], search_bound: int) -> "SubsetFamily":
        ms = frozenset(members)
        return cls(ms.__contains__, search_bound, ms)

    def first(self) -> int:
        for j in range(self.search_bound):
            if self.contains(j):
                return j
        raise SearchExhausted(f"no member below {self.search_bound}")

    def true_indices(self) -> list[int]:
        return [j for j in range(self.search_bound) if self.contains(j)]


@dataclass(frozen=True)
class CoverCertificate:
    """A good tree together with what each reachable leaf certifies.

    ``leaves`` maps reachable Nil paths to an annotation (a disjunct index
    or a witness); ``target`` is a free-form description of the subset.
    """

    tree: Tree
    target: str = ""
    leaves: Mapping = field(default_factory=dict)


def intersect(t: Tree, s: Tree) -> Tree:
    """Graft ``t`` at every Nil leaf of ``s``.

    The cover of the result lies in both covers, and it is good when both
    inputs are.
    """
    if isinstance(t, Node) and isinstance(s, Node) and t.arity != s.arity:
        raise ArityMismatch(f"cannot intersect arities {t.arity} and {s.arity}")
    return _graft(t, s)


def _graft(t: Tree, s: Tree) -> Tree:
    if isinstance(s, Nil):
        return t
    return Node(tuple(_graft(t, c) for c in s.subtrees), s.labels)


def refine(t: Tree, assign: Union[Mapping, Callable[[Path], Optional[Tree]]]) -> Tree:
    """Replace each leaf reached through ``ONE`` labels by its assigned tree.

    Branches under labels other than ``ONE`` are cut back to Nil.
    """
    lookup = assign.get if isinstance(assign, Mapping) else assign

    def go(t: Tree, path: Path) -> Tree:
        if isinstance(t, Nil):
            got = lookup(path)
            if got is None:
                raise IncompleteAssignment(f"no tree assigned to reachable leaf {path}")
            return got
        return Node(
            tuple(go(c, path + (i,)) if is_one(a) else NIL for i, (c, a) in enumerate(zip(t.subtrees, t.labels))),
            t.labels,
        )

    return go(t, ())


def _leaf_witness(fam: SubsetFamily, choose: Optional[LeafChoice], path: Path) -> int:
    if choose is None:
        return fam.first()
    j = choose(path)
    if not (0 <= j < fam.search_bound and fam.contains(j)):
        raise SearchExhausted(f"leaf choice {j} at {path} is not a member")
    return j


def compactify(
    t: Tree, fam: SubsetFamily, choose: Optional[LeafChoice] = None
) -> tuple[frozenset, Tree]:
    """Finite subfamily ``J`` and good tree ``S`` with cover inside the union over J.

    Leaves pick their member with ``choose(path)`` (default: the least one).
    """

    def go(t: Tree, path: Path):
        if isinstance(t, Nil):
            return frozenset([_leaf_witness(fam, choose, path)]), NIL
        found = set()
        subs = []
        for i, (c, a) in enumerate(zip(t.subtrees, t.labels)):
            if is_one(a):
                js, sub = go(c, path + (i,))
                found |= js
                subs.append(sub)
            else:
                subs.append(NIL)
        return frozenset(found), Node(tuple(subs), t.labels)

    return go(t, ())


def witness_arity(n: int, k: int) -> int:
    return max(2, math.ceil(n / k))


def build_witness(
    t: Tree, fam: SubsetFamily, k: int, choose: Optional[LeafChoice] = None
) -> tuple[int, Tree]:
    """A single index j and a good ceil(n/k)-tree whose cover lies in p_j.

    Requires that at most ``k`` of the p_j contain 0.  At each node the
    branch witnesses are collected, labels other than ``ONE`` have their
    witness overwritten until at most ``k`` distinct values remain (lowest
    branch first, lowest available value), and a value carried by at least
    ceil(n/k) branches is kept.
    """
    if isinstance(t, Nil):
        return _leaf_witness(fam, choose, ()), NIL
    n = t.arity
    if not 1 <= k < n:
        raise InvalidArity(f"need 1 <= k < n, got k={k}, n={n}")
    m = witness_arity(n, k)

    def go(t: Tree, path: Path):
        if isinstance(t, Nil):
            return _leaf_witness(fam, choose, path), NIL
        js: list = []
        subs: list = []
        for i, (c, a) in enumerate(zip(t.subtrees, t.labels)):
            if is_one(a):
                j, sub = go(c, path + (i,))
            else:
                j, sub = None, NIL
            js.append(j)
            subs.append(sub)
        concrete = [j for j in js if j is not None]
        if not concrete:
            raise ValueError(f"node at {path} has no ONE label; the tree is not good")
        _shrink(js, t.labels, k, path)
        for i, j in enumerate(js):
            if j is None:
                js[i] = min(concrete)
        counts = Counter(js)
        chosen = min(j for j, c in counts.items() if c >= m)
        picked = [i for i, j in enumerate(js) if j == chosen][:m]
        return chosen, Node(tuple(subs[i] for i in picked), tuple(t.labels[i] for i in picked))

    return go(t, ())


def _shrink(js: list, labels, k: int, path: Path) -> None:
    """Overwrite witnesses of non-``ONE`` branches until <= k distinct remain.

    Unassigned (None) witnesses count as pairwise distinct.
    """
    while True:
        reps: dict = {}
        for i, j in enumerate(js):
            key = ("free", i) if j is None else j
            reps.setdefault(key, i)
        if len(reps) <= k:
            return
        group = sorted(reps.values())
        movable = [i for i in group if not is_one(labels[i])]
        if not movable:
            raise OverlapBoundViolated(
                f"branches at {path} certify {len(group)} distinct members with k={k}"
            )
        i = movable[0]
        others = [js[i2] for i2 in group if i2 != i and js[i2] is not None]
        if not others:
            others = [j for j in js if j is not None]
        js[i] = min(others)


def certificate_holds(cert_tree: Tree, member: bool) -> bool:
    """Cover-containment check for a target proposition on {0}."""
    return is_good(cert_tree) and (not cover0(cert_tree) or member)
