"""n-trees labelled by decreasing sequences.

The text form is ``nil`` or ``Tr(T1,...,Tn;a1,...,an)`` with labels written
as ``one`` / ``zf:<k>``, e.g. ``Tr(nil,nil;one,zf:2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .codec import list_encode
from .errors import ArityMismatch, InvalidArity, RequiresClosedForm
from .omega import ONE, Omega, eval_at, is_closed, format_omega, is_one, join, parse_omega


@dataclass(frozen=True)
class Nil:
    def __repr__(self) -> str:
        return "NIL"


NIL = Nil()


@dataclass(frozen=True)
class Node:
    subtrees: tuple
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "subtrees", tuple(self.subtrees))
        object.__setattr__(self, "labels", tuple(self.labels))
        n = len(self.subtrees)
        if n < 2:
            raise InvalidArity(f"n-trees need arity at least 2, got {n}")
        if len(self.labels) != n:
            raise ArityMismatch(f"{n} subtrees but {len(self.labels)} labels")
        for child in self.subtrees:
            if isinstance(child, Node):
                if child.arity != n:
                    raise ArityMismatch(f"child of arity {child.arity} under a node of arity {n}")
            elif not isinstance(child, Nil):
                raise TypeError(f"not a tree: {child!r}")

    @property
    def arity(self) -> int:
        return len(self.subtrees)


Tree = Union[Nil, Node]


def node(subtrees, labels) -> Node:
    return Node(tuple(subtrees), tuple(labels))


def leaf_node(labels) -> Node:
    """``Tr(nil,...,nil; labels)``."""
    labels = tuple(labels)
    return Node((NIL,) * len(labels), labels)


def arity(t: Tree):
    return t.arity if isinstance(t, Node) else None


def depth(t: Tree) -> int:
    if isinstance(t, Nil):
        return 0
    return 1 + max(depth(c) for c in t.subtrees)


def size(t: Tree) -> int:
    if isinstance(t, Nil):
        return 1
    return 1 + sum(size(c) for c in t.subtrees)


def nil_paths(t: Tree, path: tuple = ()) -> Iterator[tuple]:
    """Paths (tuples of 0-based branch indices) to every Nil leaf."""
    if isinstance(t, Nil):
        yield path
        return
    for i, c in enumerate(t.subtrees):
        yield from nil_paths(c, path + (i,))


def reachable_nil_paths(t: Tree, path: tuple = ()) -> Iterator[tuple]:
    """Paths to the Nil leaves reached through ``ONE`` labels only."""
    if isinstance(t, Nil):
        yield path
        return
    for i, (c, a) in enumerate(zip(t.subtrees, t.labels)):
        if is_one(a):
            yield from reachable_nil_paths(c, path + (i,))


def subtree_at(t: Tree, path) -> Tree:
    for i in path:
        t = t.subtrees[i]
    return t


def labels_of(t: Tree) -> Iterator[Omega]:
    if isinstance(t, Node):
        yield from t.labels
        for c in t.subtrees:
            yield from labels_of(c)


# -- encodings --------------------------------------------------------------


def shape(t: Tree) -> int:
    if isinstance(t, Nil):
        return 0
    return list_encode([shape(c) for c in t.subtrees])


def data_at(t: Tree, j: int) -> int:
    """Bit ``j`` of the data stream of ``t``.

    At a node of arity n, ``j = 2nk + 2i`` reads label i at k and
    ``j = 2nk + 2i + 1`` reads position k of subtree i.
    """
    while isinstance(t, Node):
        k, r = divmod(j, 2 * t.arity)
        i, odd = divmod(r, 2)
        if not odd:
            return eval_at(t.labels[i], k)
        t, j = t.subtrees[i], k
    return 0


# -- recursive predicates -----------------------------------------------------


def pairwise_joins_top(labels) -> bool:
    n = len(labels)
    return all(
        is_one(join(labels[i], labels[j])) for i in range(n) for j in range(i + 1, n)
    )


def require_closed(t: Tree) -> None:
    if not all(is_closed(a) for a in labels_of(t)):
        raise RequiresClosedForm("tree carries an opaque label")


def is_good(t: Tree) -> bool:
    require_closed(t)
    return _good(t)


def _good(t: Tree) -> bool:
    if isinstance(t, Nil):
        return True
    if not pairwise_joins_top(t.labels):
        return False
    return all(_good(c) for c, a in zip(t.subtrees, t.labels) if is_one(a))


def is_very_good(t: Tree) -> bool:
    require_closed(t)
    return _very_good(t)


def _very_good(t: Tree) -> bool:
    if isinstance(t, Nil):
        return True
    return _good(t) and any(
        is_one(a) and _very_good(c) for c, a in zip(t.subtrees, t.labels)
    )


def _one_path(t: Tree) -> bool:
    if isinstance(t, Nil):
        return True
    return any(is_one(a) and _one_path(c) for c, a in zip(t.subtrees, t.labels))


def cover0(t: Tree) -> bool:
    """Whether 0 belongs to the cover carved out by ``t``."""
    require_closed(t)
    return _one_path(t)


# -- text form ----------------------------------------------------------------


def format_tree(t: Tree) -> str:
    if isinstance(t, Nil):
        return "nil"
    subs = ",".join(format_tree(c) for c in t.subtrees)
    labs = ",".join(format_omega(a) for a in t.labels)
    return f"Tr({subs};{labs})"


def parse_tree(text: str) -> Tree:
    src = "".join(text.split())
    tree, pos = _parse_tree_at(src, 0)
    if pos != len(src):
        raise ValueError(f"trailing input at position {pos}: {src[pos:]!r}")
    return tree


def _parse_tree_at(src: str, pos: int):
    if src.startswith("nil", pos):
        return NIL, pos + 3
    if not src.startswith("Tr(", pos):
        raise ValueError(f"expected 'nil' or 'Tr(' at position {pos}")
    pos += 3
    subtrees = []
    while True:
        t, pos = _parse_tree_at(src, pos)
        subtrees.append(t)
        if pos < len(src) and src[pos] == ",":
            pos += 1
            continue
        if pos < len(src) and src[pos] == ";":
            pos += 1
            break
        raise ValueError(f"expected ',' or ';' at position {pos}")
    end = src.find(")", pos)
    if end < 0:
        raise ValueError("unterminated Tr(")
    labels = [parse_omega(s) for s in src[pos:end].split(",")]
    if len(labels) != len(subtrees):
        raise ArityMismatch(f"{len(subtrees)} subtrees but {len(labels)} labels")
    return Node(tuple(subtrees), tuple(labels)), end + 1


def all_ones(n: int) -> Node:
    return leaf_node([ONE] * n)
