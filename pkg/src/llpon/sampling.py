"""Seeded random generators for closed-form sequences, trees and families."""

from __future__ import annotations

import random

from .omega import ONE, ClosedOmega, ZeroFrom
from .topology import SubsetFamily
from .trees import NIL, Node, Tree


def random_omega(rng: random.Random, max_switch: int = 8, p_one: float = 0.5) -> ClosedOmega:
    if rng.random() < p_one:
        return ONE
    return ZeroFrom(rng.randint(0, max_switch))


def random_tree(
    rng: random.Random, n: int, max_depth: int = 3, max_switch: int = 8, p_nil: float = 0.35
) -> Tree:
    """Arbitrary tree; roughly half the nodes are built to pass the pair test."""
    if max_depth == 0 or rng.random() < p_nil:
        return NIL
    subtrees = [random_tree(rng, n, max_depth - 1, max_switch, p_nil) for _ in range(n)]
    if rng.random() < 0.5:
        labels = [ONE] * n
        bad = rng.randrange(n + 1)
        if bad < n:
            labels[bad] = ZeroFrom(rng.randint(0, max_switch))
    else:
        labels = [random_omega(rng, max_switch) for _ in range(n)]
    return Node(tuple(subtrees), tuple(labels))


def random_good_tree(
    rng: random.Random, n: int, max_depth: int = 3, max_switch: int = 8, p_nil: float = 0.35
) -> Tree:
    """A tree that is good by construction.

    At most one label per node differs from ``ONE``; the subtree under that
    label is arbitrary.
    """
    if max_depth == 0 or rng.random() < p_nil:
        return NIL
    bad = rng.randrange(n + 1)
    subtrees, labels = [], []
    for i in range(n):
        if i == bad:
            labels.append(ZeroFrom(rng.randint(0, max_switch)))
            subtrees.append(random_tree(rng, n, max_depth - 1, max_switch, p_nil))
        else:
            labels.append(ONE)
            subtrees.append(random_good_tree(rng, n, max_depth - 1, max_switch, p_nil))
    return Node(tuple(subtrees), tuple(labels))


def random_family(
    rng: random.Random, bound: int = 16, max_members: int = 3, min_members: int = 1
) -> SubsetFamily:
    count = rng.randint(min_members, max_members)
    members = rng.sample(range(bound), count)
    return SubsetFamily.of(members, bound)
