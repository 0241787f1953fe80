import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from llpon.errors import (
    ArityMismatch,
    IncompleteAssignment,
    InvalidArity,
    OverlapBoundViolated,
    SearchExhausted,
)
from llpon.omega import ONE, ZERO, ZeroFrom
from llpon.topology import (
    SubsetFamily,
    build_witness,
    certificate_holds,
    compactify,
    intersect,
    refine,
    witness_arity,
)
from llpon.trees import NIL, Node, all_ones, cover0, is_good, is_very_good, leaf_node, reachable_nil_paths
from strategies import arities, good_trees

HALF = leaf_node([ONE, ZeroFrom(1)])


def test_intersect_examples():
    assert intersect(HALF, NIL) == HALF
    r = intersect(HALF, HALF)
    assert r == Node((HALF, HALF), (ONE, ZeroFrom(1)))
    assert cover0(r)
    with pytest.raises(ArityMismatch):
        intersect(HALF, all_ones(3))


def test_intersect_with_a_coverless_tree():
    # no good closed-form tree has an empty cover, so use a clashing one for S
    empty = leaf_node([ZERO, ZERO])
    assert not cover0(intersect(HALF, empty))


def test_refine_examples():
    g = all_ones(2)
    assert refine(NIL, {(): g}) == g
    assert refine(HALF, {(0,): g}) == Node((g, NIL), HALF.labels)
    with pytest.raises(IncompleteAssignment):
        refine(HALF, {})


def test_refine_prunes_unreachable_branches():
    t = Node((NIL, all_ones(2)), (ONE, ZERO))
    assert refine(t, lambda path: all_ones(2)) == Node((all_ones(2), NIL), t.labels)


@given(arities.flatmap(lambda n: st.tuples(good_trees(n, 2), good_trees(n, 2), good_trees(n, 2))))
def test_refine_twice_is_refine_with_composed_assignment(trio):
    t, a, b = trio
    step1 = {p: a for p in reachable_nil_paths(t)}
    once = refine(t, step1)
    twice = refine(once, lambda p: b)
    composed = refine(t, {p: refine(a, lambda q: b) for p in reachable_nil_paths(t)})
    assert twice == composed


def test_compactify_examples():
    fam7 = SubsetFamily.of([7], 10)
    assert compactify(NIL, fam7) == (frozenset({7}), NIL)
    js, s = compactify(leaf_node([ONE, ZeroFrom(2)]), SubsetFamily.of([3], 10))
    assert js == {3} and is_good(s) and cover0(s)
    with pytest.raises(SearchExhausted):
        compactify(NIL, SubsetFamily.of([], 10))


def test_compactify_skips_unreachable_leaves():
    # every leaf sits under a non-ONE label, so nothing is searched
    t = leaf_node([ZERO, ZeroFrom(3)])
    js, s = compactify(t, SubsetFamily.of([], 5))
    assert js == frozenset() and not cover0(s)


def test_witness_arity():
    assert witness_arity(4, 2) == 2
    assert witness_arity(6, 4) == 2
    assert witness_arity(7, 2) == 4
    assert [witness_arity(n, 1) for n in (2, 3, 6)] == [2, 3, 6]


def test_build_witness_unique_member():
    j, s = build_witness(HALF, SubsetFamily.of([4], 10), 1)
    assert j == 4 and is_good(s) and s.arity == 2


def test_build_witness_two_members_arity_four():
    t = Node((all_ones(4), NIL, leaf_node([ONE, ONE, ZERO, ONE]), NIL), (ONE, ONE, ONE, ZeroFrom(2)))
    fam = SubsetFamily.of([2, 9], 20)
    choices = {(0, 0): 9, (0, 1): 2, (0, 2): 9, (0, 3): 2, (1,): 9, (2, 0): 2, (2, 1): 2, (2, 3): 9}
    j, s = build_witness(t, fam, 2, lambda p: choices[p])
    assert j in (2, 9) and is_good(s) and s.arity == 2


def test_replacement_loop_overwrites_non_one_branches():
    # three ONE branches see 1, 2, 1; the ZeroFrom branch has no witness yet
    t = leaf_node([ONE, ONE, ONE, ZeroFrom(4)])
    picks = {(0,): 1, (1,): 2, (2,): 1}
    j, s = build_witness(t, SubsetFamily.of([1, 2], 5), 2, picks.__getitem__)
    assert j == 1 and s == leaf_node([ONE, ONE])


def test_too_many_members_on_one_branches_is_detected():
    t = all_ones(3)
    picks = {(0,): 0, (1,): 1, (2,): 2}
    with pytest.raises(OverlapBoundViolated):
        build_witness(t, SubsetFamily.of([0, 1, 2], 5), 2, picks.__getitem__)


def test_build_witness_arity_precondition():
    with pytest.raises(InvalidArity):
        build_witness(HALF, SubsetFamily.of([1], 5), 2)
    with pytest.raises(InvalidArity):
        build_witness(HALF, SubsetFamily.of([1], 5), 0)


def _members(draw, k):
    return draw(st.sets(st.integers(0, 15), min_size=1, max_size=k))


@settings(max_examples=150)
@given(st.data())
def test_build_witness_postconditions(data):
    n = data.draw(st.sampled_from([3, 4, 6]))
    k = data.draw(st.integers(1, n - 1))
    t = data.draw(good_trees(n, 2))
    members = sorted(_members(data.draw, k))
    fam = SubsetFamily.of(members, 16)
    choose = lambda p: members[hash(p) % len(members)]  # noqa: E731
    j, s = build_witness(t, fam, k, choose)
    assert is_good(s)
    if isinstance(s, Node):
        assert s.arity == max(2, math.ceil(n / k))
    if is_very_good(t):
        assert fam.contains(j)
    if k == 1:
        assert j == members[0]


@given(arities.flatmap(lambda n: good_trees(n, 3)), st.sets(st.integers(0, 9), min_size=1, max_size=3))
def test_compactify_postconditions(t, members):
    fam = SubsetFamily.of(members, 10)
    js, s = compactify(t, fam, lambda p: sorted(members)[len(p) % len(members)])
    assert js <= members
    assert len(js) <= sum(1 for _ in reachable_nil_paths(t))
    assert is_good(s)
    assert certificate_holds(s, bool(js & members))


@given(arities.flatmap(lambda n: st.tuples(good_trees(n), good_trees(n))))
def test_intersection_axiom(pair):
    t, s = pair
    r = intersect(t, s)
    assert is_good(r)
    assert not cover0(r) or (cover0(t) and cover0(s))


@given(arities.flatmap(good_trees))
def test_good_implies_zero_in_cover(t):
    assert cover0(t)
