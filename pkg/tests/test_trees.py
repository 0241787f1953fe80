import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from llpon.codec import list_decode
from llpon.errors import ArityMismatch, InvalidArity, RequiresClosedForm
from llpon.omega import ONE, ZERO, Opaque, ZeroFrom
from llpon.prcodes import stabilization_bound
from llpon.trees import (
    NIL,
    Node,
    cover0,
    data_at,
    format_tree,
    is_good,
    is_very_good,
    leaf_node,
    parse_tree,
    shape,
)
from strategies import arities, good_trees, trees

GOOD = leaf_node([ONE, ZeroFrom(2)])
CLASH = leaf_node([ZeroFrom(1), ZeroFrom(2)])


def test_node_validation():
    with pytest.raises(InvalidArity):
        Node((NIL,), (ONE,))
    with pytest.raises(ArityMismatch):
        Node((NIL, NIL), (ONE,))
    with pytest.raises(ArityMismatch):
        Node((leaf_node([ONE] * 3), NIL), (ONE, ONE))


def test_shape_examples():
    assert shape(NIL) == 0
    assert shape(leaf_node([ONE, ONE])) == 3


def test_data_examples():
    t = leaf_node([ZeroFrom(1), ONE])
    assert data_at(NIL, 42) == 0
    assert data_at(t, 0) == 1
    assert data_at(t, 4) == 0
    # odd positions under a Nil child read the Nil stream
    assert data_at(t, 1) == 0 and data_at(t, 2) == 1


def test_predicate_examples():
    assert is_good(NIL) and is_very_good(NIL) and cover0(NIL)
    assert is_good(GOOD)
    assert not is_good(CLASH) and not is_very_good(CLASH) and not cover0(CLASH)
    assert is_very_good(leaf_node([ONE, ZERO]))
    assert cover0(leaf_node([ZeroFrom(5), ONE]))


def test_good_but_not_very_good_is_impossible_for_closed_forms():
    # a good tree keeps a ONE label at each node, so a ONE path always exists
    deep = Node((GOOD, leaf_node([ZERO, ONE])), (ONE, ZeroFrom(3)))
    assert is_good(deep) and is_very_good(deep)


def test_opaque_labels_are_rejected():
    t = leaf_node([ONE, Opaque(lambda i: 1)])
    for pred in (is_good, is_very_good, cover0):
        with pytest.raises(RequiresClosedForm):
            pred(t)


def test_text_form():
    assert format_tree(GOOD) == "Tr(nil,nil;one,zf:2)"
    assert parse_tree(" Tr( nil , Tr(nil,nil;one,one) ; zf:0, one )") == Node(
        (NIL, leaf_node([ONE, ONE])), (ZERO, ONE)
    )
    with pytest.raises(ValueError):
        parse_tree("Tr(nil;one)")
    with pytest.raises(ValueError):
        parse_tree("Tr(nil,nil;one,one) extra")


@given(arities.flatmap(trees))
def test_text_round_trip(t):
    assert parse_tree(format_tree(t)) == t


@given(arities.flatmap(trees))
def test_shape_decodes_to_arity(t):
    kids = list_decode(shape(t))
    assert len(kids) == (0 if t is NIL else t.arity)


@given(arities.flatmap(good_trees))
def test_good_trees_are_very_good(t):
    assert is_good(t)
    assert is_very_good(t)
    assert cover0(t) == is_very_good(t)


@given(st.lists(arities.flatmap(trees), min_size=1, max_size=4))
def test_some_not_very_good_means_some_not_good(ts):
    if not all(is_very_good(t) for t in ts):
        assert not all(is_good(t) for t in ts)


@settings(max_examples=150)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(trees(n, 2), trees(n, 2))))
def test_shape_and_data_determine_the_tree(pair):
    s, t = pair
    # label i at depth d sits near position (2n)**d * i in the raw stream
    n = max((u.arity for u in (s, t) if u is not NIL), default=2)
    stab = max(stabilization_bound(s), stabilization_bound(t))
    horizon = (stab + 1) * (2 * n) ** 2
    same_data = all(data_at(s, j) == data_at(t, j) for j in range(horizon))
    if shape(s) == shape(t) and same_data:
        assert s == t
    if s == t:
        assert same_data
