"""Hypothesis strategies for closed-form sequences and n-trees."""

from hypothesis import strategies as st

from llpon.omega import ONE, ZeroFrom
from llpon.trees import NIL, Node

omegas = st.one_of(st.just(ONE), st.builds(ZeroFrom, st.integers(0, 8)))


def trees(n: int, depth: int = 3):
    if depth == 0:
        return st.just(NIL)
    sub = trees(n, depth - 1)
    nodes = st.builds(
        lambda subs, labels: Node(tuple(subs), tuple(labels)),
        st.lists(sub, min_size=n, max_size=n),
        st.lists(omegas, min_size=n, max_size=n),
    )
    return st.one_of(st.just(NIL), nodes)


def good_trees(n: int, depth: int = 3):
    """Good by construction: at most one label per node is not ONE."""
    if depth == 0:
        return st.just(NIL)

    @st.composite
    def build(draw):
        if draw(st.booleans()) and draw(st.booleans()):
            return NIL
        bad = draw(st.integers(0, n))
        subs, labels = [], []
        for i in range(n):
            if i == bad:
                labels.append(ZeroFrom(draw(st.integers(0, 8))))
                subs.append(draw(trees(n, depth - 1)))
            else:
                labels.append(ONE)
                subs.append(draw(good_trees(n, depth - 1)))
        return Node(tuple(subs), tuple(labels))

    return build()


arities = st.integers(2, 4)
