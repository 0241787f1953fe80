import threading

import pytest
from hypothesis import given
from hypothesis import strategies as st

from llpon.errors import InvalidArity, MalformedSequence, RequiresClosedForm
from llpon.omega import (
    ONE,
    ZERO,
    Found,
    NotFoundWithin,
    Opaque,
    ZeroFrom,
    eval_at,
    format_omega,
    is_one,
    join,
    join_all,
    llpo_split,
    meet,
    parse_omega,
    search_zero,
)
from strategies import omegas


def test_eval_at_examples():
    assert eval_at(ZeroFrom(3), 2) == 1
    assert eval_at(ZeroFrom(3), 3) == 0
    assert eval_at(ONE, 10**6) == 1


def test_lattice_examples():
    assert join(ZeroFrom(3), ZeroFrom(5)) == ZeroFrom(5)
    assert join(ONE, ZERO) == ONE
    assert join_all([ZeroFrom(1), ZeroFrom(4), ZeroFrom(2)]) == ZeroFrom(4)
    assert meet(ZeroFrom(3), ZeroFrom(5)) == ZeroFrom(3)
    assert meet(ONE, ZeroFrom(7)) == ZeroFrom(7)
    assert meet(ZERO, ONE) == ZERO


def test_is_one_examples():
    assert is_one(ONE)
    assert not is_one(ZeroFrom(10**9))
    assert not is_one(ZERO)
    with pytest.raises(RequiresClosedForm):
        is_one(Opaque(lambda i: 1))


def test_search_zero_examples():
    assert search_zero(ZeroFrom(4), 100) == Found(4)
    assert search_zero(ONE, 100) == NotFoundWithin(100)
    assert search_zero(Opaque(lambda i: 1 if i < 7 else 0), 5) == NotFoundWithin(5)
    assert search_zero(Opaque(lambda i: 1 if i < 7 else 0), 50) == Found(7)


def _split_by_formula(one_pos, n, horizon=40):
    """Residue tracks straight from 1 - max over the prefix, read as closed forms."""
    g = lambda i: 1 if i == one_pos else 0  # noqa: E731
    tracks = []
    for k in range(n):
        vals = [1 - max(g(n * j + k) for j in range(i + 1)) for i in range(horizon)]
        tracks.append(ONE if all(vals) else ZeroFrom(vals.index(0)))
    return tracks


@pytest.mark.parametrize("one_pos,n", [(5, 2), (None, 3), (0, 3), (17, 4), (3, 2)])
def test_llpo_split_matches_defining_formula(one_pos, n):
    assert llpo_split(one_pos, n) == _split_by_formula(one_pos, n)


def test_llpo_split_examples():
    assert llpo_split(5, 2) == [ONE, ZeroFrom(2)]
    assert llpo_split(None, 3) == [ONE, ONE, ONE]
    assert llpo_split(0, 3) == [ZERO, ONE, ONE]
    with pytest.raises(InvalidArity):
        llpo_split(3, 1)


@given(st.one_of(st.none(), st.integers(0, 200)), st.integers(2, 6))
def test_llpo_tracks_pairwise_join_to_one(pos, n):
    tracks = llpo_split(pos, n)
    assert all(is_one(join(a, b)) for i, a in enumerate(tracks) for b in tracks[i + 1 :])


@given(omegas, omegas, omegas)
def test_lattice_laws(a, b, c):
    assert join(a, join(b, c)) == join(join(a, b), c)
    assert meet(a, meet(b, c)) == meet(meet(a, b), c)
    assert join(a, b) == join(b, a) and meet(a, b) == meet(b, a)
    assert join(a, a) == a and meet(a, a) == a
    assert join(a, meet(a, b)) == a and meet(a, join(a, b)) == a


@given(omegas, omegas)
def test_join_is_one_iff_some_side_is(a, b):
    assert is_one(join(a, b)) == (is_one(a) or is_one(b))


@given(omegas, st.integers(0, 30))
def test_search_zero_is_minimal(w, fuel):
    r = search_zero(w, fuel)
    if isinstance(r, Found):
        assert eval_at(w, r.index) == 0
        assert all(eval_at(w, j) == 1 for j in range(r.index))
    else:
        assert all(eval_at(w, j) == 1 for j in range(fuel))


@given(omegas, st.integers(0, 40), st.integers(0, 40))
def test_antitone(w, i, j):
    lo, hi = sorted((i, j))
    assert eval_at(w, hi) <= eval_at(w, lo)


@given(omegas)
def test_text_round_trip(w):
    assert parse_omega(format_omega(w)) == w


def test_opaque_rejects_increase_and_non_bits():
    bumpy = Opaque(lambda i: [1, 0, 1][i % 3])
    assert bumpy.at(1) == 0
    with pytest.raises(MalformedSequence):
        bumpy.at(2)
    with pytest.raises(MalformedSequence):
        Opaque(lambda i: 2).at(0)


def test_opaque_memoises_and_counts_inspection():
    calls = []

    def gen(i):
        calls.append(i)
        return 1 if i < 3 else 0

    w = Opaque(gen)
    assert w.at(5) == 0 and w.inspected == 6
    w.at(2)
    assert calls == list(range(6))


def test_opaque_concurrent_reads_agree():
    w = Opaque(lambda i: 1 if i < 500 else 0)
    seen = []

    def reader():
        seen.append([w.at(i) for i in range(0, 1000, 7)])

    threads = [threading.Thread(target=reader) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(s == seen[0] for s in seen) and w.inspected == 995
