import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emset.errors import MalformedLiteral
from emset.upsets import EMPTY, EVENS, ODDS, OMEGA, BiInfinite, Cofinite, Finite, UPSet


def raw_member(n, exc, p, res, x):
    # membership straight from the denotation, independent of canonicalization
    if x <= n:
        return x in exc
    return (x % p) in res


def upsets_raw():
    return st.tuples(
        st.integers(0, 6),
        st.frozensets(st.integers(1, 6), max_size=6),
        st.integers(1, 6),
        st.frozensets(st.integers(0, 5), max_size=6),
    ).map(lambda t: (t[0], frozenset(x for x in t[1] if x <= t[0]), t[2], frozenset(r for r in t[3] if r < t[2])))


upset_values = upsets_raw().map(lambda t: UPSet(*t))


def test_canonical_absorbs_matching_exceptional_part():
    s = UPSet(4, frozenset({2, 4}), 2, frozenset({0}))
    assert s == EVENS
    assert (s.threshold, s.exceptional, s.period, s.residues) == (0, frozenset(), 2, frozenset({0}))


def test_canonical_reduces_period():
    s = UPSet(0, frozenset(), 4, frozenset({0, 2}))
    assert s == EVENS and s.period == 2


def test_canonical_minimal_threshold_for_finite_sets():
    s = UPSet(3, frozenset({1}), 1, frozenset())
    assert s.threshold == 1 and s.exceptional == frozenset({1})
    assert s == UPSet.finite({1})


def test_malformed_literals_rejected():
    with pytest.raises(MalformedLiteral):
        UPSet(2, frozenset({3}), 1, frozenset())
    with pytest.raises(MalformedLiteral):
        UPSet(0, frozenset(), 2, frozenset({2}))
    with pytest.raises(MalformedLiteral):
        UPSet(-1, frozenset(), 1, frozenset())
    with pytest.raises(MalformedLiteral):
        UPSet(0, frozenset(), 0, frozenset())


def test_boolean_examples():
    assert EVENS.complement() == ODDS
    beyond9 = UPSet(9, frozenset(), 1, frozenset({0}))
    a5 = EVENS.intersect(beyond9)
    assert a5.members_up_to(14) == [10, 12, 14]
    assert 8 not in a5 and 10 in a5
    assert EVENS.union(ODDS) == OMEGA


def test_classify_examples():
    assert UPSet.finite({1}).classify() == Finite(1)
    assert EVENS.classify() == BiInfinite()
    assert UPSet.finite({1}).complement().classify() == Cofinite(1)
    assert OMEGA.classify() == Cofinite(0)
    assert EMPTY.classify() == Finite(0)


def test_coinfinite_predicate():
    assert EVENS.is_coinfinite()
    assert UPSet.finite({3, 7}).is_coinfinite()
    assert not OMEGA.is_coinfinite()
    assert not UPSet.finite({1}).complement().is_coinfinite()


@given(upsets_raw())
def test_membership_matches_denotation(raw):
    n, exc, p, res = raw
    s = UPSet(n, exc, p, res)
    for x in range(1, n + p + 5):
        assert (x in s) == raw_member(n, exc, p, res, x)


@given(upset_values, upset_values)
@settings(max_examples=150)
def test_boolean_ops_pointwise(s, t):
    bound = s.threshold + t.threshold + s.period * t.period + 2
    u, i, d = s.union(t), s.intersect(t), s.difference(t)
    for x in range(1, bound + 1):
        assert (x in u) == ((x in s) or (x in t))
        assert (x in i) == ((x in s) and (x in t))
        assert (x in d) == ((x in s) and (x not in t))
    c = s.complement()
    for x in range(1, bound + 1):
        assert (x in c) == (x not in s)


@given(upset_values)
def test_complement_involution(s):
    assert s.complement().complement() == s


@given(upset_values, upset_values)
@settings(max_examples=150)
def test_equality_decided_on_initial_segment(s, t):
    bound = max(s.threshold, t.threshold) + s.period * t.period
    agree = all((x in s) == (x in t) for x in range(1, bound + 1))
    assert agree == (s == t)


@given(upset_values)
def test_iteration_sorted_and_in_set(s):
    first = s.first_n(12)
    assert first == sorted(first)
    assert all(x in s for x in first)
    if s.is_finite():
        assert len(first) == len(s.exceptional)
    else:
        assert len(first) == 12


def test_min_element():
    assert EVENS.min_element() == 2
    assert UPSet.finite({5, 9}).min_element() == 5
    assert EMPTY.min_element() is None
    assert UPSet.arithmetic(7, 3).min_element() == 7


def test_literal_printing():
    assert str(EVENS) == "up{mod 2 in [0]}"
    assert str(UPSet.finite({1, 5})) == "up{finite=[1,5]}"
    s = UPSet(2, frozenset({1}), 2, frozenset({0}))
    assert str(s) == "up{N=2, exc=[1], p=2, res=[0]}"
