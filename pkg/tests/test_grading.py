import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerchow.errors import (
    DegreeOverflow,
    NonPositiveMonomial,
    NoPositiveFunctional,
    RankMismatch,
    UnboundedRegion,
)
from eulerchow.grading import (
    GradingFunctional,
    TruncationSpec,
    add,
    auto_functional,
    enumerate_region,
    validate_functional,
)


def test_validate_functional_accepts_positive_values():
    validate_functional(GradingFunctional((1, 2)), [(1, 0), (0, 1), (-1, 1)])


def test_validate_functional_rejects_zero_value():
    with pytest.raises(NonPositiveMonomial) as info:
        validate_functional(GradingFunctional((1, 1)), [(-1, 1)])
    assert info.value.value == 0


@pytest.mark.parametrize("e", range(8))
def test_ruled_monomials_graded_by_one_e_plus_one(e):
    validate_functional(GradingFunctional((1, e + 1)), [(1, 0), (0, 1), (-e, 1)])


def test_validate_functional_rank_mismatch():
    with pytest.raises(RankMismatch):
        validate_functional(GradingFunctional((1, 1)), [(1,)])


def test_weights_must_be_positive():
    with pytest.raises(ValueError):
        GradingFunctional((1, 0))


def test_auto_functional_prefers_all_ones():
    assert auto_functional([(1, 0), (0, 1)]).weights == (1, 1)


def test_auto_functional_mixed_sign():
    w = auto_functional([(1, 0), (0, 1), (-2, 1)])
    validate_functional(w, [(1, 0), (0, 1), (-2, 1)])
    assert w.weights == (1, 3)


def test_auto_functional_opposite_rays():
    with pytest.raises(NoPositiveFunctional):
        auto_functional([(1,), (-1,)])


def test_auto_functional_zero_monomial():
    with pytest.raises(NoPositiveFunctional):
        auto_functional([(0, 0)])


def _brute_force_weights(monomials, limit=12):
    # independent oracle: search small positive weight vectors
    r = len(monomials[0])
    for w in itertools.product(range(1, limit + 1), repeat=r):
        if all(sum(a * b for a, b in zip(w, m)) >= 1 for m in monomials):
            return w
    return None


monomial_lists = st.integers(1, 3).flatmap(
    lambda r: st.lists(
        st.tuples(*[st.integers(-3, 3)] * r).filter(any), min_size=1, max_size=5
    )
)


@settings(max_examples=200, deadline=None)
@given(monomial_lists)
def test_auto_functional_agrees_with_brute_force(monomials):
    oracle = _brute_force_weights(monomials)
    try:
        w = auto_functional(monomials)
    except NoPositiveFunctional:
        assert oracle is None
        return
    validate_functional(w, monomials)


def test_auto_functional_steep_cone():
    # needs weights well beyond the all-ones guess
    monomials = [(1, 0, 0), (-3, 1, 0), (0, -3, 1)]
    w = auto_functional(monomials)
    validate_functional(w, monomials)


def test_enumerate_region_rank2():
    pts = list(enumerate_region(2, TruncationSpec(GradingFunctional((1, 1)), 1)))
    assert pts == [(0, 0), (0, 1), (1, 0)]


def test_enumerate_region_rank1_weighted():
    assert list(enumerate_region(1, TruncationSpec(GradingFunctional((2,)), 5))) == [(0,), (1,), (2,)]


def test_enumerate_region_stars_and_bars():
    pts = list(enumerate_region(3, TruncationSpec(GradingFunctional((1, 1, 1)), 2)))
    assert len(pts) == comb(2 + 3, 3) == 10


def test_enumerate_region_requires_orthant():
    with pytest.raises(UnboundedRegion):
        list(enumerate_region(1, TruncationSpec(GradingFunctional((1,)), 3), positive_orthant_only=False))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.tuples(st.lists(st.integers(1, 4), min_size=r, max_size=r), st.integers(0, 10))))
def test_enumerate_region_matches_nested_loops(data):
    weights, bound = data
    r = len(weights)
    spec = TruncationSpec(GradingFunctional(weights), bound)
    got = list(enumerate_region(r, spec))
    oracle = [
        p
        for p in itertools.product(range(bound + 1), repeat=r)
        if sum(w * x for w, x in zip(weights, p)) <= bound
    ]
    assert got == sorted(oracle)
    assert got == list(enumerate_region(r, spec))


def test_degree_overflow_is_checked():
    with pytest.raises(DegreeOverflow):
        add((2**63 - 1,), (1,))
