from math import comb

import pytest

from eulerchow import catalog
from eulerchow.grading import GradingFunctional, TruncationSpec, auto_functional
from eulerchow.series import ProductForm, expand, ts_eq


def spec1(bound):
    return TruncationSpec(GradingFunctional((1,)), bound)


def test_pn_exponents():
    assert catalog.euler_chow_pn(2, 0).factors == (((1,), 3),)
    assert catalog.euler_chow_pn(2, 1).factors == (((1,), 3),)
    assert catalog.euler_chow_pn(3, 1).factors == (((1,), 6),)
    assert catalog.euler_chow_pn(1, 2).is_one()


def test_pn_coefficients():
    ts = expand(catalog.euler_chow_pn(2, 1), spec1(4))
    assert [ts[(d,)] for d in range(5)] == [1, 3, 6, 10, 15]


@pytest.mark.parametrize("n", range(6))
def test_pn_first_order(n):
    for p in range(n + 1):
        assert expand(catalog.euler_chow_pn(n, p), spec1(1))[(1,)] == comb(n + 1, p + 1)


def test_mcdonald():
    ts = expand(catalog.mcdonald_e0(2), spec1(30))
    assert [ts[(d,)] for d in range(31)] == list(range(1, 32))
    assert dict(expand(catalog.mcdonald_e0(-2), spec1(30)).items()) == {(0,): 1, (1,): -2, (2,): 1}
    assert catalog.mcdonald_e0(0).is_one()


def test_ruled_series_shapes():
    s = catalog.RuledSurfaceSpec(1, 2)
    assert catalog.ruled_series(s, 0) == catalog.mcdonald_e0(0)
    assert catalog.ruled_series((0, 0), 0) == catalog.mcdonald_e0(4)
    assert catalog.ruled_series(s, 1) == ProductForm(2, (((0, 1), 1), ((-2, 1), 1)))
    assert catalog.ruled_series(s, 2) == ProductForm(1, (((1,), 1),))


def test_ruled_validation():
    with pytest.raises(ValueError):
        catalog.RuledSurfaceSpec(-1, 0)
    with pytest.raises(ValueError):
        catalog.ruled_series((0, 0), 3)


@pytest.mark.parametrize("g", range(3))
@pytest.mark.parametrize("e", range(4))
def test_ruled_two_path(g, e):
    spec = TruncationSpec(GradingFunctional((1, e + 1)), 15)
    result = catalog.bundle_assembly(catalog.ruled_assembly(g, e), spec)
    assert result.form == catalog.ruled_series((g, e), 1)
    assert result.report.equal and result.numeric.complete


def test_hirzebruch_spots():
    ts = expand(catalog.ruled_series((0, 1), 1), TruncationSpec(GradingFunctional((1, 2)), 4))
    assert ts[(0, 0)] == 1 and ts[(1, 0)] == 2 and ts[(0, 1)] == 3


@pytest.mark.parametrize("e", range(5))
def test_ruled_rational_nonnegative(e):
    ts = expand(catalog.ruled_series((0, e), 1), TruncationSpec(GradingFunctional((1, e + 1)), 20))
    assert all(c > 0 for _, c in ts.items())


@pytest.mark.parametrize("e", range(4))
def test_two_bundle_matches_ruled_map(e):
    assert catalog.two_bundle_psi(-e) == catalog.ruled_psi1(e)


@pytest.mark.parametrize("g,e", [(0, 1), (3, 2), (1, 0)])
def test_e2_all_ones(g, e):
    ts = expand(catalog.ruled_series((g, e), 2), spec1(50))
    assert all(ts[(d,)] == 1 for d in range(51))


def test_scroll_factors():
    fs = catalog.scroll3_factors(1, 2)
    assert [f.factors for f in fs] == [(((1,), 2),)] + [(((1,), 1),)] * 3 + [()] * 3


def test_scroll_printed_formula_h0_sign_free():
    assert catalog.scroll3_printed_formula(1, 0, 2, 1) == catalog.scroll3_printed_formula(1, 0, 2, -1)
    with pytest.raises(ValueError):
        catalog.scroll3_printed_formula(1, 1, 2, 0)


def test_scroll_h1_pushforward():
    asm = catalog.scroll3_assembly(1, 1, 2)
    spec = TruncationSpec(auto_functional(asm.psi.columns), 10)
    result = catalog.bundle_assembly(asm, spec)
    assert result.form == ProductForm(3, (((1, 0, 0), 2), ((0, 1, 0), 1), ((1, 1, 0), 2)))
    assert result.form == catalog.scroll3_printed_formula(1, 1, 2, 1)
    assert result.report.equal


@pytest.mark.parametrize("h", range(4))
@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("p", [2, 3])
def test_scroll_two_path(h, n, p):
    asm = catalog.scroll3_assembly(n, h, p)
    printed = catalog.scroll3_printed_formula(n, h, p, 1)
    spec = TruncationSpec(auto_functional(list(asm.psi.columns) + printed.monomials), 12)
    result = catalog.bundle_assembly(asm, spec)
    assert result.report.equal and result.numeric.complete
    assert ts_eq(expand(printed, spec), result.numeric).equal
