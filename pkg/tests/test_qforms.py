from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charnum.errors import UsageError
from charnum.graded import PontryaginNumbers, linear_combination
from charnum.lattice import basis_numbers
from charnum.qforms import (QSeries, delta, delta_bar, divisor_sigma, eisenstein_e4, eisenstein_e6, image_coordinates,
                            series_equal, witten_direct, witten_modular)


def test_eisenstein_coefficients():
    assert eisenstein_e4(4).coeffs == (1, 240, 2160, 6720, 17520)
    assert eisenstein_e6(3).coeffs == (1, -504, -16632, -122976)
    assert divisor_sigma(3, 6) == 1 + 8 + 27 + 216


def test_delta_identity_through_q10():
    lhs = delta(10)
    rhs = (eisenstein_e4(10) ** 3 - eisenstein_e6(10) ** 2) / 1728
    assert lhs.coeffs == rhs.coeffs
    assert lhs.coeffs[:7] == (0, 1, -24, 252, -1472, 4830, -6048)


def test_delta_bar():
    assert delta_bar(3).coeffs == (1, -24, 197136, 16767072)


def test_series_arithmetic_truncates():
    a = QSeries((1, 2, 3))
    b = QSeries((1, 1))
    assert (a * b).coeffs == (1, 3)
    assert (a + b).trunc == 1
    with pytest.raises(UsageError):
        a.truncate(5)
    with pytest.raises(UsageError):
        QSeries(())


def test_witten_genus_of_basis():
    m1, m2, m3, m4 = basis_numbers()
    assert witten_modular(m1, 5).coeffs == (delta(5) * -24).coeffs
    assert witten_modular(m2, 5).coeffs == delta_bar(5).coeffs
    assert witten_modular(m3, 5).coeffs == (0,) * 6
    assert witten_modular(m4, 5).coeffs == (0,) * 6


@pytest.mark.parametrize("index", range(4))
def test_direct_matches_modular(index):
    nums = basis_numbers()[index]
    assert series_equal(witten_direct(nums, 3), witten_modular(nums, 3))


def test_image_coordinates():
    m1, m2, _, _ = basis_numbers()
    assert image_coordinates(witten_modular(m2, 2)) == (1, -31)
    assert image_coordinates(witten_modular(m1, 2)) == (0, -1)


def test_witten_direct_limits():
    with pytest.raises(UsageError):
        witten_direct(basis_numbers()[0], 4)
    with pytest.raises(UsageError):
        witten_modular(PontryaginNumbers(16, {}), 2)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-100, 100), min_size=4, max_size=4))
def test_witten_genus_is_linear(x):
    basis = basis_numbers()
    combo = linear_combination(x, basis)
    expected = QSeries.zero(4)
    for c, b in zip(x, basis):
        expected = expected + witten_modular(b, 4) * c
    assert witten_modular(combo, 4) == expected
    assert witten_direct(combo, 1).coeffs == expected.coeffs[:2]
