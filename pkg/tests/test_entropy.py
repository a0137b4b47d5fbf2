import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from recpairs.entropy import (
    binary_entropy,
    binomial_tail,
    binomial_tail_check,
    bisect,
    effective_fraction,
    entropy_inv_decreasing,
    entropy_inv_increasing,
)


def oracle_inv(y):
    return brentq(lambda x: binary_entropy(x) - y, 1e-300, 0.5, xtol=1e-16, rtol=1e-15)


def test_entropy_values():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.71) == pytest.approx(0.8687212463, abs=1e-9)
    with pytest.raises(ValueError):
        binary_entropy(1.5)


@pytest.mark.parametrize(
    "y, expected",
    [(0.36, 0.06842012092390642), (0.4525, 0.09486395942569877), (0.1, 0.012986862055517795)],
)
def test_inverse_frozen(y, expected):
    assert entropy_inv_increasing(y) == pytest.approx(expected, abs=1e-12)
    assert entropy_inv_decreasing(y) == pytest.approx(1 - expected, abs=1e-12)


def test_inverse_endpoints():
    assert entropy_inv_increasing(0.0) == 0.0
    assert entropy_inv_increasing(1.0) == 0.5
    assert entropy_inv_decreasing(1.0) == 0.5
    for bad in (-0.1, 1.1):
        with pytest.raises(ValueError):
            entropy_inv_increasing(bad)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-6, 1 - 1e-9))
def test_inverse_matches_brentq(y):
    x = entropy_inv_increasing(y)
    assert 0 <= x <= 0.5
    assert x == pytest.approx(oracle_inv(y), abs=1e-12)
    assert binary_entropy(x) == pytest.approx(y, abs=1e-11)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_inverse_monotone(y1, y2):
    lo, hi = sorted((y1, y2))
    assert entropy_inv_increasing(lo) <= entropy_inv_increasing(hi)
    assert entropy_inv_decreasing(lo) >= entropy_inv_decreasing(hi)


def test_bisect_either_direction():
    assert bisect(lambda x: 2 - x * x, 0.0, 2.0) == pytest.approx(math.sqrt(2), abs=1e-13)
    assert bisect(lambda x: 1 - x, -5.0, 5.0) == pytest.approx(1.0, abs=1e-13)


def test_binomial_tail_exact():
    assert binomial_tail(10, 0.25) == 1 + 10 + 45
    assert binomial_tail(30, 0.5) == sum(math.comb(30, i) for i in range(16))
    assert effective_fraction(10, 0.25).numerator == 1


@pytest.mark.parametrize("n", [10, 20, 30, 64, 99])
@pytest.mark.parametrize("k", [0.1, 0.25, 0.4, 0.5, 0.33])
def test_binomial_sandwich(n, k):
    assert binomial_tail_check(n, k)


def test_binomial_guards():
    with pytest.raises(ValueError):
        binomial_tail_check(10, 0.6)
    with pytest.raises(ValueError):
        binomial_tail_check(5, 0.1)
