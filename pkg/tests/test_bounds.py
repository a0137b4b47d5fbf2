import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import brentq, minimize_scalar

from recpairs.bounds import (
    CLAIMED_BASE,
    FIRST,
    DEFAULT_RECTANGLE,
    STAIRCASE_16,
    SECOND,
    THRESHOLD,
    BoundPoint,
    DomainError,
    Rectangle,
    a_value,
    certify_default,
    certify_staircase,
    f_exponent_gap,
    first_bound,
    first_bound_maximum,
    first_bound_peak,
    m_a_lower,
    m_s_lower,
    narrow_rectangle,
    second_bound,
    second_bound_general,
    solve_f_exponent,
)
from recpairs.entropy import binary_entropy, entropy_inv_increasing


def test_f_exponent_against_brentq():
    s, base = solve_f_exponent()
    ref = brentq(f_exponent_gap, 0.01, 0.49, xtol=1e-15)
    assert s == pytest.approx(ref, abs=1e-12)
    assert s == pytest.approx(0.45255896070095514, abs=1e-12)
    assert base == pytest.approx(1.3684654022234481, abs=1e-12)


def test_first_bound_peak_is_argmax():
    for t in (0.0, 0.36, 0.4525):
        r = minimize_scalar(lambda u: -first_bound(u, t), bounds=(1e-9, 1 - 1e-9), method="bounded",
                            options={"xatol": 1e-12})
        assert first_bound_peak(t) == pytest.approx(r.x, abs=1e-6)


def test_first_bound_maximum():
    u, t, v = first_bound_maximum()
    assert t == 0.4525
    assert u == pytest.approx(0.5777757210118948, abs=1e-8)
    assert v == pytest.approx(1.2439185312956789, abs=1e-12)
    # dense grid never exceeds the closed form
    us = np.linspace(0.001, 0.999, 2001)
    ts = np.linspace(0.0, 0.4525, 201)
    grid = max(first_bound(float(x), float(ts[-1])) for x in us)
    assert grid <= v + 1e-12
    assert all(first_bound(float(x), float(y)) <= v + 1e-12 for x in us[::50] for y in ts)


@pytest.mark.parametrize(
    "u, t, expected",
    [
        (0.5893, 0.36, 0.5957730091697098),
        (0.71, 0.43, 0.5471852149807749),
        (0.60, 0.43, 0.5095535670846957),
        (0.627, 0.374, 0.5957788958351683),
    ],
)
def test_second_bound_frozen(u, t, expected):
    assert second_bound(u, t) == pytest.approx(expected, abs=1e-12)


def test_second_bound_from_general_form():
    # Substituting the minimising m_S and m_A into the unreduced exponent.
    u, t = 0.62, 0.38
    x = entropy_inv_increasing(t)
    m_s = x * u
    c = (u + m_s) / 2
    a = a_value(u, t, m_s)
    m_a = c - a
    assert second_bound_general(u, t, c, m_a) == pytest.approx(second_bound(u, t), abs=1e-12)
    assert second_bound(u, t) == pytest.approx(binary_entropy(a) - a + (u / 2) * (1 - x - 2 * t), abs=1e-12)


def test_lower_bounds():
    assert m_s_lower(0.71, 0.36) == pytest.approx(0.06842012092390642 * 0.71, abs=1e-12)
    assert a_value(0.5893, 0.36, m_s_lower(0.5893, 0.36)) == pytest.approx(0.21216, abs=1e-5)
    assert a_value(0.5, 0.3, 0.5) == 0.0
    with pytest.raises(DomainError):
        a_value(0.5, 0.3, 0.6)
    with pytest.raises(DomainError):
        m_a_lower(0.5, 0.3, 0.2)
    assert 0 < m_a_lower(0.6, 0.2, 0.4) < 0.4


def test_second_bound_domain():
    with pytest.raises(DomainError):
        second_bound(0.6, 0.49)


def test_staircase_points():
    values = [BoundPoint.evaluate(u, t, w).value for u, t, w in STAIRCASE_16]
    assert len(values) == 16
    assert max(values) == pytest.approx(1.1915577916703366, abs=1e-12)
    assert all(v <= THRESHOLD - 1e-6 for v in values)
    assert [w for _, _, w in STAIRCASE_16][:2] == [SECOND, FIRST]


def test_certify_default():
    rep = certify_default()
    assert rep.verdict and rep.coverage_ok and rep.points_ok
    assert rep.applicability == []
    assert rep.narrowing.ok
    assert rep.derived_bound <= CLAIMED_BASE
    assert rep.recheck()
    d = rep.as_dict()
    assert d["verdict"] and len(d["points"]) == 16


def test_certify_fails_below_threshold():
    rep = certify_staircase(STAIRCASE_16, DEFAULT_RECTANGLE, 1.18)
    assert not rep.verdict and not rep.points_ok


def test_dropping_a_point_leaves_a_gap():
    for i in range(1, 15):
        pts = STAIRCASE_16[:i] + STAIRCASE_16[i + 1:]
        rep = certify_staircase(pts)
        assert not rep.coverage_ok and rep.gap is not None


def test_point_outside_rectangle_rejected():
    with pytest.raises(ValueError):
        certify_staircase([("0.9", "0.4", FIRST)])


def test_first_point_left_of_peak_flagged():
    rect = Rectangle("0.44", "0.71", "0.36", "0.4525")
    rep = certify_staircase([("0.5", "0.4525", FIRST)], rect)
    assert rep.applicability


def test_coverage_is_exact_on_fractions():
    rep = certify_default()
    assert all(isinstance(p.u, Fraction) for p in rep.points)
    assert rep.points[0].u == Fraction(5893, 10000)


def test_narrowing():
    rep = narrow_rectangle()
    assert rep.ok
    s, _ = solve_f_exponent()
    assert rep.t_cap == pytest.approx(s, abs=1e-12) and rep.t_cap > 0.4525
    assert rep.max_value <= THRESHOLD
    assert not narrow_rectangle(1.1).ok


def test_threshold_vs_claim():
    # The threshold itself rounds above the claimed base; the certified exponent does not.
    assert 2**THRESHOLD > CLAIMED_BASE
    assert 2 ** certify_default().certified_exponent <= CLAIMED_BASE
    assert math.isclose(certify_default().threshold_bound, 2**THRESHOLD)
