from fractions import Fraction

import mpmath
import pytest

from anonlab.smooth.bigfloat import DEFAULT_PRECISION, DomainError, SpecError, tolerance
from anonlab.smooth.transition import h, h_deriv, h_deriv_poly, s, s_jet, s_deriv, s_ab, s_ab_deriv
from anonlab.smooth.transition import Point, TransitionFn, max_deriv_bound, transition_samples

TOL = mpmath.mpf(2) ** -200


@pytest.fixture(autouse=True)
def precision():
    with mpmath.workprec(256):
        yield


def test_h():
    assert h(-3) == 0
    assert h(0) == 0
    assert abs(h(1) - mpmath.exp(-1)) < TOL
    assert abs(h(Fraction(1, 2)) - mpmath.exp(-2)) < TOL


@pytest.mark.parametrize(
    ("k", "coeffs"),
    [
        (1, (0, 0, 1)),
        (2, (0, 0, 0, -2, 1)),
        (3, (0, 0, 0, 0, 6, -6, 1)),
    ],
)
def test_h_deriv_poly(k, coeffs):
    assert h_deriv_poly(k) == coeffs


def test_h_deriv_poly_needs_positive_order():
    with pytest.raises(DomainError):
        h_deriv_poly(0)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_h_deriv_matches_numerical_derivative(k):
    x = mpmath.mpf(1) / 2
    numeric = mpmath.diff(lambda t: mpmath.exp(-1 / t), x, k)
    assert abs(h_deriv(x, k) - numeric) < mpmath.mpf(10) ** -40 * max(1, abs(numeric))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_h_flat_at_zero(k):
    values = [abs(h_deriv(mpmath.mpf(2) ** -j, k)) for j in range(6, 14)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] < mpmath.mpf(10) ** -100


def test_s_values():
    assert s(0) == 0
    assert s(1) == 1
    assert abs(s(Fraction(1, 2)) - mpmath.mpf(1) / 2) < TOL
    for i in range(1, 100):
        x = Fraction(i, 100)
        assert abs(s(x) + s(1 - x) - 1) < TOL
        assert s(x) < s(x + Fraction(1, 100))


@pytest.mark.parametrize("x", [Fraction(3, 2), Fraction(-1, 10), mpmath.mpf('1.25')])
def test_s_domain(x):
    with pytest.raises(DomainError):
        s(x)


def test_s_jet_flat_at_endpoints():
    for x in (0, 1):
        jet = s_jet(x, 6)
        assert all(jet.derivative(k) == 0 for k in range(1, 7))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_s_jet_matches_numerical_derivative(k):
    x = mpmath.mpf('0.3')
    numeric = mpmath.diff(s, x, k)
    assert abs(s_deriv(x, k) - numeric) < mpmath.mpf(10) ** -30 * max(1, abs(numeric))


def test_s_ab():
    t = TransitionFn(Point(1, 2), Point(3, 6))
    assert s_ab(t, 1) == 2
    assert s_ab(t, 3) == 6
    assert abs(s_ab(t, 2) - 4) < TOL
    unit = TransitionFn(Point(0, 0), Point(1, 1))
    for x in (Fraction(1, 7), Fraction(1, 2), Fraction(5, 6)):
        assert abs(s_ab(unit, x) - s(x)) < TOL
    with pytest.raises(DomainError):
        s_ab(t, 4)


def test_s_ab_deriv():
    t = TransitionFn(Point(0, 0), Point(2, 1))
    assert abs(s_ab_deriv(t, 1, 1) - s_deriv(Fraction(1, 2), 1) / 2) < TOL
    for k in range(1, 5):
        assert s_ab_deriv(t, 0, k) == 0
        assert s_ab_deriv(t, 2, k) == 0


@pytest.mark.parametrize(
    ("a", "b"),
    [
        (Point(1, 1), Point(0, 2)),
        (Point(0, 1), Point(1, 1)),
    ],
)
def test_invalid_transition(a, b):
    with pytest.raises(SpecError):
        TransitionFn(a, b)


def test_max_deriv_bound():
    assert max_deriv_bound(0, 4).grid_max == 1
    first = max_deriv_bound(1, 4)
    assert first.grid_max >= 2 - TOL
    assert first.bound == 2 * first.grid_max
    assert max_deriv_bound(1, 6).grid_max >= first.grid_max
    assert max_deriv_bound(2, 6).grid_max >= max_deriv_bound(2, 4).grid_max
    with pytest.raises(DomainError):
        max_deriv_bound(-1)


def test_transition_samples():
    rows = transition_samples(1000)
    assert len(rows) == 1001
    assert rows[0] == (0, 0)
    assert rows[-1] == (1, 1)


def test_library_calls_ignore_a_low_global_precision():
    with mpmath.workprec(53):
        value = s(Fraction(1, 3))
        slope = s_ab_deriv(TransitionFn(Point(0, 0), Point(3, 1)), 1, 1)
        tol = tolerance()
        assert mpmath.mp.prec == 53
    near, far = mpmath.exp(-3), mpmath.exp(-mpmath.mpf(3) / 2)
    assert abs(value - near / (near + far)) < TOL
    assert abs(slope - s_deriv(Fraction(1, 3), 1) / 3) < TOL
    assert tol == mpmath.mpf(2) ** -(DEFAULT_PRECISION - 56)
