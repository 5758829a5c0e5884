from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from anonlab.harness.generators import random_periodic, alphabet
from anonlab.prediction.checks import alternation, unit_step
from anonlab.scenarios.errors import PreconditionError
from anonlab.scenarios.extension import is_past_periodic, is_past_invariant, periodic_extension, affine_extension
from anonlab.scenarios.extension import check_period_match, constant_below, find_past_period
from anonlab.scenarios.extension import find_past_affine_symmetry
from anonlab.scenarios.pattern import CyclicPattern
from anonlab.scenarios.scenario import LogPeriodicScenario, StepScenario
from anonlab.scenarios.scenario import constant, normalize, compose_warp, restrict_eq, scenarios_equal
from anonlab.warps.timewarp import shift, scaling

S1 = unit_step()
P0 = alternation()
LOG = LogPeriodicScenario(0, 2, CyclicPattern((1, Fraction(3, 2)), ('A', 'B')),
                          CyclicPattern((-2, Fraction(-3, 2)), ('A', 'B')), 'A')


@pytest.mark.parametrize(
    ("f", "x", "b", "expected"),
    [
        (S1, 0, 1, False),
        (S1, 0, -1, True),
        (S1, 1, 1, False),
        (P0, 10, 1, True),
        (P0, 0, Fraction(1, 2), False),
        (constant('A'), 3, Fraction(-5, 7), True),
    ],
)
def test_is_past_periodic(f, x, b, expected):
    assert is_past_periodic(f, x, b) == expected


def test_zero_period_is_rejected():
    with pytest.raises(PreconditionError):
        is_past_periodic(S1, 0, 0)


def test_periodic_extension():
    assert periodic_extension(S1, 0, -1) == constant('A')
    assert periodic_extension(P0, 3, 2) == normalize(P0)
    with pytest.raises(PreconditionError):
        periodic_extension(S1, 1, 1)


def test_affine_extension():
    assert affine_extension(S1, 0, scaling(2)) == constant('A')
    assert affine_extension(S1, 0, shift(-1)) == constant('A')
    above = affine_extension(LOG, 3, scaling(2))
    assert restrict_eq(above, LOG, 3)
    assert scenarios_equal(compose_warp(above, scaling(2)), above)
    below = affine_extension(LOG, Fraction(-1, 2), scaling(2))
    assert restrict_eq(below, LOG, Fraction(-1, 2))
    assert scenarios_equal(compose_warp(below, scaling(2)), below)


def test_affine_extension_preconditions():
    with pytest.raises(PreconditionError):
        affine_extension(S1, 0, shift(0))
    with pytest.raises(PreconditionError):
        affine_extension(StepScenario((0, 1), ('A', 'B', 'A')), 2, scaling(2))


def test_check_period_match():
    assert check_period_match(P0, 0, 2)
    assert check_period_match(constant('A'), 0, 5)
    with pytest.raises(PreconditionError):
        check_period_match(S1, 0, 1)
    with pytest.raises(PreconditionError):
        check_period_match(P0, 0, Fraction(1, 3))


def test_past_symmetry_witnesses():
    assert constant_below(S1, 0) == 'A'
    assert constant_below(S1, 1) is None
    assert find_past_period(S1, 0) == -1
    assert find_past_period(S1, 1) is None
    assert find_past_period(P0, 1) == 1
    t = find_past_affine_symmetry(S1, 1)
    assert t == scaling(Fraction(1, 2), 0) and is_past_invariant(S1, 1, t)
    assert find_past_affine_symmetry(StepScenario((0, 1), ('A', 'B', 'A')), 2) is None
    assert is_past_invariant(LOG, 5, find_past_affine_symmetry(LOG, 5))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.fractions(min_value=-6, max_value=6, max_denominator=8),
       st.integers(1, 4))
def test_periodic_scenarios_keep_their_past_periods(seed, x, multiple):
    f = random_periodic(np.random.default_rng(seed), alphabet(3))
    b = normalize(f).period * multiple
    assert is_past_periodic(f, x, b)
    assert check_period_match(f, x, b)
    g = periodic_extension(f, x, b)
    assert restrict_eq(f, g, x)


@pytest.mark.parametrize("x", [0, Fraction(-1, 2), -7])
def test_constant_past_witnesses_are_usable(x):
    b = find_past_period(S1, x)
    assert b == -1 and is_past_periodic(S1, x, b)
    assert periodic_extension(S1, x, b) == constant('A')
    t = find_past_affine_symmetry(S1, x)
    assert t == shift(-1) and is_past_invariant(S1, x, t)
    assert affine_extension(S1, x, t) == constant('A')
