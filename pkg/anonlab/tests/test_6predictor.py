from fractions import Fraction

import pytest

from anonlab.prediction.catalog import Catalog, CatalogError, ClosureViolationError, NoConsistentEntryError
from anonlab.prediction.catalog import check_closure
from anonlab.prediction.checks import alternation, unit_step
from anonlab.prediction.predictor import Predictor, predict, consistency_ht, consistency_t1, consistency_t2
from anonlab.scenarios.scenario import StepScenario, Tier, constant, compose_warp, restrict_eq, eval, past_view
from anonlab.warps.timewarp import AffineWarp, apply, shift, scaling

S1 = unit_step()
P0 = alternation()
C_A, C_B = constant('A'), constant('B')
TWO_JUMPS = StepScenario((0, 1), ('A', 'B', 'A'))


@pytest.mark.parametrize(
    ("x", "state", "index"),
    [
        (-1, 'A', 0),
        (0, 'A', 0),
        (Fraction(1, 2), 'B', 1),
    ],
)
def test_ht_least_consistent(x, state, index):
    cat = Catalog.from_entries([C_A, S1])
    guess = predict(cat, past_view(S1, x), 'ht')
    assert (guess.state, guess.witness_index) == (state, index)


def test_consistency_ht():
    assert consistency_ht(C_A, past_view(S1, 0))
    assert not consistency_ht(C_A, past_view(S1, 1))
    assert consistency_ht(S1, past_view(S1, 3))


def test_consistency_t2_aligns_the_jump():
    pv = past_view(compose_warp(S1, AffineWarp(2, 1)), 0)
    t = consistency_t2(S1, pv)
    assert t == shift(Fraction(1, 2))
    assert consistency_t1(S1, pv) == t
    assert consistency_t2(P0, past_view(S1, 1)) is None


def test_consistency_t2_needs_scaling():
    pv = past_view(compose_warp(TWO_JUMPS, scaling(2)), 1)
    assert consistency_t2(TWO_JUMPS, pv) == AffineWarp(2, 2)
    assert consistency_t1(TWO_JUMPS, pv) is None


@pytest.mark.parametrize("a", [Fraction(1, 2), 1, 3])
def test_guess_does_not_depend_on_the_warp(a):
    t = AffineWarp(a, Fraction(a) / 2)
    assert restrict_eq(past_view(S1, Fraction(1, 2)).base, compose_warp(S1, t), 0)
    assert eval(S1, apply(t, 0)) == 'B'


def test_t2_error_set_example():
    cat = Catalog.from_entries([C_A, P0, S1])
    grid = [-2, -1, 0, Fraction(1, 2), 1]
    guesses = [predict(cat, past_view(S1, x), 't2') for x in grid]
    assert [g.state for g in guesses] == ['A', 'A', 'A', 'B', 'B']
    assert [g.witness_index for g in guesses] == [0, 0, 0, 2, 2]


def test_guess_reads_the_warped_entry():
    cat = Catalog.from_entries([C_A, C_B, P0, S1])
    pv = past_view(compose_warp(S1, AffineWarp(3, -1)), 1)
    guess = Predictor(cat, 't2').predict(pv)
    assert guess.state == eval(cat.entries[guess.witness_index], apply(guess.witness_warp, 0))
    assert restrict_eq(pv.base, compose_warp(S1, guess.witness_warp), 0)


def test_no_consistent_entry():
    cat = Catalog.from_entries([C_A])
    with pytest.raises(NoConsistentEntryError):
        predict(cat, past_view(S1, 1), 'ht')
    with pytest.raises(NoConsistentEntryError):
        predict(cat, past_view(S1, 1), 't2')


def test_check_closure():
    report = check_closure(Catalog.from_entries([P0, S1]))
    assert not report.passed
    assert report.violations[0].requirement == 'periodic extension'
    assert report.violations[0].missing_extension is not None
    closed = check_closure(Catalog.from_entries([C_A, C_B, P0, S1]))
    assert closed.passed and closed.checked > 0
    assert check_closure(Catalog.from_entries([C_A, S1]), cuts=[-1, 0, 2]).to_dict()['passed']


def test_check_closure_reports_constant_past():
    report = check_closure(Catalog.from_entries([P0, S1]), cuts=[0])
    assert report.checked == 2 and not report.passed
    violation, = report.violations
    assert (violation.entry_index, violation.cut) == (1, 0)
    assert violation.requirement == 'periodic extension'
    assert violation.missing_extension == C_A


def test_predictor_arguments():
    open_catalog = Catalog.from_entries([P0, S1])
    with pytest.raises(ValueError):
        Predictor(open_catalog, 't3')
    with pytest.raises(ClosureViolationError):
        Predictor(open_catalog, 't2')
    assert Predictor(open_catalog, 't2', require_closure=False).closure_report is None
    assert Predictor(open_catalog, 'ht')(past_view(S1, 1)).state == 'B'


def test_catalog_order():
    with pytest.raises(CatalogError):
        Catalog.from_entries([S1, C_A])
    with pytest.raises(CatalogError):
        Catalog.from_entries([C_A, C_A])
    cat = Catalog.sorted_from([S1, TWO_JUMPS, C_A, constant('A'), P0])
    assert cat.entries == (C_A, P0, S1, TWO_JUMPS)
    assert cat.tiers == (Tier.PERIODIC, Tier.PERIODIC, Tier.AFFINE_INVARIANT, Tier.OTHER)
    assert Catalog.from_dict(cat.to_dict()) == cat


@pytest.mark.parametrize("mode", ['ht', 't1', 't2'])
def test_predict_from_a_later_entry(mode):
    cat = Catalog.from_entries([C_A, C_B, P0, S1])
    pv = past_view(S1, 1)
    full = predict(cat, pv, mode)
    assert full.witness_index == 3
    assert predict(cat, pv, mode, start=2) == full
    skipped = predict(cat, past_view(S1, -1), mode, start=1)
    assert skipped.witness_index == 3
    with pytest.raises(NoConsistentEntryError):
        predict(cat, past_view(P0, 1), mode, start=3)
