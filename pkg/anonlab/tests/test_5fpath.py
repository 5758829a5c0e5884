from fractions import Fraction

import mpmath
import pytest

from anonlab.fpath.elements import FElement, FMove, Direction, FPathError, EndpointMismatchError
from anonlab.fpath.elements import f_apply, enumerate_f, neighbours, inverse_transition
from anonlab.fpath.witness import FPathWitness, AdversarialScenario, trivial_witness, verify_witness
from anonlab.fpath.witness import reverse_witness, concat_witnesses, witness_for_warp, search_path
from anonlab.fpath.witness import certify_warp_invariance
from anonlab.smooth.bigfloat import DomainError, to_mpf
from anonlab.smooth.transition import Point, TransitionFn, s
from anonlab.smooth.warp import build_warp

TOL = mpmath.mpf(2) ** -200
UNIT = FElement(Point(0, 0), Point(1, 1))
TALL = FElement(Point(0, 0), Point(2, 3))


@pytest.fixture(autouse=True)
def precision():
    with mpmath.workprec(256):
        yield


def test_f_apply():
    assert abs(f_apply(FMove(UNIT), Fraction(1, 2)) - mpmath.mpf(1) / 2) < TOL
    assert f_apply(FMove(UNIT), 0) == 0
    x = mpmath.mpf('0.3')
    y = f_apply(FMove(TALL), x)
    assert abs(f_apply(FMove(TALL, Direction.INVERSE), y) - x) < TOL
    with pytest.raises(DomainError):
        f_apply(FMove(UNIT), 2)
    with pytest.raises(DomainError):
        f_apply(FMove(TALL, Direction.INVERSE), 4)


def test_inverse_transition_endpoints():
    t = TransitionFn(Point(1, 2), Point(3, 6))
    assert inverse_transition(t, 2) == 1
    assert inverse_transition(t, 6) == 3


def test_invalid_element():
    with pytest.raises(FPathError):
        FElement(Point(1, 1), Point(0, 0))


def test_verify_witness():
    assert verify_witness(trivial_witness(Fraction(1, 3)))
    x = Fraction(1, 4)
    forward = FPathWitness((x, f_apply(FMove(TALL), x)), (FMove(TALL),))
    assert verify_witness(forward, TOL)
    assert verify_witness(reverse_witness(forward), TOL)
    wrong = FPathWitness((x, f_apply(FMove(TALL), x) + mpmath.mpf(10) ** -20), (FMove(TALL),))
    assert not verify_witness(wrong, TOL)
    with pytest.raises(FPathError):
        FPathWitness((x, x), ())


def test_concat_witnesses():
    x = Fraction(1, 4)
    single = trivial_witness(x)
    assert concat_witnesses(single, single).points == single.points
    first = FPathWitness((x, f_apply(FMove(TALL), x)), (FMove(TALL),))
    y = first.end
    second = FPathWitness((y, f_apply(FMove(UNIT), y)), (FMove(UNIT),))
    chained = concat_witnesses(first, second)
    assert len(chained.points) == 3 and chained.points[1] == y
    assert verify_witness(chained, TOL)
    back = concat_witnesses(first, reverse_witness(first))
    assert abs(back.end - back.start) < TOL and verify_witness(back, TOL)
    with pytest.raises(EndpointMismatchError):
        concat_witnesses(first, first)


def test_enumerate_f():
    small = enumerate_f(1)
    assert UNIT in small
    keys = [e.key() for e in small]
    assert len(set(keys)) == len(keys)
    larger = enumerate_f(2)
    assert len(larger) >= len(small)
    assert larger[:len(small)] == small
    with pytest.raises(FPathError):
        enumerate_f(0)


def test_neighbours_and_search():
    x = Fraction(1, 4)
    found = neighbours(x, 1)
    assert all(move.in_domain(x) for move, _ in found)
    y = s(x)
    path = search_path(x, y, 1, 1)
    assert path is not None and verify_witness(path)
    assert search_path(x, x, 1, 0).moves == ()


def test_witness_for_warp():
    spec = build_warp(0, 0, 10)
    at_anchor = witness_for_warp(spec, spec.p(3))
    assert at_anchor.moves[0].elem == FElement(spec.anchor(3), spec.anchor(4))
    assert abs(at_anchor.end - to_mpf(spec.q(3))) < TOL
    inside = witness_for_warp(spec, (spec.p(5) + spec.p(6)) / 2)
    assert verify_witness(inside, TOL)
    negative = witness_for_warp(spec, spec.p(-2) + Fraction(1, 3))
    assert negative.moves[0].elem == FElement(spec.anchor(-2), spec.anchor(-1))
    assert verify_witness(negative, TOL)
    with pytest.raises(FPathError):
        witness_for_warp(spec, spec.w)


def test_certify_warp_invariance():
    spec = build_warp(Fraction(1, 2), -1, 10)
    xs = [spec.p(spec.depth) - Fraction(k, 64) for k in range(1, 20)] + [spec.w + 1]
    results = certify_warp_invariance(spec, xs, TOL)
    assert [ok for _, _, ok in results[:-1]] == [True] * 19
    assert results[-1][1] is None and not results[-1][2]
    scenario = AdversarialScenario()
    x, wit, _ = results[0]
    assert scenario.same_state(scenario.state(wit.start), scenario.state(wit.end), wit, TOL)
    assert not scenario.same_state(scenario.state(wit.start), scenario.state(wit.start + 1), wit, TOL)


def test_witnesses_hold_at_a_low_global_precision():
    spec = build_warp(0, 0, 8)
    with mpmath.workprec(53):
        wit = witness_for_warp(spec, Fraction(-1, 3))
        assert verify_witness(wit)
    nudged = FPathWitness((wit.start, wit.end + mpmath.mpf(2) ** -100), wit.moves)
    with mpmath.workprec(53):
        assert not verify_witness(nudged)
    assert abs(wit.end - f_apply(wit.moves[0], Fraction(-1, 3))) < TOL
