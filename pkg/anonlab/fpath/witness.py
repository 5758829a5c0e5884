"""
F-path witnesses: finite certified chains x_1 ~F x_2 ~F ... ~F x_n. Two reals are only ever said to
share a state of the adversarial scenario through such a witness.
"""
import logging
from fractions import Fraction
from dataclasses import dataclass

from anonlab.fpath.elements import FElement, FMove, Direction, FPathError, EndpointMismatchError
from anonlab.fpath.elements import f_apply, neighbours
from anonlab.scenarios.rational import as_rat
from anonlab.smooth.bigfloat import DomainError, at_working_precision, tolerance, to_mpf, to_str
from anonlab.smooth.transition import s_ab
from anonlab.smooth.warp import locate_piece


@dataclass(frozen=True)
class FPathWitness:
    points: tuple
    moves: tuple

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(to_mpf(x) for x in self.points))
        object.__setattr__(self, 'moves', tuple(self.moves))
        if not self.points:
            raise FPathError("Error: a witness needs at least one point")
        if len(self.moves) != len(self.points) - 1:
            raise FPathError("Error: a witness needs exactly one move per step")

    @property
    def start(self):
        return self.points[0]

    @property
    def end(self):
        return self.points[-1]

    def to_dict(self):
        return {
            'points': [to_str(x) for x in self.points],
            'moves': [{'a': [str(m.elem.a.p), str(m.elem.a.q)], 'b': [str(m.elem.b.p), str(m.elem.b.q)],
                       'direction': m.direction.value} for m in self.moves],
        }


def trivial_witness(x):
    return FPathWitness((x,), ())


def step_error(move, x, y):
    """|residual| of one step; inverse steps are checked by evaluating the forward map at y."""
    if move.direction is Direction.FORWARD:
        if not move.in_domain(x):
            return None
        return abs(s_ab(move.elem.transition, x) - y)
    if not move.reversed().in_domain(y):
        return None
    return abs(s_ab(move.elem.transition, y) - x)


@at_working_precision
def verify_witness(wit, tol=None):
    tol = tolerance() if tol is None else to_mpf(tol)
    for move, x, y in zip(wit.moves, wit.points, wit.points[1:]):
        error = step_error(move, x, y)
        if error is None or error > tol:
            logging.debug("witness step " + str(move) + " fails with residual " + str(error))
            return False
    return True


def reverse_witness(wit):
    return FPathWitness(tuple(reversed(wit.points)), tuple(m.reversed() for m in reversed(wit.moves)))


@at_working_precision
def concat_witnesses(first, second, tol=None):
    tol = tolerance() if tol is None else to_mpf(tol)
    if abs(first.end - second.start) > tol:
        raise EndpointMismatchError("Error: witnesses do not meet: " + to_str(first.end, 20) + " vs "
                                    + to_str(second.start, 20))
    return FPathWitness(first.points + second.points[1:], first.moves + second.moves)


@at_working_precision
def witness_for_warp(spec, x):
    """Single-move witness x ~F t(x) along the piece of the warp t that contains x (x < w)."""
    exact = isinstance(x, (Fraction, int))
    if (as_rat(x) if exact else to_mpf(x)) >= (spec.w if exact else to_mpf(spec.w)):
        raise FPathError("Error: warp witnesses only cover agents below w = " + str(spec.w))
    piece = locate_piece(spec, x)
    move = FMove(FElement(piece.a, piece.b), Direction.FORWARD)
    return FPathWitness((to_mpf(x), f_apply(move, x)), (move,))


@at_working_precision
def search_path(x, y, bound, depth, tol=None):
    """
    Breadth-first search for an F-path from x to y over enumerate_f(bound), at most ``depth`` moves.
    Exploratory only: not finding a path proves nothing.
    """
    tol = tolerance() if tol is None else to_mpf(tol)
    x, y = to_mpf(x), to_mpf(y)
    frontier = [trivial_witness(x)]
    seen = [x]
    for _ in range(depth + 1):
        for wit in frontier:
            if abs(wit.end - y) <= tol:
                return wit
        next_frontier = []
        for wit in frontier:
            for move, image in neighbours(wit.end, bound):
                if any(abs(image - old) <= tol for old in seen):
                    continue
                seen.append(image)
                next_frontier.append(FPathWitness(wit.points + (image,), wit.moves + (move,)))
        frontier = next_frontier
    return None


@dataclass(frozen=True)
class ClassState:
    """A ~F* class named by one of its members; no canonical label exists."""
    representative: object


class AdversarialScenario:
    """f(x) = [x] under ~F*, kept intensional: states are compared only through witnesses."""

    @at_working_precision
    def state(self, x):
        return ClassState(to_mpf(x))

    @at_working_precision
    def same_state(self, first, second, witness, tol=None):
        tol = tolerance() if tol is None else to_mpf(tol)
        if abs(witness.start - first.representative) > tol or abs(witness.end - second.representative) > tol:
            return False
        return verify_witness(witness, tol)


def certify_warp_invariance(spec, xs, tol=None):
    """
    For each agent x < w, a verified witness that f(t(x)) = f(x) for the adversarial scenario.
    Returns (x, witness, verified) triples in input order.
    """
    scenario = AdversarialScenario()
    results = []
    for x in xs:
        try:
            wit = witness_for_warp(spec, x)
        except (FPathError, DomainError) as e:
            logging.warning("No witness at " + str(x) + ": " + str(e))
            results.append((x, None, False))
            continue
        ok = scenario.same_state(scenario.state(wit.start), scenario.state(wit.end), wit, tol)
        results.append((x, wit, ok))
    return results
