"""
The countable family F of transition functions s_AB between rational points, single moves along
them (forward or inverse) and a height-ordered enumeration of F.
"""
import itertools
from enum import Enum
from fractions import Fraction
from dataclasses import dataclass

import mpmath

from anonlab.smooth.bigfloat import DomainError, SpecError, at_working_precision, to_mpf
from anonlab.smooth.transition import Point, TransitionFn, s_ab


class FPathError(Exception):
    pass


class EndpointMismatchError(FPathError):
    pass


@dataclass(frozen=True)
class FElement:
    a: Point
    b: Point

    def __post_init__(self):
        try:
            TransitionFn(self.a, self.b)
        except SpecError as e:
            raise FPathError(str(e))

    @property
    def transition(self):
        return TransitionFn(self.a, self.b)

    def key(self):
        return (self.a.p, self.a.q, self.b.p, self.b.q)


class Direction(Enum):
    FORWARD = 'forward'
    INVERSE = 'inverse'

    def flipped(self):
        return Direction.INVERSE if self is Direction.FORWARD else Direction.FORWARD


@dataclass(frozen=True)
class FMove:
    elem: FElement
    direction: Direction = Direction.FORWARD

    def domain(self):
        if self.direction is Direction.FORWARD:
            return self.elem.a.p, self.elem.b.p
        return self.elem.a.q, self.elem.b.q

    def in_domain(self, x):
        lo, hi = self.domain()
        if isinstance(x, (Fraction, int)):
            return lo <= x <= hi
        return to_mpf(lo) <= x <= to_mpf(hi)

    def reversed(self):
        return FMove(self.elem, self.direction.flipped())


@at_working_precision
def inverse_transition(transition, y, extra_bits=10):
    """s_AB^-1(y) by bisection on the increasing function s_AB."""
    lo, hi = to_mpf(transition.a.p), to_mpf(transition.b.p)
    y = to_mpf(y)
    if y == to_mpf(transition.a.q):
        return lo
    if y == to_mpf(transition.b.q):
        return hi
    for _ in range(mpmath.mp.prec + extra_bits):
        mid = (lo + hi) / 2
        if mid == lo or mid == hi:
            break
        if s_ab(transition, mid) < y:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@at_working_precision
def f_apply(move, x):
    if not move.in_domain(x):
        lo, hi = move.domain()
        raise DomainError("Error: " + str(x) + " outside the move domain [" + str(lo) + ", " + str(hi) + "]")
    if move.direction is Direction.FORWARD:
        return s_ab(move.elem.transition, x)
    return inverse_transition(move.elem.transition, x)


def rationals_of_height(bound):
    """All canonical rationals n/d with |n| <= bound and 1 <= d <= bound."""
    found = {Fraction(n, d) for d in range(1, bound + 1) for n in range(-bound, bound + 1)}
    return sorted(found)


def height(r):
    return max(abs(r.numerator), r.denominator)


def enumerate_f(bound):
    """
    Every F element whose four coordinates have height <= bound, ordered by height and then by
    coordinates, so enumerate_f(b) is a prefix of enumerate_f(b + 1).
    """
    if bound < 1:
        raise FPathError("Error: enumeration bound must be at least 1")
    values = rationals_of_height(bound)
    elements = []
    for p1, p2 in itertools.combinations(values, 2):
        for q1, q2 in itertools.combinations(values, 2):
            elements.append(FElement(Point(p1, q1), Point(p2, q2)))
    elements.sort(key=lambda e: (max(height(r) for r in e.key()), e.key()))
    return elements


def neighbours(x, bound):
    """(move, image) for every single F move out of x among enumerate_f(bound)."""
    found = []
    for elem in enumerate_f(bound):
        for direction in Direction:
            move = FMove(elem, direction)
            if move.in_domain(x):
                found.append((move, f_apply(move, x)))
    return found
