"""
The flat function h(x) = exp(-1/x) (x > 0, else 0), the smooth transition s(x) = h(x) / (h(x) + h(1-x)),
its rescaled copies s_AB joining two rational points, and derivative bounds for s.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from dataclasses import dataclass

import mpmath

from anonlab.scenarios.rational import as_rat
from anonlab.smooth.bigfloat import DomainError, SpecError, at_working_precision, to_mpf, working_precision
from anonlab.smooth.jet import Jet


@at_working_precision
def h(x):
    x = to_mpf(x)
    if x <= 0:
        return mpmath.mpf(0)
    return mpmath.exp(-1 / x)


@lru_cache(maxsize=None)
def h_deriv_poly(k):
    """
    Integer coefficients (ascending powers of u) of R_k with h^(k)(x) = exp(-1/x) R_k(1/x) for x > 0.
    R_1 = u^2, R_{k+1} = u^2 (R_k - R_k').
    """
    if k < 1:
        raise DomainError("Error: h_deriv_poly needs k >= 1")
    coeffs = (0, 0, 1)
    for _ in range(k - 1):
        deriv = [i * coeffs[i] for i in range(1, len(coeffs))] + [0]
        coeffs = (0, 0) + tuple(c - d for c, d in zip(coeffs, deriv))
    return coeffs


@at_working_precision
def h_deriv(x, k):
    """h^(k)(x); zero for x <= 0 at every order."""
    if k == 0:
        return h(x)
    x = to_mpf(x)
    if x <= 0:
        return mpmath.mpf(0)
    return mpmath.exp(-1 / x) * mpmath.polyval(list(reversed(h_deriv_poly(k))), 1 / x)


def _unit_check(x):
    if isinstance(x, Fraction) or isinstance(x, int):
        x = as_rat(x)
        if not 0 <= x <= 1:
            raise DomainError("Error: transition argument " + str(x) + " outside [0, 1]")
        return x
    x = to_mpf(x)
    if x < 0 or x > 1:
        raise DomainError("Error: transition argument " + mpmath.nstr(x, 10) + " outside [0, 1]")
    return x


@at_working_precision
def s(x):
    x = _unit_check(x)
    if x == 0:
        return mpmath.mpf(0)
    if x == 1:
        return mpmath.mpf(1)
    left = h(x)
    return left / (left + h(1 - x))


@at_working_precision
def s_jet(x, k):
    """Taylor jet of s at x up to order k; one-sided constant jets at the endpoints."""
    x = _unit_check(x)
    if x == 0:
        return Jet.constant(0, k)
    if x == 1:
        return Jet.constant(1, k)
    near = Jet.from_derivatives([h_deriv(x, j) for j in range(k + 1)])
    far = Jet.from_derivatives([(-1) ** j * h_deriv(1 - x, j) for j in range(k + 1)])
    return near / (near + far)


@at_working_precision
def s_deriv(x, k):
    if k == 0:
        return s(x)
    return s_jet(x, k).derivative(k)


@dataclass(frozen=True)
class Point:
    p: Fraction
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'p', as_rat(self.p))
        object.__setattr__(self, 'q', as_rat(self.q))

    def shifted(self, k):
        return Point(self.p + k, self.q + k)


@dataclass(frozen=True)
class TransitionFn:
    """s_AB: the copy of s through A and B, defined on [A.p, B.p]."""
    a: Point
    b: Point

    def __post_init__(self):
        if not (self.a.p < self.b.p and self.a.q < self.b.q):
            raise SpecError("Error: transition endpoint B must lie above and to the right of A")

    @property
    def width(self):
        return self.b.p - self.a.p

    @property
    def height(self):
        return self.b.q - self.a.q

    def contains(self, x):
        if isinstance(x, (Fraction, int)):
            return self.a.p <= x <= self.b.p
        return to_mpf(self.a.p) <= x <= to_mpf(self.b.p)

    def unit_argument(self, x):
        if not self.contains(x):
            raise DomainError("Error: " + str(x) + " outside [" + str(self.a.p) + ", " + str(self.b.p) + "]")
        if isinstance(x, (Fraction, int)):
            return (as_rat(x) - self.a.p) / self.width
        y = (x - to_mpf(self.a.p)) / to_mpf(self.width)
        return min(max(y, mpmath.mpf(0)), mpmath.mpf(1))


@at_working_precision
def s_ab(transition, x):
    y = transition.unit_argument(x)
    return to_mpf(transition.height) * s(y) + to_mpf(transition.a.q)


@at_working_precision
def s_ab_deriv(transition, x, k):
    """k-th derivative of s_AB at x by the chain rule: height / width^k * s^(k)."""
    if k == 0:
        return s_ab(transition, x)
    y = transition.unit_argument(x)
    return to_mpf(transition.height / transition.width ** k) * s_deriv(y, k)


@dataclass(frozen=True)
class DerivativeBound:
    k: int
    grid_max: object
    safety_factor: int
    bound: object
    resolution: Fraction
    grid_depth: int


@lru_cache(maxsize=None)
def _grid_maxima(k_max, grid_depth, precision):
    with mpmath.workprec(precision):
        n = 2 ** grid_depth
        maxima = [mpmath.mpf(0)] * (k_max + 1)
        for i in range(n + 1):
            jet = s_jet(Fraction(i, n), k_max)
            for k in range(k_max + 1):
                maxima[k] = max(maxima[k], abs(jet.derivative(k)))
    logging.debug("dyadic grid maxima of s^(k), depth " + str(grid_depth) + ": " + str(maxima))
    return tuple(maxima)


def max_deriv_bound(k, grid_depth=10, safety_factor=2):
    """Estimate of max |s^(k)| on [0, 1] from a dyadic grid, with the safety factor applied in ``bound``."""
    if k < 0:
        raise DomainError("Error: derivative order must be nonnegative")
    grid_max = _grid_maxima(k, grid_depth, working_precision())[k]
    return DerivativeBound(k, grid_max, safety_factor, grid_max * safety_factor,
                           Fraction(1, 2 ** grid_depth), grid_depth)


def transition_samples(resolution=1000):
    """(x, s(x)) at resolution + 1 evenly spaced points of [0, 1]."""
    return [(Fraction(i, resolution), s(Fraction(i, resolution))) for i in range(resolution + 1)]
