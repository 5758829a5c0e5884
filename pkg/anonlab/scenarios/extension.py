"""
Past symmetries of scenarios and the two extension constructions: a past with period b extends to a
periodic scenario, and a past invariant under an affine map extends to an affine-invariant one.
"""
import logging
from fractions import Fraction

from anonlab.scenarios.errors import PreconditionError
from anonlab.scenarios.pattern import CyclicPattern, reduce_plus, reduce_minus
from anonlab.scenarios.rational import as_rat, rat_mod
from anonlab.scenarios.scenario import StepScenario, PeriodicStepScenario, LogPeriodicScenario
from anonlab.scenarios.scenario import normalize, eval, restrict_eq, compose_warp, special_points
from anonlab.scenarios.scenario import periods_of, side_signature, PeriodKind
from anonlab.warps.timewarp import as_affine, shift, scaling, fixed_point


def is_past_periodic(f, x, b):
    b = as_rat(b)
    if b == 0:
        raise PreconditionError("Error: a past period must be nonzero")
    return restrict_eq(f, compose_warp(f, shift(b)), x)


def is_past_invariant(f, x, t):
    return restrict_eq(f, compose_warp(f, t), x)


def _window_mapping(f, lo, hi, position):
    """{position(y): f(y)} for the window start and every jump of f inside [lo, hi)."""
    points = [lo] + [s for s in special_points(f, lo, hi) if s > lo]
    return {position(y): eval(f, y) for y in points}


def periodic_extension(f, x, b):
    """Periodic scenario with period |b| that agrees with f below x."""
    x, b = as_rat(x), as_rat(b)
    if not is_past_periodic(f, x, b):
        raise PreconditionError("Error: scenario is not past-periodic with period " + str(b) + " below " + str(x))
    f = normalize(f)
    if isinstance(f, PeriodicStepScenario):
        return f
    length = abs(b)
    mapping = _window_mapping(f, x - length, x, lambda y: rat_mod(y, length))
    return normalize(PeriodicStepScenario(length, CyclicPattern.from_mapping(mapping)))


def affine_extension(f, x, t):
    """
    Scenario invariant under t that agrees with f below x. Shifts go through periodic_extension;
    other warps give a log-periodic scenario about the fixed point of t.
    """
    x, t = as_rat(x), as_affine(t)
    if t.is_identity:
        raise PreconditionError("Error: affine extension needs a nonidentity warp")
    if not is_past_invariant(f, x, t):
        raise PreconditionError("Error: past of scenario below " + str(x) + " is not invariant under " + str(t))
    if t.is_shift:
        return periodic_extension(f, x, t.offset)
    f = normalize(f)
    p = fixed_point(t)
    rho = max(t.slope, 1 / t.slope)
    if x <= p:
        u0 = x - p if x < p else Fraction(-1)
        mapping = _window_mapping(f, p + rho * u0, p + u0, lambda y: reduce_minus(y - p, rho))
        minus = CyclicPattern.from_mapping(mapping)
        fill = eval(f, p + rho * u0)
        logging.debug("affine extension: past ends at the fixed point side, filling with " + fill)
        g = LogPeriodicScenario(p, rho, CyclicPattern.constant(fill), minus, fill)
    else:
        minus = CyclicPattern.from_mapping(_window_mapping(f, p - rho, p - 1, lambda y: reduce_minus(y - p, rho)))
        start = p + (x - p) / rho
        plus = CyclicPattern.from_mapping(_window_mapping(f, start, x, lambda y: reduce_plus(y - p, rho)))
        g = LogPeriodicScenario(p, rho, plus, minus, eval(f, p))
    return normalize(g)


def orbit(t, y, n):
    """t^n(y) in closed form."""
    t, y = as_affine(t), as_rat(y)
    if t.slope == 1:
        return y + n * t.offset
    p = fixed_point(t)
    return p + t.slope ** n * (y - p)


def check_period_match(f, x, b):
    """A periodic scenario that is past-periodic with period b has b as a period."""
    periods = periods_of(f)
    if periods.kind == PeriodKind.NONE:
        raise PreconditionError("Error: check_period_match needs a periodic scenario")
    if not is_past_periodic(f, x, b):
        raise PreconditionError("Error: scenario is not past-periodic with period " + str(b))
    return periods.contains(b)


def constant_below(f, x):
    """The value f takes on all of (-inf, x), or None."""
    f, x = normalize(f), as_rat(x)
    if isinstance(f, StepScenario):
        return f.values[0] if not f.breakpoints or f.breakpoints[0] >= x else None
    if isinstance(f, PeriodicStepScenario):
        return None
    if f.minus.is_constant and x <= f.fixed_point:
        return f.minus.values[0]
    return None


def find_past_period(f, x):
    """A period b of f below x, or None."""
    f = normalize(f)
    if isinstance(f, PeriodicStepScenario):
        return f.period
    if constant_below(f, x) is not None:
        return Fraction(-1)
    return None


def find_past_affine_symmetry(f, x):
    """A nonidentity warp t with f = f ∘ t below x, or None."""
    f, x = normalize(f), as_rat(x)
    if isinstance(f, PeriodicStepScenario):
        return shift(f.period)
    if constant_below(f, x) is not None:
        return shift(-1)
    if isinstance(f, StepScenario):
        visible = [b for b in f.breakpoints if b < x]
        return scaling(Fraction(1, 2), visible[0]) if len(visible) == 1 else None
    if x <= f.fixed_point:
        signature = side_signature(f.minus, f.ratio, 'minus')
        return scaling(signature[1], f.fixed_point)
    return f.generator()
