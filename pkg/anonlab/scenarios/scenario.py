"""
Exact scenarios f: R -> S in three classes:

* ``StepScenario`` - finitely many jumps, right-continuous.
* ``PeriodicStepScenario`` - a step kernel on ``[0, period)`` repeated forever.
* ``LogPeriodicScenario`` - invariant under scaling about a fixed point ``p`` by ``ratio``; one
  pattern band on each side of ``p`` plus the value at ``p`` itself.

Everything is exact rational arithmetic. Values are immutable; all operations are pure.
"""
import bisect
import logging
import math
from functools import lru_cache
from enum import Enum, IntEnum
from fractions import Fraction
from dataclasses import dataclass

from anonlab.scenarios.errors import ScenarioError, RepresentationError
from anonlab.scenarios.pattern import CyclicPattern, reduce_plus, reduce_minus, scaled_points
from anonlab.scenarios.rational import as_rat, rat_mod, rational_root, divisors
from anonlab.warps.timewarp import as_affine, shift, scaling


@dataclass(frozen=True)
class StepScenario:
    breakpoints: tuple
    values: tuple

    kind = 'step'

    def __post_init__(self):
        breakpoints = tuple(as_rat(b) for b in self.breakpoints)
        values = tuple(str(v) for v in self.values)
        if len(values) != len(breakpoints) + 1:
            raise ScenarioError("Error: a step scenario needs len(breakpoints) + 1 values")
        if any(a >= b for a, b in zip(breakpoints, breakpoints[1:])):
            raise ScenarioError("Error: breakpoints must be strictly increasing")
        object.__setattr__(self, 'breakpoints', breakpoints)
        object.__setattr__(self, 'values', values)

    @property
    def is_constant(self):
        return len(self.breakpoints) == 0


@dataclass(frozen=True)
class PeriodicStepScenario:
    period: Fraction
    kernel: CyclicPattern

    kind = 'periodic'

    def __post_init__(self):
        object.__setattr__(self, 'period', as_rat(self.period))
        if self.period <= 0:
            raise ScenarioError("Error: period must be positive")
        if any(not 0 <= j < self.period for j in self.kernel.jumps):
            raise ScenarioError("Error: kernel jumps must lie in [0, period)")


@dataclass(frozen=True)
class LogPeriodicScenario:
    fixed_point: Fraction
    ratio: Fraction
    plus: CyclicPattern
    minus: CyclicPattern
    value_at_p: str

    kind = 'logperiodic'

    def __post_init__(self):
        object.__setattr__(self, 'fixed_point', as_rat(self.fixed_point))
        object.__setattr__(self, 'ratio', as_rat(self.ratio))
        object.__setattr__(self, 'value_at_p', str(self.value_at_p))
        if self.ratio <= 1:
            raise ScenarioError("Error: log-periodic ratio must exceed 1")
        if any(not 1 <= j < self.ratio for j in self.plus.jumps):
            raise ScenarioError("Error: plus band jumps must lie in [1, ratio)")
        if any(not -self.ratio <= j < -1 for j in self.minus.jumps):
            raise ScenarioError("Error: minus band jumps must lie in [-ratio, -1)")

    def generator(self):
        return scaling(self.ratio, self.fixed_point)


SCENARIO_TYPES = (StepScenario, PeriodicStepScenario, LogPeriodicScenario)


def constant(value):
    return StepScenario((), (value,))


class Tier(IntEnum):
    PERIODIC = 0
    AFFINE_INVARIANT = 1
    OTHER = 2


class PeriodKind(Enum):
    NONE = 'none'
    ALL = 'all'
    MULTIPLES = 'multiples'


@dataclass(frozen=True)
class PeriodSet:
    kind: PeriodKind
    base: Fraction = None

    def contains(self, b):
        b = as_rat(b)
        if b == 0 or self.kind == PeriodKind.NONE:
            return False
        if self.kind == PeriodKind.ALL:
            return True
        return (b / self.base).denominator == 1


def _check(f):
    if not isinstance(f, SCENARIO_TYPES):
        raise ScenarioError("Error: not a scenario: " + repr(f))


# Canonical form ---------------------------------------------------------------------------------

def _minimal_side(pattern, ratio, reducer, keep_tail):
    """Smallest ratio under which a single nonconstant band stays invariant, with its band pattern."""
    n = len(pattern.jumps)
    for d in sorted(divisors(n), reverse=True):
        if d == 1:
            break
        rho = rational_root(ratio, d)
        if rho is None:
            continue
        if pattern.is_invariant_under(lambda j: reducer(j * rho, ratio)):
            count = n // d
            return rho, (pattern.tail(count) if keep_tail else pattern.head(count))
    return ratio, pattern


def side_signature(pattern, ratio, side):
    """Ratio-independent description of one side of a log-periodic scenario."""
    pattern = pattern.merged()
    if pattern.is_constant:
        return ('const', pattern.values[0])
    if side == 'plus':
        rho, reduced = _minimal_side(pattern, ratio, reduce_plus, keep_tail=False)
    else:
        rho, reduced = _minimal_side(pattern, ratio, reduce_minus, keep_tail=True)
    return ('scaled', rho, reduced)


def _normalize_step(f):
    breakpoints, values = [], [f.values[0]]
    for b, v in zip(f.breakpoints, f.values[1:]):
        if v != values[-1]:
            breakpoints.append(b)
            values.append(v)
    return StepScenario(tuple(breakpoints), tuple(values))


def _normalize_periodic(f):
    kernel = f.kernel.merged()
    if kernel.is_constant:
        return constant(kernel.values[0])
    n = len(kernel.jumps)
    for d in sorted(divisors(n), reverse=True):
        if d == 1:
            break
        step = f.period / d
        if kernel.is_invariant_under(lambda j: rat_mod(j + step, f.period)):
            return PeriodicStepScenario(step, kernel.head(n // d))
    return PeriodicStepScenario(f.period, kernel)


def _normalize_logperiodic(f):
    plus, minus, p, ratio = f.plus.merged(), f.minus.merged(), f.fixed_point, f.ratio
    if plus.is_constant and minus.is_constant:
        above, below = plus.values[0], minus.values[0]
        if f.value_at_p == above:
            if below == above:
                return constant(above)
            return StepScenario((p,), (below, above))
        return LogPeriodicScenario(p, Fraction(2), plus, minus, f.value_at_p)
    counts = [len(side.jumps) for side in (plus, minus) if not side.is_constant]
    for d in sorted(divisors(math.gcd(*counts)), reverse=True):
        if d == 1:
            break
        rho = rational_root(ratio, d)
        if rho is None:
            continue
        if plus.is_invariant_under(lambda j: reduce_plus(j * rho, ratio)) and \
                minus.is_invariant_under(lambda j: reduce_minus(j * rho, ratio)):
            new_plus = plus if plus.is_constant else plus.head(len(plus.jumps) // d)
            new_minus = minus if minus.is_constant else minus.tail(len(minus.jumps) // d)
            return LogPeriodicScenario(p, rho, new_plus, new_minus, f.value_at_p)
    return LogPeriodicScenario(p, ratio, plus, minus, f.value_at_p)


def normalize(f):
    """
    Canonical form: merged pieces, minimal period or ratio, constants as step scenarios, and
    log-periodic scenarios with two constant right-continuous sides as step scenarios.
    """
    _check(f)
    return _canonical(f)


@lru_cache(maxsize=8192)
def _canonical(f):
    if isinstance(f, StepScenario):
        return _normalize_step(f)
    if isinstance(f, PeriodicStepScenario):
        return _normalize_periodic(f)
    return _normalize_logperiodic(f)


def scenarios_equal(f, g):
    return normalize(f) == normalize(g)


def classify(f):
    f = normalize(f)
    if isinstance(f, PeriodicStepScenario) or (isinstance(f, StepScenario) and f.is_constant):
        return Tier.PERIODIC
    if isinstance(f, LogPeriodicScenario) or len(f.breakpoints) == 1:
        return Tier.AFFINE_INVARIANT
    return Tier.OTHER


# Evaluation -------------------------------------------------------------------------------------

def eval(f, x):
    """f(x) with right-continuous pieces."""
    _check(f)
    x = as_rat(x)
    if isinstance(f, StepScenario):
        return f.values[bisect.bisect_right(f.breakpoints, x)]
    if isinstance(f, PeriodicStepScenario):
        return f.kernel.value_at(rat_mod(x, f.period))
    u = x - f.fixed_point
    if u == 0:
        return f.value_at_p
    if u > 0:
        return f.plus.value_at(reduce_plus(u, f.ratio))
    return f.minus.value_at(reduce_minus(u, f.ratio))


def special_points(f, lo, hi):
    """
    Sorted points in [lo, hi) where f may jump (lo None means unbounded below).
    Raises RepresentationError when infinitely many accumulate in the window.
    """
    _check(f)
    hi = as_rat(hi)
    lo = None if lo is None else as_rat(lo)
    if isinstance(f, StepScenario):
        return [b for b in f.breakpoints if (lo is None or lo <= b) and b < hi]
    if isinstance(f, PeriodicStepScenario):
        if f.kernel.merged().is_constant:
            return []
        if lo is None:
            raise RepresentationError("Error: a periodic scenario jumps infinitely often below " + str(hi))
        found = set()
        for j in f.kernel.jumps:
            k = math.ceil((lo - j) / f.period)
            while j + k * f.period < hi:
                found.add(j + k * f.period)
                k += 1
        return sorted(found)
    p = f.fixed_point
    found = set()
    if (lo is None or lo <= p) and p < hi:
        found.add(p)
    plus, minus = f.plus.merged(), f.minus.merged()
    if not plus.is_constant and hi > p:
        if lo is None or lo <= p:
            raise RepresentationError("Error: jumps accumulate at " + str(p) + " from the right")
        found.update(p + u for u in scaled_points(plus.jumps, f.ratio, lo - p, hi - p))
    if not minus.is_constant and (lo is None or lo < p):
        if lo is None or hi >= p:
            raise RepresentationError("Error: infinitely many jumps below " + str(min(hi, p)))
        found.update(p + u for u in scaled_points(minus.jumps, f.ratio, lo - p, hi - p))
    return sorted(found)


# Composition ------------------------------------------------------------------------------------

def compose_warp(f, t):
    """Canonical form of f ∘ t."""
    _check(f)
    t = as_affine(t)
    a, c = t.slope, t.offset
    f = normalize(f)
    if isinstance(f, StepScenario):
        return StepScenario(tuple((b - c) / a for b in f.breakpoints), f.values)
    if isinstance(f, PeriodicStepScenario):
        period = f.period / a
        mapping = {}
        for j in f.kernel.jumps:
            y = rat_mod((j - c) / a, period)
            mapping[y] = eval(f, a * y + c)
        return normalize(PeriodicStepScenario(period, CyclicPattern.from_mapping(mapping)))
    p = (f.fixed_point - c) / a

    def transport(pattern, reducer):
        if pattern.is_constant:
            return pattern
        mapping = {}
        for j in pattern.jumps:
            u = reducer(j / a, f.ratio)
            mapping[u] = eval(f, f.fixed_point + a * u)
        return CyclicPattern.from_mapping(mapping)

    return normalize(LogPeriodicScenario(p, f.ratio, transport(f.plus, reduce_plus),
                                         transport(f.minus, reduce_minus), f.value_at_p))


# Restriction equality ---------------------------------------------------------------------------

def _left_tail(f):
    if isinstance(f, StepScenario):
        return ('const', f.values[0])
    if isinstance(f, PeriodicStepScenario):
        return ('periodic', f)
    signature = side_signature(f.minus, f.ratio, 'minus')
    if signature[0] == 'const':
        return signature
    return ('log', f.fixed_point, signature)


def _accumulates_below(f, x):
    return isinstance(f, LogPeriodicScenario) and not f.plus.is_constant and x > f.fixed_point


def restrict_eq(f, g, x):
    """True iff f and g agree at every point strictly below x."""
    x = as_rat(x)
    f, g = normalize(f), normalize(g)
    if f == g:
        return True
    tail_f, tail_g = _left_tail(f), _left_tail(g)
    if tail_f != tail_g:
        return False
    if tail_f[0] == 'periodic':
        return False
    if tail_f[0] == 'log':
        if x <= tail_f[1]:
            return True
        return f.value_at_p == g.value_at_p and \
            side_signature(f.plus, f.ratio, 'plus') == side_signature(g.plus, g.ratio, 'plus')
    acc_f, acc_g = _accumulates_below(f, x), _accumulates_below(g, x)
    if acc_f or acc_g:
        if not (acc_f and acc_g):
            return False
        return f.fixed_point == g.fixed_point and f.value_at_p == g.value_at_p and \
            side_signature(f.plus, f.ratio, 'plus') == side_signature(g.plus, g.ratio, 'plus')
    points = sorted(set(special_points(f, None, x)) | set(special_points(g, None, x)))
    if not points:
        return True
    probes = [points[0] - 1]
    for left, right in zip(points, points[1:]):
        probes.extend([left, (left + right) / 2])
    probes.extend([points[-1], (points[-1] + x) / 2])
    return all(eval(f, y) == eval(g, y) for y in probes)


# Periods and symmetries -------------------------------------------------------------------------

def periods_of(f):
    f = normalize(f)
    if isinstance(f, StepScenario) and f.is_constant:
        return PeriodSet(PeriodKind.ALL)
    if isinstance(f, PeriodicStepScenario):
        return PeriodSet(PeriodKind.MULTIPLES, f.period)
    return PeriodSet(PeriodKind.NONE)


def symmetries(f, count=6):
    """Up to ``count`` nonidentity warps s with f ∘ s = f."""
    f = normalize(f)
    if isinstance(f, StepScenario) and f.is_constant:
        found = [shift(1), shift(-1), scaling(2), scaling(Fraction(1, 3), 1), shift(Fraction(5, 2)), scaling(3, -1)]
    elif isinstance(f, PeriodicStepScenario):
        found = [shift(k * f.period) for k in (1, -1, 2, -2, 3, -3)]
    elif isinstance(f, LogPeriodicScenario):
        found = [scaling(f.ratio ** k, f.fixed_point) for k in (1, -1, 2, -2, 3, -3)]
    elif len(f.breakpoints) == 1:
        b = f.breakpoints[0]
        found = [scaling(lam, b) for lam in (2, Fraction(1, 2), 3, Fraction(1, 3), Fraction(3, 2), 5)]
    else:
        found = []
    return found[:count]


# Pasts ------------------------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PastView:
    """
    ``f`` restricted to ``(-inf, origin)``, stored shifted so that the cut sits at 0.
    Two views are equal when their restrictions agree; ``origin`` does not take part.
    """
    base: object
    origin: Fraction = Fraction(0)

    @property
    def cut(self):
        return Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, PastView):
            return NotImplemented
        return restrict_eq(self.base, other.base, 0)

    __hash__ = None


def past_view(f, x):
    x = as_rat(x)
    logging.debug("past view at " + str(x))
    return PastView(compose_warp(f, shift(x)), x)
