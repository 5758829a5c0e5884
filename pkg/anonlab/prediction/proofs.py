"""
Step-by-step replay of why two valid witness warps t1, t2 for the same entry g give the same guess.
With tbar = t2 ∘ t1^-1, g is tbar-invariant below min(t1(x), t2(x)). Taking a symmetry s of g, either
s and tbar commute (and then share a fixed point), or their commutator is a nonzero shift b that, together
with the conjugate shift tbar^-1 ∘ shift(b) ∘ tbar, is a period of g's past.
"""
import logging
from dataclasses import dataclass, field

from anonlab.scenarios.codec import warp_to_dict
from anonlab.scenarios.extension import is_past_periodic
from anonlab.scenarios.rational import as_rat, format_rat
from anonlab.scenarios.scenario import normalize, eval, compose_warp, restrict_eq, symmetries, periods_of
from anonlab.warps.timewarp import FixedPoints, as_affine, apply, compose, invert, fixed_point
from anonlab.warps.timewarp import commutator, conjugate_shift


@dataclass
class ReplayTrace:
    x: object
    x1: object
    x2: object
    tbar: object
    symmetry: object = None
    case: str = None
    commutator_shift: object = None
    conjugate: object = None
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values())

    def to_dict(self):
        def fmt(v):
            if v is None:
                return None
            if isinstance(v, FixedPoints):
                return v.value
            return format_rat(v)

        return {
            'x': fmt(self.x), 'x1': fmt(self.x1), 'x2': fmt(self.x2), 'tbar': warp_to_dict(self.tbar),
            'symmetry': None if self.symmetry is None else warp_to_dict(self.symmetry), 'case': self.case,
            'commutator_shift': fmt(self.commutator_shift), 'conjugate_shift': fmt(self.conjugate),
            'checks': dict(self.checks), 'passed': self.passed,
        }


def replay_well_definedness(g, t1, t2, x):
    """
    Replays the argument for one pair of warps with g ∘ t1 = g ∘ t2 below x, recording each claim
    as a named exact check. The guesses g(t1(x)) and g(t2(x)) must agree.
    """
    g, x = normalize(g), as_rat(x)
    t1, t2 = as_affine(t1), as_affine(t2)
    if apply(t1, x) > apply(t2, x):
        t1, t2 = t2, t1
    x1, x2 = apply(t1, x), apply(t2, x)
    tbar = compose(t2, invert(t1))
    trace = ReplayTrace(x, x1, x2, tbar)
    trace.checks['warps_agree_below_x'] = restrict_eq(compose_warp(g, t1), compose_warp(g, t2), x)
    if tbar.is_identity:
        trace.case = 'same_warp'
        trace.checks['same_guess'] = eval(g, x1) == eval(g, x2)
        return trace
    trace.checks['past_invariant'] = restrict_eq(g, compose_warp(g, tbar), x1)

    found = symmetries(g, 1)
    if not found:
        trace.case = 'no_symmetry'
        trace.checks['has_symmetry'] = False
        trace.checks['same_guess'] = eval(g, x1) == eval(g, x2)
        return trace
    s = as_affine(found[0])
    if apply(s, x1) > x1:
        s = invert(s)
    trace.symmetry = s

    b = commutator(s, tbar).b
    trace.commutator_shift = b
    if b == 0:
        trace.case = 'commuting'
        trace.checks['shared_fixed_point'] = fixed_point(s) == fixed_point(tbar)
    else:
        trace.case = 'commutator_shift'
        c = conjugate_shift(tbar, b).b
        trace.conjugate = c
        trace.checks['commutator_is_period'] = is_past_periodic(g, x1, b)
        trace.checks['conjugate_is_period'] = is_past_periodic(g, x1, c)
        trace.checks['period_set_contains_commutator'] = periods_of(g).contains(b)
    trace.checks['same_guess'] = eval(g, x1) == eval(g, x2)
    if not trace.passed:
        logging.warning("Replay failed: " + str(trace.to_dict()))
    return trace
