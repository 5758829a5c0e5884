"""
Least-consistent predictors over a catalog.

``ht`` guesses with the first entry that agrees exactly with the observed past,
``t2`` with the first entry that agrees after some positive-slope affine warp, ``t1`` the same
restricted to shifts. Pasts arrive as PastView objects whose cut sits at 0.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from dataclasses import dataclass

from anonlab.prediction.catalog import NoConsistentEntryError, ClosureViolationError, check_closure
from anonlab.scenarios.errors import RepresentationError
from anonlab.scenarios.extension import constant_below
from anonlab.scenarios.rational import log_ratio, rat_mod
from anonlab.scenarios.scenario import StepScenario, PeriodicStepScenario, LogPeriodicScenario
from anonlab.scenarios.scenario import normalize, eval, restrict_eq, compose_warp, special_points
from anonlab.warps.timewarp import AffineWarp, identity, shift, apply

MODES = ('ht', 't1', 't2')


@dataclass(frozen=True)
class Guess:
    """``state`` equals eval(entry, witness_warp(0)): the warped entry read off at the cut."""
    state: str
    witness_index: int
    witness_warp: AffineWarp


def consistency_ht(g, pv):
    return restrict_eq(compose_warp(g, shift(pv.origin)), pv.base, 0)


def _visible_jumps(h):
    try:
        return special_points(h, None, 0)
    except RepresentationError:
        return None


def _step_candidates(g, h):
    if g.is_constant:
        return [identity()]
    b = g.breakpoints
    visible = _visible_jumps(h)
    if visible is None:
        return []
    if len(visible) >= 2:
        if len(b) < 2:
            return []
        e1, e2 = visible[0], visible[1]
        slope = (b[1] - b[0]) / (e2 - e1)
        return [AffineWarp(slope, b[0] - slope * e1)]
    if len(visible) == 1:
        e1 = visible[0]
        found = [AffineWarp(1, b[0] - e1)]
        if len(b) >= 2:
            found.append(AffineWarp((b[1] - b[0]) / -e1, b[1]))
        return found
    return [AffineWarp(1, min(0, b[0]))]


def _periodic_candidates(g, h):
    if not isinstance(h, PeriodicStepScenario):
        return []
    slope = g.period / h.period
    anchor = h.kernel.jumps[0]
    found = []
    for j in g.kernel.jumps:
        offset = rat_mod(j - slope * anchor, g.period)
        if offset > g.period / 2:
            offset -= g.period
        found.append(AffineWarp(slope, offset))
    return found


def _log_candidates(g, h):
    if constant_below(h, 0) is not None:
        return [AffineWarp(1, min(0, g.fixed_point))]
    if not isinstance(h, LogPeriodicScenario):
        return []
    pattern, anchor = None, None
    if not g.minus.is_constant and not h.minus.is_constant:
        pattern, anchor = g.minus, h.minus.jumps[0]
    elif h.fixed_point < 0 and not g.plus.is_constant and not h.plus.is_constant:
        pattern, anchor = g.plus, h.plus.jumps[0]
    slopes = {Fraction(1)}
    if pattern is not None:
        for j in pattern.jumps:
            base = j / anchor
            k0 = round(-log_ratio(base, g.ratio))
            slopes.update(base * g.ratio ** k for k in (k0 - 1, k0, k0 + 1))
    return [AffineWarp(a, g.fixed_point - a * h.fixed_point) for a in sorted(slopes)]


def candidate_warps(g, h):
    """Warps t for which g ∘ t may match h below 0, read off by aligning visible structure."""
    return list(_candidates(normalize(g), normalize(h)))


@lru_cache(maxsize=8192)
def _candidates(g, h):
    if isinstance(g, StepScenario):
        return tuple(_step_candidates(g, h))
    if isinstance(g, PeriodicStepScenario):
        return tuple(_periodic_candidates(g, h))
    return tuple(_log_candidates(g, h))


def _preferred(warps):
    return min(warps, key=lambda t: (abs(t.slope - 1), abs(t.offset), t.slope, t.offset))


def _verified(g, pv, warps):
    return [t for t in warps if restrict_eq(pv.base, compose_warp(g, t), 0)]


def consistency_t2(g, pv):
    """A positive-slope affine t with g ∘ t = past below the cut, or None."""
    valid = _verified(g, pv, candidate_warps(g, pv.base))
    return _preferred(valid) if valid else None


def consistency_t1(g, pv):
    """As consistency_t2, restricted to shifts."""
    valid = _verified(g, pv, [t for t in candidate_warps(g, pv.base) if t.slope == 1])
    return _preferred(valid) if valid else None


def ht_predict(cat, pv, start=0):
    for index, g in enumerate(cat.entries[start:], start):
        if consistency_ht(g, pv):
            logging.debug("ht: entry " + str(index) + " is least consistent")
            return Guess(eval(g, pv.origin), index, shift(pv.origin))
    raise NoConsistentEntryError("Error: no catalog entry agrees with the past")


def _warped_predict(cat, pv, consistency, label, start=0):
    for index, g in enumerate(cat.entries[start:], start):
        t = consistency(g, pv)
        if t is not None:
            logging.debug(label + ": entry " + str(index) + " is least consistent via " + str(t))
            return Guess(eval(g, apply(t, 0)), index, t)
    raise NoConsistentEntryError("Error: no catalog entry is " + label + "-consistent with the past")


def t2_predict(cat, pv, start=0):
    return _warped_predict(cat, pv, consistency_t2, 't2', start)


def t1_predict(cat, pv, start=0):
    return _warped_predict(cat, pv, consistency_t1, 't1', start)


def predict(cat, pv, mode='t2', start=0):
    """
    The least-consistent guess. ``start`` skips entries already known to be inconsistent with a
    shorter past of the same scenario; consistency only gets harder as the cut moves right.
    """
    if mode == 'ht':
        return ht_predict(cat, pv, start)
    if mode == 't1':
        return t1_predict(cat, pv, start)
    if mode == 't2':
        return t2_predict(cat, pv, start)
    raise ValueError("Error: unknown prediction mode " + repr(mode))


def consistency_for(mode):
    return {'t1': consistency_t1, 't2': consistency_t2}[mode]


class Predictor:
    """
    A predictor bound to one catalog and mode. Warped modes reject catalogs that fail the closure
    check on ``closure_cuts`` unless ``require_closure`` is False.
    """

    def __init__(self, catalog, mode='t2', closure_cuts=None, require_closure=True):
        if mode not in MODES:
            raise ValueError("Error: unknown prediction mode " + repr(mode))
        self.catalog = catalog
        self.mode = mode
        self.closure_report = None
        if mode != 'ht' and require_closure:
            self.closure_report = check_closure(catalog, closure_cuts)
            if not self.closure_report.passed:
                raise ClosureViolationError("Error: catalog fails the closure check at "
                                            + str(len(self.closure_report.violations)) + " (entry, cut) pairs")

    def predict(self, pv):
        return predict(self.catalog, pv, self.mode)

    def __call__(self, pv):
        return self.predict(pv)
