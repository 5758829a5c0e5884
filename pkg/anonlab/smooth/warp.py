"""
Finite truncation of the smooth warp t used against T3-anonymous predictors: exact rational anchors
A_i = (p_i, q_i) climbing towards (w, z), unit-spaced anchors B_i = (w + i, z + i) above w, and
transition pieces s_{A_i A_{i+1}}, s_{B_i B_{i+1}} between them. The warp is flat at w from the
left because z - q_i is forced below (p_{i+1} - p_i)^i / i.
"""
import logging
import math
from fractions import Fraction
from dataclasses import dataclass, field

import mpmath
from joblib import Parallel, delayed

from anonlab.scenarios.rational import as_rat
from anonlab.smooth.bigfloat import DEFAULT_PRECISION, DomainError, SpecError, at_working_precision, tolerance
from anonlab.smooth.bigfloat import to_mpf, to_str
from anonlab.smooth.transition import Point, TransitionFn, s_ab, s_ab_deriv, s_jet, max_deriv_bound

SEAM_OFFSET = Fraction(1, 2 ** 40)


@dataclass(frozen=True)
class SmoothWarpSpec:
    w: Fraction
    z: Fraction
    depth: int
    negative_depth: int
    ps: tuple
    qs: tuple

    def p(self, i):
        return self.ps[i + self.negative_depth]

    def q(self, i):
        return self.qs[i + self.negative_depth]

    def anchor(self, i):
        return Point(self.p(i), self.q(i))

    def right_anchor(self, i):
        return Point(self.w + i, self.z + i)

    def left_piece(self, i):
        """s_{A_i A_{i+1}} for -negative_depth <= i < depth."""
        return TransitionFn(self.anchor(i), self.anchor(i + 1))

    def right_piece(self, i):
        return TransitionFn(self.right_anchor(i), self.right_anchor(i + 1))

    @property
    def indices(self):
        return range(-self.negative_depth, self.depth + 1)

    def violations(self):
        """Every broken invariant, checked in exact arithmetic."""
        found = []
        w, z, n = self.w, self.z, self.depth
        if n < 2:
            found.append("depth must be at least 2")
        if len(self.ps) != len(self.qs) or len(self.ps) != n + self.negative_depth + 1:
            return found + ["ps/qs lengths do not match the depths"]
        if any(a >= b for a, b in zip(self.ps, self.ps[1:])):
            found.append("ps not strictly increasing")
        if any(a >= b for a, b in zip(self.qs, self.qs[1:])):
            found.append("qs not strictly increasing")
        if not self.p(n) < w:
            found.append("p_N must stay below w")
        if not self.q(n) < z:
            found.append("q_N must stay below z")
        if not self.p(0) > w - 1:
            found.append("p_0 must exceed w - 1")
        for i in range(-self.negative_depth, 0):
            if self.p(i) != self.p(0) + i or self.q(i) != self.q(0) + i:
                found.append("negative anchor " + str(i) + " is not a unit shift of A_0")
        for i in range(1, n):
            gap = self.p(i + 1) - self.p(i)
            if not z - self.q(i) < gap ** i / i:
                found.append("q-condition z - q_i < (p_{i+1} - p_i)^i / i fails at i=" + str(i))
            if not (self.q(i + 1) - self.q(i)) / gap ** i < Fraction(1, i):
                found.append("pq bound fails at i=" + str(i))
        return found

    def validate(self):
        found = self.violations()
        if found:
            raise SpecError("Error: invalid warp specification: " + "; ".join(found))
        return self


def build_warp(w, z, depth, negative_depth=2):
    """
    Default schedule p_i = w - 1/(i+2) and q_i = z - d_i^i / (2i) with d_i = p_{i+1} - p_i,
    clamped so the q_i keep increasing; q_0 = z - 1/2.
    """
    w, z = as_rat(w), as_rat(z)
    if depth < 2:
        raise SpecError("Error: warp depth must be at least 2")
    if negative_depth < 1:
        raise SpecError("Error: at least one negative anchor is needed")

    def p_at(i):
        return w - Fraction(1, i + 2)

    positive_ps = [p_at(i) for i in range(depth + 1)]
    positive_qs = [z - Fraction(1, 2)]
    for i in range(1, depth + 1):
        gap = p_at(i + 1) - p_at(i)
        positive_qs.append(max(z - gap ** i / (2 * i), (positive_qs[-1] + z) / 2))
    ps = [positive_ps[0] + i for i in range(-negative_depth, 0)] + positive_ps
    qs = [positive_qs[0] + i for i in range(-negative_depth, 0)] + positive_qs
    spec = SmoothWarpSpec(w, z, depth, negative_depth, tuple(ps), tuple(qs)).validate()
    logging.info("Built smooth warp through (" + str(w) + ", " + str(z) + ") with depth " + str(depth))
    return spec


def _is_exact(x):
    return isinstance(x, (Fraction, int))


def locate_piece(spec, x):
    """
    The transition function of t whose interval contains x. Outside the stored anchors the pieces
    repeat by unit shifts; between p_N and w the truncation leaves t undefined.
    """
    exact = _is_exact(x)
    x = as_rat(x) if exact else to_mpf(x)

    def conv(r):
        return r if exact else to_mpf(r)

    first = spec.p(-spec.negative_depth)
    if x >= conv(spec.w):
        k = int(math.floor(x - spec.w)) if exact else int(mpmath.floor(x - to_mpf(spec.w)))
        return TransitionFn(spec.right_anchor(k), spec.right_anchor(k + 1))
    if x > conv(spec.p(spec.depth)):
        raise DomainError("Error: " + str(x) + " falls in the truncation gap (p_N, w)")
    if x < conv(first):
        k = int(math.ceil(first - x)) if exact else int(mpmath.ceil(to_mpf(first) - x))
        i = -spec.negative_depth
        return TransitionFn(spec.anchor(i).shifted(-k), spec.anchor(i + 1).shifted(-k))
    lo, hi = -spec.negative_depth, spec.depth - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if conv(spec.p(mid)) <= x:
            lo = mid
        else:
            hi = mid - 1
    return spec.left_piece(lo)


@at_working_precision
def warp_eval(spec, x):
    if _is_exact(x) and as_rat(x) == spec.w:
        return to_mpf(spec.z)
    return s_ab(locate_piece(spec, x), x)


@dataclass
class PieceBound:
    index: int
    k: int
    coefficient: Fraction
    max_observed: object
    limit: object
    ok: bool


@dataclass
class FlatnessReport:
    w: Fraction
    z: Fraction
    depth: int
    k_max: int
    precision: int
    tolerance: object
    spec_violations: list = field(default_factory=list)
    piece_bounds: list = field(default_factory=list)
    derivative_bounds: list = field(default_factory=list)
    trend: dict = field(default_factory=dict)
    right_derivatives: list = field(default_factory=list)
    seam_gaps: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {
            'w': str(self.w), 'z': str(self.z), 'depth': self.depth, 'k_max': self.k_max,
            'precision': self.precision, 'tolerance': to_str(self.tolerance, 10),
            'spec_violations': list(self.spec_violations),
            'piece_bounds': [{'piece': b.index, 'k': b.k, 'max_observed': to_str(b.max_observed, 20),
                              'limit': to_str(b.limit, 20), 'ok': b.ok} for b in self.piece_bounds],
            'derivative_bounds': [{'k': b.k, 'grid_max': to_str(b.grid_max, 20), 'bound': to_str(b.bound, 20),
                                   'safety_factor': b.safety_factor, 'resolution': str(b.resolution)}
                                  for b in self.derivative_bounds],
            'trend': {str(k): [[i, to_str(v, 20)] for i, v in rows] for k, rows in self.trend.items()},
            'right_derivatives': [to_str(v, 20) for v in self.right_derivatives],
            'seam_gaps': [[i, k, to_str(v, 20)] for i, k, v in self.seam_gaps],
            'violations': list(self.violations),
            'passed': self.passed,
        }


def _piece_profile(spec, i, k_max, samples, limits, precision):
    """Max |d^k/dx^k s_{A_i A_{i+1}}| over the sampled piece, compared with M_k / i."""
    with mpmath.workprec(precision):
        piece = spec.left_piece(i)
        maxima = [mpmath.mpf(0)] * (k_max + 1)
        for j in range(samples + 1):
            jet = s_jet(Fraction(j, samples), k_max)
            for k in range(1, k_max + 1):
                maxima[k] = max(maxima[k], abs(jet.derivative(k)))
        rows = []
        for k in range(1, min(k_max, i) + 1):
            coefficient = piece.height / piece.width ** k
            observed = to_mpf(coefficient) * maxima[k]
            limit = limits[k] / i
            rows.append(PieceBound(i, k, coefficient, observed, limit, bool(observed < limit)))
        return rows


def divided_difference(nodes, values):
    """Exact Newton divided difference f[x_0, ..., x_n]."""
    table = list(values)
    n = len(nodes)
    for level in range(1, n):
        table = [(table[j + 1] - table[j]) / (nodes[j + level] - nodes[j]) for j in range(n - level)]
    return table[0]


def left_derivative_estimates(spec, k):
    """k! * t[p_i, ..., p_{i+k-1}, w] for each usable i, exact rationals."""
    rows = []
    for i in range(1, spec.depth - k + 2):
        nodes = [spec.p(i + j) for j in range(k)] + [spec.w]
        values = [spec.q(i + j) for j in range(k)] + [spec.z]
        rows.append((i, math.factorial(k) * divided_difference(nodes, values)))
    return rows


def right_derivatives_at_w(spec, k_max):
    """t^(k)(w) from the right for k = 1..k_max, read off the piece s_{B_0 B_1}."""
    first = spec.right_piece(0)
    return [s_ab_deriv(first, spec.w, k) for k in range(1, k_max + 1)]


def seam_report(spec, k_max, derivative=s_ab_deriv, offset=SEAM_OFFSET):
    """
    One-sided derivative gaps (i, k, |gap|) at every interior seam p_i for k <= min(k_max, 4), and the
    seams across which sampled values of t fail to increase. The left derivative is taken on the piece
    ending at p_i at p_i - offset * width, the right one on the next piece at p_i + offset * width.
    """
    gaps, not_increasing = [], []
    for i in range(-spec.negative_depth + 1, spec.depth):
        seam = spec.p(i)
        before, after = spec.left_piece(i - 1), spec.left_piece(i)
        left_x = seam - offset * before.width
        right_x = seam + offset * after.width
        for k in range(1, min(k_max, 4) + 1):
            gaps.append((i, k, abs(derivative(before, left_x, k) - derivative(after, right_x, k))))
        if not warp_eval(spec, seam - before.width / 4) < warp_eval(spec, seam) \
                < warp_eval(spec, seam + after.width / 4):
            not_increasing.append(i)
    return gaps, not_increasing


def verify_flatness(spec, k_max, samples=64, grid_depth=8, epsilon=None,
                    n_jobs=1, precision=None):
    """
    Checks, reporting rather than raising:
    the exact anchor conditions; the per-piece bound |s_{A_iA_{i+1}}^(k)| < M_k / i for i >= k;
    that left divided-difference estimates of t^(k)(w) shrink (strictly, and below ``epsilon`` for k = 1
    over the last five anchors when given); that right derivatives at w and one-sided derivatives at seams vanish;
    and that t increases across every seam.
    """
    precision = DEFAULT_PRECISION if precision is None else precision
    if k_max < 1:
        raise DomainError("Error: k_max must be at least 1")
    with mpmath.workprec(precision):
        tol = tolerance(precision)
        report = FlatnessReport(spec.w, spec.z, spec.depth, k_max, precision, tol)
        report.spec_violations = spec.violations()
        report.violations.extend(report.spec_violations)

        bounds = [max_deriv_bound(k, grid_depth) for k in range(k_max + 1)]
        report.derivative_bounds = bounds[1:]
        limits = [b.bound for b in bounds]
        indices = range(1, spec.depth)
        if n_jobs == 1:
            profiles = [_piece_profile(spec, i, k_max, samples, limits, precision) for i in indices]
        else:
            profiles = Parallel(n_jobs=n_jobs)(delayed(_piece_profile)(spec, i, k_max, samples, limits, precision)
                                               for i in indices)
        for rows in profiles:
            for row in rows:
                report.piece_bounds.append(row)
                if not row.ok:
                    report.violations.append("piece " + str(row.index) + " breaks the M_k/i bound at k=" + str(row.k))

        for k in range(1, k_max + 1):
            rows = left_derivative_estimates(spec, k)
            report.trend[k] = [(i, to_mpf(v)) for i, v in rows]
            magnitudes = [abs(v) for _, v in rows]
            tail = magnitudes[-5:]
            if any(a <= b for a, b in zip(tail, tail[1:])):
                report.violations.append("left derivative estimates of order " + str(k) + " do not decrease")
            if k == 1 and epsilon is not None and any(v >= epsilon for v in tail):
                report.violations.append("left derivative estimates stay above " + str(float(epsilon)))

        report.right_derivatives = right_derivatives_at_w(spec, k_max)
        for k, value in enumerate(report.right_derivatives, start=1):
            if abs(value) > tol:
                report.violations.append("right derivative of order " + str(k) + " at w is not zero")

        report.seam_gaps, not_increasing = seam_report(spec, k_max)
        for i, k, gap in report.seam_gaps:
            if gap > tol:
                report.violations.append("derivatives disagree at seam " + str(i) + " order " + str(k))
        for i in not_increasing:
            report.violations.append("warp not increasing across seam " + str(i))
    logging.info("Flatness check at depth " + str(spec.depth) + ": " + str(len(report.violations)) + " violations")
    return report
