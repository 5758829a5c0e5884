"""
Exact algebra of the warp families T1 (shifts) and T2 (positive-slope affine maps).

Warps are immutable values over exact rationals. ``compose(t2, t1)`` is ``t2 ∘ t1``, i.e. ``t1`` is
applied first, matching the way the warps act on scenarios (``f ∘ t``).
"""
from enum import Enum
from fractions import Fraction
from dataclasses import dataclass

from anonlab.scenarios.rational import as_rat, format_rat


class WarpError(Exception):
    """Invalid warp (non-positive slope, zero shift where a nonzero one is required)."""


class WarpInvariantError(Exception):
    """An algebraic identity that must hold for affine maps failed; always a bug."""


class FixedPoints(Enum):
    EVERY_POINT = "every point"


EVERY_POINT = FixedPoints.EVERY_POINT


@dataclass(frozen=True)
class AffineWarp:
    """x -> slope * x + offset, slope > 0."""
    slope: Fraction
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'slope', as_rat(self.slope))
        object.__setattr__(self, 'offset', as_rat(self.offset))
        if self.slope <= 0:
            raise WarpError("Error: warp slope must be positive, got " + format_rat(self.slope))

    def __call__(self, x):
        return apply(self, x)

    @property
    def is_identity(self):
        return self.slope == 1 and self.offset == 0

    @property
    def is_shift(self):
        return self.slope == 1

    def __str__(self):
        return format_rat(self.slope) + "*x + " + format_rat(self.offset)


@dataclass(frozen=True)
class ShiftWarp:
    """x -> x + b."""
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'b', as_rat(self.b))

    def __call__(self, x):
        return apply(self, x)

    def as_affine(self):
        return AffineWarp(1, self.b)


def as_affine(t):
    if isinstance(t, ShiftWarp):
        return t.as_affine()
    if isinstance(t, AffineWarp):
        return t
    raise WarpError("Error: not a warp: " + repr(t))


def identity():
    return AffineWarp(1, 0)


def shift(b):
    return AffineWarp(1, b)


def scaling(factor, center=0):
    """Scaling about ``center``: x -> center + factor * (x - center)."""
    factor, center = as_rat(factor), as_rat(center)
    return AffineWarp(factor, center * (1 - factor))


def apply(t, x):
    t = as_affine(t)
    return t.slope * as_rat(x) + t.offset


def compose(t2, t1):
    """(t2 ∘ t1)(x) = t2(t1(x))."""
    t2, t1 = as_affine(t2), as_affine(t1)
    return AffineWarp(t2.slope * t1.slope, t2.slope * t1.offset + t2.offset)


def invert(t):
    t = as_affine(t)
    return AffineWarp(1 / t.slope, -t.offset / t.slope)


def power(t, n):
    """n-fold composite of t (t^-1 for negative n)."""
    t = as_affine(t)
    base = t if n >= 0 else invert(t)
    result = identity()
    for _ in range(abs(n)):
        result = compose(base, result)
    return result


def fixed_point(t):
    """
    Returns the unique fixed point, None when there is none (a nonzero shift),
    or EVERY_POINT for the identity.
    """
    t = as_affine(t)
    if t.slope == 1:
        return EVERY_POINT if t.offset == 0 else None
    return t.offset / (1 - t.slope)


def commutator(s, tbar):
    """s^-1 ∘ tbar ∘ s ∘ tbar^-1, certified to be a shift."""
    s, tbar = as_affine(s), as_affine(tbar)
    result = compose(invert(s), compose(tbar, compose(s, invert(tbar))))
    if result.slope != 1:
        raise WarpInvariantError("Error: commutator slope " + format_rat(result.slope) + " != 1")
    return ShiftWarp(result.offset)


def conjugate_shift(tbar, b):
    """tbar^-1 ∘ shift(b) ∘ tbar, a nonidentity shift by b / slope(tbar)."""
    b = as_rat(b)
    if b == 0:
        raise WarpError("Error: conjugate_shift needs a nonzero shift")
    tbar = as_affine(tbar)
    result = compose(invert(tbar), compose(shift(b), tbar))
    if result.slope != 1 or result.offset != b / tbar.slope:
        raise WarpInvariantError("Error: conjugate of shift(" + format_rat(b) + ") is " + str(result))
    return ShiftWarp(result.offset)
