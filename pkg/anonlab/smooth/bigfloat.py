import os
import functools
from fractions import Fraction

import mpmath

DEFAULT_PRECISION = int(os.environ.get('ANONLAB_PRECISION', 256))


class SmoothError(Exception):
    pass


class DomainError(SmoothError):
    """Argument outside the domain of an operation (or outside a truncated warp)."""


class SpecError(SmoothError):
    """A transition function or warp specification breaks its invariants."""


def working_precision():
    """The caller's mpmath precision, raised to DEFAULT_PRECISION."""
    return max(mpmath.mp.prec, DEFAULT_PRECISION)


def at_working_precision(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with mpmath.workprec(working_precision()):
            return fn(*args, **kwargs)
    return wrapper


def to_mpf(x):
    """Exact-as-possible conversion at the current working precision; Fractions divide in mpmath."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def tolerance(precision=None):
    """Verification tolerance 2^-(precision - 56), or 2^-(precision // 2) at low precision."""
    precision = working_precision() if precision is None else precision
    return mpmath.mpf(2) ** -max(precision - 56, precision // 2)


def to_str(x, digits=None):
    """Decimal string of an mpf at (roughly) full working precision."""
    digits = digits if digits is not None else mpmath.mp.dps
    return mpmath.nstr(x, digits)
