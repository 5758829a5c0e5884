import math
from fractions import Fraction

from anonlab.scenarios.errors import CodecError

Rat = Fraction


def as_rat(value):
    """
    Coerce an int, Fraction or string ("num/den", "3", "0.25") to an exact rational.
    Floats are rejected because they are not exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise CodecError("Error: boolean is not a rational: " + repr(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise CodecError("Error: cannot parse rational " + repr(value))
    raise CodecError("Error: unsupported rational value " + repr(value))


def format_rat(r):
    r = as_rat(r)
    return str(r.numerator) + '/' + str(r.denominator)


def rat_mod(x, m):
    """x reduced into [0, m) for m > 0."""
    return x - m * math.floor(x / m)


def log_ratio(x, base):
    """Float estimate of log_base(x) for positive rationals of any size."""
    x, base = as_rat(x), as_rat(base)
    lx = math.log(x.numerator) - math.log(x.denominator)
    lb = math.log(base.numerator) - math.log(base.denominator)
    return lx / lb


def int_root(n, d):
    """Exact integer d-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n in (0, 1) or d == 1:
        return n
    lo, hi = 0, 1 << (n.bit_length() // d + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** d < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** d == n else None


def rational_root(r, d):
    """Exact rational d-th root of a positive rational, or None."""
    r = as_rat(r)
    num, den = int_root(r.numerator, d), int_root(r.denominator, d)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]
