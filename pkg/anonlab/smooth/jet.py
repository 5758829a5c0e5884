"""
Truncated Taylor jets: the coefficients c_n = f^(n)(x0) / n! for n = 0..order,
with the arithmetic of truncated power series.
"""
import math

import mpmath

from anonlab.smooth.bigfloat import to_mpf


class Jet:
    def __init__(self, coeffs):
        self.coeffs = tuple(to_mpf(c) for c in coeffs)

    @property
    def order(self):
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order):
        return cls([value] + [0] * order)

    @classmethod
    def variable(cls, x0, order):
        """Jet of the identity function at x0."""
        coeffs = [x0] + [0] * order
        if order >= 1:
            coeffs[1] = 1
        return cls(coeffs)

    @classmethod
    def from_derivatives(cls, derivatives):
        return cls([d / math.factorial(n) for n, d in enumerate(derivatives)])

    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError("Error: jets of different order " + str(self.order) + " and " + str(other.order))
            return other
        return Jet.constant(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        return Jet([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Jet([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        return Jet([mpmath.fsum(a[j] * b[n - j] for j in range(n + 1)) for n in range(self.order + 1)])

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if b[0] == 0:
            raise ZeroDivisionError("Error: jet division by a jet vanishing at the base point")
        q = []
        for n in range(self.order + 1):
            q.append((a[n] - mpmath.fsum(b[j] * q[n - j] for j in range(1, n + 1))) / b[0])
        return Jet(q)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def derivative(self, n):
        """f^(n)(x0)."""
        return self.coeffs[n] * math.factorial(n)

    def __repr__(self):
        return "Jet(" + ", ".join(mpmath.nstr(c, 8) for c in self.coeffs) + ")"
