import bisect
import math
from dataclasses import dataclass

from anonlab.scenarios.errors import ScenarioError
from anonlab.scenarios.rational import as_rat, log_ratio


@dataclass(frozen=True)
class CyclicPattern:
    """
    A step pattern on a cyclic band. ``values[i]`` holds on ``[jumps[i], jumps[i+1])``; the last value
    also covers the band from its start up to ``jumps[0]``. A constant pattern has no jumps and one value.

    The band itself (``[0, P)`` for periodic kernels, ``[1, R)`` and ``[-R, -1)`` for the two
    sides of a log-periodic scenario) is owned by the scenario.
    """
    jumps: tuple
    values: tuple

    def __post_init__(self):
        jumps = tuple(as_rat(j) for j in self.jumps)
        values = tuple(str(v) for v in self.values)
        if len(values) != max(len(jumps), 1):
            raise ScenarioError("Error: pattern needs one value per jump (or one value when constant)")
        if any(a >= b for a, b in zip(jumps, jumps[1:])):
            raise ScenarioError("Error: pattern jumps must be strictly increasing")
        object.__setattr__(self, 'jumps', jumps)
        object.__setattr__(self, 'values', values)

    @classmethod
    def constant(cls, value):
        return cls((), (value,))

    @classmethod
    def from_mapping(cls, mapping, default=None):
        """Build from {band position: value starting there}, merged to canonical form."""
        if not mapping:
            return cls.constant(default)
        positions = sorted(mapping)
        return cls(tuple(positions), tuple(mapping[p] for p in positions)).merged()

    @property
    def is_constant(self):
        return len(self.jumps) == 0

    def value_at(self, pos):
        i = bisect.bisect_right(self.jumps, pos) - 1
        return self.values[i] if i >= 0 else self.values[-1]

    def merged(self):
        """Drop removable jumps, including the one at the cyclic seam."""
        if self.is_constant:
            return self
        jumps, values = [], []
        for j, v in zip(self.jumps, self.values):
            if values and values[-1] == v:
                continue
            jumps.append(j)
            values.append(v)
        if len(values) > 1 and values[0] == values[-1]:
            jumps.pop(0)
            values.pop(0)
        if len(values) == 1:
            return CyclicPattern.constant(values[0])
        return CyclicPattern(tuple(jumps), tuple(values))

    def is_invariant_under(self, move):
        """True when the band bijection ``move`` maps every jump onto a jump carrying the same value."""
        table = dict(zip(self.jumps, self.values))
        for j, v in table.items():
            image = move(j)
            if table.get(image) != v:
                return False
        return True

    def head(self, count):
        return CyclicPattern(self.jumps[:count], self.values[:count])

    def tail(self, count):
        return CyclicPattern(self.jumps[-count:], self.values[-count:])


def reduce_plus(u, ratio):
    """Representative of u > 0 in the band [1, ratio) under scaling by powers of ratio."""
    k = math.floor(log_ratio(u, ratio))
    v = u / ratio ** k
    while v >= ratio:
        v /= ratio
    while v < 1:
        v *= ratio
    return v


def reduce_minus(u, ratio):
    """Representative of u < 0 in the band [-ratio, -1) under scaling by powers of ratio."""
    m = -u
    k = math.ceil(log_ratio(m, ratio)) - 1
    v = m / ratio ** k
    while v > ratio:
        v /= ratio
    while v <= 1:
        v *= ratio
    return -v


def scaled_points(jumps, ratio, lo, hi):
    """All points j * ratio^k (j in jumps, k integer) inside [lo, hi); lo and hi share a strict sign."""
    small, large = sorted([abs(lo), abs(hi)])
    found = set()
    for j in jumps:
        kmin = math.floor(log_ratio(small / abs(j), ratio)) - 1
        kmax = math.ceil(log_ratio(large / abs(j), ratio)) + 1
        for k in range(kmin, kmax + 1):
            v = j * ratio ** k
            if lo <= v < hi:
                found.add(v)
    return sorted(found)
