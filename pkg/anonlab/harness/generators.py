"""
Seeded generators for catalogs, truths and warps. Every object is a pure function of the numpy
Generator handed in, so (seed, config) determines it.
"""
import string
import logging
from fractions import Fraction

import numpy as np

from anonlab.prediction.catalog import Catalog
from anonlab.scenarios.pattern import CyclicPattern
from anonlab.scenarios.scenario import StepScenario, PeriodicStepScenario, LogPeriodicScenario
from anonlab.scenarios.scenario import constant, normalize, compose_warp
from anonlab.warps.timewarp import AffineWarp

PERIODS = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))
RATIOS = (Fraction(3, 2), Fraction(2), Fraction(3))
SLOPES = (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))
KINDS = ('periodic', 'logperiodic', 'step')


def alphabet(n):
    """A, B, ..., Z, then S26, S27, ..."""
    return [string.ascii_uppercase[i] if i < 26 else 'S' + str(i) for i in range(n)]


def _pick(rng, options):
    return options[int(rng.integers(len(options)))]


def _cyclic_count(symbols, count):
    """Two symbols only alternate around a cycle of even length."""
    return count - count % 2 if len(symbols) == 2 else count


def _cyclic_values(rng, symbols, count):
    """count symbols with cyclic neighbours distinct (count >= 2, even when there are only two symbols)."""
    values = _chain_values(rng, symbols, count - 1)
    options = [s for s in symbols if s != values[-1] and s != values[0]]
    if not options:
        raise ValueError("Error: cannot close a cycle of " + str(count) + " values over " + str(len(symbols))
                         + " symbols")
    values.append(_pick(rng, options))
    return values


def _chain_values(rng, symbols, count):
    values = [_pick(rng, symbols)]
    for _ in range(count - 1):
        values.append(_pick(rng, [s for s in symbols if s != values[-1]]))
    return values


def _band_points(rng, lo, hi, count, slots=12):
    """count distinct sorted rationals in [lo, hi) on a grid of ``slots`` cells."""
    cells = sorted(rng.choice(slots, size=count, replace=False).tolist())
    return [lo + (hi - lo) * Fraction(c, slots) for c in cells]


def random_periodic(rng, symbols):
    period = _pick(rng, PERIODS)
    count = _cyclic_count(symbols, int(rng.integers(2, 5)))
    jumps = _band_points(rng, Fraction(0), period, count)
    return PeriodicStepScenario(period, CyclicPattern(jumps, _cyclic_values(rng, symbols, count)))


def _random_band(rng, symbols, lo, hi):
    if rng.random() < 0.3:
        return CyclicPattern.constant(_pick(rng, symbols))
    count = _cyclic_count(symbols, int(rng.integers(2, 4)))
    return CyclicPattern(_band_points(rng, lo, hi, count), _cyclic_values(rng, symbols, count))


def random_logperiodic(rng, symbols):
    ratio = _pick(rng, RATIOS)
    p = Fraction(int(rng.integers(-4, 5)), 2)
    plus = _random_band(rng, symbols, Fraction(1), ratio)
    minus = _random_band(rng, symbols, -ratio, Fraction(-1))
    return LogPeriodicScenario(p, ratio, plus, minus, _pick(rng, symbols))


def random_step(rng, symbols, max_breakpoints=3):
    count = int(rng.integers(1, max_breakpoints + 1))
    breakpoints = sorted(set(Fraction(int(k), 4) for k in rng.integers(-12, 13, size=count)))
    return StepScenario(breakpoints, _chain_values(rng, symbols, len(breakpoints) + 1))


def random_entry(rng, symbols, kind=None):
    kind = _pick(rng, KINDS) if kind is None else kind
    if kind == 'periodic':
        return random_periodic(rng, symbols)
    if kind == 'logperiodic':
        return random_logperiodic(rng, symbols)
    return random_step(rng, symbols)


def completion(f):
    """The one-jump step an entry's past becomes between its first two jumps, or None."""
    if isinstance(f, StepScenario) and len(f.breakpoints) >= 2:
        return StepScenario((0,), f.values[:2])
    return None


def gen_catalog(cfg, rng=None):
    """
    A closed catalog of about cfg.catalog_size entries: every constant over the alphabet, random
    periodic, log-periodic and step entries (at least one step), and the one-jump step every multi-jump
    step passes through. cfg.skip_closure drops the constants and the completions.
    """
    rng = np.random.default_rng(cfg.seed) if rng is None else rng
    symbols = alphabet(cfg.alphabet_size)
    entries = [] if cfg.skip_closure else [constant(s) for s in symbols]
    if len(symbols) < 2:
        return Catalog.sorted_from(entries or [constant(symbols[0])])

    def add(f):
        f = normalize(f)
        if f not in entries:
            entries.append(f)

    attempts = 0
    while len(entries) < cfg.catalog_size and attempts < 50 * cfg.catalog_size:
        attempts += 1
        has_step = any(isinstance(f, StepScenario) and not f.is_constant for f in entries)
        f = normalize(random_entry(rng, symbols, None if has_step else 'step'))
        if f in entries or (isinstance(f, StepScenario) and f.is_constant):
            continue
        extra = completion(f)
        if extra is not None and not cfg.skip_closure:
            if len(entries) + 2 > cfg.catalog_size and normalize(extra) not in entries:
                continue
            add(extra)
        add(f)
    catalog = Catalog.sorted_from(entries)
    logging.info("Generated catalog of " + str(len(catalog)) + " entries (tiers "
                 + ", ".join(t.name for t in catalog.tiers) + ")")
    return catalog


def random_warp(rng, shift_only=False):
    slope = Fraction(1) if shift_only else _pick(rng, SLOPES)
    return AffineWarp(slope, Fraction(int(rng.integers(-12, 13)), 4))


def gen_truth(catalog, rng, mode='t2'):
    """
    A truth inside the catalog's closure: an entry itself for ht, an entry under a random warp
    (a shift for t1) otherwise. Returns (truth, entry index, warp or None).
    """
    index = int(rng.integers(len(catalog)))
    g = catalog.entries[index]
    if mode == 'ht':
        return g, index, None
    t = random_warp(rng, shift_only=(mode == 't1'))
    return compose_warp(g, t), index, t


def random_grid(rng, size, lo=-5, hi=5, denominator=8):
    """size distinct sorted rationals in [lo, hi] with the given denominator."""
    span = (hi - lo) * denominator
    size = min(size, span + 1)
    cells = sorted(rng.choice(span + 1, size=size, replace=False).tolist())
    return [Fraction(lo) + Fraction(c, denominator) for c in cells]
