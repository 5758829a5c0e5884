"""
Finite ordered catalogs standing in for a well-order of all scenarios: index order is the order,
periodic entries first, then affine-invariant ones, then the rest.
"""
import logging
from dataclasses import dataclass, field

from anonlab.scenarios.codec import scenario_to_dict, scenario_from_dict
from anonlab.scenarios.errors import RepresentationError, PreconditionError
from anonlab.scenarios.extension import find_past_period, find_past_affine_symmetry
from anonlab.scenarios.extension import periodic_extension, affine_extension
from anonlab.scenarios.scenario import Tier, classify, normalize, past_view, special_points
from anonlab.scenarios.rational import as_rat, format_rat


class CatalogError(Exception):
    pass


class NoConsistentEntryError(Exception):
    """The observed past lies outside the catalog's closure."""


class ClosureViolationError(Exception):
    pass


@dataclass(frozen=True)
class Catalog:
    entries: tuple
    tiers: tuple

    def __post_init__(self):
        if len(self.entries) != len(self.tiers):
            raise CatalogError("Error: one tier per catalog entry")
        if any(a > b for a, b in zip(self.tiers, self.tiers[1:])):
            raise CatalogError("Error: catalog tiers must be ordered periodic, affine-invariant, other")
        if len(set(self.entries)) != len(self.entries):
            raise CatalogError("Error: duplicate catalog entries")

    @classmethod
    def from_entries(cls, entries):
        """Keeps the given order; entries are normalized and tiered by classify."""
        entries = tuple(normalize(f) for f in entries)
        return cls(entries, tuple(classify(f) for f in entries))

    @classmethod
    def sorted_from(cls, entries):
        """Stable sort by tier with duplicates (after normalization) dropped."""
        unique = []
        for f in entries:
            f = normalize(f)
            if f not in unique:
                unique.append(f)
        unique.sort(key=classify)
        return cls.from_entries(unique)

    def __len__(self):
        return len(self.entries)

    def to_dict(self):
        return {'entries': [scenario_to_dict(f) for f in self.entries], 'tiers': [t.name for t in self.tiers]}

    @classmethod
    def from_dict(cls, doc):
        catalog = cls.from_entries([scenario_from_dict(d) for d in doc['entries']])
        if 'tiers' in doc and [t.name for t in catalog.tiers] != list(doc['tiers']):
            logging.warning("Stored catalog tiers differ from computed tiers; using computed tiers")
        return catalog


@dataclass
class ClosureViolation:
    entry_index: int
    cut: object
    requirement: str
    missing_extension: object = None

    def to_dict(self):
        return {'entry_index': self.entry_index, 'cut': format_rat(self.cut), 'requirement': self.requirement,
                'missing_extension': None if self.missing_extension is None
                else scenario_to_dict(self.missing_extension)}


@dataclass
class ClosureReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {'checked': self.checked, 'passed': self.passed, 'violations': [v.to_dict() for v in self.violations]}


def default_cuts(catalog, spread=1):
    """Cuts at, between and around every visible jump of every entry (finite windows only)."""
    cuts = set()
    for f in catalog.entries:
        try:
            points = special_points(f, -8, 8)
        except RepresentationError:
            points = []
        for b in points:
            cuts.update([b, b + spread, b - spread])
        cuts.add(as_rat(0))
    return sorted(cuts)


def check_closure(catalog, cuts=None):
    """
    For every entry and cut where the entry's past is periodic (resp. affine-invariant), some periodic
    (resp. periodic or affine-invariant) entry must be T2-consistent with that past.
    """
    from anonlab.prediction.predictor import consistency_t2

    cuts = default_cuts(catalog) if cuts is None else [as_rat(x) for x in cuts]
    report = ClosureReport()
    for index, f in enumerate(catalog.entries):
        for x in cuts:
            report.checked += 1
            pv = past_view(f, x)
            period = find_past_period(f, x)
            if period is not None:
                allowed, requirement = Tier.PERIODIC, 'periodic extension'
            else:
                symmetry = find_past_affine_symmetry(f, x)
                if symmetry is None:
                    continue
                allowed, requirement = Tier.AFFINE_INVARIANT, 'affine-invariant extension'
            if any(tier <= allowed and consistency_t2(g, pv) is not None
                   for g, tier in zip(catalog.entries, catalog.tiers)):
                continue
            try:
                missing = periodic_extension(f, x, period) if period is not None \
                    else affine_extension(f, x, symmetry)
            except (RepresentationError, PreconditionError):
                missing = None
            report.violations.append(ClosureViolation(index, x, requirement, missing))
    logging.info("Closure check: " + str(report.checked) + " (entry, cut) pairs, "
                 + str(len(report.violations)) + " violations")
    return report
