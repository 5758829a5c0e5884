"""
Seeded property campaigns. Each suite is a Job drawing from its own numpy Generator seeded with
(seed, suite index), so suites are independent and their reports are deterministic whether they run
serially or fanned out with joblib.
"""
import json
import time
import logging
from fractions import Fraction
from dataclasses import dataclass, field, replace

import mpmath
import numpy as np

from anonlab.fpath.witness import certify_warp_invariance
from anonlab.harness.generators import gen_catalog, gen_truth, random_entry, random_warp, random_grid, alphabet
from anonlab.prediction.catalog import check_closure
from anonlab.prediction.checks import error_set, equivariance_check, well_definedness_check, valid_warps
from anonlab.prediction.checks import negative_controls
from anonlab.prediction.predictor import consistency_ht, consistency_for
from anonlab.prediction.proofs import replay_well_definedness
from anonlab.scenarios.codec import scenario_to_dict, warp_to_dict
from anonlab.scenarios.errors import PreconditionError, RepresentationError
from anonlab.scenarios.extension import find_past_period, find_past_affine_symmetry, periodic_extension
from anonlab.scenarios.extension import affine_extension, check_period_match, orbit
from anonlab.scenarios.rational import format_rat
from anonlab.scenarios.scenario import PeriodicStepScenario, compose_warp, restrict_eq, scenarios_equal
from anonlab.scenarios.scenario import past_view, special_points
from anonlab.smooth.bigfloat import to_mpf, to_str
from anonlab.smooth.transition import s, s_jet
from anonlab.smooth.warp import build_warp, warp_eval, verify_flatness
from anonlab.utils.job import Job
from anonlab.utils.runners import run_jobs
from anonlab.warps.timewarp import AffineWarp, WarpInvariantError, apply, compose, invert, power
from anonlab.warps.timewarp import commutator, conjugate_shift

MAX_COUNTEREXAMPLES = 3
FLATNESS_EPSILON = Fraction(1, 10 ** 20)
WITNESS_TOLERANCE_BITS = 200


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def record(self, ok, payload=None):
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if payload is not None and len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append(payload)

    @property
    def ok(self):
        return self.failed == 0

    def to_dict(self):
        return {'name': self.name, 'passed': self.passed, 'failed': self.failed, 'ok': self.ok,
                'counterexamples': self.counterexamples, 'details': self.details}


class SuiteJob(Job):
    """Base class: subclasses implement check(result)."""
    suite_name = 'suite'

    def __init__(self, cfg, index):
        super().__init__(self.suite_name)
        self.cfg = cfg
        self.index = index

    def rng(self):
        return np.random.default_rng([self.cfg.seed, self.index])

    def check(self, result):
        raise NotImplementedError

    def run(self):
        start = time.time()
        result = SuiteResult(self.suite_name)
        with mpmath.workprec(self.cfg.precision_bits):
            self.check(result)
        result.elapsed = time.time() - start
        logging.info("Suite " + self.suite_name + ": " + str(result.passed) + " passed, "
                     + str(result.failed) + " failed")
        return result


def _catalog_payload(catalog):
    return [scenario_to_dict(f) for f in catalog.entries]


class ErrorSetSuite(SuiteJob):
    """|errors| <= |catalog| and strictly increasing witness indices over erring agents."""

    def __init__(self, cfg, index, mode):
        self.mode = mode
        self.suite_name = 'error_set_' + mode
        super().__init__(cfg, index)

    def check(self, result):
        rng = self.rng()
        grid = self.cfg.grid()
        audit_stride = max(1, len(grid) // 10)
        for k in range(self.cfg.n_truths):
            catalog = gen_catalog(self.cfg, rng)
            f, index, t = gen_truth(catalog, rng, self.mode)
            report = error_set(catalog, f, grid, self.mode, n_jobs=self.cfg.n_jobs)
            sound = self._audit(catalog, f, grid[::audit_stride], report.guesses[::audit_stride])
            result.record(report.passed and sound, {
                'truth_number': k, 'catalog': _catalog_payload(catalog), 'truth': scenario_to_dict(f),
                'entry': index, 'warp': None if t is None else warp_to_dict(t), 'summary': report.to_dict(),
                'sound': sound})

    def _audit(self, catalog, f, agents, guesses):
        """Stored witnesses re-verify and no earlier entry passes the same consistency test."""
        for x, guess in zip(agents, guesses):
            pv = past_view(f, x)
            g = catalog.entries[guess.witness_index]
            earlier = catalog.entries[:guess.witness_index]
            if self.mode == 'ht':
                if not consistency_ht(g, pv) or any(consistency_ht(e, pv) for e in earlier):
                    return False
                continue
            consistency = consistency_for(self.mode)
            if not restrict_eq(pv.base, compose_warp(g, guess.witness_warp), 0):
                return False
            if any(consistency(e, pv) is not None for e in earlier):
                return False
        return True


class EquivarianceSuite(SuiteJob):
    suite_name = 'equivariance'

    def check(self, result):
        rng = self.rng()
        mode = 't1' if self.cfg.mode == 't1' else 't2'
        for k in range(self.cfg.n_equivariance):
            catalog = gen_catalog(self.cfg, rng)
            f, _, _ = gen_truth(catalog, rng, mode)
            t = random_warp(rng, shift_only=(mode == 't1'))
            grid = random_grid(rng, self.cfg.equivariance_grid_size)
            report = equivariance_check(catalog, f, t, grid, mode)
            result.record(report.passed, {'triple': k, 'catalog': _catalog_payload(catalog),
                                          'truth': scenario_to_dict(f), 'report': report.to_dict()})


def _query_agents(rng, f, count):
    """Random agents plus one below the first visible jump of f, where the past is simplest."""
    agents = random_grid(rng, count)
    try:
        points = special_points(f, -8, 8)
    except RepresentationError:
        points = []
    if points:
        agents.append(points[0] - Fraction(1, 2))
    return agents


class WellDefinednessSuite(SuiteJob):
    """All valid witness warps give one guess; needs the catalog to pass the closure check."""
    suite_name = 'well_definedness'

    def check(self, result):
        rng = self.rng()
        closure_failures = 0
        for _ in range(max(1, self.cfg.n_truths // 4)):
            catalog = gen_catalog(self.cfg, rng)
            closure = check_closure(catalog)
            if not closure.passed:
                closure_failures += 1
                result.record(False, {'catalog': _catalog_payload(catalog), 'closure': closure.to_dict()})
            for entry in catalog.entries:
                for x in _query_agents(rng, entry, 2):
                    report = well_definedness_check(catalog, past_view(entry, x), self.cfg.warp_samples)
                    result.record(report.passed, {'catalog': _catalog_payload(catalog),
                                                  'truth': scenario_to_dict(entry), 'agent': format_rat(x),
                                                  'report': report.to_dict()})
        result.details['closure_failures'] = closure_failures


class ProofReplaySuite(SuiteJob):
    """Replays the warp-independence argument for pairs of valid warps of the least consistent entry."""
    suite_name = 'proof_replay'

    def check(self, result):
        rng = self.rng()
        cases = {}
        for _ in range(max(1, self.cfg.n_truths // 8)):
            catalog = gen_catalog(self.cfg, rng)
            for entry in catalog.entries:
                for x in _query_agents(rng, entry, 1):
                    pv = past_view(entry, x)
                    for index, g in enumerate(catalog.entries):
                        t0 = consistency_for('t2')(g, pv)
                        if t0 is None:
                            continue
                        for t in valid_warps(g, pv, t0, self.cfg.warp_samples)[1:]:
                            trace = replay_well_definedness(g, t0, t, 0)
                            cases[trace.case] = cases.get(trace.case, 0) + 1
                            result.record(trace.passed, {'entry': scenario_to_dict(g), 'trace': trace.to_dict()})
                        break
        result.details['cases'] = dict(sorted(cases.items()))


class ExtensionSuite(SuiteJob):
    """Periodic and affine extensions satisfy their defining equations; period matching holds."""
    suite_name = 'extension_lemmas'

    def check(self, result):
        rng = self.rng()
        symbols = alphabet(max(2, self.cfg.alphabet_size))
        counts = {'periodic': 0, 'affine': 0, 'period_match': 0}
        attempts = 0
        while min(counts.values()) < self.cfg.n_extension and attempts < 20 * self.cfg.n_extension:
            attempts += 1
            f = random_entry(rng, symbols)
            x = Fraction(int(rng.integers(-32, 33)), 8)
            period = find_past_period(f, x)
            if period is not None and counts['periodic'] < self.cfg.n_extension:
                counts['periodic'] += 1
                try:
                    g = periodic_extension(f, x, period)
                    ok = scenarios_equal(compose_warp(g, AffineWarp(1, period)), g) and restrict_eq(g, f, x)
                except (PreconditionError, RepresentationError):
                    ok = False
                result.record(ok, {'lemma': 'periodic', 'f': scenario_to_dict(f), 'x': format_rat(x)})
            symmetry = find_past_affine_symmetry(f, x)
            if symmetry is not None and not symmetry.is_shift and counts['affine'] < self.cfg.n_extension:
                counts['affine'] += 1
                try:
                    g = affine_extension(f, x, symmetry)
                    ok = scenarios_equal(compose_warp(g, symmetry), g) and restrict_eq(g, f, x)
                except (PreconditionError, RepresentationError):
                    ok = False
                result.record(ok, {'lemma': 'affine', 'f': scenario_to_dict(f), 'x': format_rat(x),
                                   'warp': warp_to_dict(symmetry)})
            if isinstance(f, PeriodicStepScenario) and counts['period_match'] < self.cfg.n_extension:
                counts['period_match'] += 1
                b = f.period * int(rng.integers(1, 4)) * (1 if rng.random() < 0.5 else -1)
                result.record(check_period_match(f, x, b), {'lemma': 'period_match', 'f': scenario_to_dict(f),
                                                            'x': format_rat(x), 'b': format_rat(b)})
        result.details['instances'] = counts


def _random_rational_warp(rng):
    slope = Fraction(int(rng.integers(1, 13)), int(rng.integers(1, 13)))
    return AffineWarp(slope, Fraction(int(rng.integers(-40, 41)), int(rng.integers(1, 9))))


class WarpAlgebraSuite(SuiteJob):
    suite_name = 'warp_algebra'

    def check(self, result):
        rng = self.rng()
        for _ in range(self.cfg.n_warp_pairs):
            s_warp, tbar, other = _random_rational_warp(rng), _random_rational_warp(rng), _random_rational_warp(rng)
            b = Fraction(int(rng.integers(1, 20)), int(rng.integers(1, 7))) * (1 if rng.random() < 0.5 else -1)
            y = Fraction(int(rng.integers(-50, 51)), 7)
            n = int(rng.integers(-4, 5))
            try:
                commutator(s_warp, tbar)
                ok = True
            except WarpInvariantError:
                ok = False
            ok = ok and conjugate_shift(tbar, b).b == b / tbar.slope
            ok = ok and compose(compose(s_warp, tbar), other) == compose(s_warp, compose(tbar, other))
            ok = ok and compose(tbar, invert(tbar)).is_identity
            ok = ok and apply(power(tbar, n), y) == orbit(tbar, y, n)
            result.record(ok, {'s': warp_to_dict(s_warp), 'tbar': warp_to_dict(tbar), 'b': format_rat(b)})


def _smooth_pairs(rng, count):
    return [(Fraction(int(rng.integers(-40, 41)), int(rng.integers(1, 9))),
             Fraction(int(rng.integers(-40, 41)), int(rng.integers(1, 9)))) for _ in range(count)]


class SmoothSuite(SuiteJob):
    """Flatness of the truncated smooth warp at w, per (w, z) pair."""
    suite_name = 'smooth'

    def check(self, result):
        rng = self.rng()
        for w, z in _smooth_pairs(rng, self.cfg.n_smooth):
            spec = build_warp(w, z, self.cfg.truncation_depth)
            report = verify_flatness(spec, self.cfg.k_max, grid_depth=self.cfg.grid_depth,
                                     epsilon=FLATNESS_EPSILON, precision=self.cfg.precision_bits)
            hits_z = abs(warp_eval(spec, w) - to_mpf(z)) <= mpmath.mpf(2) ** -WITNESS_TOLERANCE_BITS
            result.record(report.passed and hits_z, {'w': format_rat(w), 'z': format_rat(z),
                                                     'violations': report.violations})


class WitnessSuite(SuiteJob):
    """Verified F-path witnesses for f(t(x)) = f(x) below w on the same warps as the smooth suite."""
    suite_name = 'witness'

    def check(self, result):
        rng = self.rng()
        tol = mpmath.mpf(2) ** -WITNESS_TOLERANCE_BITS
        pairs = _smooth_pairs(np.random.default_rng([self.cfg.seed, SUITE_INDEX['smooth']]), self.cfg.n_smooth)
        for w, z in pairs:
            spec = build_warp(w, z, self.cfg.truncation_depth)
            top = spec.p(spec.depth)
            xs = [top - Fraction(int(k), 64) for k in rng.integers(0, 192, size=self.cfg.n_witness_points)]
            for x, wit, ok in certify_warp_invariance(spec, xs, tol):
                result.record(ok, {'w': format_rat(w), 'z': format_rat(z), 'x': format_rat(x)})


class TransitionSuite(SuiteJob):
    suite_name = 'transition_values'

    def check(self, result):
        tol = mpmath.mpf(2) ** -WITNESS_TOLERANCE_BITS
        result.record(s(0) == 0 and s(1) == 1, {'check': 'endpoints'})
        result.record(abs(s(Fraction(1, 2)) - mpmath.mpf(1) / 2) <= tol, {'check': 'midpoint'})
        for i in range(1001):
            x = Fraction(i, 1000)
            residual = abs(s(x) + s(1 - x) - 1)
            result.record(residual <= tol, {'check': 'symmetry', 'x': format_rat(x), 'residual': to_str(residual, 10)})
        for k in range(1, 7):
            result.record(s_jet(0, k).derivative(k) == 0 and s_jet(1, k).derivative(k) == 0,
                          {'check': 'endpoint_derivative', 'k': k})


class ClosureSuite(SuiteJob):
    """Generated catalogs are tier ordered and pass the closure check."""
    suite_name = 'closure'

    def check(self, result):
        rng = self.rng()
        for k in range(5):
            catalog = gen_catalog(self.cfg, rng)
            report = check_closure(catalog)
            ordered = list(catalog.tiers) == sorted(catalog.tiers)
            result.record(report.passed and ordered, {'catalog': _catalog_payload(catalog),
                                                      'closure': report.to_dict()})


class NegativeControlSuite(SuiteJob):
    """Each documented control must report the violation it was built to show."""
    suite_name = 'negative_controls'

    def check(self, result):
        for control in negative_controls():
            result.record(control['observed_failure'], control)


SUITES = ('error_set', 'equivariance', 'well_definedness', 'proof_replay', 'extension_lemmas',
          'warp_algebra', 'smooth', 'witness', 'transition_values', 'closure', 'negative_controls')
SUITE_INDEX = {name: i for i, name in enumerate(SUITES)}


def build_suites(cfg, names=None):
    names = SUITES if names is None else names
    jobs = []
    for name in names:
        index = SUITE_INDEX[name]
        if name == 'error_set':
            modes = ('ht', 't2') if cfg.mode != 't1' else ('ht', 't2', 't1')
            jobs.extend(ErrorSetSuite(cfg, index, mode) for mode in modes)
            continue
        suite_class = {
            'equivariance': EquivarianceSuite, 'well_definedness': WellDefinednessSuite,
            'proof_replay': ProofReplaySuite, 'extension_lemmas': ExtensionSuite,
            'warp_algebra': WarpAlgebraSuite, 'smooth': SmoothSuite, 'witness': WitnessSuite,
            'transition_values': TransitionSuite, 'closure': ClosureSuite,
            'negative_controls': NegativeControlSuite,
        }[name]
        jobs.append(suite_class(cfg, index))
    return jobs


@dataclass
class CampaignReport:
    config: dict
    suites: list = field(default_factory=list)

    @property
    def passed(self):
        return all(suite.ok for suite in self.suites)

    def to_dict(self):
        return {'config': self.config, 'passed': self.passed, 'suites': [suite.to_dict() for suite in self.suites]}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def timing(self):
        return {suite.name: round(suite.elapsed, 6) for suite in self.suites}

    def save(self, path):
        """Writes the report and, beside it, the timings kept out of the report body."""
        with open(path, 'w') as file:
            file.write(self.to_json() + '\n')
        timing_path = path[:-5] + '_timing.json' if path.endswith('.json') else path + '_timing.json'
        with open(timing_path, 'w') as file:
            file.write(json.dumps(self.timing(), sort_keys=True, indent=2) + '\n')


def run_campaign(cfg, suites=None, progress=False):
    """Runs the suites (all by default) and merges their results in declared order."""
    jobs = build_suites(cfg, suites)
    logging.info("Running " + str(len(jobs)) + " suites with seed " + str(cfg.seed))
    results = run_jobs(jobs, n_jobs=cfg.n_jobs, progress=progress)
    report = CampaignReport(cfg.to_dict(), list(results))
    logging.info("Campaign " + ("passed" if report.passed else "FAILED"))
    return report


def mutated(cfg):
    """The negative-control configuration: catalogs generated without their closure entries."""
    return replace(cfg, skip_closure=True)
