import os
import logging

from anonlab.harness.config import ConfigError, make_grid
from anonlab.prediction.catalog import Catalog, ClosureViolationError
from anonlab.prediction.checks import error_set, equivariance_check
from anonlab.prediction.predictor import MODES, Predictor
from anonlab.scenarios.codec import load_json, save_json, scenario_from_dict
from anonlab.warps.timewarp import AffineWarp


class SimulateRunner:
    """
    Runner Class for the error set of one truth scenario against a catalog on a grid of agents
    """

    def __init__(self, output_path, experiment_name, catalog_path, truth_path, grid='-5:5:1/10', mode='t2',
                 warp=None, n_jobs=1):
        """
        Args:
            output_path: path to output directory
            experiment_name: name of experiment (no spaces)
            catalog_path: catalog JSON document
            truth_path: scenario JSON document of the truth f
            grid: "start:stop:step" with rational entries, both ends included
            mode: one of 'ht', 't1', 't2'
            warp: optional (slope, offset) pair; adds an equivariance check under that warp
            n_jobs: number of joblib workers for the per-agent predictions
        """
        self.output_path = output_path
        self.experiment_name = experiment_name
        if mode not in MODES:
            raise ConfigError("Error: mode must be one of " + ", ".join(MODES))
        for path in (catalog_path, truth_path):
            if not os.path.exists(path):
                raise ConfigError("Error: file " + str(path) + " does not exist")
        self.catalog = Catalog.from_dict(load_json(catalog_path))
        self.truth = scenario_from_dict(load_json(truth_path))
        self.grid = make_grid(grid)
        self.mode = mode
        self.warp = None if warp is None else AffineWarp(*warp)
        self.n_jobs = n_jobs

    def run(self, run_parallel=False):
        try:
            Predictor(self.catalog, self.mode)
        except ClosureViolationError as e:
            raise ConfigError(str(e))
        n_jobs = self.n_jobs if run_parallel else 1
        report = error_set(self.catalog, self.truth, self.grid, self.mode, n_jobs=n_jobs)
        summary = report.to_dict()
        passed = report.passed
        if self.warp is not None:
            equivariance = equivariance_check(self.catalog, self.truth, self.warp, self.grid, self.mode)
            summary['equivariance'] = equivariance.to_dict()
            # ht is not anonymous, its equivariance result is informational
            if self.mode != 'ht':
                passed = passed and equivariance.passed

        out = os.path.join(self.output_path, self.experiment_name)
        os.makedirs(out, exist_ok=True)
        report.to_frame().to_csv(os.path.join(out, 'simulation.csv'), index=False)
        summary['passed'] = passed
        save_json(summary, os.path.join(out, 'simulation.json'))
        logging.info("Simulation: " + str(len(report.errors)) + " errors over " + str(len(report.agents))
                     + " agents, catalog size " + str(len(self.catalog)))
        return passed
