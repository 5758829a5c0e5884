import os
import logging

import numpy as np

from anonlab.harness.config import ConfigError, ExperimentConfig
from anonlab.harness.generators import gen_catalog
from anonlab.prediction.catalog import Catalog, check_closure
from anonlab.scenarios.codec import load_json, save_json


def load_config(config_path=None, **overrides):
    """Experiment config from a JSON / .cfg file (or the defaults) with the non-None overrides applied."""
    if config_path is not None and not os.path.exists(config_path):
        raise ConfigError("Error: config file " + str(config_path) + " does not exist")
    cfg = ExperimentConfig() if config_path is None else ExperimentConfig.load(config_path)
    return cfg.with_overrides(**overrides)


class CatalogGenRunner:
    """
    Runner Class for generating a seeded, closed catalog
    """

    def __init__(self, output_path, experiment_name, config_path=None, seed=None, alphabet_size=None,
                 catalog_size=None, skip_closure=None):
        self.output_path = output_path
        self.experiment_name = experiment_name
        self.cfg = load_config(config_path, seed=seed, alphabet_size=alphabet_size, catalog_size=catalog_size,
                               skip_closure=skip_closure)

    def run(self, run_parallel=False):
        catalog = gen_catalog(self.cfg, np.random.default_rng(self.cfg.seed))
        out = os.path.join(self.output_path, self.experiment_name)
        os.makedirs(out, exist_ok=True)
        save_json(catalog.to_dict(), os.path.join(out, 'catalog.json'))
        logging.info("Generated catalog of " + str(len(catalog)) + " entries with seed " + str(self.cfg.seed))
        return True


class CatalogCheckRunner:
    """
    Runner Class for the closure check of a stored catalog
    """

    def __init__(self, output_path, experiment_name, catalog_path, cuts=None):
        self.output_path = output_path
        self.experiment_name = experiment_name
        if not os.path.exists(catalog_path):
            raise ConfigError("Error: catalog file " + str(catalog_path) + " does not exist")
        self.catalog = Catalog.from_dict(load_json(catalog_path))
        self.cuts = cuts

    def run(self, run_parallel=False):
        report = check_closure(self.catalog, self.cuts)
        out = os.path.join(self.output_path, self.experiment_name)
        os.makedirs(out, exist_ok=True)
        save_json(report.to_dict(), os.path.join(out, 'closure.json'))
        if not report.passed:
            logging.warning("Catalog is not closed: " + str(len(report.violations)) + " violations")
        return report.passed
