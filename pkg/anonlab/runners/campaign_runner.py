import os
import logging

from anonlab.harness.campaign import SUITE_INDEX, run_campaign
from anonlab.harness.config import ConfigError
from anonlab.runners.catalog_runner import load_config


class CampaignRunner:
    """
    Runner Class for the seeded property campaign
    """

    def __init__(self, output_path, experiment_name, config_path=None, seed=None, skip_closure=None,
                 suites=None, n_jobs=None, precision=None):
        """
        Args:
            output_path: path to output directory
            experiment_name: name of experiment (no spaces)
            config_path: JSON or .cfg experiment config, defaults otherwise
            seed, skip_closure, n_jobs, precision: overrides of the config values
            suites: comma separated subset of suite names, all suites by default
        """
        self.output_path = output_path
        self.experiment_name = experiment_name
        self.cfg = load_config(config_path, seed=seed, skip_closure=skip_closure, n_jobs=n_jobs,
                               precision_bits=precision)
        self.suites = None
        if suites:
            self.suites = [name.strip() for name in suites.split(',') if name.strip()]
            for name in self.suites:
                if name not in SUITE_INDEX:
                    raise ConfigError("Error: unknown suite " + name + ", choose from " + ", ".join(SUITE_INDEX))

    def run(self, run_parallel=False):
        cfg = self.cfg if run_parallel else self.cfg.with_overrides(n_jobs=1)
        report = run_campaign(cfg, self.suites, progress=True)
        out = os.path.join(self.output_path, self.experiment_name)
        os.makedirs(out, exist_ok=True)
        report.save(os.path.join(out, 'campaign_report.json'))
        for suite in report.suites:
            logging.info(suite.name + ": " + str(suite.passed) + " passed, " + str(suite.failed) + " failed")
        return report.passed
