import os
import logging

from anonlab.harness.config import ConfigError
from anonlab.harness.plotdata import emit_plot_data
from anonlab.scenarios.codec import save_json
from anonlab.smooth.warp import build_warp, verify_flatness


class SmoothRunner:
    """
    Runner Class for the flatness report of the smooth warp built at (w, z)
    """

    def __init__(self, output_path, experiment_name, w=0, z=0, depth=20, negative_depth=2, k_max=4,
                 samples=64, grid_depth=8, epsilon=None, precision=None, n_jobs=1, emit_samples=True):
        """
        Args:
            output_path: path to output directory
            experiment_name: name of experiment (no spaces)
            w, z: flat point and value there
            depth: number of anchors below w
            k_max: highest derivative order checked
            epsilon: optional bound for the last first-derivative estimates
            emit_samples: also write (x, t(x)) samples as CSV
        """
        self.output_path = output_path
        self.experiment_name = experiment_name
        if depth < 2 or k_max < 1:
            raise ConfigError("Error: depth must be at least 2 and k_max at least 1")
        self.spec = build_warp(w, z, depth, negative_depth)
        self.k_max = k_max
        self.samples = samples
        self.grid_depth = grid_depth
        self.epsilon = epsilon
        self.precision = precision
        self.n_jobs = n_jobs
        self.emit_samples = emit_samples

    def run(self, run_parallel=False):
        report = verify_flatness(self.spec, self.k_max, self.samples, self.grid_depth, self.epsilon,
                                 n_jobs=self.n_jobs if run_parallel else 1, precision=self.precision)
        out = os.path.join(self.output_path, self.experiment_name)
        os.makedirs(out, exist_ok=True)
        save_json(report.to_dict(), os.path.join(out, 'flatness.json'))
        if self.emit_samples:
            emit_plot_data('warp', os.path.join(out, 'warp_samples.csv'), spec=self.spec)
        for violation in report.violations:
            logging.warning(violation)
        return report.passed
