import os

from anonlab.harness.config import ConfigError
from anonlab.harness.plotdata import SOURCES, emit_plot_data
from anonlab.smooth.warp import build_warp, verify_flatness


class PlotRunner:
    """
    Runner Class writing plot data (and optionally a figure) for the transition function or the warp
    """

    def __init__(self, output_path, experiment_name, source='transition', resolution=1000, figure=False,
                 w=0, z=0, depth=12, negative_depth=2, k_max=4, precision=None):
        self.output_path = output_path
        self.experiment_name = experiment_name
        if source not in SOURCES:
            raise ConfigError("Error: plot source must be one of " + ", ".join(SOURCES))
        if resolution < 1:
            raise ConfigError("Error: resolution must be positive")
        self.source = source
        self.resolution = resolution
        self.figure = figure
        self.spec = None if source == 'transition' else build_warp(w, z, depth, negative_depth)
        self.k_max = k_max
        self.precision = precision

    def run(self, run_parallel=False):
        report = None
        if self.source == 'trend':
            report = verify_flatness(self.spec, self.k_max, precision=self.precision)
        out = os.path.join(self.output_path, self.experiment_name)
        os.makedirs(out, exist_ok=True)
        emit_plot_data(self.source, os.path.join(out, self.source + '.csv'), spec=self.spec, report=report,
                       resolution=self.resolution, figure=self.figure)
        return True
