import os
import logging

import mpmath

from anonlab.fpath.witness import certify_warp_invariance
from anonlab.harness.config import ConfigError
from anonlab.scenarios.codec import save_json
from anonlab.scenarios.rational import format_rat
from anonlab.smooth.bigfloat import DEFAULT_PRECISION
from anonlab.smooth.warp import build_warp


class WitnessRunner:
    """
    Runner Class certifying f(t(x)) = f(x) for the adversarial scenario with one F-path witness per agent
    """

    def __init__(self, output_path, experiment_name, xs, w=0, z=0, depth=20, negative_depth=2, precision=None):
        self.output_path = output_path
        self.experiment_name = experiment_name
        if not xs:
            raise ConfigError("Error: at least one agent is needed")
        self.spec = build_warp(w, z, depth, negative_depth)
        self.xs = list(xs)
        self.precision = DEFAULT_PRECISION if precision is None else precision

    def run(self, run_parallel=False):
        with mpmath.workprec(self.precision):
            results = certify_warp_invariance(self.spec, self.xs)
            rows = [{'agent': format_rat(x), 'verified': ok, 'witness': None if wit is None else wit.to_dict()}
                    for x, wit, ok in results]
        passed = all(ok for _, _, ok in results)
        out = os.path.join(self.output_path, self.experiment_name)
        os.makedirs(out, exist_ok=True)
        save_json({'w': format_rat(self.spec.w), 'z': format_rat(self.spec.z), 'depth': self.spec.depth,
                   'precision': self.precision, 'witnesses': rows, 'passed': passed},
                  os.path.join(out, 'witnesses.json'))
        logging.info("Verified " + str(sum(ok for _, _, ok in results)) + " of " + str(len(results)) + " witnesses")
        return passed
