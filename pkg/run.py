import os
import sys
import time
import logging
import warnings

import mpmath

from anonlab.harness.config import ConfigError
from anonlab.prediction.catalog import CatalogError
from anonlab.scenarios.errors import ScenarioError, CodecError, PreconditionError
from anonlab.smooth.bigfloat import SmoothError
from anonlab.warps.timewarp import WarpError
from anonlab.utils.parser import parser_function

warnings.filterwarnings("ignore")

logger = logging.getLogger()
logger.setLevel(logging.INFO)
formatter = logging.Formatter('%(asctime)s | %(levelname)s | %(message)s')

EXIT_PASSED, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
USAGE_ERRORS = (ConfigError, CodecError, ScenarioError, PreconditionError, CatalogError, SmoothError, WarpError,
                OSError)


def runner(obj, phase, run_parallel=True):
    start = time.time()
    print()
    print("Running " + phase + " Phase")
    passed = obj.run(run_parallel=run_parallel)
    print("Ran " + phase + " Phase " + ("parallely" if run_parallel else "serially")
          + " in " + str(time.time() - start) + " (" + ("passed" if passed else "FAILED") + ")")
    del obj
    return passed


def make_runner(params):
    command = params['command']
    common = (params['output_path'], params['experiment_name'])
    if command == 'simulate':
        from anonlab.runners.simulate_runner import SimulateRunner
        return "Simulate", SimulateRunner(*common, params['catalog_path'], params['truth_path'], grid=params['grid'],
                                          mode=params['mode'], warp=params['warp'], n_jobs=params['n_jobs'])
    if command == 'catalog' and params['catalog_command'] == 'gen':
        from anonlab.runners.catalog_runner import CatalogGenRunner
        return "Catalog Gen", CatalogGenRunner(*common, config_path=params['config_path'], seed=params['seed'],
                                               alphabet_size=params['alphabet_size'],
                                               catalog_size=params['catalog_size'],
                                               skip_closure=params['skip_closure'])
    if command == 'catalog':
        from anonlab.runners.catalog_runner import CatalogCheckRunner
        return "Catalog Check", CatalogCheckRunner(*common, params['catalog_path'], cuts=params['cuts'])
    if command == 'verify-smooth':
        from anonlab.runners.smooth_runner import SmoothRunner
        return "Verify Smooth", SmoothRunner(*common, w=params['w'], z=params['z'], depth=params['depth'],
                                             negative_depth=params['negative_depth'], k_max=params['k_max'],
                                             samples=params['samples'], grid_depth=params['grid_depth'],
                                             epsilon=params['epsilon'], precision=params['precision'],
                                             n_jobs=params['n_jobs'])
    if command == 'witness':
        from anonlab.runners.witness_runner import WitnessRunner
        return "Witness", WitnessRunner(*common, params['xs'], w=params['w'], z=params['z'], depth=params['depth'],
                                        negative_depth=params['negative_depth'], precision=params['precision'])
    if command == 'plot':
        from anonlab.runners.plot_runner import PlotRunner
        return "Plot", PlotRunner(*common, source=params['source'], resolution=params['resolution'],
                                  figure=params['figure'], w=params['w'], z=params['z'], depth=params['depth'],
                                  negative_depth=params['negative_depth'], k_max=params['k_max'],
                                  precision=params['precision'])
    from anonlab.runners.campaign_runner import CampaignRunner
    return "Campaign", CampaignRunner(*common, config_path=params['config_path'], seed=params['seed'],
                                      skip_closure=params['skip_closure'], suites=params['suites'],
                                      n_jobs=params['n_jobs'], precision=params['precision'])


def run(params):
    """Exit code: 0 when every requested check passed, 1 when one failed, 2 on configuration errors."""
    start_g = time.time()
    if params.get('precision'):
        mpmath.mp.prec = params['precision']
    try:
        phase, obj = make_runner(params)
        passed = runner(obj, phase, run_parallel=True)
    except USAGE_ERRORS as e:
        logging.error(str(e))
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    print("DONE!!!")
    print("Ran in " + str(time.time() - start_g))
    return EXIT_PASSED if passed else EXIT_FAILED


def main(argv=None):
    # NOTE: All keys must be small
    config_dict = parser_function(sys.argv if argv is None else argv)

    if not os.path.exists(config_dict['output_path']):
        os.makedirs(str(config_dict['output_path']))

    if config_dict['verbose']:
        stdout_handler = logging.StreamHandler(sys.stdout)
        stdout_handler.setLevel(logging.INFO)
        stdout_handler.setFormatter(formatter)
        logger.addHandler(stdout_handler)
    else:
        file_handler = logging.FileHandler(str(config_dict['output_path']) + '/logs.log')
        file_handler.setLevel(logging.INFO)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return run(config_dict)


if __name__ == '__main__':
    sys.exit(main())
