import os
import json
import runpy
import configparser
from fractions import Fraction

import pytest

import run
import anonlab
from anonlab.prediction.catalog import Catalog
from anonlab.prediction.checks import alternation, unit_step
from anonlab.scenarios.codec import save_json, scenario_to_dict
from anonlab.scenarios.errors import PreconditionError
from anonlab.scenarios.scenario import constant
from anonlab.utils.parser import parser_function


def params_for(tmp_path, *args):
    return parser_function(['run.py'] + list(args) + ['--out-path', str(tmp_path), '--exp-name', 'cli'])


def output(tmp_path, name):
    return os.path.join(str(tmp_path), 'cli', name)


def write_inputs(tmp_path, entries, truth):
    catalog_path = str(tmp_path / 'catalog.json')
    truth_path = str(tmp_path / 'truth.json')
    save_json(Catalog.from_entries(entries).to_dict(), catalog_path)
    save_json(scenario_to_dict(truth), truth_path)
    return catalog_path, truth_path


def test_parser_defaults():
    params = parser_function(['run.py', 'simulate', '--catalog', 'c.json', '--truth', 't.json', '--warp', '2,3'])
    assert params['command'] == 'simulate'
    assert params['mode'] == 't2' and params['grid'] == '-5:5:1/10'
    assert params['warp'] == (Fraction(2), Fraction(3))
    assert params['output_path'] == 'output' and params['experiment_name'] == 'anonlab'
    witness = parser_function(['run.py', 'witness', '--x=-1/2,-0.75'])
    assert witness['xs'] == [Fraction(-1, 2), Fraction(-3, 4)] and witness['depth'] == 20


@pytest.mark.parametrize(
    "argv",
    [
        ['run.py'],
        ['run.py', 'simulate', '--truth', 't.json'],
        ['run.py', 'simulate', '--catalog', 'c', '--truth', 't', '--warp', '2'],
        ['run.py', 'catalog'],
        ['run.py', 'witness', '--x', '1.5e'],
        ['run.py', 'plot', '--source', 'histogram'],
    ],
)
def test_parser_rejects(argv):
    with pytest.raises(SystemExit):
        parser_function(argv)


def test_simulate(tmp_path):
    catalog_path, truth_path = write_inputs(tmp_path, [constant('A'), alternation(), unit_step()], unit_step())
    params = params_for(tmp_path, 'simulate', '--catalog', catalog_path, '--truth', truth_path,
                        '--grid=-2:1:1/2', '--warp', '2,3')
    assert run.run(params) == run.EXIT_PASSED
    summary = json.load(open(output(tmp_path, 'simulation.json')))
    assert summary['errors'] == ['0/1'] and summary['equivariance']['passed']
    with open(output(tmp_path, 'simulation.csv')) as file:
        assert file.readline().strip() == 'agent,guess,truth,correct,witnessIndex'


def test_simulate_open_catalog(tmp_path):
    catalog_path, truth_path = write_inputs(tmp_path, [alternation(), unit_step()], unit_step())
    args = ['simulate', '--catalog', catalog_path, '--truth', truth_path, '--grid=-1:1:1/2']
    assert run.run(params_for(tmp_path, *args)) == run.EXIT_USAGE
    assert run.run(params_for(tmp_path, *args, '--mode', 'ht')) == run.EXIT_PASSED


def test_precondition_error_is_a_usage_error(tmp_path, monkeypatch):
    def failing_runner(params):
        raise PreconditionError("Error: scenario is not past-periodic")
    monkeypatch.setattr(run, 'make_runner', failing_runner)
    assert run.run(params_for(tmp_path, 'catalog', 'check', '--catalog', 'c.json')) == run.EXIT_USAGE


def test_simulate_missing_file(tmp_path):
    params = params_for(tmp_path, 'simulate', '--catalog', str(tmp_path / 'none.json'),
                        '--truth', str(tmp_path / 'none.json'))
    assert run.run(params) == run.EXIT_USAGE


def test_catalog_gen_and_check(tmp_path):
    assert run.run(params_for(tmp_path, 'catalog', 'gen', '--seed', '3', '--catalog-size', '6')) == run.EXIT_PASSED
    catalog_path = output(tmp_path, 'catalog.json')
    assert len(json.load(open(catalog_path))['entries']) <= 6
    assert run.run(params_for(tmp_path, 'catalog', 'check', '--catalog', catalog_path)) == run.EXIT_PASSED
    assert json.load(open(output(tmp_path, 'closure.json')))['passed']


def test_catalog_check_fails(tmp_path):
    catalog_path, _ = write_inputs(tmp_path, [alternation(), unit_step()], unit_step())
    assert run.run(params_for(tmp_path, 'catalog', 'check', '--catalog', catalog_path)) == run.EXIT_FAILED


def test_verify_smooth(tmp_path):
    params = params_for(tmp_path, 'verify-smooth', '--depth', '6', '--k-max', '1', '--samples', '8',
                        '--grid-depth', '4')
    assert run.run(params) == run.EXIT_PASSED
    assert json.load(open(output(tmp_path, 'flatness.json')))['passed']
    assert os.path.exists(output(tmp_path, 'warp_samples.csv'))


def test_verify_smooth_bad_depth(tmp_path):
    assert run.run(params_for(tmp_path, 'verify-smooth', '--depth', '1')) == run.EXIT_USAGE


def test_witness(tmp_path):
    assert run.run(params_for(tmp_path, 'witness', '--x=-1/2,-3/4', '--depth', '8')) == run.EXIT_PASSED
    doc = json.load(open(output(tmp_path, 'witnesses.json')))
    assert [row['verified'] for row in doc['witnesses']] == [True, True]
    assert run.run(params_for(tmp_path, 'witness', '--x', '1', '--depth', '8')) == run.EXIT_FAILED


def test_plot(tmp_path):
    assert run.run(params_for(tmp_path, 'plot', '--source', 'transition', '--resolution', '10')) == run.EXIT_PASSED
    with open(output(tmp_path, 'transition.csv')) as file:
        assert len(file.readlines()) == 12


def test_campaign(tmp_path):
    config_path = str(tmp_path / 'cfg.json')
    with open(config_path, 'w') as file:
        json.dump({'n_warp_pairs': 20, 'catalog_size': 6}, file)
    params = params_for(tmp_path, 'campaign', 'run', '--config', config_path,
                        '--suites', 'warp_algebra,negative_controls')
    assert run.run(params) == run.EXIT_PASSED
    report = json.load(open(output(tmp_path, 'campaign_report.json')))
    assert [suite['name'] for suite in report['suites']] == ['warp_algebra', 'negative_controls']
    bad = params_for(tmp_path, 'campaign', 'run', '--suites', 'warp_algebra,fuzzing')
    assert run.run(bad) == run.EXIT_USAGE


def test_setup_cfg_lists_requirements():
    root = os.path.join(os.path.dirname(__file__), '..', '..')
    setup = configparser.ConfigParser()
    setup.read(os.path.join(root, 'setup.cfg'))
    required = setup['options']['install_requires'].split()
    with open(os.path.join(root, 'requirements.txt')) as f:
        listed = f.read().split()
    assert {'mpmath', 'numpy', 'pandas', 'joblib', 'tqdm', 'matplotlib'} <= set(required)
    assert set(required) <= set(listed)
    assert setup['tool:pytest']['testpaths'] == 'anonlab/tests'


def test_docs_match_the_package():
    docs = os.path.join(os.path.dirname(__file__), '..', '..', 'docs', 'source')
    conf = runpy.run_path(os.path.join(docs, 'conf.py'))
    assert conf['release'] == anonlab.__version__ and conf['project'] == 'anonlab'
    with open(os.path.join(docs, 'usage.md')) as f:
        usage = f.read()
    for command in ('simulate', 'catalog gen', 'catalog check', 'verify-smooth', 'witness', 'plot', 'campaign run'):
        assert 'python run.py ' + command in usage
    assert '`strictly_increasing`' in usage and '`monotone_trace`' in usage
