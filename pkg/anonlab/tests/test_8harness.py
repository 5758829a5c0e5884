import os
import json
from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from anonlab.harness.campaign import SUITES, run_campaign, mutated
from anonlab.harness.config import ExperimentConfig, ConfigError, make_grid, parse_grid
from anonlab.harness.generators import gen_catalog, gen_truth, random_grid, alphabet
from anonlab.harness.generators import random_periodic, random_logperiodic, _cyclic_values
from anonlab.harness.plotdata import emit_plot_data
from anonlab.prediction.catalog import check_closure
from anonlab.scenarios.scenario import Tier, constant
from anonlab.smooth.warp import build_warp, verify_flatness

LOCAL_CFG = os.path.join(os.path.dirname(__file__), '..', '..', 'local.cfg')
FAST = ['warp_algebra', 'extension_lemmas', 'closure', 'negative_controls']


def small_config(**overrides):
    doc = dict(catalog_size=6, n_truths=2, n_extension=10, n_warp_pairs=20, n_equivariance=2,
               equivariance_grid_size=5, grid_start=-2, grid_stop=2, grid_step=Fraction(1, 2))
    doc.update(overrides)
    return ExperimentConfig(**doc)


def test_config_round_trip():
    cfg = small_config(seed=7, grid_step=Fraction(1, 3))
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg
    assert cfg.to_dict()['grid_step'] == '1/3'


def test_local_cfg():
    cfg = ExperimentConfig.load(LOCAL_CFG)
    assert cfg == ExperimentConfig()
    assert cfg.grid_step == Fraction(1, 100)
    assert len(cfg.grid()) == 1001


def test_load_json(tmp_path):
    path = tmp_path / 'cfg.json'
    path.write_text(json.dumps({'seed': 3, 'grid_step': '1/4'}))
    cfg = ExperimentConfig.load(str(path))
    assert cfg.seed == 3 and cfg.grid_step == Fraction(1, 4)


@pytest.mark.parametrize(
    "doc",
    [
        {'colour': 'red'},
        {'grid': '-1:1:1/2'},
        {'mode': 't3'},
        {'grid_step': 0},
        {'truncation_depth': 1},
        {'precision_bits': 32},
    ],
)
def test_invalid_config(doc):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(doc)


def test_overrides():
    cfg = ExperimentConfig().with_overrides(seed=5, n_jobs=None)
    assert cfg.seed == 5 and cfg.n_jobs == 1


def test_make_grid():
    assert make_grid('-1:1:1/2') == [-1, Fraction(-1, 2), 0, Fraction(1, 2), 1]
    assert parse_grid('0:1:0.25')[2] == Fraction(1, 4)
    with pytest.raises(ConfigError):
        parse_grid('0:1')


@pytest.mark.parametrize("seed", [0, 1, 42])
def test_gen_catalog_is_closed(seed):
    catalog = gen_catalog(small_config(seed=seed))
    assert list(catalog.tiers) == sorted(catalog.tiers)
    assert constant('A') in catalog.entries and constant('B') in catalog.entries
    assert check_closure(catalog).passed


@pytest.mark.parametrize("count", [2, 4, 6])
def test_cyclic_values_two_symbols(count):
    values = _cyclic_values(np.random.default_rng(count), alphabet(2), count)
    assert len(values) == count
    assert all(a != b for a, b in zip(values, values[1:] + values[:1]))


@pytest.mark.parametrize("count", [3, 5])
def test_cyclic_values_odd_cycle_over_two_symbols(count):
    with pytest.raises(ValueError):
        _cyclic_values(np.random.default_rng(0), alphabet(2), count)
    values = _cyclic_values(np.random.default_rng(0), alphabet(3), count)
    assert all(a != b for a, b in zip(values, values[1:] + values[:1]))


def test_two_symbol_generators_finish():
    for seed in range(40):
        rng = np.random.default_rng([seed, 0])
        assert len(random_periodic(rng, alphabet(2)).kernel.values) % 2 == 0
        random_logperiodic(rng, alphabet(2))
    assert len(gen_catalog(ExperimentConfig())) > 2


def test_gen_catalog_single_symbol():
    catalog = gen_catalog(small_config(alphabet_size=1, catalog_size=1))
    assert catalog.entries == (constant('A'),)
    assert catalog.tiers == (Tier.PERIODIC,)


def test_gen_catalog_is_seeded():
    cfg = small_config(seed=11)
    assert gen_catalog(cfg) == gen_catalog(cfg)


def test_gen_truth_modes():
    rng = np.random.default_rng(3)
    catalog = gen_catalog(small_config(seed=3))
    truth, index, t = gen_truth(catalog, rng, 'ht')
    assert truth == catalog.entries[index] and t is None
    _, _, t1 = gen_truth(catalog, rng, 't1')
    assert t1.slope == 1


def test_random_grid():
    grid = random_grid(np.random.default_rng(0), 20)
    assert grid == sorted(set(grid)) and len(grid) == 20
    assert all(-5 <= x <= 5 and (x * 8).denominator == 1 for x in grid)
    assert alphabet(28)[-2:] == ['S26', 'S27']


def test_emit_transition(tmp_path):
    path = tmp_path / 'transition.csv'
    emit_plot_data('transition', str(path), resolution=20, figure=True)
    df = pd.read_csv(path)
    assert len(df) == 21
    assert tuple(df.iloc[0]) == (0.0, 0.0)
    assert tuple(df.iloc[-1]) == (1.0, 1.0)
    assert (tmp_path / 'transition.png').exists()


def test_emit_warp_and_trend(tmp_path):
    spec = build_warp(0, 0, 6)
    warp = emit_plot_data('warp', str(tmp_path / 'warp.csv'), spec=spec, resolution=10)
    assert len(warp) == 12
    report = verify_flatness(spec, 2, samples=8, grid_depth=4)
    trend = emit_plot_data('trend', str(tmp_path / 'trend.csv'), report=report)
    assert sorted(set(trend['k'])) == [1, 2]
    with pytest.raises(ValueError):
        emit_plot_data('warp', str(tmp_path / 'x.csv'))
    with pytest.raises(ValueError):
        emit_plot_data('histogram', str(tmp_path / 'x.csv'))


def test_campaign_is_deterministic(tmp_path):
    cfg = small_config(seed=5)
    first = run_campaign(cfg, FAST)
    second = run_campaign(cfg, FAST)
    assert first.to_json() == second.to_json()
    assert [s.name for s in first.suites] == FAST
    assert first.passed
    path = str(tmp_path / 'campaign.json')
    first.save(path)
    assert json.load(open(path))['passed'] is True
    assert set(json.load(open(str(tmp_path / 'campaign_timing.json')))) == set(FAST)


def test_campaign_parallel_matches_serial():
    cfg = small_config(seed=9)
    serial = run_campaign(cfg, ['warp_algebra', 'closure'])
    parallel = run_campaign(cfg.with_overrides(n_jobs=2), ['warp_algebra', 'closure'])
    assert serial.to_dict()['suites'] == parallel.to_dict()['suites']


def test_mutated_catalogs_are_open():
    cfg = mutated(small_config(seed=1))
    assert cfg.skip_closure
    assert constant('A') not in gen_catalog(cfg).entries
    assert 'negative_controls' in SUITES
