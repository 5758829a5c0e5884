import ast
import json
import logging
import configparser
from fractions import Fraction
from dataclasses import dataclass, fields, asdict, replace

from anonlab.scenarios.errors import CodecError
from anonlab.scenarios.rational import as_rat, format_rat
from anonlab.smooth.bigfloat import DEFAULT_PRECISION

MODES = ('ht', 't1', 't2')
RATIONAL_FIELDS = ('grid_start', 'grid_stop', 'grid_step')


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Every knob of a run. Rationals are stored exactly and serialized as "num/den" strings, so
    from_json(to_json(cfg)) == cfg.
    """
    seed: int = 42
    alphabet_size: int = 2
    catalog_size: int = 12
    grid_start: Fraction = Fraction(-5)
    grid_stop: Fraction = Fraction(5)
    grid_step: Fraction = Fraction(1, 100)
    mode: str = 't2'
    precision_bits: int = DEFAULT_PRECISION
    truncation_depth: int = 20
    k_max: int = 4
    n_truths: int = 200
    n_equivariance: int = 100
    n_extension: int = 500
    n_warp_pairs: int = 1000
    n_smooth: int = 20
    n_witness_points: int = 100
    warp_samples: int = 5
    equivariance_grid_size: int = 100
    grid_depth: int = 8
    skip_closure: bool = False
    n_jobs: int = 1

    def __post_init__(self):
        for name in RATIONAL_FIELDS:
            value = getattr(self, name)
            # .cfg decimals arrive as floats
            value = repr(value) if isinstance(value, float) else value
            try:
                object.__setattr__(self, name, as_rat(value))
            except CodecError as e:
                raise ConfigError(str(e))
        if self.mode not in MODES:
            raise ConfigError("Error: mode must be one of " + ", ".join(MODES))
        for f in fields(self):
            if f.type is int and f.name not in ('seed', 'n_jobs') and getattr(self, f.name) < 1:
                raise ConfigError("Error: " + f.name + " must be positive")
        if self.grid_step <= 0 or self.grid_start > self.grid_stop:
            raise ConfigError("Error: grid must be nonempty with a positive step")
        if self.truncation_depth < 2:
            raise ConfigError("Error: truncation_depth must be at least 2")
        if self.precision_bits < 64:
            raise ConfigError("Error: precision_bits must be at least 64")

    def grid(self):
        """start, start + step, ... up to and including stop."""
        count = int((self.grid_stop - self.grid_start) / self.grid_step)
        return [self.grid_start + k * self.grid_step for k in range(count + 1)]

    def to_dict(self):
        doc = asdict(self)
        for name in RATIONAL_FIELDS:
            doc[name] = format_rat(doc[name])
        return doc

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, doc):
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError("Error: unknown config keys " + ", ".join(sorted(unknown)))
        if 'grid' in doc:
            raise ConfigError("Error: give grid_start/grid_stop/grid_step, not grid")
        return cls(**doc)

    @classmethod
    def from_json(cls, text):
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise ConfigError("Error: invalid config JSON: " + str(e))

    @classmethod
    def from_cfg(cls, path):
        """INI file; sections are flattened and each value goes through ast.literal_eval."""
        config = configparser.ConfigParser()
        if not config.read(path):
            raise ConfigError("Error: cannot read config file " + str(path))
        doc = dict()
        for section in config.sections():
            for key, value in config.items(section):
                try:
                    doc[key] = ast.literal_eval(value)
                except (ValueError, SyntaxError):
                    doc[key] = value
        if 'grid' in doc:
            doc.update(zip(RATIONAL_FIELDS, parse_grid(doc.pop('grid'))))
        return cls.from_dict(doc)

    @classmethod
    def load(cls, path):
        if str(path).endswith('.cfg'):
            return cls.from_cfg(path)
        with open(path) as file:
            return cls.from_json(file.read())

    def with_overrides(self, **overrides):
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if overrides:
            logging.info("Config overrides: " + str(overrides))
        return replace(self, **overrides)


def parse_grid(text):
    """Parses "start:stop:step" with rational or decimal parts, e.g. "-5:5:0.1"."""
    parts = str(text).split(':')
    if len(parts) != 3:
        raise ConfigError("Error: grid must look like start:stop:step, got " + repr(text))
    try:
        return tuple(as_rat(p) for p in parts)
    except CodecError as e:
        raise ConfigError(str(e))


def make_grid(text):
    start, stop, step = parse_grid(text)
    return ExperimentConfig(grid_start=start, grid_stop=stop, grid_step=step).grid()
