import json

from anonlab.scenarios.errors import CodecError, ScenarioError
from anonlab.scenarios.pattern import CyclicPattern
from anonlab.scenarios.rational import as_rat, format_rat
from anonlab.scenarios.scenario import StepScenario, PeriodicStepScenario, LogPeriodicScenario, PastView
from anonlab.warps.timewarp import AffineWarp, WarpError, as_affine


def _pattern_to_dict(pattern):
    return {'jumps': [format_rat(j) for j in pattern.jumps], 'values': list(pattern.values)}


def _pattern_from_dict(doc):
    return CyclicPattern(tuple(as_rat(j) for j in doc.get('jumps', [])), tuple(doc['values']))


def scenario_to_dict(f):
    if isinstance(f, StepScenario):
        return {'kind': 'step', 'breakpoints': [format_rat(b) for b in f.breakpoints], 'values': list(f.values)}
    if isinstance(f, PeriodicStepScenario):
        doc = {'kind': 'periodic', 'period': format_rat(f.period)}
        doc.update(_pattern_to_dict(f.kernel))
        return doc
    if isinstance(f, LogPeriodicScenario):
        return {'kind': 'logperiodic', 'fixed_point': format_rat(f.fixed_point), 'ratio': format_rat(f.ratio),
                'plus': _pattern_to_dict(f.plus), 'minus': _pattern_to_dict(f.minus), 'at_p': f.value_at_p}
    raise CodecError("Error: cannot encode " + repr(f))


def scenario_from_dict(doc):
    try:
        kind = doc['kind']
        if kind == 'step':
            return StepScenario(tuple(as_rat(b) for b in doc.get('breakpoints', [])), tuple(doc['values']))
        if kind == 'periodic':
            return PeriodicStepScenario(as_rat(doc['period']), _pattern_from_dict(doc))
        if kind == 'logperiodic':
            return LogPeriodicScenario(as_rat(doc['fixed_point']), as_rat(doc['ratio']),
                                       _pattern_from_dict(doc['plus']), _pattern_from_dict(doc['minus']),
                                       doc['at_p'])
    except (KeyError, TypeError, ScenarioError) as e:
        raise CodecError("Error: bad scenario document: " + str(e))
    raise CodecError("Error: unknown scenario kind " + repr(doc.get('kind')))


def warp_to_dict(t):
    t = as_affine(t)
    return {'a': format_rat(t.slope), 'c': format_rat(t.offset)}


def warp_from_dict(doc):
    try:
        return AffineWarp(as_rat(doc['a']), as_rat(doc.get('c', '0')))
    except (KeyError, TypeError, WarpError) as e:
        raise CodecError("Error: bad warp document: " + str(e))


def past_view_to_dict(pv):
    return {'base': scenario_to_dict(pv.base), 'origin': format_rat(pv.origin)}


def past_view_from_dict(doc):
    return PastView(scenario_from_dict(doc['base']), as_rat(doc.get('origin', '0')))


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2)


def save_json(doc, path):
    with open(path, 'w') as file:
        file.write(dumps(doc) + '\n')


def load_json(path):
    try:
        with open(path) as file:
            return json.load(file)
    except json.JSONDecodeError as e:
        raise CodecError("Error: " + str(path) + " is not valid JSON: " + str(e))


def emit_scenario(f):
    return dumps(scenario_to_dict(f))


def parse_scenario(text):
    try:
        return scenario_from_dict(json.loads(text))
    except json.JSONDecodeError as e:
        raise CodecError("Error: invalid scenario JSON: " + str(e))
