import argparse

from anonlab.scenarios.errors import CodecError
from anonlab.scenarios.rational import as_rat


def str2bool(v):
    if isinstance(v, bool):
        return v
    if v.lower() in ('yes', 'true', 't', 'y', '1'):
        return True
    elif v.lower() in ('no', 'false', 'f', 'n', '0'):
        return False
    else:
        raise argparse.ArgumentTypeError('boolean value expected.')


def rational(v):
    try:
        return as_rat(v)
    except CodecError as e:
        raise argparse.ArgumentTypeError(str(e))


def comma_sep_rationals(v):
    """'1/2,-3,0.25' -> [1/2, -3, 1/4]"""
    return [rational(part) for part in v.split(',') if part.strip()]


def warp_pair(v):
    """'a,c' -> (a, c) for the warp x -> a*x + c"""
    values = comma_sep_rationals(v)
    if len(values) != 2:
        raise argparse.ArgumentTypeError('warp must be given as "slope,offset"')
    return tuple(values)


def general_parser():
    """Flags shared by every subcommand."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--out-path', dest='output_path', type=str, default='output',
                        help='path to output directory')
    parser.add_argument('--exp-name', dest='experiment_name', type=str, default='anonlab',
                        help='name of experiment output folder (no spaces)')
    parser.add_argument('--verbose', dest='verbose', type=str2bool, nargs='?', const=True, default=False,
                        help='give output to command line')
    parser.add_argument('--precision', dest='precision', type=int, default=None,
                        help='working precision in bits for BigFloat computations')
    return parser


def add_smooth_args(parser, depth=20):
    parser.add_argument('--w', dest='w', type=rational, default=0, help='flat point of the warp')
    parser.add_argument('--z', dest='z', type=rational, default=0, help='value of the warp at w')
    parser.add_argument('--depth', dest='depth', type=int, default=depth, help='number of anchors N below w')
    parser.add_argument('--negative-depth', dest='negative_depth', type=int, default=2,
                        help='number of unit-shifted anchors below A_0')


def update_dict_from_parser(argv, parser, params_dict=None):
    if not params_dict:
        params_dict = dict()
    args = parser.parse_args(argv[1:])
    params_dict.update(vars(args))
    return params_dict
