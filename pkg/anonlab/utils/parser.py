import argparse

from anonlab.harness.plotdata import SOURCES
from anonlab.utils.parser_helpers import str2bool, rational, comma_sep_rationals, warp_pair
from anonlab.utils.parser_helpers import general_parser, add_smooth_args, update_dict_from_parser


def parser_function(argv):
    general = general_parser()
    parser = argparse.ArgumentParser(description="anonlab: simulation and verification of anonymous "
                                                 "predictors over exact scenarios",
                                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    commands = parser.add_subparsers(dest='command', required=True)

    simulate = commands.add_parser('simulate', parents=[general], help='error set of one truth on a grid')
    simulate.add_argument('--catalog', dest='catalog_path', type=str, required=True, help='catalog JSON')
    simulate.add_argument('--truth', dest='truth_path', type=str, required=True, help='truth scenario JSON')
    simulate.add_argument('--grid', dest='grid', type=str, default='-5:5:1/10', help='start:stop:step')
    simulate.add_argument('--mode', dest='mode', choices=['ht', 't1', 't2'], default='t2')
    simulate.add_argument('--warp', dest='warp', type=warp_pair, default=None,
                          help='also check equivariance under x -> a*x + c, given as "a,c"')
    simulate.add_argument('--n-jobs', dest='n_jobs', type=int, default=1)

    catalog = commands.add_parser('catalog', help='generate or check catalogs')
    catalog_commands = catalog.add_subparsers(dest='catalog_command', required=True)
    gen = catalog_commands.add_parser('gen', parents=[general], help='generate a closed catalog')
    gen.add_argument('--config', dest='config_path', type=str, default=None, help='JSON or .cfg experiment config')
    gen.add_argument('--seed', dest='seed', type=int, default=None)
    gen.add_argument('--alphabet-size', dest='alphabet_size', type=int, default=None)
    gen.add_argument('--catalog-size', dest='catalog_size', type=int, default=None)
    gen.add_argument('--skip-closure', dest='skip_closure', type=str2bool, nargs='?', const=True, default=None)
    check = catalog_commands.add_parser('check', parents=[general], help='closure check of a catalog')
    check.add_argument('--catalog', dest='catalog_path', type=str, required=True, help='catalog JSON')
    check.add_argument('--cuts', dest='cuts', type=comma_sep_rationals, default=None,
                       help='comma separated cuts (default: around every visible jump)')

    smooth = commands.add_parser('verify-smooth', parents=[general], help='flatness report of the smooth warp')
    add_smooth_args(smooth)
    smooth.add_argument('--k-max', dest='k_max', type=int, default=4)
    smooth.add_argument('--samples', dest='samples', type=int, default=64)
    smooth.add_argument('--grid-depth', dest='grid_depth', type=int, default=8)
    smooth.add_argument('--epsilon', dest='epsilon', type=rational, default=None,
                        help='bound for the last first-derivative estimates at w')
    smooth.add_argument('--n-jobs', dest='n_jobs', type=int, default=1)

    witness = commands.add_parser('witness', parents=[general], help='F-path witnesses for f(t(x)) = f(x)')
    add_smooth_args(witness)
    witness.add_argument('--x', dest='xs', type=comma_sep_rationals, required=True,
                         help='comma separated agents below w')

    plot = commands.add_parser('plot', parents=[general], help='plot data as CSV (and PNG)')
    plot.add_argument('--source', dest='source', choices=list(SOURCES), default='transition')
    plot.add_argument('--resolution', dest='resolution', type=int, default=1000)
    plot.add_argument('--figure', dest='figure', type=str2bool, nargs='?', const=True, default=False)
    add_smooth_args(plot, depth=12)
    plot.add_argument('--k-max', dest='k_max', type=int, default=4)

    campaign = commands.add_parser('campaign', help='seeded property campaigns')
    campaign_commands = campaign.add_subparsers(dest='campaign_command', required=True)
    run = campaign_commands.add_parser('run', parents=[general], help='run every suite')
    run.add_argument('--config', dest='config_path', type=str, default=None, help='JSON or .cfg experiment config')
    run.add_argument('--seed', dest='seed', type=int, default=None)
    run.add_argument('--skip-closure', dest='skip_closure', type=str2bool, nargs='?', const=True, default=None)
    run.add_argument('--suites', dest='suites', type=str, default=None, help='comma separated subset of suites')
    run.add_argument('--n-jobs', dest='n_jobs', type=int, default=None)

    return update_dict_from_parser(argv, parser)
