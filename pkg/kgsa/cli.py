"""
    cli
    ~~~

    The `kgsa` command line interface.

    Every subcommand is a thin wrapper around run_analysis with a
    restricted report, except `crossval` which only tunes & the
    `benchmark` generator. Flags override a JSON config given
    with --config. Errors terminate with the exit code of their
    group: 1 configuration, 2 data & 3 numerical.
"""

import argparse
import json
import logging
import sys

from kgsa import signals
from kgsa.analysis import load_data, output_kernel_for, run_analysis
from kgsa.benchmarks import BENCHMARKS, generate_benchmark
from kgsa.deserializers import load_config
from kgsa.exceptions import InvalidConfig, KgsaException
from kgsa.model_selection import tune_cme, tune_cme_replicates
from kgsa.models.analysis import (ESTIMATORS, FORMATS, TUNE_SCOPES,
                                  Model as AnalysisConfig)
from kgsa.models.cv import JOINT, LAMBDA_ONLY
from kgsa.serializers import JsonSerializer, dataset_csv, emit_report
from kgsa.utils import subset_helpers


LOG = logging.getLogger('kgsa.cli')

COMMAND_TARGETS = {
    'estimate': ['indices'],
    'ols': ['ols'],
    'shapley': ['shapley'],
    'anova': ['anova'],
    'isf': ['isf'],
}


"""
    Signal receivers turning progress into log records
    ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
"""


def log_estimate(sender, subset=None, estimate=None, **kwargs):
    """ post_estimate receiver """

    LOG.debug('%s beta%s = %.6f (seed %s)', sender,
              subset_helpers.fmt(subset), estimate.value, estimate.seed)


def log_fit(sender, jitter=None, **kwargs):
    """ post_fit receiver, only jittered fits are worth a record """

    if jitter:
        LOG.debug('CME fit of %s needed a jitter of %g',
                  subset_helpers.fmt(sender), jitter)


def log_cv(sender, lam=None, loss=None, **kwargs):
    """ cv_evaluated receiver """

    LOG.debug('CV loss of %s at lambda %.3g: %.6g',
              subset_helpers.fmt(sender), lam, loss)


def log_tune(sender, result=None, **kwargs):
    """ post_tune receiver """

    LOG.info('Tuned %s in %d evaluations', subset_helpers.fmt(sender),
             result.evaluations)


def log_replicate(sender, seed=None, **kwargs):
    """ replicate_started receiver """

    LOG.info('Replicate %d drawn with seed %s', sender, seed)


def log_replicate_done(sender, seed=None, **kwargs):
    """ replicate_finished receiver """

    LOG.debug('Replicate %d with seed %s finished', sender, seed)


def log_emitted(sender, paths=None, **kwargs):
    """ report_emitted receiver """

    for path in paths or []:
        LOG.info('Wrote %s report file %s', sender, path)


def connect_receivers():
    """ Hook the logging receivers up to the library signals """

    signals.post_fit.connect(log_fit)
    signals.post_estimate.connect(log_estimate)
    signals.cv_evaluated.connect(log_cv)
    signals.post_tune.connect(log_tune)
    signals.replicate_started.connect(log_replicate)
    signals.replicate_finished.connect(log_replicate_done)
    signals.report_emitted.connect(log_emitted)


"""
    Argument parsing
    ~~~~~~~~~~~~~~~~
"""


def _common(parser):
    """ Flags shared by every analysis subcommand

    Every default is None so only flags actually given override
    the config file.
    """

    source = parser.add_argument_group('data source')
    source.add_argument('--config', help='JSON analysis config file')
    source.add_argument('--data', help='CSV file with x* & y* columns')
    source.add_argument('--benchmark', choices=BENCHMARKS,
                        help='generate the data from a benchmark')
    source.add_argument('--n', type=int, help='benchmark sample count')
    source.add_argument('--seed', type=int, help='master seed')
    source.add_argument('--independent', action='store_const', const=True,
                        help='vouch that the inputs are independent')

    kernels = parser.add_argument_group('kernels & estimator')
    kernels.add_argument('--estimator', choices=ESTIMATORS)
    kernels.add_argument('--output-kernel', dest='output_kernel',
                         choices=['rbf', 'linear'])
    kernels.add_argument('--bandwidth-rule', dest='bandwidth_rule',
                         choices=['explicit', 'median', 'spread'])
    kernels.add_argument('--bandwidth', type=float,
                         help='explicit output kernel bandwidth')
    kernels.add_argument('--input-kernel', dest='input_kernel',
                         choices=['rbf', 'mahalanobis'])
    kernels.add_argument('--input-bandwidth', dest='input_bandwidth',
                         type=float)
    kernels.add_argument('--n-a', dest='n_a', type=int,
                         help='NN-S sub-sample size')

    reg = kernels.add_mutually_exclusive_group()
    reg.add_argument('--lambda', dest='lam', type=float,
                     help='CME regularizer')
    reg.add_argument('--tune', action='store_const', const=True,
                     help='tune the CME hyperparameters by CV')

    kernels.add_argument('--tune-scope', dest='tune_scope',
                         choices=TUNE_SCOPES)
    kernels.add_argument('--folds', type=int, help='CV folds')
    kernels.add_argument('--cv-mode', dest='cv_mode',
                         choices=[JOINT, LAMBDA_ONLY])

    run = parser.add_argument_group('run & output')
    run.add_argument('--replicates', type=int)
    run.add_argument('--threads', type=int)
    run.add_argument('--clamp', action='store_const', const=True,
                     help='clamp estimates into [0, 1]')
    run.add_argument('--out', help='output directory')
    run.add_argument('--format', choices=FORMATS)

    parser.add_argument('-v', '--verbose', action='count', default=0)
    parser.add_argument('--quiet', action='store_true')


def _universe(parser):

    parser.add_argument('--universe', help='labels like (1,2,3), '
                                           'defaults to every input')
    parser.add_argument('--screen', type=float,
                        help='first order screening threshold')


class Parser(argparse.ArgumentParser):
    """ argparse parser whose usage errors are configuration errors

    argparse exits with 2 on a bad flag, we exit with the exit
    code of InvalidConfig instead.
    """

    def error(self, message):

        self.print_usage(sys.stderr)
        self.exit(InvalidConfig.EXIT_CODE, '%s: error: %s\n'
                  % (self.prog, message))


def build_parser():
    """ The argparse parser of every subcommand """

    parser = Parser(
        prog='kgsa', description='Kernel-embedding global sensitivity '
                                 'analysis from a single data set')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    cmd = commands.add_parser('estimate', help='beta indices of subsets')
    _common(cmd)
    cmd.add_argument('--subsets', nargs='+', help='subsets like (1,3)')
    cmd.add_argument('--order', type=int,
                     help='also every subset up to this size')
    cmd.add_argument('--universe', help='inputs --order ranges over')

    cmd = commands.add_parser('ols', help='optimal learning sequence')
    _common(cmd)
    _universe(cmd)
    cmd.add_argument('--tie-tol', dest='tie_tol', type=float)

    cmd = commands.add_parser('shapley', help='Shapley effects')
    _common(cmd)
    _universe(cmd)

    cmd = commands.add_parser('anova', help='kernel ANOVA effects, needs '
                                            '--independent')
    _common(cmd)
    _universe(cmd)

    cmd = commands.add_parser('isf', help='ISF profiles of 1 or 2 inputs')
    _common(cmd)
    cmd.add_argument('--subsets', nargs='+', required=True)
    cmd.add_argument('--points', type=int, help='grid points per axis')

    cmd = commands.add_parser('crossval', help='tune CME hyperparameters')
    _common(cmd)
    cmd.add_argument('--subsets', nargs='+', required=True)
    cmd.add_argument('--subsample', type=int, default=800,
                     help='rows per replicate of the shuffled protocol')

    cmd = commands.add_parser('benchmark', help='write a benchmark CSV')
    cmd.add_argument('--benchmark', choices=BENCHMARKS, required=True)
    cmd.add_argument('--n', type=int, default=1000)
    cmd.add_argument('--seed', type=int, default=0)
    cmd.add_argument('--out', help='CSV file, defaults to stdout')
    cmd.add_argument('-v', '--verbose', action='count', default=0)
    cmd.add_argument('--quiet', action='store_true')

    return parser


def setup_logging(args):
    """ Root log level from -v & --quiet """

    if args.quiet:
        level = logging.ERROR
    elif args.verbose >= 2:
        level = logging.DEBUG
    elif args.verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING

    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(asctime)s %(levelname)s %(name)s: '
                               '%(message)s')


"""
    Subcommands
    ~~~~~~~~~~~
"""


OVERRIDES = ('data', 'benchmark', 'n', 'seed', 'independent', 'estimator',
             'output_kernel', 'bandwidth_rule', 'bandwidth', 'input_kernel',
             'input_bandwidth', 'n_a', 'tune', 'tune_scope', 'replicates',
             'threads', 'clamp', 'out', 'format', 'order', 'universe',
             'screen', 'tie_tol')


def build_config(args):
    """ AnalysisConfig from the config file & the flags

    :return: checked AnalysisConfig
    :raise: InvalidConfig & the other configuration errors
    """

    cfg = load_config(args.config) if args.config else AnalysisConfig()
    overrides = {key: getattr(args, key, None) for key in OVERRIDES}
    overrides['lambda'] = args.lam

    cv_cfg = cfg.cv.to_primitive()
    if args.folds is not None:
        cv_cfg['folds'] = args.folds
    if args.cv_mode is not None:
        cv_cfg['mode'] = args.cv_mode
    overrides['cv'] = cv_cfg

    if args.command in COMMAND_TARGETS:
        overrides['targets'] = COMMAND_TARGETS[args.command]

    if args.command == 'isf':
        overrides['isf_subsets'] = args.subsets
        overrides['isf_points'] = args.points
    elif getattr(args, 'subsets', None):
        overrides['subsets'] = args.subsets

    if args.command == 'crossval':
        overrides['tune'] = True

    cfg = cfg.merge(overrides)
    cfg.check()

    if args.command == 'isf':
        for mask in cfg.isf_subsets:
            if subset_helpers.popcount(mask) > 2:
                raise InvalidConfig('isf_subsets', detail='ISF profiles are '
                                    'drawn for subsets of 1 or 2 inputs, '
                                    'got %s.' % subset_helpers.fmt(mask))
    return cfg


def write_text(text, path=None):
    """ Write to a file or stdout """

    if not path:
        sys.stdout.write(text)
        return

    try:
        with open(path, 'w') as handle:
            handle.write(text)
    except (IOError, OSError) as exc:
        raise InvalidConfig('out', detail='Unable to write "%s": %s'
                            % (path, exc))


def cmd_analysis(args):
    """ estimate, ols, shapley, anova & isf """

    cfg = build_config(args)
    report = run_analysis(cfg)

    if cfg.out:
        emit_report(report, cfg.format, cfg.out)
    else:
        write_text(JsonSerializer.dumps(report))


def cmd_crossval(args):
    """ Tune every subset on the first data draw

    With --replicates above 1 the shuffled sub-sample protocol
    is run & its geometric mean aggregate reported.
    """

    cfg = build_config(args)
    data = load_data(cfg)
    output_kernel = output_kernel_for(cfg, data)
    ret = []

    for mask in cfg.subsets:
        if cfg.replicates > 1:
            aggregate, results = tune_cme_replicates(
                data, mask, output_kernel, cfg=cfg.cv,
                family=cfg.input_kernel, replicates=cfg.replicates,
                subsample=args.subsample, seed=cfg.seed)
        else:
            aggregate = tune_cme(data, mask, output_kernel, cfg=cfg.cv,
                                 family=cfg.input_kernel,
                                 bandwidth=cfg.input_bandwidth)
            results = [aggregate]

        ret.append({
            'aggregate': aggregate.to_dict(),
            'replicates': [res.to_dict() for res in results],
        })

    text = json.dumps({'output_kernel': output_kernel.to_dict(),
                       'results': ret}, sort_keys=True, indent=2) + '\n'

    if cfg.out:
        JsonSerializer(cfg.out).write('crossval.json', text)
    else:
        write_text(text)


def cmd_benchmark(args):
    """ Draw a benchmark data set & write it as CSV """

    if args.n < 2:
        raise InvalidConfig('n', detail='At least 2 samples are required.')

    data = generate_benchmark(args.benchmark, args.n, args.seed)
    write_text(dataset_csv(data), args.out)


COMMANDS = {
    'anova': cmd_analysis,
    'benchmark': cmd_benchmark,
    'crossval': cmd_crossval,
    'estimate': cmd_analysis,
    'isf': cmd_analysis,
    'ols': cmd_analysis,
    'shapley': cmd_analysis,
}


def main(argv=None):
    """ Entry point of the kgsa console script

    :return: int exit code
    """

    args = build_parser().parse_args(argv)
    setup_logging(args)
    connect_receivers()

    try:
        COMMANDS[args.command](args)
    except KgsaException as exc:
        LOG.error('%s', exc)
        return exc.exit_code
    return 0


if __name__ == '__main__':
    sys.exit(main())
