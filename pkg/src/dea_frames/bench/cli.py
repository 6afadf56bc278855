import dataclasses
import logging
import sys

import prometheus_client

from dea_frames.datagen import GenSpec
from dea_frames.lib import metrics as run_metrics
from dea_frames.lib.args import get_arg_parser, parse_dimensions, parse_float_list, parse_int_list
from dea_frames.lib.exceptions import ContractError, DataError
from dea_frames.lib.labels import Procedure
from dea_frames.lib.tolerances import Tolerances
from dea_frames.lp import Algorithm, SimplexSolver, SolverError
from dea_frames.oracle import classify_all
from dea_frames.preprocess import OrderKind

from . import report, sweep
from .dataset_io import manifest_path, read_dataset, read_manifest
from .records import append_record
from .runs import RunOptions, execute_run, generate_files


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3

_USAGE = '''usage: dea-bench <command> [options]

Commands:
  gen     Generate a synthetic dataset with manifest
  run     Run a procedure on a dataset and append a record to a results file
  report  Turn a results file into CSV tables and plot data
  oracle  Classify every DMU with brute-force LPs
  score   Run Phase 1 and Phase 2 and write the scores
  sweep   Run both procedures over a grid of generated datasets

Run "dea-bench <command> --help" for the options of a command.'''


def main(argv=None):

    if argv is None:
        argv = sys.argv[1:]

    logging.basicConfig(format='[%(levelname)s] %(message)s')

    if not argv or argv[0] in ('-h', '--help'):
        print(_USAGE, file=sys.stdout if argv else sys.stderr)
        return EXIT_OK if argv else EXIT_USAGE

    command, command_argv = argv[0], argv[1:]
    if command not in _COMMANDS:
        logging.error('Unknown command "%s"', command)
        print(_USAGE, file=sys.stderr)
        return EXIT_USAGE

    make_parser, handler = _COMMANDS[command]
    arg_parser = make_parser()
    try:
        args = arg_parser.parse_args(command_argv)
    except SystemExit as e:
        # Raised by argparse for --help (code 0) and for invalid arguments
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    numeric_loglevel = getattr(logging, args.loglevel.upper())
    logging.getLogger().setLevel(numeric_loglevel)

    try:
        return handler(args)
    except (DataError, ContractError) as e:
        logging.error('%s', e)
        return EXIT_DATA
    except OSError as e:
        logging.error('I/O error: %s', e)
        return EXIT_DATA
    except SolverError as e:
        logging.error('Numerical failure: %s', e)
        return EXIT_NUMERICAL


def _make_solver(args):

    return SimplexSolver(Algorithm(args.algorithm), Tolerances.from_args(args), bland=args.bland)


def _add_solver_args(arg_parser):

    arg_parser.add_argument('--algorithm', default='primal', choices=[str(a) for a in Algorithm],
                            help='Simplex variant for all LPs')
    arg_parser.add_argument('--bland', action='store_true', help="Use Bland's rule from the first pivot")


def _add_run_option_args(arg_parser):

    group = arg_parser.add_argument_group('procedure options')
    group.add_argument('--order', default='ascending', choices=[str(k) for k in OrderKind],
                       help='Processing order of BuildHull, ascending means by pre-score')
    group.add_argument('--order-seed', type=int, help='Seed for "--order random"')
    group.add_argument('--single-seed', action='store_true',
                       help='Start from a single extreme DMU instead of all dimension-sorting results')
    group.add_argument('--p', type=int, help='Initial subset size of EHD (default: ceil(sqrt(n)))')
    group.add_argument('--include-partial-boundary', action='store_true',
                       help='Let EHD Step 4 also test boundary points found in Step 3')
    group.add_argument('--exact-ties', action='store_true',
                       help='Resolve tied hyperplane maximizers with extra LPs')
    group.add_argument('--debug-checks', action='store_true',
                       help='Verify the preprocessing results with LPs before the timed run')
    group.add_argument('--phase2', action='store_true',
                       help='Also score the DMUs outside the Phase-1 result')
    group.add_argument('--workers', type=int, help='Worker processes (oracle runs and sweeps)')


def _run_options(args):

    return RunOptions(order=OrderKind(args.order), order_seed=args.order_seed, single_seed=args.single_seed,
                      p=args.p, include_partial_boundary=args.include_partial_boundary,
                      exact_ties=args.exact_ties, debug_checks=args.debug_checks, phase2=args.phase2,
                      workers=args.workers)


def _gen_parser():

    arg_parser = get_arg_parser('Generate a synthetic DEA dataset', prog='dea-bench gen')
    arg_parser.add_argument('--n', type=int, required=True, help='Number of DMUs')
    arg_parser.add_argument('--m1', type=int, required=True, help='Number of inputs')
    arg_parser.add_argument('--m2', type=int, required=True, help='Number of outputs')
    arg_parser.add_argument('--density', type=float, required=True, help='Target share of frame DMUs')
    arg_parser.add_argument('--seed', type=int, default=0, help='Random seed')
    arg_parser.add_argument('--name', help='Dataset name (default: derived from the parameters)')
    arg_parser.add_argument('--inject-boundary', type=int, default=0,
                            help='Number of non-extreme boundary DMUs to inject')
    arg_parser.add_argument('--out', required=True, help='Path of the CSV file to write')
    arg_parser.add_argument('--no-oracle', action='store_true',
                            help='Do not measure the realized frame size for the manifest')
    arg_parser.add_argument('--workers', type=int, help='Worker processes for the oracle')
    _add_solver_args(arg_parser)
    return arg_parser


def _gen(args):

    try:
        spec = GenSpec(args.n, args.m1, args.m2, args.density, args.seed, name=args.name,
                       inject_boundary=args.inject_boundary)
        solver = _make_solver(args)
    except ValueError as e:
        logging.error('Invalid dataset parameters: %s', e)
        return EXIT_USAGE

    generate_files(spec, args.out, not args.no_oracle, solver, args.workers)
    return EXIT_OK


def _run_parser():

    arg_parser = get_arg_parser('Run a frame-finding procedure on a dataset', prog='dea-bench run')
    arg_parser.add_argument('--dataset', required=True, help='Path of the dataset CSV file')
    arg_parser.add_argument('--procedure', required=True, choices=[str(p) for p in Procedure])
    arg_parser.add_argument('--results', required=True, help='Results file to append the record to')
    arg_parser.add_argument('--metrics-file', help='Write Prometheus metrics of the run in textfile format')
    _add_solver_args(arg_parser)
    _add_run_option_args(arg_parser)
    return arg_parser


def _run(args):

    try:
        solver = _make_solver(args)
    except ValueError as e:
        logging.error('Invalid tolerances: %s', e)
        return EXIT_USAGE

    dataset = read_dataset(args.dataset)
    manifest = read_manifest(manifest_path(args.dataset))

    registry = None
    metrics = None
    if args.metrics_file is not None:
        registry = prometheus_client.CollectorRegistry()
        metrics = run_metrics.make_metrics(registry)

    outcome = execute_run(dataset, args.procedure, solver, manifest, _run_options(args), metrics)
    append_record(args.results, outcome.record)

    if args.metrics_file is not None:
        run_metrics.write_metrics(args.metrics_file, registry)

    return EXIT_OK


def _report_parser():

    arg_parser = get_arg_parser('Create CSV tables and plot data from a results file',
                                prog='dea-bench report')
    arg_parser.add_argument('--results', required=True, help='Results file written by "run" or "sweep"')
    arg_parser.add_argument('--out-dir', required=True, help='Directory for the report files')
    return arg_parser


def _report(args):

    records, skipped = report.load_records(args.results)
    if not records:
        if skipped:
            logging.error('All %d records in %s are malformed', skipped, args.results)
        else:
            logging.error('Results file %s is empty', args.results)
        return EXIT_DATA

    for path in report.write_report(records, args.out_dir):
        logging.info('Wrote %s', path)
    return EXIT_OK


def _oracle_parser():

    arg_parser = get_arg_parser('Classify every DMU with brute-force LPs', prog='dea-bench oracle')
    arg_parser.add_argument('--dataset', required=True, help='Path of the dataset CSV file')
    arg_parser.add_argument('--out', required=True, help='Path of the classification CSV file to write')
    arg_parser.add_argument('--workers', type=int, help='Worker processes')
    _add_solver_args(arg_parser)
    return arg_parser


def _oracle(args):

    try:
        solver = _make_solver(args)
    except ValueError as e:
        logging.error('Invalid tolerances: %s', e)
        return EXIT_USAGE

    dataset = read_dataset(args.dataset)
    classification = classify_all(dataset, solver, args.workers)
    classification.to_dataframe().to_csv(args.out, index=False)
    logging.info('"%s": %d frame DMUs, %d boundary DMUs, density %.4f', dataset.name,
                 len(classification.frame), len(classification.boundary), classification.density)
    return EXIT_OK


def _score_parser():

    arg_parser = get_arg_parser('Score all DMUs outside the Phase-1 result', prog='dea-bench score')
    arg_parser.add_argument('--dataset', required=True, help='Path of the dataset CSV file')
    arg_parser.add_argument('--procedure', default='buildhull', choices=['buildhull', 'ehd'],
                            help='Phase-1 procedure providing the reference set')
    arg_parser.add_argument('--out', required=True, help='Path of the score CSV file to write')
    arg_parser.add_argument('--results', help='Optionally append the run record to this results file')
    _add_solver_args(arg_parser)
    _add_run_option_args(arg_parser)
    return arg_parser


def _score(args):

    try:
        solver = _make_solver(args)
    except ValueError as e:
        logging.error('Invalid tolerances: %s', e)
        return EXIT_USAGE

    dataset = read_dataset(args.dataset)
    manifest = read_manifest(manifest_path(args.dataset))
    options = dataclasses.replace(_run_options(args), phase2=True)

    outcome = execute_run(dataset, args.procedure, solver, manifest, options)
    with open(args.out, 'w', encoding='utf-8') as out_file:
        out_file.write('dmu,phi\n')
        for dmu in sorted(outcome.scores.scores):
            out_file.write(f'{dmu},{outcome.scores.scores[dmu]!r}\n')
    if args.results is not None:
        append_record(args.results, outcome.record)

    return EXIT_OK


def _sweep_parser():

    arg_parser = get_arg_parser('Run both procedures over a grid of generated datasets',
                                prog='dea-bench sweep')
    arg_parser.add_argument('--cardinalities', type=parse_int_list, default=[1000],
                            help='Comma-separated numbers of DMUs')
    arg_parser.add_argument('--dimensions', type=parse_dimensions, default=[(3, 2)],
                            help='Comma-separated input/output splits, e.g. "3x2,5x5"')
    arg_parser.add_argument('--densities', type=parse_float_list, default=[0.01, 0.1, 0.25],
                            help='Comma-separated target densities')
    arg_parser.add_argument('--seeds', type=parse_int_list, default=[1], help='Comma-separated seeds')
    arg_parser.add_argument('--procedures', type=lambda text: text.split(','), default=['buildhull', 'ehd'],
                            help='Comma-separated procedures to run per cell')
    arg_parser.add_argument('--data-dir', required=True, help='Directory for the generated datasets')
    arg_parser.add_argument('--results', required=True, help='Results file to append the records to')
    arg_parser.add_argument('--with-oracle', action='store_true',
                            help='Measure the realized frame size of every generated dataset')
    _add_solver_args(arg_parser)
    _add_run_option_args(arg_parser)
    return arg_parser


def _sweep(args):

    try:
        solver = _make_solver(args)
        for procedure in args.procedures:
            Procedure(procedure)
        cells = sweep.grid_cells(args.cardinalities, args.dimensions, args.densities, args.seeds)
        for cell in cells:
            GenSpec(cell.n, cell.m1, cell.m2, cell.density, cell.seed)
    except ValueError as e:
        logging.error('Invalid sweep parameters: %s', e)
        return EXIT_USAGE

    # Worker processes only prepare datasets, timed runs stay sequential
    options = dataclasses.replace(_run_options(args), workers=None)
    sweep.run_sweep(cells, args.data_dir, args.results, solver, args.procedures, options,
                    args.with_oracle, args.workers)
    return EXIT_OK


_COMMANDS = {
    'gen': (_gen_parser, _gen),
    'run': (_run_parser, _run),
    'report': (_report_parser, _report),
    'oracle': (_oracle_parser, _oracle),
    'score': (_score_parser, _score),
    'sweep': (_sweep_parser, _sweep)
}


if __name__ == '__main__':
    sys.exit(main())
