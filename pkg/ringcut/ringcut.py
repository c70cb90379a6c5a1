#-----------------------------------------------------------------------------
# ringcut.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This python package implements a noisy circuit simulation and transpilation
# toolkit for QAOA max-cut on ring graphs.
#
# This file is the command line of the application:
#
#    ringcut devices list|show NAME
#    ringcut oracle --p-range 1 10
#    ringcut grid --n 4 --device washington-like --mitigation on --out grid.csv
#    ringcut transpile --n 12 --device kolkata-like --level all --layout embed
#    ringcut run --n 8 --p 2
#    ringcut sweep --n 4 6 --p-range 1 4 --device lagos-like --fast --out table.csv
#
# Exit status: 0 success, 1 validation or runtime error, 2 usage error.
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
#
# pylint: disable=invalid-name, too-many-statements
#
#-----------------------------------------------------------------------------
import argparse
import sys

from .rc_circuit import QaoaParams
from .rc_defines import BACKEND_MODES, BACKEND_NOISELESS, BACKEND_NOISY, DEFAULT_GRID_RESOLUTION, \
    DEFAULT_MAX_EVALS, DEFAULT_RESTARTS, DEFAULT_SEED, DEFAULT_SHOTS, PARAM_RANGES, RANGE_REDUCED, \
    RC_PRINT_LEVEL_DEBUG, RC_PRINT_LEVEL_ERROR, RC_PRINT_LEVEL_INFO, RC_PRINT_LEVEL_VERBOSE, rc_print, \
    rc_set_print_level, resource_path
from .rc_experiment import MITIGATIONS, ExperimentConfig, emit_table, make_backend, records_to_jsonl, \
    run_grid, run_sweep
from .rc_graph import Graph, load_graph, make_ring
from .rc_noise import PRESET_KOLKATA, dump_profile, list_devices, resolve_device
from .rc_qaoa import GridSpec, analytic_ring_fstar, analytic_ring_ratio, expectation_landscape, \
    optimize_params, trace_to_csv
from .tp import tp

_APP_NAME = "ringcut"

def get_version(rel_path: str) -> str:
    try:
        with open(resource_path(rel_path), encoding='utf-8') as fp:
            for line in fp.read().splitlines():
                if line.startswith("__version__"):
                    delim = '"' if '"' in line else "'"
                    return line.split(delim)[1]
    except OSError as error:
        raise RuntimeError("Unable to find _version.py.") from error
    raise RuntimeError("Unable to find version string.")

_APP_VERSION = get_version("_version.py")

#--------------------------------------------------------------------------------------
# output helpers

def _emit(text: str, path: str = None) -> None:
    """Write text to path, or stdout without a path."""

    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fout:
        fout.write(text)
    rc_print("wrote {}".format(path), level=RC_PRINT_LEVEL_INFO, file=sys.stderr)

#--------------------------------------------------------------------------------------
# subcommands

def _graph(args) -> Graph:
    return load_graph(args.graph) if args.graph else make_ring(args.n)

def cmd_devices(args) -> int:

    if args.action == "list":
        for name, description in list_devices().items():
            print("{}\t{}".format(name, description))
        return 0

    if not args.name:
        raise ValueError("devices show needs a device name")
    _emit(dump_profile(resolve_device(args.name)) + "\n", args.out)
    return 0

def cmd_oracle(args) -> int:

    p_min, p_max = args.p_range
    if p_min < 1 or p_min > p_max:
        raise ValueError("p range must satisfy 1 <= p_min <= p_max, got {} {}".format(p_min, p_max))

    lines = ["{},{:.4f},{:.4f}".format(p, analytic_ring_ratio(p), analytic_ring_fstar(args.n, p))
             for p in range(p_min, p_max + 1)]
    _emit("\n".join(lines) + "\n", args.out)
    return 0

def cmd_grid(args) -> int:

    g = _graph(args)
    spec = GridSpec.from_preset(args.range, args.resolution)

    if args.analytic:
        result = expectation_landscape(g, spec)
    else:
        mode = args.backend or (BACKEND_NOISY if args.device else BACKEND_NOISELESS)
        backend = make_backend(mode, args.device, args.mitigation, args.shots, args.seed)
        result = run_grid(g, backend, spec, args.threads)

    gamma, beta, value = result.peak()
    rc_print("grid {}x{}: peak expectation {:.4f} at gamma {:.4f} beta {:.4f}".format(
        result.shape[0], result.shape[1], value, gamma, beta), level=RC_PRINT_LEVEL_INFO, file=sys.stderr)
    if not args.analytic:
        gamma, beta, value = result.peak_success()
        rc_print("grid peak success probability {:.4f} at gamma {:.4f} beta {:.4f}".format(value, gamma, beta),
                 level=RC_PRINT_LEVEL_INFO, file=sys.stderr)
    _emit(result.to_csv(), args.out)
    return 0

def cmd_transpile(args) -> int:

    args.circuit_out = args.out
    if args.device is None:
        args.device = PRESET_KOLKATA
    return tp.run(args)

def cmd_run(args) -> int:

    g = _graph(args)
    mode = args.backend or (BACKEND_NOISY if args.device else BACKEND_NOISELESS)
    backend = make_backend(mode, args.device, args.mitigation, args.shots, args.seed)

    start = None
    if args.start:
        start = QaoaParams.from_vector(args.start)

    result = optimize_params(g, args.p, backend, args.restarts, args.max_evals, start=start,
                             param_range=args.range)

    print("n,p,backend,f_star,f_exact,ratio,success_prob,evals,exhausted,gammas,betas")
    print("{},{},{},{:.4f},{:.4f},{:.4f},{:.4f},{},{},{},{}".format(
        g.num_vertices, args.p, mode, result.f_star, result.f_exact, result.ratio, result.success_prob, result.evals,
        int(result.exhausted), " ".join("{:.4f}".format(v) for v in result.best_params.gammas),
        " ".join("{:.4f}".format(v) for v in result.best_params.betas)))

    if args.out:
        _emit(trace_to_csv(result), args.out)
    return 0

def cmd_sweep(args) -> int:

    if args.config:
        with open(args.config, "r", encoding="utf-8") as fin:
            cfg = ExperimentConfig.from_json(fin.read())
    else:
        cfg = ExperimentConfig()

    devices = args.devices or ([args.device] if args.device else None)
    mitigations = [args.mitigation] if args.mitigation else None
    cfg = cfg.replace(ring_sizes=args.n, p_range=args.p_range, devices=devices, mitigations=mitigations,
                      runs=args.runs, shots=args.shots, backend_mode=args.backend, restarts=args.restarts,
                      max_evals=args.max_evals, threads=args.threads, seed=args.seed)
    if args.fast:
        cfg = cfg.fast()

    records = []
    rows = run_sweep(cfg, records)
    _emit(emit_table(rows), args.out)

    records_path = args.records or (args.out + ".jsonl" if args.out else None)
    if records_path:
        _emit(records_to_jsonl(records), records_path)

    failed = sum(len(row.errors) for row in rows)
    if failed:
        rc_print("{} run(s) failed, see the per run records".format(failed), level=RC_PRINT_LEVEL_ERROR,
                 file=sys.stderr)
    return 0

#--------------------------------------------------------------------------------------
# argument parsing

def _common_parser() -> argparse.ArgumentParser:

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', dest='seed', type=int, default=None,
                        help='Random seed (default: {})'.format(DEFAULT_SEED))
    common.add_argument('--out', dest='out', default=None, help='Output file (default: stdout)')
    common.add_argument('--device', dest='device', default=None,
                        help='Device preset, profile file or name under $RINGCUT_DEVICE_DIR')
    common.add_argument('-v', '--verbose', dest='verbose', action='count', default=0,
                        help='More output, repeat for debug output')
    common.add_argument('--quiet', dest='quiet', action='store_true', help='Errors only')
    common.add_argument('--loglevel', dest='loglevel', type=int, default=None,
                        help='Print level, 0 = silent .. 5 = debug')
    return common

def _mitigation_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--mitigation', dest='mitigation', choices=MITIGATIONS, default=None,
                        help='Error mitigation by transpilation, needs a device: off = level 0 trivial layout, '
                        'on = level 3 embed layout resynth1q')

def _graph_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--n', dest='n', type=int, help='Ring size')
    source.add_argument('--graph', dest='graph', help='JSON graph file {"n": .., "edges": [[i, j, w], ..]}')

def _backend_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--backend', dest='backend', choices=BACKEND_MODES, default=None,
                        help='Objective backend (default: noisy_exact with a device, noiseless_exact without)')
    parser.add_argument('--shots', dest='shots', type=int, default=DEFAULT_SHOTS,
                        help='Shots per evaluation in shots mode (default: %(default)s)')
    parser.add_argument('--range', dest='range', choices=list(PARAM_RANGES), default=RANGE_REDUCED,
                        help='Parameter range preset (default: %(default)s)')

def build_parser() -> argparse.ArgumentParser:

    common = _common_parser()
    parser = argparse.ArgumentParser(prog=_APP_NAME, description='Noisy simulation and transpilation of QAOA '
                                     'max-cut on ring graphs.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + _APP_VERSION)
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    p = sub.add_parser('devices', parents=[common], help='List or export device profiles')
    p.add_argument('action', choices=['list', 'show'])
    p.add_argument('name', nargs='?', default=None)
    p.set_defaults(func=cmd_devices)

    p = sub.add_parser('oracle', parents=[common], help='Analytic ring ratio and optimum per p')
    p.add_argument('--p-range', dest='p_range', type=int, nargs=2, metavar=('P_MIN', 'P_MAX'), default=[1, 10])
    p.add_argument('--n', dest='n', type=int, default=12, help='Even ring size for F* (default: %(default)s)')
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser('grid', parents=[common], help='p=1 grid search as CSV')
    _graph_arguments(p)
    p.add_argument('--resolution', dest='resolution', type=float, default=DEFAULT_GRID_RESOLUTION,
                   help='Grid step in radians (default: pi/30)')
    p.add_argument('--analytic', dest='analytic', action='store_true', help='Emit the analytic ring surface')
    p.add_argument('--threads', dest='threads', type=int, default=1)
    _mitigation_argument(p)
    _backend_arguments(p)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser('transpile', parents=[common], help='Transpile and print the metric ladder')
    tp.add_arguments(p, with_device=False, with_out=False)
    p.set_defaults(func=cmd_transpile)

    p = sub.add_parser('run', parents=[common], help='One parameter optimization')
    _graph_arguments(p)
    p.add_argument('--p', dest='p', type=int, default=1)
    p.add_argument('--restarts', dest='restarts', type=int, default=DEFAULT_RESTARTS)
    p.add_argument('--max-evals', dest='max_evals', type=int, default=DEFAULT_MAX_EVALS)
    p.add_argument('--start', dest='start', type=float, nargs='+', default=None,
                   help='First start point, gammas then betas')
    _mitigation_argument(p)
    _backend_arguments(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser('sweep', parents=[common], help='Repeated runs over (n, p, device, mitigation)')
    p.add_argument('--config', dest='config', default=None, help='Experiment config JSON file')
    p.add_argument('--n', dest='n', type=int, nargs='+', default=None)
    p.add_argument('--p-range', dest='p_range', type=int, nargs=2, metavar=('P_MIN', 'P_MAX'), default=None)
    p.add_argument('--devices', dest='devices', nargs='+', default=None)
    p.add_argument('--runs', dest='runs', type=int, default=None)
    p.add_argument('--shots', dest='shots', type=int, default=None)
    p.add_argument('--backend', dest='backend', choices=BACKEND_MODES, default=None)
    p.add_argument('--restarts', dest='restarts', type=int, default=None)
    p.add_argument('--max-evals', dest='max_evals', type=int, default=None)
    p.add_argument('--threads', dest='threads', type=int, default=None)
    _mitigation_argument(p)
    p.add_argument('--fast', dest='fast', action='store_true', help='3 runs, 5000 shots, p <= 4, noisy_exact')
    p.add_argument('--records', dest='records', default=None,
                   help='Per run JSON lines file (default: OUT.jsonl when --out is given)')
    p.set_defaults(func=cmd_sweep)

    return parser

def _print_level(args) -> int:
    if args.loglevel is not None:
        return args.loglevel
    if args.quiet:
        return RC_PRINT_LEVEL_ERROR
    if args.verbose >= 2:
        return RC_PRINT_LEVEL_DEBUG
    if args.verbose == 1:
        return RC_PRINT_LEVEL_VERBOSE
    return RC_PRINT_LEVEL_INFO

#******************************************************************************
#
# cli_main()
#
#******************************************************************************

def cli_main(argv=None) -> int:

    parser = build_parser()

    # argparse exits on usage errors and --help, keep running and report the code
    try:
        args = parser.parse_args(argv)
        if args.command in ("grid", "run") and args.mitigation and not args.device:
            parser.error("--mitigation needs --device")
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else 2

    rc_set_print_level(_print_level(args))

    # sweep keeps None so config file values survive, the others need a seed
    if args.seed is None and args.command != "sweep":
        args.seed = DEFAULT_SEED

    try:
        return args.func(args)
    except (OSError, ValueError) as error:
        rc_print("error: {}".format(error), level=RC_PRINT_LEVEL_ERROR, file=sys.stderr)
        return 1

#------------------------------------------------------------------
# startRingcut()
#
# Entry point of the console script and the launcher script.

def startRingcut():
    sys.exit(cli_main())

if __name__ == '__main__':
    startRingcut()
