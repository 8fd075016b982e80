""" Command line entry point ``plim``.

Exit status 0 means success, 1 that some points or the single requested computation failed, 2 a usage
error; errors are written to stderr as one JSON object.
"""
from .SweepConfig import DensityConfig, SweepConfig
from .SweepRunner import SweepRunner
from .output import write_object, write_records, write_rows
from ..maps import make_map, parse_map_spec
from ..matching import MatchingEngine, flowchart_check, parse_start
from ..orbits import (CuttingTimes, attractor, closest_approach_times, cover_time, density_profile,
                      param_window, q_sequence)
from ..utils import Mode, Status, get_logger
from ..utils.enumerators import DEFAULT_CAP, DEFAULT_EPSILON, DEFAULT_GUARD_BAND, DEFAULT_PRECISION_CAP_BITS
from ..utils.errors import ConfigError, PLIMError
from ..utils.parsing import format_exact, parse_field_spec, parse_scalar

from functools import partial
import argparse
import json
import sys

log = get_logger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _count(least: int):
    """ argparse type for integers >= `least`. """
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f'expected an integer, got {text!r}')
        if value < least:
            raise argparse.ArgumentTypeError(f'must be >= {least}, got {value}')
        return value
    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--mode', choices=[m.value for m in Mode], default=None,
                        help='number type: exact, float or both (default depends on the command)')
    common.add_argument('--guard-band', type=float, default=DEFAULT_GUARD_BAND)
    common.add_argument('--precision-cap-bits', type=_count(1), default=DEFAULT_PRECISION_CAP_BITS)
    common.add_argument('--out', default=None, help='output file; stdout when omitted')
    common.add_argument('--format', choices=['csv', 'json'], default=None)
    common.add_argument('--workers', type=_count(1), default=None)
    common.add_argument('--no-progress', action='store_true')
    common.add_argument('--debug', action='store_true')

    parser = _Parser(prog='plim', description='Skew tent maps, generalised beta-transformations and matching.')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    p = sub.add_parser('orbit', parents=[common], help='orbit of a point as a table')
    p.add_argument('spec', help='map specification, e.g. genbeta:alpha=1/2,beta=multinacci(3)')
    p.add_argument('--x0', default='0')
    p.add_argument('-n', type=_count(0), default=20)
    p.add_argument('--left', action='store_true', help='follow left limits')

    p = sub.add_parser('matching', parents=[common], help='matching index of one translation')
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--multinacci', type=_count(2))
    group.add_argument('--field')
    p.add_argument('--alpha', required=True)
    p.add_argument('--cap', type=_count(1), default=DEFAULT_CAP)
    p.add_argument('--start', default='zero-one', help='zero-one or near:eps=...,e=...')
    p.add_argument('--trace', action='store_true', help='include the e-vector trace')
    p.add_argument('--flowchart', action='store_true', help='audit the trace against the tribonacci flowchart')

    p = sub.add_parser('sweep', parents=[common], help='matching sweep from a config file or flags')
    p.add_argument('--config')
    p.add_argument('--field')
    p.add_argument('--alpha-lo')
    p.add_argument('--alpha-hi')
    p.add_argument('--grid', type=_count(1))
    p.add_argument('--sampling', choices=['grid', 'random'])
    p.add_argument('--seed', type=int)
    p.add_argument('--start', action='append', help='start mode, repeatable')
    p.add_argument('--cap', type=_count(1))

    p = sub.add_parser('density', parents=[common], help='density of an orbit in the attractor')
    p.add_argument('spec', nargs='?', help='single map: prints the per-cell first visit times')
    p.add_argument('--config')
    p.add_argument('--beta')
    p.add_argument('--alpha-lo')
    p.add_argument('--alpha-hi')
    p.add_argument('--grid', type=_count(1))
    p.add_argument('--sampling', choices=['grid', 'random'])
    p.add_argument('--seed', type=int)
    p.add_argument('-n', type=_count(0))
    p.add_argument('--eps', type=float)
    p.add_argument('--x0')

    p = sub.add_parser('windows', parents=[common], help='parameter windows around the current parameter')
    p.add_argument('spec')
    p.add_argument('-n', type=_count(2), default=10)
    p.add_argument('--n-max', type=_count(2), help='report every n up to this value')
    p.add_argument('--method', choices=['affine', 'bisect'])

    p = sub.add_parser('attractor', parents=[common], help='smallest invariant union of intervals')
    p.add_argument('spec')
    p.add_argument('--tol', type=float, default=1e-9)
    p.add_argument('--cover', help='lo,hi of an interval whose cover time is reported')

    p = sub.add_parser('qseq', parents=[common], help='normalised parameter derivatives Q_n')
    p.add_argument('spec')
    p.add_argument('-n', type=_count(2), default=40)

    p = sub.add_parser('cutting', parents=[common], help='cutting, co-cutting and closest approach times')
    p.add_argument('spec')
    p.add_argument('-n', type=_count(1), default=40)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as e:
        return _fail(e, Status.USAGE_ERROR)
    get_logger('PLIM', args.debug)
    try:
        return int(COMMANDS[args.command](args))
    except ConfigError as e:
        return _fail(e, Status.USAGE_ERROR)
    except PLIMError as e:
        return _fail(e, Status.POINT_FAILURES)
    except ValueError as e:
        return _fail(e, Status.USAGE_ERROR)


########## COMMANDS ##########
def _orbit(args) -> int:
    m = _map(args)
    rows = [(j, m.to_float(x), format_exact(x) if m.exact else None, symbol)
            for j, (x, symbol) in enumerate(m.orbit(args.x0 if m.exact else float(parse_scalar(args.x0, m.field)),
                                                   args.n, left=args.left))]
    write_rows(['n', 'x', 'x_exact', 'symbol'], rows, args.out, args.format or 'csv')
    return Status.SUCCESS


def _matching(args) -> int:
    field = parse_field_spec(f'multinacci({args.multinacci})' if args.multinacci else args.field,
                             args.precision_cap_bits, args.debug)
    engine = MatchingEngine(field, cap=args.cap, guard_band=args.guard_band, debug=args.debug)
    mode = Mode(args.mode) if args.mode else None
    alpha = float(parse_scalar(args.alpha, field)) if mode == Mode.FLOAT else parse_scalar(args.alpha, field)
    eps, state = parse_start(args.start)
    start = None if state is None else partial(engine.near_fixed_point_start, eps=eps, state=state)
    result = engine.run(alpha, start=start, mode=mode)
    if args.format == 'csv':
        write_rows(['n', 'sign', 'digits', 'd_float', 'd_exact'], result.trace_rows(field), args.out, 'csv')
        return Status.SUCCESS
    out = result.to_dict(with_trace=args.trace)
    if args.flowchart:
        out['flowchart'] = flowchart_check(result, field).to_dict()
    write_object(out, args.out)
    return Status.SUCCESS


def _sweep(args) -> int:
    cfg = SweepConfig.load(args.config) if args.config else SweepConfig()
    cfg = cfg.override(field=args.field, alpha_lo=args.alpha_lo, alpha_hi=args.alpha_hi, grid=args.grid,
                       sampling=args.sampling, seed=args.seed, start=args.start, cap=args.cap, mode=args.mode,
                       guard_band=_changed(args.guard_band, DEFAULT_GUARD_BAND),
                       precision_cap_bits=_changed(args.precision_cap_bits, DEFAULT_PRECISION_CAP_BITS),
                       workers=args.workers, out=args.out, format=args.format)
    runner = SweepRunner(progress=not args.no_progress, debug=args.debug)
    write_records(runner.sweep_matching(cfg), cfg.out, cfg.format)
    return runner.status


def _density(args) -> int:
    if args.spec:
        m = _map(args, Mode.FLOAT)
        x0 = float(parse_scalar(args.x0 or '0', m.field))
        profile = density_profile(m, x0, args.n if args.n is not None else 100_000, args.eps or DEFAULT_EPSILON)
        if args.format == 'json':
            write_object({'fraction': profile.fraction, 'cells': profile.cells, 'visited': profile.visited,
                          **profile.quantiles()}, args.out)
        else:
            write_rows(['cell', 'first_visit'], profile.rows(), args.out, 'csv')
        return Status.SUCCESS
    cfg = DensityConfig.load(args.config) if args.config else DensityConfig()
    cfg = cfg.override(beta=args.beta, alpha_lo=args.alpha_lo, alpha_hi=args.alpha_hi, grid=args.grid,
                       sampling=args.sampling, seed=args.seed, n=args.n, eps=args.eps, x0=args.x0,
                       workers=args.workers, out=args.out, format=args.format)
    runner = SweepRunner(progress=not args.no_progress, debug=args.debug)
    write_records(runner.sweep_density(cfg), cfg.out, cfg.format)
    return runner.status


def _windows(args) -> int:
    m = _map(args)
    records = []
    for n in range(args.n, (args.n_max or args.n) + 1):
        window = param_window(m, n, args.method)
        identities = {k: None if v is None else m.to_float(v) for k, v in window.endpoint_identities().items()}
        records.append({**window.to_dict(), 'identity_lo': identities['lo'], 'identity_hi': identities['hi']})
    write_records(records, args.out, args.format or 'json')
    return Status.SUCCESS


def _attractor(args) -> int:
    m = _map(args, Mode.FLOAT)
    cycle = attractor(m, tol=args.tol)
    out = cycle.to_dict()
    if args.cover:
        lo, hi = (float(parse_scalar(v)) for v in args.cover.split(','))
        out['cover_time'] = cover_time(m, (lo, hi), args.tol, cycle)
    write_object(out, args.out)
    return Status.SUCCESS


def _qseq(args) -> int:
    report = q_sequence(_map(args), args.n)
    if args.format == 'csv':
        write_rows(['k', 'q'], enumerate(report.values.tolist(), start=1), args.out, 'csv')
    else:
        write_object(report.to_dict(), args.out)
    return Status.SUCCESS


def _cutting(args) -> int:
    m = _map(args)
    times = CuttingTimes(m, args.n)
    write_object({
        'cutting': times.cutting,
        'co_cutting': times.co_cutting,
        'closest_approach': closest_approach_times(m, args.n),
    }, args.out)
    return Status.SUCCESS


COMMANDS = {
    'orbit': _orbit,
    'matching': _matching,
    'sweep': _sweep,
    'density': _density,
    'windows': _windows,
    'attractor': _attractor,
    'qseq': _qseq,
    'cutting': _cutting,
}


########## HELPERS ##########
def _map(args, mode: Mode | None = None):
    """ Map of the positional spec; `both` evaluates exactly. """
    if mode is None:
        mode = Mode.EXACT if args.mode in (Mode.EXACT.value, Mode.BOTH.value) else Mode.FLOAT
    params = parse_map_spec(args.spec, mode, args.precision_cap_bits, args.debug)
    return make_map(params, guard_band=args.guard_band, debug=args.debug)


def _changed(value, default):
    return None if value == default else value


def _fail(error: Exception, status: Status) -> int:
    payload = error.to_dict() if isinstance(error, PLIMError) else {'status': status.name, 'message': str(error)}
    sys.stderr.write(json.dumps(payload) + '\n')
    return int(status)


if __name__ == '__main__':
    sys.exit(main())
