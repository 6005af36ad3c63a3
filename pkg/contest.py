import argparse
import sys

import numpy as np
from loguru import logger

from lib.analysis import (FAMILIES, compare, convergence_table, design_optimize,
                          earlier_mover_report, equivalent_sim_size, large_contest_approx)
from lib.config import get_config
from lib.equilibrium import Status, best_response, solve, total_after, verify_spe
from lib.errors import ContestError
from lib.factory import KERNEL_HELP, create_kernel
from lib.kernels import check_t_monotone
from lib.oracle import grid_spe, sim_fixed_point
from lib.recursion import METHODS, info_measures
from utils import serialization as ser
from utils.utils import fmt_float, log_args, parse_contest, setup_logger

CSV_DEFAULT = ("measures", "sweep", "br")


def solve_options(config):
    return dict(
        tol=config.SOLVER.TOL,
        method=config.SOLVER.METHOD,
        eps_cond=config.CONDITIONS.EPS_COND,
        scan_points=config.CONDITIONS.SCAN_POINTS,
        identity_tol=config.CONDITIONS.IDENTITY_TOL,
        identity_points=config.CONDITIONS.IDENTITY_POINTS,
        exact_max_periods=config.SOLVER.EXACT_MAX_PERIODS,
        grid_max_players=config.SOLVER.GRID_MAX_PLAYERS,
        mp_dps=config.SOLVER.MP_DPS,
    )


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--kernel', type=str, default='tullock', help=KERNEL_HELP)
    common.add_argument('--tol', type=float, default=None, help='root bracket width')
    common.add_argument('--method', type=str, default=None, choices=METHODS, help='evaluation path')
    common.add_argument('--format', type=str, default=None, choices=ser.FORMATS,
                        help='output format (csv for measures/sweep/br, json otherwise)')
    common.add_argument('--output', type=str, default=None, help='write to file instead of stdout')
    common.add_argument('--cfg', type=str, default=None, metavar='FILE', help='path to config file')
    common.add_argument('--opts', default=None, nargs='+', help="modify config options by adding 'KEY VALUE' pairs")
    common.add_argument('--exact', action='store_true', help='include exact brackets and rationals')
    common.add_argument('--jobs', type=int, default=None, help='worker processes for design and sweep')
    common.add_argument('--progress', action='store_true', help='progress bar on stderr')
    common.add_argument('--log-level', type=str, default='WARNING')
    common.add_argument('-v', '--verbose', action='store_true', help='same as --log-level DEBUG')
    common.add_argument('--log-file', type=str, default=None)

    parser = argparse.ArgumentParser(prog='contest.py', description='Sequential contest equilibrium solver')
    sub = parser.add_subparsers(dest='command', required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    censor_help = 'keep T-1 disclosures and pool the rest into period T'
    p = add('solve', 'equilibrium of a contest')
    p.add_argument('--contest', type=str, required=True, help="e.g. '1,2,1' or '1^5'")
    p.add_argument('--censor', type=int, default=None, metavar='T', help=censor_help)
    p = add('conditions', 'Condition 1 and Condition 2 report')
    p.add_argument('--contest', type=str, required=True)
    p.add_argument('--censor', type=int, default=None, metavar='T', help=censor_help)
    p = add('measures', 'information measures S_k; CSV columns S_1..S_T')
    p.add_argument('--contest', type=str, required=True)
    p.add_argument('--censor', type=int, default=None, metavar='T', help=censor_help)
    p = add('compare', 'compare two disclosure structures')
    p.add_argument('--a', type=str, required=True, help='first contest')
    p.add_argument('--b', type=str, required=True, help='second contest')
    p = add('design', 'best disclosure structure for n players; CSV columns contest,X_star,status')
    p.add_argument('--players', type=int, required=True)
    p.add_argument('--max-periods', type=int, default=None)
    p.add_argument('--objective', type=str, default='max', choices=['max', 'min', 'maximize', 'minimize'])
    p.add_argument('--compositions', action='store_true', help='enumerate ordered structures')
    p = add('approx', 'large-contest closed form')
    p.add_argument('--contest', type=str, required=True)
    p = add('sweep', 'convergence data; CSV columns n,contest,X_star,one_minus_X_star,S,dissipation_ratio,status')
    p.add_argument('--family', type=str, required=True, choices=sorted(FAMILIES))
    p.add_argument('--n-max', type=int, required=True)
    p.add_argument('--n-min', type=int, default=1)
    p = add('oracle', 'grid backward induction')
    p.add_argument('--contest', type=str, required=True)
    p.add_argument('--step', type=float, default=None)
    p = add('br', 'best-response curve; CSV columns X_prev,effort,X_t,total')
    p.add_argument('--contest', type=str, required=True)
    p.add_argument('--period', type=int, required=True)
    p.add_argument('--points', type=int, default=101)
    p = add('monotone', 'T-times monotonicity of g')
    p.add_argument('--order', type=int, required=True)
    p.add_argument('--grid', type=int, default=None)
    p.add_argument('--strict', action='store_true')
    p = add('equiv', 'simultaneous size matching n sequential players')
    p.add_argument('--n-seq', type=int, required=True)
    p = add('mover', 'earlier-mover advantage report')
    p.add_argument('--contest', type=str, required=True)
    p = add('verify', 'numeric deviation audit')
    p.add_argument('--contest', type=str, required=True)
    p.add_argument('--grid', type=int, default=None)
    p = add('simfp', 'simultaneous fixed point by best-response iteration')
    p.add_argument('--players', type=int, required=True)
    return parser


def _contest(args):
    contest = parse_contest(args.contest)
    return contest if args.censor is None else contest.censor(args.censor)


def dispatch(args, config):
    """Return (payload, rows, exit code)."""
    digits = config.OUTPUT.DIGITS
    kernel = create_kernel(args.kernel)
    options = solve_options(config)
    cmd = args.command

    if cmd in ('solve', 'conditions'):
        solution = solve(_contest(args), kernel, **options)
        code = 1 if solution.status is Status.NO_INTERIOR else 0
        if cmd == 'solve':
            return ser.solution_to_dict(solution, digits, args.exact), ser.solution_rows(solution, digits), code
        payload = ser.condition_report_to_dict(solution.conditions, digits)
        payload = {"contest": list(solution.contest.n), "kernel": kernel.spec,
                   "status": str(solution.status), **payload}
        return payload, ser.dict_rows(payload), code

    if cmd == 'measures':
        contest = _contest(args)
        measures = info_measures(contest)
        return ser.measures_to_dict(contest, measures, kernel.alpha(), digits), ser.measures_rows(measures), 0

    if cmd == 'compare':
        result = compare(parse_contest(args.a), parse_contest(args.b), kernel, **options)
        payload = ser.comparison_to_dict(result, digits)
        return payload, ser.dict_rows(payload), 0

    if cmd == 'design':
        result = design_optimize(args.players, kernel, args.objective, args.max_periods,
                                 compositions=args.compositions, jobs=config.JOBS,
                                 progress=args.progress, **options)
        return ser.design_to_dict(result, digits), ser.design_rows(result, digits), 0

    if cmd == 'approx':
        payload = ser.approx_to_dict(large_contest_approx(parse_contest(args.contest), kernel), digits)
        return payload, ser.dict_rows(payload), 0

    if cmd == 'sweep':
        frame = convergence_table(args.family, list(range(args.n_min, args.n_max + 1)), kernel,
                                  jobs=config.JOBS, progress=args.progress, **options)
        for column in ("X_star", "one_minus_X_star", "S", "dissipation_ratio"):
            frame[column] = [fmt_float(v, digits) if v == v else None for v in frame[column]]
        return {"family": args.family, "rows": frame.to_dict(orient="records")}, frame, 0

    if cmd == 'oracle':
        step = args.step or config.ORACLE.STEP
        result = grid_spe(parse_contest(args.contest), kernel, step,
                          config.ORACLE.MAX_PLAYERS, config.ORACLE.MAX_PERIODS)
        payload = ser.grid_solution_to_dict(result, digits)
        return payload, ser.dict_rows(payload), 0

    if cmd == 'br':
        solution = solve(parse_contest(args.contest), kernel, **options)
        fseq, t = solution.fseq, args.period
        grid = np.linspace(0.0, 1.0, args.points)
        effort = best_response(fseq, t, grid)
        reached = grid + fseq.contest.n[t - 1] * effort
        total = total_after(fseq, t, reached)
        rows = [{"X_prev": fmt_float(a, digits), "effort": fmt_float(b, digits),
                 "X_t": fmt_float(c, digits), "total": fmt_float(d, digits)}
                for a, b, c, d in zip(grid, effort, reached, total)]
        return {"contest": list(fseq.contest.n), "period": t, "rows": rows}, rows, 0

    if cmd == 'monotone':
        report = check_t_monotone(kernel, args.order, args.grid or config.CONDITIONS.MONOTONE_POINTS,
                                  config.CONDITIONS.EPS_MONO, strict=args.strict)
        payload = ser.monotone_to_dict(kernel, report, digits)
        return payload, ser.dict_rows(payload), 0

    if cmd == 'equiv':
        payload = ser.equivalent_to_dict(equivalent_sim_size(args.n_seq, kernel, **options), digits)
        return payload, ser.dict_rows(payload), 0

    if cmd == 'mover':
        solution = solve(parse_contest(args.contest), kernel, **options)
        payload = ser.mover_to_dict(earlier_mover_report(solution), digits)
        return payload, ser.dict_rows(payload), 0

    if cmd == 'verify':
        solution = solve(parse_contest(args.contest), kernel, **options)
        audit = verify_spe(solution, kernel, args.grid or config.SPE.DEVIATION_GRID, config.SPE.GAIN_TOL)
        payload = ser.audit_to_dict(audit, digits)
        return payload, ser.dict_rows(payload), 0

    if cmd == 'simfp':
        X = sim_fixed_point(args.players, kernel, config.SIM.TOL, config.SIM.MAX_ITER)
        payload = {"players": args.players, "kernel": kernel.spec, "X_star": fmt_float(X, digits)}
        return payload, ser.dict_rows(payload), 0

    assert False, f"{cmd} is not supported yet"


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    try:
        setup_logger('DEBUG' if args.verbose else args.log_level.upper(), args.log_file)
        log_args(args)
        config = get_config(args)
        payload, rows, code = dispatch(args, config)
        fmt = args.format or ('csv' if args.command in CSV_DEFAULT else 'json')
        ser.write_output(ser.render(payload, rows, fmt, config.OUTPUT.DIGITS), args.output)
    except (ContestError, ValueError, KeyError) as e:
        logger.error("{}: {}", type(e).__name__, e)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(run())
