"""JSON, CSV and table renderings of solver results.

Floats are emitted as fixed-precision decimal strings so that output is
byte-stable for fixed inputs; exact brackets are added on request.
"""
import json
import sys

import pandas as pd
from tabulate import tabulate

from utils.utils import fmt_float

FORMATS = ("json", "csv", "table")


def _f(value, digits):
    return fmt_float(value, digits)


def _fs(values, digits):
    return [_f(v, digits) for v in values]


def condition_report_to_dict(report, digits=15):
    c1 = report.condition1
    out = {
        "certified_by_monotonicity": report.certified_by_monotonicity,
        "condition1": {
            "verdict": c1.verdict,
            "certification": c1.certification,
            "witnesses": [
                {
                    "t": w.t,
                    "threshold": _f(w.threshold, digits),
                    "root_found": w.root_found,
                    "sign_ok": w.sign_ok,
                    "monotone_ok": w.monotone_ok,
                    "crossing": _f(w.crossing, digits),
                }
                for w in c1.witnesses
            ],
        },
        "condition2": None,
    }
    c2 = report.condition2
    if c2 is not None:
        out["condition2"] = {
            "verdict": c2.verdict,
            "first_nonpositive": c2.first_nonpositive,
            "g": {str(k): _f(v, digits) for k, v in c2.values},
        }
    return out


def solution_to_dict(solution, digits=15, exact=False):
    out = {
        "contest": list(solution.contest.n),
        "kernel": solution.kernel,
        "status": str(solution.status),
        "method": solution.method,
        "X_star": _f(solution.X_star, digits),
        "cumulative": _fs(solution.cumulative, digits),
        "efforts": _fs(solution.flat_efforts, digits),
        "payoffs": _fs(solution.flat_payoffs, digits),
        "hhi": _f(solution.hhi, digits),
        "monopoly": _f(solution.monopoly, digits),
        "above_monopoly": solution.above_monopoly,
        "boundary_tie": solution.boundary_tie,
        "conditions": condition_report_to_dict(solution.conditions, digits),
        "tol": _f(solution.tol, digits),
    }
    if exact:
        bracket = solution.X_star_bracket
        out["X_star_exact"] = None if solution.X_star_exact is None else str(solution.X_star_exact)
        out["X_star_bracket"] = None if bracket is None else bracket.to_strings()
        out["efforts_exact"] = (None if solution.efforts_exact is None else
                                [str(x) for period in solution.efforts_exact for x in period])
        fseq = solution.fseq
        out["f0_exact"] = fseq.polys[0].to_pairs() if fseq is not None and fseq.polys else None
    return out


def solution_rows(solution, digits=15):
    rows, player = [], 0
    for t, (efforts, payoffs) in enumerate(zip(solution.efforts, solution.payoffs), start=1):
        for x, u in zip(efforts, payoffs):
            player += 1
            rows.append({"player": player, "period": t, "effort": _f(x, digits),
                         "payoff": _f(u, digits), "status": str(solution.status)})
    return rows


def measures_to_dict(contest, measures, alpha=None, digits=15):
    out = {"contest": list(contest.n), "S": list(measures.S)}
    if alpha is not None:
        out["S_weighted"] = _f(measures.weighted_total(alpha), digits)
    return out


def measures_rows(measures):
    return [{f"S_{k}": s for k, s in enumerate(measures.S, start=1)}]


def comparison_to_dict(result, digits=15):
    return {
        "contest_a": list(result.contest_a.n),
        "contest_b": list(result.contest_b.n),
        "S_a": list(result.S_a.S),
        "S_b": list(result.S_b.S),
        "dominance": result.dominance,
        "X_a": _f(result.X_a, digits),
        "X_b": _f(result.X_b, digits),
        "theorem_applies": result.theorem_applies,
        "consistent_with_theorem": result.consistent_with_theorem,
        "sum_heuristic": result.sum_heuristic,
    }


def design_to_dict(result, digits=15):
    return {
        "objective": result.objective,
        "players": result.players,
        "max_periods": result.max_periods,
        "best_contest": None if result.best_contest is None else list(result.best_contest.n),
        "best_value": _f(result.best_value, digits),
        "evaluated_count": result.evaluated_count,
        "skipped": result.skipped,
    }


def design_rows(result, digits=15):
    return [{"contest": str(c), "X_star": _f(x, digits), "status": s} for c, x, s in result.evaluated]


def approx_to_dict(result, digits=15):
    return {
        "contest": list(result.contest.n),
        "kernel": result.kernel,
        "alpha": _f(result.alpha, digits),
        "S": _f(result.S, digits),
        "X_star_approx": _f(result.X_star_approx, digits),
        "X_star_linearized": _f(result.X_star_linearized, digits),
        "efforts_approx": [_f(x, digits) for period in result.efforts_approx for x in period],
        "hhi_approx": _f(result.hhi_approx, digits),
        "hhi_limit": _f(result.hhi_limit, digits),
    }


def grid_solution_to_dict(result, digits=15):
    return {
        "contest": list(result.contest.n),
        "kernel": result.kernel,
        "step": _f(result.step, digits),
        "efforts": _fs(result.flat_efforts, digits),
        "total": _f(result.total, digits),
        "total_units": result.total_units,
        "value_tables_digest": result.value_tables_digest,
    }


def monotone_to_dict(kernel, report, digits=15):
    failure = report.first_failure
    return {
        "kernel": kernel.spec,
        "order_checked": report.order_checked,
        "verdict": report.verdict,
        "failed_orders": list(report.failed_orders),
        "first_failure": None if failure is None else
        {"k": failure[0], "X": _f(failure[1], digits), "value": _f(failure[2], digits)},
    }


def equivalent_to_dict(result, digits=15):
    return {
        "n_seq": result.n_seq,
        "X_seq": _f(result.X_seq, digits),
        "exact": result.exact,
        "smallest_dominating": result.smallest_dominating,
        "approx": _f(result.approx, digits),
    }


def mover_to_dict(report, digits=15):
    return {
        "contest": list(report.contest.n),
        "verdict": report.verdict,
        "efforts": _fs(report.efforts, digits),
        "direct_gaps": _fs(report.direct_gaps, digits),
        "formula_gaps": _fs(report.formula_gaps, digits),
        "formula_agrees": report.formula_agrees,
    }


def audit_to_dict(audit, digits=15):
    return {
        "contest": list(audit.contest.n),
        "deviation_grid": audit.deviation_grid,
        "max_gain": _f(audit.max_gain, digits),
        "passed": audit.passed,
        "periods": [
            {
                "t": p.t,
                "equilibrium_payoff": _f(p.equilibrium_payoff, digits),
                "best_deviation": _f(p.best_deviation, digits),
                "best_payoff": _f(p.best_payoff, digits),
                "gain": _f(p.gain, digits),
            }
            for p in audit.periods
        ],
    }


def dict_rows(payload):
    """One-row table of a flat result; nested values are JSON encoded."""
    return [{k: v if not isinstance(v, (list, dict)) else json.dumps(v) for k, v in payload.items()}]


def render(payload, rows, fmt, digits=15):
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    frame = rows if isinstance(rows, pd.DataFrame) else pd.DataFrame(rows)
    if fmt == "csv":
        return frame.to_csv(index=False, float_format=f"%.{digits}g", lineterminator="\n")
    if fmt == "table":
        return tabulate(frame, headers="keys", showindex=False, disable_numparse=True) + "\n"
    raise ValueError(f"unknown output format {fmt!r}, expected one of {FORMATS}")


def write_output(text, path=None):
    if path:
        with open(path, "w", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
