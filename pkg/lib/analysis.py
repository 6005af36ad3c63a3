"""Comparative statics and contest design on top of :func:`lib.equilibrium.solve`."""
from __future__ import annotations

import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Generator, Optional

import pandas as pd
from loguru import logger
from tqdm import tqdm

from lib.equilibrium import EquilibriumSolution, Status, solve
from lib.errors import InvalidContest
from lib.kernels import PayoffKernel, Tullock
from lib.recursion import Contest, InfoMeasures, info_measures

DOMINANCE = ("a_dominates", "b_dominates", "equal", "incomparable")
FAMILIES = {
    "seq": "seq", "sequential": "seq",
    "half": "half", "half_and_half": "half",
    "leader": "leader", "single_leader": "leader",
    "sim": "sim", "simultaneous": "sim",
}
# design candidates closer than this count as tied
TIE_TOL = 1e-12


def _cond2_holds(solution: EquilibriumSolution) -> bool:
    c2 = solution.conditions.condition2
    return c2 is not None and c2.verdict in ("pass", "boundary")


# -----------------------------------------------------------------------------
# Comparison
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class ComparisonResult:
    contest_a: Contest
    contest_b: Contest
    S_a: InfoMeasures
    S_b: InfoMeasures
    dominance: str
    X_a: Optional[float]
    X_b: Optional[float]
    theorem_applies: bool
    consistent_with_theorem: bool
    # sign of sum S_a - sum S_b, the large-contest ordering heuristic
    sum_heuristic: str


def dominance(S_a: InfoMeasures, S_b: InfoMeasures) -> str:
    """Elementwise order of two measure vectors, padded with zeros."""
    length = max(len(S_a), len(S_b))
    a, b = S_a.padded(length), S_b.padded(length)
    if a == b:
        return "equal"
    if all(x >= y for x, y in zip(a, b)):
        return "a_dominates"
    if all(x <= y for x, y in zip(a, b)):
        return "b_dominates"
    return "incomparable"


def compare(a: Contest, b: Contest, kernel: PayoffKernel, **options) -> ComparisonResult:
    S_a, S_b = info_measures(a), info_measures(b)
    order = dominance(S_a, S_b)
    sol_a, sol_b = solve(a, kernel, **options), solve(b, kernel, **options)
    X_a, X_b = sol_a.X_star, sol_b.X_star

    applies = sol_a.solved and sol_b.solved and _cond2_holds(sol_a) and _cond2_holds(sol_b)
    consistent = True
    if applies:
        if order == "a_dominates":
            consistent = X_a > X_b
        elif order == "b_dominates":
            consistent = X_b > X_a
        elif order == "equal":
            consistent = abs(X_a - X_b) <= 1e-10
    if not consistent:
        logger.warning("({}) vs ({}): {} but X = {} vs {}", a, b, order, X_a, X_b)

    diff = S_a.total - S_b.total
    heuristic = "a" if diff > 0 else "b" if diff < 0 else "tie"
    return ComparisonResult(a, b, S_a, S_b, order, X_a, X_b, applies, consistent, heuristic)


# -----------------------------------------------------------------------------
# Design search
# -----------------------------------------------------------------------------
def integer_partitions(n: int, _pivot: int = 1) -> Generator[tuple, None, None]:
    """Every partition of n as an ascending tuple."""
    yield (n,)
    for i in range(_pivot, n // 2 + 1):
        for p in integer_partitions(n - i, _pivot=i):
            yield (i,) + p


def integer_compositions(n: int) -> Generator[tuple, None, None]:
    """Every ordered sequence of positive integers summing to n."""
    yield (n,)
    for i in range(1, n):
        for rest in integer_compositions(n - i):
            yield (i,) + rest


@dataclass(frozen=True)
class DesignResult:
    objective: str
    players: int
    max_periods: Optional[int]
    best_contest: Optional[Contest]
    best_value: Optional[float]
    evaluated_count: int
    skipped: int
    # (contest, X*, status) per candidate, in enumeration order
    evaluated: tuple = ()


def _evaluate(item):
    parts, kernel, options = item
    solution = solve(Contest(parts), kernel, **options)
    return parts, str(solution.status), solution.X_star


def _run_all(items: list, jobs: int, progress: bool, desc: str) -> list:
    bar = dict(total=len(items), ncols=70, file=sys.stderr, disable=not progress, desc=desc)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(tqdm(pool.map(_evaluate, items, chunksize=4), **bar))
    return [_evaluate(item) for item in tqdm(items, **bar)]


def _normalize_objective(objective: str) -> str:
    key = objective.lower()
    if key in ("max", "maximize"):
        return "maximize"
    if key in ("min", "minimize"):
        return "minimize"
    raise ValueError(f"objective must be maximize or minimize, got {objective!r}")


def design_optimize(n: int, kernel: PayoffKernel, objective: str = "maximize",
                    max_periods: Optional[int] = None, compositions: bool = False,
                    jobs: int = 1, progress: bool = False, **options) -> DesignResult:
    """Disclosure structure of ``n`` players with the highest (or lowest) X*.

    Partitions suffice because X* ignores the order of the periods;
    ``compositions`` enumerates every ordering instead.
    """
    if n < 1:
        raise InvalidContest(f"design needs at least one player, got {n}")
    if max_periods is not None and max_periods < 1:
        raise InvalidContest(f"max_periods must be at least 1, got {max_periods}")
    objective = _normalize_objective(objective)
    limit = n if max_periods is None else max_periods
    source = integer_compositions(n) if compositions else integer_partitions(n)
    candidates = [p for p in source if len(p) <= limit]
    logger.debug("design over {} candidates of {} players", len(candidates), n)

    results = _run_all([(p, kernel, options) for p in candidates], jobs, progress, "design")
    scored = [(p, x) for p, status, x in results
              if status != str(Status.NO_INTERIOR) and x is not None]
    if not scored:
        return DesignResult(objective, n, max_periods, None, None, len(results), len(results),
                            tuple((Contest(p), x, s) for p, s, x in results))

    pick = max if objective == "maximize" else min
    best_value = pick(x for _, x in scored)
    tied = [tuple(sorted(p)) for p, x in scored if abs(x - best_value) <= TIE_TOL]
    best = min(tied)
    best_value = next(x for p, x in scored if tuple(sorted(p)) == best)
    return DesignResult(objective, n, max_periods, Contest(best), best_value, len(results),
                        len(results) - len(scored),
                        tuple((Contest(p), x, s) for p, s, x in results))


# -----------------------------------------------------------------------------
# Large contests
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class ApproxSolution:
    contest: Contest
    kernel: str
    alpha: float
    S: float
    X_star_approx: float
    # sum of the approximate efforts, 1 - 1/(1 + S)
    X_star_linearized: float
    efforts_approx: tuple
    hhi_approx: float
    hhi_limit: float


def large_contest_approx(contest: Contest, kernel: PayoffKernel) -> ApproxSolution:
    """First-order closed form: x_t = alpha / prod_{s<=t}(1 + alpha n_s), 1 - X* = 1/S(n)."""
    alpha = kernel.alpha()
    product = 1.0
    per_period = []
    for n in contest.n:
        product *= 1 + alpha * n
        per_period.append(alpha / product)
    S = product - 1
    linear = sum(n * x for n, x in zip(contest.n, per_period))
    hhi = sum(n * x * x for n, x in zip(contest.n, per_period)) / linear ** 2
    return ApproxSolution(
        contest, kernel.spec, alpha, S, 1 - 1 / S, linear,
        tuple((x,) * n for x, n in zip(per_period, contest.n)),
        hhi, alpha ** 2 / ((1 + alpha) ** 2 - 1),
    )


@dataclass(frozen=True)
class EquivalentSize:
    n_seq: int
    X_seq: float
    exact: int
    smallest_dominating: int
    approx: float


def _sim_total(m: int, kernel: PayoffKernel, options: dict) -> float:
    solution = solve(Contest((m,)), kernel, **options)
    return solution.X_star or 0.0


def equivalent_sim_size(n_seq: int, kernel: Optional[PayoffKernel] = None, **options) -> EquivalentSize:
    """Simultaneous contest size matching the total effort of n_seq sequential players."""
    if n_seq < 2:
        raise InvalidContest(f"equivalent size needs at least two sequential players, got {n_seq}")
    kernel = kernel or Tullock()
    X_seq = solve(Contest((1,) * n_seq), kernel, **options).X_star

    lo, hi = 1, 2
    while _sim_total(hi, kernel, options) < X_seq:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _sim_total(mid, kernel, options) >= X_seq:
            hi = mid
        else:
            lo = mid
    below, above = _sim_total(lo, kernel, options), _sim_total(hi, kernel, options)
    nearest = lo if abs(below - X_seq) < abs(above - X_seq) else hi

    alpha = kernel.alpha()
    approx = (1 + alpha) ** n_seq / alpha
    logger.debug("{} sequential players ~ {} simultaneous", n_seq, nearest)
    return EquivalentSize(n_seq, X_seq, nearest, hi, approx)


# -----------------------------------------------------------------------------
# Earlier-mover advantage
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class MoverReport:
    contest: Contest
    verdict: str
    efforts: tuple
    direct_gaps: tuple
    formula_gaps: tuple
    formula_agrees: bool


def earlier_mover_report(solution: EquilibriumSolution, tol: float = 1e-9) -> MoverReport:
    """Consecutive-period effort gaps, directly and as
    sum_k [S_k(n^t) - S_k(n^{t+1})] g_{k+1}(X*).
    """
    if solution.X_star is None:
        raise ValueError(f"({solution.contest}) has no equilibrium to report on")
    fseq = solution.fseq
    T = fseq.T
    X = solution.X_star_exact if solution.X_star_exact is not None else solution.X_star
    g = [float(v) for v in fseq.gseq.values(X, T)]

    efforts = tuple(solution.period_efforts)
    direct = tuple(efforts[t - 1] - efforts[t] for t in range(1, T))
    formula = []
    for t in range(1, T):
        here, after = fseq.suffix[t], fseq.suffix[t + 1]
        formula.append(sum((here[k - 1] - (after[k - 1] if k <= len(after) else 0)) * g[k]
                           for k in range(1, T - t + 1)))
    agrees = all(abs(a - b) <= tol for a, b in zip(direct, formula))

    if all(abs(d) <= tol for d in direct):
        verdict = "flat"
    elif all(d > tol for d in direct):
        verdict = "strict_earlier_advantage"
    elif all(d < -tol for d in direct):
        verdict = "later_advantage"
    else:
        verdict = "mixed"
    return MoverReport(solution.contest, verdict, efforts, direct, tuple(formula), agrees)


# -----------------------------------------------------------------------------
# Convergence sweeps
# -----------------------------------------------------------------------------
def family_contest(family: str, n: int) -> Contest:
    key = FAMILIES.get(family)
    if key is None:
        raise ValueError(f"unknown contest family {family!r}, expected one of {sorted(FAMILIES)}")
    if n < 1:
        raise InvalidContest(f"family contests need n >= 1, got {n}")
    if key == "seq":
        return Contest((1,) * n)
    if key == "sim" or n == 1:
        return Contest((n,))
    if key == "half":
        return Contest((math.ceil(n / 2), n // 2))
    return Contest((1, n - 1))


def convergence_table(family: str, n_values, kernel: PayoffKernel, jobs: int = 1,
                      progress: bool = False, **options) -> pd.DataFrame:
    """Rows (n, contest, X*, 1 - X*, S(n), S(n)(1 - X*), status) along a contest family."""
    contests = [family_contest(family, n) for n in n_values]
    results = _run_all([(c.n, kernel, options) for c in contests], jobs, progress, "sweep")
    alpha = kernel.alpha()
    rows = []
    for n, contest, (_, status, X) in zip(n_values, contests, results):
        S = float(info_measures(contest).weighted_total(alpha))
        gap = None if X is None else 1 - X
        rows.append({
            "n": n,
            "contest": str(contest),
            "X_star": X,
            "one_minus_X_star": gap,
            "S": S,
            "dissipation_ratio": None if gap is None else S * gap,
            "status": status,
        })
    return pd.DataFrame(rows, columns=["n", "contest", "X_star", "one_minus_X_star", "S",
                                       "dissipation_ratio", "status"])
