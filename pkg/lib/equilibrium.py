"""Unique subgame-perfect equilibrium of a contest and its off-path behaviour."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np
from loguru import logger

from lib.config import DEFAULTS
from lib.errors import OutOfRange, ThresholdNotFound
from lib.kernels import PayoffKernel, monopoly_quantity
from lib.polys import RootInterval
from lib.recursion import (ConditionReport, Contest, FSequence, build_f_sequence,
                           check_condition1, check_condition2)

# |X* - X_1| below this marks a first period that barely enters
BOUNDARY_TIE_TOL = 1e-10


class Status(str, Enum):
    SOLVED = "Solved"
    NO_INTERIOR = "NoInteriorCandidate"
    UNVERIFIED = "ConditionsUnverified"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EquilibriumSolution:
    contest: Contest
    kernel: str
    status: Status
    method: str
    tol: float
    X_star: Optional[float]
    cumulative: tuple
    # per-player efforts, one tuple per period
    efforts: tuple
    payoffs: tuple
    conditions: ConditionReport
    X_star_exact: Optional[Fraction] = None
    X_star_bracket: Optional[RootInterval] = None
    efforts_exact: Optional[tuple] = None
    boundary_tie: bool = False
    hhi: Optional[float] = None
    monopoly: Optional[float] = None
    fseq: Optional[FSequence] = field(default=None, repr=False, compare=False)

    @property
    def solved(self) -> bool:
        return self.status is Status.SOLVED

    @property
    def flat_efforts(self) -> list:
        return [x for period in self.efforts for x in period]

    @property
    def flat_payoffs(self) -> list:
        return [u for period in self.payoffs for u in period]

    @property
    def period_efforts(self) -> list:
        return [period[0] for period in self.efforts]

    @property
    def above_monopoly(self) -> Optional[bool]:
        if self.X_star is None or self.monopoly is None:
            return None
        return self.X_star > self.monopoly


def _star_point(fseq: FSequence):
    """X* in the number kind of the evaluation path, with its exact form when known."""
    if fseq.method == "exact":
        bracket = fseq.brackets[0]
        exact = bracket.lo if bracket.is_exact else None
        return (exact if exact is not None else bracket.midpoint), exact, bracket
    if fseq.method == "mp":
        return fseq.mp_thresholds[0], None, None
    return fseq.thresholds[0], None, None


def solve(contest: Contest, kernel: PayoffKernel, tol: float = DEFAULTS.SOLVER.TOL,
          method: str = DEFAULTS.SOLVER.METHOD, eps_cond: float = DEFAULTS.CONDITIONS.EPS_COND,
          **options) -> EquilibriumSolution:
    """Equilibrium of ``contest``: X* is the highest root of f_0 in [0, 1] and
    each period-t player exerts (f_t(X*) - f_{t-1}(X*)) / n_t.

    ``options`` are forwarded to :func:`lib.recursion.build_f_sequence`.
    """
    fseq = build_f_sequence(contest, kernel, method=method, tol=tol, **options)
    cond1 = check_condition1(fseq, tol=tol)
    T = contest.periods
    monopoly = monopoly_quantity(kernel)

    top = fseq.thresholds[0]
    if top is None or not top > 0:
        logger.info("({}) with {}: no interior candidate", contest, kernel.spec)
        return EquilibriumSolution(
            contest, kernel.spec, Status.NO_INTERIOR, fseq.method, tol, None, (), (), (),
            ConditionReport(cond1, None), monopoly=monopoly, fseq=fseq,
        )

    X, exact, bracket = _star_point(fseq)
    efforts_exact = None
    if fseq.method == "exact":
        levels = [fseq.polys[t].eval(X) for t in range(T + 1)]
        levels[0] = Fraction(0)
        per_period = [(levels[t] - levels[t - 1]) / contest.n[t - 1] for t in range(1, T + 1)]
        if exact is not None:
            efforts_exact = tuple((x,) * n for x, n in zip(per_period, contest.n))
        X_float = float(X)
        cond2 = check_condition2(fseq.gseq, X, eps_cond)
    else:
        with mpmath.workdps(max(fseq.dps, 15)):
            levels = [fseq.value(t, X) for t in range(T + 1)]
            levels[0] = 0 * X
            per_period = [(levels[t] - levels[t - 1]) / contest.n[t - 1] for t in range(1, T + 1)]
            cond2 = check_condition2(fseq.gseq, X, eps_cond)
        X_float = float(X)

    h_star = float(kernel.h(X if fseq.method == "exact" else X_float))
    cumulative = tuple(float(v) for v in levels)
    efforts = tuple((float(x),) * n for x, n in zip(per_period, contest.n))
    payoffs = tuple((float(x) * h_star,) * n for x, n in zip(per_period, contest.n))
    hhi = sum(n * (float(x) / X_float) ** 2 for x, n in zip(per_period, contest.n))

    next_threshold = fseq.thresholds[1] if T >= 1 else 0.0
    boundary_tie = next_threshold is not None and abs(X_float - next_threshold) <= BOUNDARY_TIE_TOL
    if boundary_tie:
        logger.warning("({}): X* meets the period-1 threshold, first movers barely enter", contest)

    status = Status.SOLVED if cond1.passed else Status.UNVERIFIED
    logger.debug("({}) with {}: X*={} [{}]", contest, kernel.spec, X_float, status)
    return EquilibriumSolution(
        contest, kernel.spec, status, fseq.method, tol, X_float, cumulative, efforts, payoffs,
        ConditionReport(cond1, cond2), X_star_exact=exact, X_star_bracket=bracket,
        efforts_exact=efforts_exact, boundary_tie=boundary_tie, hhi=hhi, monopoly=monopoly,
        fseq=fseq,
    )


def invert_f(fseq: FSequence, t: int, X_t, tol: float = DEFAULTS.SOLVER.TOL):
    """The X in [X_t-threshold, 1] with f_t(X) = X_t, by bisection."""
    values = np.asarray(X_t, dtype=float)
    if np.any(values < 0) or np.any(values > 1) or np.any(np.isnan(values)):
        raise OutOfRange(f"cumulative effort must lie in [0, 1], got {X_t}")
    if t == fseq.T:
        return X_t if values.ndim else float(values)
    lower = fseq.thresholds[t]
    if lower is None:
        raise ThresholdNotFound(f"f_{t} of ({fseq.contest}) has no threshold")

    target = np.atleast_1d(values)
    lo = np.full(target.shape, float(lower))
    hi = np.ones(target.shape)
    steps = max(1, math.ceil(math.log2(max(1.0 - lower, tol) / tol)) + 1)
    for _ in range(steps):
        mid = (lo + hi) / 2
        below = np.asarray(fseq.value(t, mid), dtype=float) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    out = (lo + hi) / 2
    out = np.where(target == 0, float(lower), out)
    out = np.where(target == 1, 1.0, out)
    return out if values.ndim else float(out[0])


def best_response(fseq: FSequence, t: int, X_prev, tol: float = DEFAULTS.SOLVER.TOL):
    """Per-player period-t effort after cumulative effort X_prev."""
    if not 1 <= t <= fseq.T:
        raise OutOfRange(f"period must lie in 1..{fseq.T}, got {t}")
    prev = np.asarray(X_prev, dtype=float)
    if np.any(prev < 0):
        raise OutOfRange(f"cumulative effort must be nonnegative, got {X_prev}")
    inside = np.atleast_1d(np.minimum(prev, 1.0))
    total = np.asarray(invert_f(fseq, t - 1, inside, tol), dtype=float)
    reached = np.asarray(fseq.value(t, total), dtype=float)
    effort = np.maximum((reached - inside) / fseq.contest.n[t - 1], 0.0)
    effort = np.where(inside >= 1.0, 0.0, effort)
    return effort if prev.ndim else float(effort[0])


def total_after(fseq: FSequence, t: int, X_t, tol: float = DEFAULTS.SOLVER.TOL):
    """Final total effort once cumulative effort X_t is disclosed after period t."""
    values = np.asarray(X_t, dtype=float)
    clipped = np.minimum(values, 1.0)
    out = np.where(values >= 1.0, values, invert_f(fseq, t, clipped, tol))
    return out if values.ndim else float(out)


@dataclass(frozen=True)
class PeriodAudit:
    t: int
    equilibrium_payoff: float
    best_deviation: float
    best_payoff: float
    gain: float


@dataclass(frozen=True)
class SpeAudit:
    contest: Contest
    deviation_grid: int
    periods: tuple
    max_gain: float
    passed: bool


def _deviation_payoffs(fseq: FSequence, kernel: PayoffKernel, t: int, base: float,
                       deviations: np.ndarray) -> np.ndarray:
    X = base + deviations
    for s in range(t + 1, fseq.T + 1):
        X = X + fseq.contest.n[s - 1] * best_response(fseq, s, X)
    payoff = np.zeros_like(deviations)
    active = deviations > 0
    with np.errstate(all="ignore"):
        payoff[active] = deviations[active] * np.asarray(kernel.h(X[active]), dtype=float)
    return payoff


def verify_spe(solution: EquilibriumSolution, kernel: Optional[PayoffKernel] = None,
               deviation_grid: int = DEFAULTS.SPE.DEVIATION_GRID,
               gain_tol: float = DEFAULTS.SPE.GAIN_TOL) -> SpeAudit:
    """Grid search over one player's unilateral deviations in every period.

    Later periods react through :func:`best_response`; the report holds the
    largest payoff gain over the equilibrium payoff.
    """
    if not solution.solved:
        raise ValueError(f"deviation audit needs a solved contest, got status {solution.status}")
    fseq = solution.fseq
    kernel = kernel or fseq.kernel
    audits = []
    for t in range(1, fseq.T + 1):
        before = solution.cumulative[t - 1]
        x_star = solution.efforts[t - 1][0]
        u_star = solution.payoffs[t - 1][0]
        base = before + (fseq.contest.n[t - 1] - 1) * x_star
        deviations = np.linspace(0.0, 1.0 - before, deviation_grid)
        payoff = _deviation_payoffs(fseq, kernel, t, base, deviations)
        i = int(np.argmax(payoff))
        audits.append(PeriodAudit(t, u_star, float(deviations[i]), float(payoff[i]),
                                  float(payoff[i] - u_star)))
    max_gain = max(a.gain for a in audits)
    logger.debug("({}) deviation audit: max gain {}", fseq.contest, max_gain)
    return SpeAudit(fseq.contest, deviation_grid, tuple(audits), max_gain, max_gain <= gain_tol)
