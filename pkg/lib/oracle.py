"""Brute-force checks that do not use the inverted best-response machinery.

``grid_spe`` runs backward induction over cumulative effort on a grid of
``step``; ``sim_fixed_point`` iterates damped best responses of the
simultaneous game on its first-order condition.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np
from loguru import logger
from scipy import interpolate, optimize

from lib.config import DEFAULTS
from lib.errors import InvalidContest, NoConvergence, NoFixedPoint, TooLarge
from lib.kernels import PayoffKernel
from lib.recursion import Contest

_BISECTIONS = 60


@dataclass(frozen=True)
class GridSolution:
    contest: Contest
    kernel: str
    step: float
    # effort per player, one tuple per period
    efforts: tuple
    total: float
    value_tables_digest: str

    @property
    def flat_efforts(self) -> list:
        return [x for period in self.efforts for x in period]

    @property
    def efforts_units(self) -> tuple:
        """Efforts snapped to the nearest multiple of ``step``."""
        return tuple(tuple(int(round(x / self.step)) for x in period) for period in self.efforts)

    @property
    def total_units(self) -> int:
        return sum(u for period in self.efforts_units for u in period)


class _Continuation:
    """Final total as a function of the total disclosed before a period.

    Built from the values at the grid states; the last period continues with
    the identity.
    """

    def __init__(self, nodes: np.ndarray, totals: np.ndarray | None = None):
        self.spline = None if totals is None else interpolate.CubicSpline(nodes, totals)

    def value(self, X: np.ndarray) -> np.ndarray:
        if self.spline is None:
            return X
        # later movers never lower the total
        return np.maximum(self.spline(X), X)

    def slope(self, X: np.ndarray) -> np.ndarray:
        if self.spline is None:
            return np.ones_like(X)
        return self.spline(X, 1)


class _PeriodGame:
    """Symmetric play of the n players of one period.

    A player whose rivals leave the total at b maximizes e * h(C(b + e)); at
    the symmetric point every player exerts (X - s) / n, so the period total X
    solves h(C(X)) + (X - s) / n * h'(C(X)) C'(X) = 0.
    """

    def __init__(self, kernel: PayoffKernel, nodes: np.ndarray, n: int, after: _Continuation):
        self.kernel = kernel
        self.nodes = nodes
        self.n = n
        self.after = after
        # index 0 is never a candidate total
        with np.errstate(all="ignore"):
            C = after.value(nodes[1:])
            self._h = np.concatenate(([np.inf], np.asarray(kernel.h(C), dtype=float)))
            self._dh = np.concatenate(
                ([0.0], np.asarray(kernel.dh(C), dtype=float) * after.slope(nodes[1:])))

    def marginal(self, X: np.ndarray, s) -> np.ndarray:
        C = self.after.value(X)
        with np.errstate(all="ignore"):
            h = np.asarray(self.kernel.h(C), dtype=float)
            dh = np.asarray(self.kernel.dh(C), dtype=float)
        return h + (X - s) / self.n * dh * self.after.slope(X)

    def _bracket(self, s: float):
        """Grid cell holding the first downward crossing of the marginal payoff.

        None when every player stays at zero effort.
        """
        j0 = int(np.searchsorted(self.nodes, s, side="right"))
        if j0 >= len(self.nodes):
            return None
        marginal = self._h[j0:] + (self.nodes[j0:] - s) / self.n * self._dh[j0:]
        down = np.flatnonzero(~(marginal > 0))
        if len(down) == 0:
            raise NoFixedPoint(
                f"no symmetric equilibrium for {self.n} players at state {s}: payoff rises up to X = 1"
            )
        k = j0 + int(down[0])
        if k > j0:
            return self.nodes[k - 1], self.nodes[k]
        if s > 0 and self.marginal(np.array([s]), s)[0] > 0:
            return s, self.nodes[k]
        return None

    def totals(self, states: np.ndarray) -> np.ndarray:
        """Total after this period from each disclosed state."""
        states = np.asarray(states, dtype=float)
        X = states.copy()
        idx, lo, hi = [], [], []
        for i, s in enumerate(states):
            cell = self._bracket(float(s))
            if cell is not None:
                idx.append(i)
                lo.append(cell[0])
                hi.append(cell[1])
        if idx:
            X[idx] = self._bisect(np.array(lo), np.array(hi), states[idx])
        return X

    def _bisect(self, lo: np.ndarray, hi: np.ndarray, s: np.ndarray) -> np.ndarray:
        for _ in range(_BISECTIONS):
            mid = 0.5 * (lo + hi)
            up = self.marginal(mid, s) > 0
            lo = np.where(up, mid, lo)
            hi = np.where(up, hi, mid)
        return 0.5 * (lo + hi)


def grid_spe(contest: Contest, kernel: PayoffKernel, step: float = DEFAULTS.ORACLE.STEP,
             max_players: int = DEFAULTS.ORACLE.MAX_PLAYERS,
             max_periods: int = DEFAULTS.ORACLE.MAX_PERIODS) -> GridSolution:
    """Backward induction with continuation totals tabulated on a grid of cumulative effort."""
    if contest.players > max_players or contest.periods > max_periods:
        raise TooLarge(
            f"({contest}) exceeds the oracle guard of {max_players} players and {max_periods} periods"
        )
    if not 1e-4 <= step <= 1e-2:
        raise TooLarge(f"grid step must lie in [1e-4, 1e-2], got {step}")

    nodes = np.linspace(0.0, 1.0, int(round(1 / step)) + 1)
    after = _Continuation(nodes)
    digest = hashlib.sha256()
    games = [None] * (contest.periods + 1)
    for t in range(contest.periods, 0, -1):
        games[t] = _PeriodGame(kernel, nodes, contest.n[t - 1], after)
        if t == 1:
            break
        final = after.value(games[t].totals(nodes))
        digest.update(final.tobytes())
        after = _Continuation(nodes, final)

    state, efforts = 0.0, []
    for t in range(1, contest.periods + 1):
        X = float(games[t].totals(np.array([state]))[0])
        efforts.append(((X - state) / contest.n[t - 1],) * contest.n[t - 1])
        state = X
    digest.update(np.array(state).tobytes())
    logger.debug("grid SPE for ({}) at step {}: total {}", contest, step, state)
    return GridSolution(contest, kernel.spec, step, tuple(efforts), state, digest.hexdigest())


def _sim_best_response(kernel: PayoffKernel, others: float) -> float:
    """Solve x = g(others + x) on [0, 1 - others]."""
    if others >= 1:
        return 0.0
    phi = lambda x: x - float(kernel.g(0, others + x))
    if phi(0.0) >= 0:
        return 0.0
    return optimize.brentq(phi, 0.0, 1.0 - others, xtol=1e-15, rtol=1e-15)


def sim_fixed_point(n: int, kernel: PayoffKernel, tol: float = DEFAULTS.SIM.TOL,
                    max_iter: int = DEFAULTS.SIM.MAX_ITER) -> float:
    """Total effort of the symmetric simultaneous equilibrium with n players."""
    if n < 2:
        raise InvalidContest(f"the simultaneous fixed point needs n >= 2, got {n}")
    damping = 1 / n
    y = 1 / (2 * n)
    for it in range(max_iter):
        target = _sim_best_response(kernel, (n - 1) * y)
        nxt = (1 - damping) * y + damping * target
        if abs(nxt - y) <= tol:
            logger.debug("simultaneous fixed point for n={} after {} iterations", n, it + 1)
            return n * nxt
        y = nxt
    raise NoConvergence(f"best-response iteration for n={n} did not settle in {max_iter} steps")
