"""Inverted best responses f_T, ..., f_0 and the discouragement sequence g_k.

f_T(X) = X and f_{t-1} = f_t - n_t f_t' g. Equivalently
f_t = X - sum_k S_k(n^t) g_k with g_1 = g and g_{k+1} = -g_k' g, where
S_k are the elementary symmetric polynomials of the sub-contest
n^t = (n_{t+1}, ..., n_T). Both forms are built and must agree.

Three evaluation paths share one interface:

    exact   rational polynomials, certified root isolation (polynomial g)
    grid    float Taylor jets, sign scans on dense grids
    mp      mpmath measure form for contests beyond exact capacity
"""
from __future__ import annotations

import numbers
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Optional

import mpmath
import numpy as np
from loguru import logger
from scipy import optimize

from lib.config import DEFAULTS
from lib.errors import IdentityMismatch, InvalidContest, UnsupportedOrder
from lib.jets import discouragement_jets, identity_jet, jet_axpy, jet_diff, jet_mul
from lib.kernels import PayoffKernel, check_t_monotone
from lib.polys import (ExactPoly, IsolatedRoot, compare_roots,
                       isolate_roots_unit, refine_root)

METHODS = ("auto", "exact", "grid", "mp")

# lowest scan point for kernels singular at zero
_FLOOR = 1e-9
_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+)\s*)?$")


def _is_whole(part) -> bool:
    if isinstance(part, bool):
        return False
    if isinstance(part, numbers.Integral):
        return True
    try:
        return float(part).is_integer()
    except (TypeError, ValueError, OverflowError):
        return False


@dataclass(frozen=True)
class Contest:
    """Disclosure structure n = (n_1, ..., n_T)."""

    n: tuple

    def __post_init__(self):
        try:
            parts = tuple(self.n)
        except TypeError:
            raise InvalidContest(f"contest must be a sequence of group sizes, got {self.n!r}")
        if not parts:
            raise InvalidContest("contest needs at least one period")
        clean = []
        for part in parts:
            if not _is_whole(part) or int(part) < 1:
                raise InvalidContest(f"group sizes must be positive integers, got {part!r}")
            clean.append(int(part))
        object.__setattr__(self, "n", tuple(clean))

    @classmethod
    def parse(cls, spec: str) -> "Contest":
        """Parse ``"1,2,1"`` or ``"1^5"`` style specifications."""
        if spec is None or not str(spec).strip():
            raise InvalidContest("empty contest specification")
        parts = []
        for token in str(spec).split(","):
            m = _TOKEN.match(token)
            if m is None:
                raise InvalidContest(f"cannot parse contest token {token!r} in {spec!r}")
            size, repeat = int(m.group(1)), int(m.group(2) or 1)
            if repeat < 1:
                raise InvalidContest(f"repetition must be positive in {token!r}")
            parts.extend([size] * repeat)
        return cls(tuple(parts))

    @property
    def periods(self) -> int:
        return len(self.n)

    @property
    def players(self) -> int:
        return sum(self.n)

    def suffix(self, t: int) -> tuple:
        """Sub-contest n^t of the players acting after period t."""
        return self.n[t:]

    def censor(self, T: int) -> "Contest":
        """Keep the first T-1 disclosures and pool everybody else in period T."""
        if T < 1:
            raise InvalidContest("censoring needs T >= 1")
        if T >= self.periods:
            return self
        return Contest(self.n[: T - 1] + (sum(self.n[T - 1:]),))

    def sorted(self) -> "Contest":
        return Contest(tuple(sorted(self.n)))

    def __iter__(self):
        return iter(self.n)

    def __len__(self):
        return len(self.n)

    def __str__(self):
        return ",".join(str(x) for x in self.n)


def elementary_symmetric(values) -> tuple:
    """(S_1, ..., S_T) from the expansion of prod (1 + v z)."""
    coeffs = [1]
    for v in values:
        coeffs = [a + v * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return tuple(coeffs[1:])


@dataclass(frozen=True)
class InfoMeasures:
    S: tuple

    def weighted_total(self, alpha=1):
        """S(n) = sum_k alpha^k S_k = prod (1 + alpha n_t) - 1."""
        return sum(alpha ** (k + 1) * s for k, s in enumerate(self.S))

    def padded(self, length: int) -> tuple:
        return self.S + (0,) * (length - len(self.S))

    @property
    def total(self) -> int:
        return sum(self.S)

    def __len__(self):
        return len(self.S)


def info_measures(contest: Contest) -> InfoMeasures:
    return InfoMeasures(elementary_symmetric(contest.n))


def suffix_measures(contest: Contest) -> tuple:
    """S(n^t) for t = 0..T, by accumulating products from the last period."""
    T = contest.periods
    out = [()] * (T + 1)
    coeffs = [1]
    for t in range(T - 1, -1, -1):
        v = contest.n[t]
        coeffs = [a + v * b for a, b in zip(coeffs + [0], [0] + coeffs)]
        out[t] = tuple(coeffs[1:])
    return tuple(out)


@dataclass(frozen=True)
class GSequence:
    """g_1, ..., g_T; exact polynomials when g is a polynomial."""

    kernel: PayoffKernel
    T: int
    polys: Optional[tuple] = None

    @cached_property
    def _derivatives(self) -> tuple:
        return tuple(p.derivative() for p in self.polys)

    def value(self, k: int, X):
        if self.polys is not None and k <= len(self.polys):
            return self.polys[k - 1].eval(X)
        return self.values(X, k)[k - 1]

    def values(self, X, K: Optional[int] = None, derivatives: bool = False):
        """[g_1(X), ..., g_K(X)], plus the list of g_k'(X) when asked."""
        K = self.T if K is None else K
        if K == 0:
            return ([], []) if derivatives else []
        if self.polys is not None and K <= len(self.polys):
            vals = [p.eval(X) for p in self.polys[:K]]
            if derivatives:
                return vals, [d.eval(X) for d in self._derivatives[:K]]
            return vals
        jets = discouragement_jets(self.kernel.g_jet(X, K), K)
        vals = [j[0] for j in jets]
        if derivatives:
            return vals, [j[1] for j in jets]
        return vals


def build_g_sequence(kernel: PayoffKernel, T: int) -> GSequence:
    if not kernel.supports_order(T):
        raise UnsupportedOrder(f"{kernel.spec} cannot support a {T}-period contest")
    if not kernel.is_polynomial:
        return GSequence(kernel, T)
    g = kernel.poly
    polys = [g]
    for _ in range(T - 1):
        polys.append(-(polys[-1].derivative() * g))
    return GSequence(kernel, T, tuple(polys))


@dataclass(frozen=True)
class FSequence:
    contest: Contest
    kernel: PayoffKernel
    method: str
    gseq: GSequence
    suffix: tuple
    polys: Optional[tuple] = None
    thresholds: tuple = ()
    brackets: Optional[tuple] = None
    # periods whose highest root falls below the next threshold
    missing: tuple = ()
    dps: int = 0
    root_lists: Optional[tuple] = field(default=None, repr=False, compare=False)
    mp_thresholds: Optional[tuple] = field(default=None, repr=False, compare=False)

    @property
    def T(self) -> int:
        return self.contest.periods

    @cached_property
    def _dpolys(self) -> tuple:
        return tuple(p.derivative() for p in self.polys)

    def value(self, t: int, X):
        """f_t(X) in the numeric kind of X."""
        if self.method == "exact":
            return self.polys[t].eval(X)
        if self.method == "grid":
            return self.value_by_recursion(t, X)
        return self._mp_apply(self.value_by_measures, t, X)

    def derivative(self, t: int, X):
        if self.method == "exact":
            return self._dpolys[t].eval(X)
        return self._mp_apply(self._measure_derivative, t, X) if self.method == "mp" \
            else self._measure_derivative(t, X)

    def value_by_recursion(self, t: int, X):
        n = self.contest.n
        G = self.kernel.g_jet(X, self.T - t)
        f = identity_jet(X, self.T - t + 1)
        for s in range(self.T, t, -1):
            f = jet_axpy(f, n[s - 1], jet_mul(jet_diff(f), G))
        return f[0]

    def value_by_measures(self, t: int, X):
        S = self.suffix[t]
        if not S:
            return X
        gk = self.gseq.values(X, len(S))
        return X - sum(s * v for s, v in zip(S, gk))

    def _measure_derivative(self, t: int, X):
        S = self.suffix[t]
        one = X * 0 + 1
        if not S:
            return one
        _, dgk = self.gseq.values(X, len(S), derivatives=True)
        return one - sum(s * v for s, v in zip(S, dgk))

    def _mp_apply(self, fn, t, X):
        if self.method != "mp" or isinstance(X, (mpmath.mpf, Fraction)):
            with mpmath.workdps(max(self.dps, 15)):
                return fn(t, X)
        with mpmath.workdps(self.dps):
            if isinstance(X, np.ndarray):
                return np.array([float(fn(t, mpmath.mpf(float(x)))) for x in X.ravel()]).reshape(X.shape)
            return float(fn(t, mpmath.mpf(float(X))))


def choose_method(contest: Contest, kernel: PayoffKernel, method: str = "auto",
                  exact_max_periods: int = DEFAULTS.SOLVER.EXACT_MAX_PERIODS,
                  grid_max_players: int = DEFAULTS.SOLVER.GRID_MAX_PLAYERS) -> str:
    if method not in METHODS:
        raise ValueError(f"unknown evaluation method {method!r}, expected one of {METHODS}")
    if method == "exact" and not kernel.is_polynomial:
        raise ValueError(f"{kernel.spec} is not polynomial; exact evaluation is unavailable")
    if method != "auto":
        return method
    if kernel.is_polynomial and contest.periods <= exact_max_periods:
        return "exact"
    if not kernel.is_polynomial and contest.players <= grid_max_players:
        return "grid"
    return "mp"


def build_f_sequence(contest: Contest, kernel: PayoffKernel, method: str = DEFAULTS.SOLVER.METHOD,
                     tol: float = DEFAULTS.SOLVER.TOL,
                     scan_points: int = DEFAULTS.CONDITIONS.SCAN_POINTS,
                     identity_tol: float = DEFAULTS.CONDITIONS.IDENTITY_TOL,
                     identity_points: int = DEFAULTS.CONDITIONS.IDENTITY_POINTS,
                     exact_max_periods: int = DEFAULTS.SOLVER.EXACT_MAX_PERIODS,
                     grid_max_players: int = DEFAULTS.SOLVER.GRID_MAX_PLAYERS,
                     mp_dps: int = DEFAULTS.SOLVER.MP_DPS) -> FSequence:
    method = choose_method(contest, kernel, method, exact_max_periods, grid_max_players)
    gseq = build_g_sequence(kernel, contest.periods)
    base = FSequence(contest, kernel, method, gseq, suffix_measures(contest))
    logger.debug("building f-sequence for ({}) with {} via {}", contest, kernel.spec, method)
    if method == "exact":
        return _build_exact(base, tol)
    elif method == "grid":
        return _build_grid(base, tol, scan_points, identity_tol, identity_points)
    return _build_mp(base, tol, identity_tol, mp_dps)


def _build_exact(fseq: FSequence, tol) -> FSequence:
    contest, T = fseq.contest, fseq.T
    X = ExactPoly.x()
    g = fseq.kernel.poly
    f = X
    polys = [X]
    for t in range(T, 0, -1):
        f = f - contest.n[t - 1] * (f.derivative() * g)
        polys.append(f)
    polys = tuple(reversed(polys))

    for t in range(T + 1):
        measured = X
        for s, gk in zip(fseq.suffix[t], fseq.gseq.polys):
            measured = measured - s * gk
        if measured != polys[t]:
            raise IdentityMismatch(
                f"f_{t} of ({contest}) differs between recursion and measures: "
                f"{polys[t]!r} vs {measured!r}"
            )

    thresholds = [None] * (T + 1)
    brackets = [None] * (T + 1)
    root_lists = [None] * (T + 1)
    missing = []
    for t in range(T, -1, -1):
        roots = isolate_roots_unit(polys[t])
        root_lists[t] = roots
        if not roots.intervals:
            missing.append(t)
            continue
        top = refine_root(roots.squarefree, roots.intervals[-1], tol)
        brackets[t] = top
        thresholds[t] = float(top.midpoint)
        if t < T and brackets[t + 1] is not None:
            here = IsolatedRoot(roots.squarefree, top)
            below = IsolatedRoot(root_lists[t + 1].squarefree, brackets[t + 1])
            if compare_roots(here, below) < 0:
                missing.append(t)
    if missing:
        logger.debug("({}) thresholds missing for periods {}", contest, missing)
    return replace(fseq, polys=polys, thresholds=tuple(thresholds), brackets=tuple(brackets),
                   missing=tuple(sorted(missing)), root_lists=tuple(root_lists))


def _scan_highest_root(f, lo: float, points: int, tol: float) -> Optional[float]:
    grid = np.linspace(lo, 1.0, points)
    with np.errstate(all="ignore"):
        vals = np.asarray(f(grid), dtype=float)
    nonpos = np.nonzero(vals <= 0)[0]
    if len(nonpos) == 0:
        return lo if abs(vals[0]) <= 1e-9 else None
    i = nonpos[-1]
    if vals[i] == 0 or i == len(grid) - 1:
        return float(grid[i])
    return optimize.brentq(lambda x: float(f(np.array([x]))[0]), grid[i], grid[i + 1],
                           xtol=tol, rtol=1e-15)


def _build_grid(fseq: FSequence, tol, scan_points, identity_tol, identity_points) -> FSequence:
    T = fseq.T
    floor = _FLOOR if fseq.kernel.singular_at_zero else 0.0

    start = 1e-3 if fseq.kernel.singular_at_zero else 0.0
    grid = np.linspace(start, 1.0, identity_points)
    with np.errstate(all="ignore"):
        for t in range(T + 1):
            rec = np.asarray(fseq.value_by_recursion(t, grid), dtype=float)
            mea = np.asarray(fseq.value_by_measures(t, grid), dtype=float)
            err = np.abs(rec - mea) / np.maximum(1.0, np.abs(rec))
            if not np.all(err <= identity_tol):
                i = int(np.nanargmax(err))
                raise IdentityMismatch(
                    f"f_{t} of ({fseq.contest}) with {fseq.kernel.spec}: recursion {rec[i]} "
                    f"vs measures {mea[i]} at X={grid[i]}"
                )

    thresholds = [None] * (T + 1)
    thresholds[T] = 0.0
    missing = []
    lo = 0.0
    for t in range(T - 1, -1, -1):
        f = lambda x, t=t: fseq.value_by_recursion(t, x)
        root = _scan_highest_root(f, max(lo, floor), scan_points, tol)
        if root is None:
            missing.append(t)
            root = _scan_highest_root(f, floor, scan_points, tol)
        thresholds[t] = root
        if root is not None:
            lo = max(lo, root)
    return replace(fseq, thresholds=tuple(thresholds), missing=tuple(sorted(missing)))


def _build_mp(fseq: FSequence, tol, identity_tol, mp_dps) -> FSequence:
    T = fseq.T
    biggest = max((max(s) for s in fseq.suffix if s), default=1)
    dps = mp_dps + 2 * T + len(str(biggest))
    fseq = replace(fseq, dps=dps)
    alpha = fseq.kernel.alpha()

    with mpmath.workdps(dps):
        S_total = sum(alpha ** (k + 1) * s for k, s in enumerate(fseq.suffix[0]))
        probes = sorted({0.5, 0.9, 0.99, max(0.5, 1 - 1 / S_total), 1.0})
        for t in range(T + 1):
            for x in probes:
                X = mpmath.mpf(x)
                rec = fseq.value_by_recursion(t, X)
                mea = fseq.value_by_measures(t, X)
                if abs(rec - mea) > identity_tol * max(1, abs(rec)):
                    raise IdentityMismatch(
                        f"f_{t} of ({fseq.contest}) with {fseq.kernel.spec}: recursion "
                        f"{mpmath.nstr(rec, 17)} vs measures {mpmath.nstr(mea, 17)} at X={x}"
                    )

        width = mpmath.mpf(tol) * mpmath.mpf(10) ** -8
        roots = [None] * (T + 1)
        roots[T] = mpmath.mpf(0)
        missing = []
        for t in range(T - 1, -1, -1):
            S = sum(alpha ** (k + 1) * s for k, s in enumerate(fseq.suffix[t]))
            step = mpmath.mpf(min(1 / 64, 1 / (4 * S)))
            root = _descending_scan(lambda X, t=t: fseq.value_by_measures(t, X), step, width)
            roots[t] = root
            if root is None or (roots[t + 1] is not None and root < roots[t + 1]):
                missing.append(t)
        thresholds = tuple(None if r is None else float(r) for r in roots)
    return replace(fseq, thresholds=thresholds, missing=tuple(sorted(missing)),
                   mp_thresholds=tuple(roots))


def _descending_scan(f, step, width):
    """Highest root of f in [0, 1] for f(1) > 0: step down from 1, then bisect."""
    hi = mpmath.mpf(1)
    while hi > 0:
        lo = max(hi - step, mpmath.mpf(0))
        v = f(lo)
        if v == 0:
            return lo
        if v < 0:
            while hi - lo > width:
                mid = (lo + hi) / 2
                if f(mid) < 0:
                    lo = mid
                else:
                    hi = mid
            return (lo + hi) / 2
        hi = lo
    return None


# -----------------------------------------------------------------------------
# Condition reports
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class PeriodWitness:
    t: int
    threshold: Optional[float]
    root_found: bool
    sign_ok: bool
    monotone_ok: bool
    # first point below the threshold where f_t stops being negative
    crossing: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.root_found and self.sign_ok and self.monotone_ok


@dataclass(frozen=True)
class Condition1Report:
    verdict: str
    certification: str
    witnesses: tuple
    certified_by_monotonicity: bool = False

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


@dataclass(frozen=True)
class Condition2Report:
    verdict: str
    values: tuple
    first_nonpositive: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


@dataclass(frozen=True)
class ConditionReport:
    condition1: Condition1Report
    condition2: Optional[Condition2Report] = None

    @property
    def certified_by_monotonicity(self) -> bool:
        return self.condition1.certified_by_monotonicity


def _separate(a: IsolatedRoot, b: IsolatedRoot):
    """Refine a < b until their brackets are disjoint."""
    while not a.interval.hi < b.interval.lo:
        if not a.interval.is_exact:
            a = a.refine(a.interval.width / 4)
        if not b.interval.is_exact:
            b = b.refine(b.interval.width / 4)
    return a, b


def _negative_between(poly: ExactPoly, roots: list, top: IsolatedRoot, prev: IsolatedRoot) -> bool:
    if len(roots) >= 2 and compare_roots(roots[-2], prev) > 0:
        return False
    lower, upper = _separate(prev, top)
    return poly.eval((lower.interval.hi + upper.interval.lo) / 2) < 0


def _increasing_above(poly: ExactPoly, top: IsolatedRoot) -> bool:
    d = poly.derivative()
    if d.is_zero or d.eval(Fraction(1)) <= 0:
        return False
    droots = isolate_roots_unit(d)
    if not droots.intervals:
        return True
    highest = IsolatedRoot(droots.squarefree, droots.intervals[-1])
    return compare_roots(highest, top) <= 0


def _exact_witnesses(fseq: FSequence) -> list:
    T = fseq.T
    out = []
    prev = IsolatedRoot(fseq.root_lists[T].squarefree, fseq.brackets[T])
    for t in range(T - 1, -1, -1):
        rl, bracket = fseq.root_lists[t], fseq.brackets[t]
        if bracket is None:
            out.append(PeriodWitness(t, None, False, False, False))
            continue
        top = IsolatedRoot(rl.squarefree, bracket)
        order = compare_roots(top, prev)
        root_found = order >= 0
        if order == 0:
            sign_ok = True
        else:
            sign_ok = root_found and _negative_between(fseq.polys[t], rl.roots(), top, prev)
        out.append(PeriodWitness(t, fseq.thresholds[t], root_found, sign_ok,
                                 _increasing_above(fseq.polys[t], top)))
        prev = top
    return out


def _negative_below(fseq: FSequence, t: int, lo: float, top: float, scan_points: int, tol: float):
    """Check f_t < 0 on (lo, top) by a scan refined where the samples come closest to zero.

    Returns (sign_ok, crossing); crossing locates the first sign change when
    there is one.
    """
    f = lambda x: np.asarray(fseq.value(t, x), dtype=float)
    inner = np.linspace(lo, top, scan_points + 2)[1:-1]
    values = f(inner)
    bad = np.flatnonzero(~(values < 0))
    if len(bad) == 0:
        i = int(np.argmax(values))
        a = inner[i - 1] if i > 0 else lo
        b = inner[i + 1] if i + 1 < len(inner) else top
        local = np.linspace(a, b, scan_points + 2)[1:-1]
        local_bad = np.flatnonzero(~(f(local) < 0))
        if len(local_bad) == 0:
            return True, None
        inner, bad = local, local_bad
    i = int(bad[0])
    right = float(inner[i])
    left = float(inner[i - 1]) if i > 0 else lo
    if i > 0 and f(np.array([left]))[0] < 0 < f(np.array([right]))[0]:
        crossing = optimize.brentq(lambda x: float(f(np.array([x]))[0]), left, right,
                                   xtol=tol, rtol=1e-15)
    else:
        crossing = right
    logger.debug("f_{} of ({}) is not negative below its threshold near X={}", t, fseq.contest, crossing)
    return False, float(crossing)


def _grid_witnesses(fseq: FSequence, scan_points: int, eps: float, tol: float) -> list:
    out = []
    for t in range(fseq.T - 1, -1, -1):
        top = fseq.thresholds[t]
        if top is None:
            out.append(PeriodWitness(t, None, False, False, False))
            continue
        lo = fseq.thresholds[t + 1] or 0.0
        sign_ok, crossing = True, None
        with np.errstate(all="ignore"):
            if top - lo > tol:
                sign_ok, crossing = _negative_below(fseq, t, lo, top, scan_points, tol)
            upper = np.linspace(top, 1.0, scan_points)
            d = np.asarray(fseq.derivative(t, upper), dtype=float)
        monotone_ok = bool(d[0] >= -eps and np.all(d[1:] > 0))
        out.append(PeriodWitness(t, top, t not in fseq.missing, sign_ok, monotone_ok, crossing))
    return out


def _threshold_witnesses(fseq: FSequence) -> list:
    out = []
    for t in range(fseq.T - 1, -1, -1):
        found = fseq.thresholds[t] is not None and t not in fseq.missing
        out.append(PeriodWitness(t, fseq.thresholds[t], found, found, found))
    return out


def _interior_candidate(fseq: FSequence) -> bool:
    if fseq.method == "exact":
        b = fseq.brackets[0]
        return b is not None and b.hi > 0 and b.lo < 1
    if fseq.mp_thresholds is not None:
        top = fseq.mp_thresholds[0]
        return top is not None and 0 < top < 1
    top = fseq.thresholds[0]
    return top is not None and 0 < top < 1


def check_condition1(fseq: FSequence, scan_points: int = DEFAULTS.CONDITIONS.SCAN_POINTS,
                     eps_mono: float = DEFAULTS.CONDITIONS.EPS_MONO,
                     monotone_points: int = DEFAULTS.CONDITIONS.MONOTONE_POINTS,
                     tol: float = DEFAULTS.SOLVER.TOL) -> Condition1Report:
    """Well-behavedness of f_T..f_0: a root above the previous threshold,
    negativity below it and strict increase above it, with X_0 in (0, 1).
    """
    kernel, T = fseq.kernel, fseq.T
    licensed = False
    if kernel.supports_order(T):
        licensed = check_t_monotone(kernel, T, monotone_points, eps_mono).passed

    undecided = False
    if fseq.method == "exact":
        witnesses, certification = _exact_witnesses(fseq), "exact"
    elif fseq.method == "grid" and not licensed:
        witnesses, certification = _grid_witnesses(fseq, scan_points, eps_mono, tol), "grid"
    else:
        witnesses = _threshold_witnesses(fseq)
        if licensed:
            certification = "monotone"
        elif kernel.proven_condition1:
            certification = "analytic"
        else:
            certification, undecided = "none", True

    passed = all(w.ok for w in witnesses) and _interior_candidate(fseq)
    if passed and undecided:
        verdict = "unverified"
    else:
        verdict = "pass" if passed else "fail"
    logger.debug("condition 1 for ({}): {} [{}]", fseq.contest, verdict, certification)
    return Condition1Report(verdict, certification, tuple(witnesses), licensed)


def check_condition2(gseq: GSequence, Xstar, eps: float = DEFAULTS.CONDITIONS.EPS_COND) -> Condition2Report:
    """Higher-order strategic substitutes: g_k(X*) > eps for k = 2..T."""
    values = gseq.values(Xstar, gseq.T)[1:]
    pairs = tuple((k, float(v)) for k, v in enumerate(values, start=2))
    first = next((k for k, v in pairs if v <= eps), None)
    if first is None:
        verdict = "pass"
    elif any(v < -eps for _, v in pairs):
        verdict = "fail"
    else:
        verdict = "boundary"
    return Condition2Report(verdict, pairs, first)
