"""Payoff kernels u_i = x_i h(X) and their discouragement function g = -h/h'.

Every family is normalized so that h(1) = 0. Derivatives of g are closed form;
the recursion consumes them up to order T.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import ClassVar, Optional

import mpmath
import numpy as np
from loguru import logger
from scipy import integrate, optimize

from lib.errors import DomainError, InvalidKernel, UnsupportedOrder
from lib.polys import ExactPoly, isolate_roots_unit, to_fraction

# factorials overflow doubles past this order
MAX_ANALYTIC_ORDER = 150


def _is_mp(X) -> bool:
    return isinstance(X, mpmath.mpf)


def _real(X):
    """Drop exactness for transcendental families."""
    if isinstance(X, (Fraction, int)) and not isinstance(X, bool):
        return float(X)
    return X


def _log(X):
    if _is_mp(X):
        return mpmath.log(X)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.log(X)


def _exp(X):
    return mpmath.exp(X) if _is_mp(X) else np.exp(X)


def _signed_power(base, p):
    """sign(base) |base|^p, elementwise."""
    if _is_mp(base):
        return mpmath.sign(base) * abs(base) ** p
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.sign(base) * np.abs(base) ** p


def _fmt(value: Fraction) -> str:
    return repr(float(value)) if value.denominator != 1 else str(value.numerator)


@dataclass(frozen=True)
class MonotoneReport:
    order_checked: int
    passed: bool
    first_failure: Optional[tuple] = None
    failed_orders: tuple = ()

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


class PayoffKernel(ABC):
    """Base of every kernel family.

    Subclasses are frozen dataclasses; values are immutable and may be shared
    across threads and processes.
    """

    family: ClassVar[str] = ""
    is_polynomial: ClassVar[bool] = False
    # None means every order is available
    max_order: ClassVar[Optional[int]] = None
    # the family is known to satisfy Condition 1 for every contest
    proven_condition1: ClassVar[bool] = False
    singular_at_zero: ClassVar[bool] = False

    def g(self, k: int, X):
        if k < 0:
            raise UnsupportedOrder(f"negative derivative order {k}")
        if self.max_order is not None and k > self.max_order:
            raise UnsupportedOrder(
                f"{self.spec} provides derivatives up to order {self.max_order}, asked for {k}"
            )
        return self._g(k, X)

    def g_jet(self, X, order: int) -> list:
        return [self.g(k, X) for k in range(order + 1)]

    def supports_order(self, k: int) -> bool:
        return self.max_order is None or k <= self.max_order

    @abstractmethod
    def _g(self, k: int, X):
        ...

    @abstractmethod
    def h(self, X):
        ...

    @abstractmethod
    def dh(self, X):
        ...

    def alpha(self) -> float:
        a = -self.g(1, 1.0)
        if not a > 0:
            raise InvalidKernel(f"{self.spec}: -g'(1) = {a} is not positive")
        return a

    @property
    @abstractmethod
    def spec(self) -> str:
        ...

    def _check_domain(self, X):
        if self.singular_at_zero and np.any(np.asarray(X, dtype=float) <= 0):
            raise DomainError(f"{self.spec}: h is singular at X <= 0")

    def __str__(self):
        return self.spec


class _PolynomialKernel(PayoffKernel):
    is_polynomial = True

    @property
    @abstractmethod
    def poly(self) -> ExactPoly:
        ...

    @cached_property
    def _chain(self) -> tuple:
        chain = [self.poly]
        while not chain[-1].is_zero:
            chain.append(chain[-1].derivative())
        return tuple(chain)

    def _g(self, k, X):
        chain = self._chain
        return chain[min(k, len(chain) - 1)].eval(X)


class _QuadratureH:
    """h(X) = exp(-integral_{1/2}^X dt / g(t)) for kernels without closed-form h.

    Beyond the normalization point h continues as 1 - X.
    """

    def _h_scalar(self, X: float) -> float:
        if X >= 1.0:
            return 1.0 - X
        if X <= 0.0 and self.g(0, 0.0) == 0:
            raise DomainError(f"{self.spec}: h is singular at X <= 0")
        value, _ = integrate.quad(lambda t: 1.0 / float(self.g(0, t)), 0.5, X, limit=200)
        return math.exp(-value)

    def h(self, X):
        if isinstance(X, np.ndarray):
            return np.array([self._h_scalar(float(x)) for x in X.ravel()]).reshape(X.shape)
        return self._h_scalar(float(X))

    def dh(self, X):
        g = self.g(0, np.asarray(X, dtype=float) if isinstance(X, np.ndarray) else float(X))
        with np.errstate(divide="ignore", invalid="ignore"):
            return -self.h(X) / g


@dataclass(frozen=True)
class Tullock(_PolynomialKernel):
    family = "tullock"
    proven_condition1 = True
    singular_at_zero = True

    @cached_property
    def poly(self):
        return ExactPoly((0, 1, -1))

    def h(self, X):
        self._check_domain(X)
        return 1 / X - 1

    def dh(self, X):
        self._check_domain(X)
        return -1 / X ** 2

    @property
    def spec(self):
        return "tullock"


@dataclass(frozen=True)
class LinearG(_PolynomialKernel):
    """g(X) = a (1 - X), from h(X) = (1 - X)^(1/a)."""

    family = "linear"
    a: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "a", to_fraction(self.a))
        if self.a <= 0:
            raise InvalidKernel(f"linear kernel needs a > 0, got {self.a}")

    @cached_property
    def poly(self):
        return ExactPoly((self.a, -self.a))

    def h(self, X):
        return _signed_power(1 - _real(X), 1 / float(self.a))

    def dh(self, X):
        p = 1 / float(self.a)
        base = np.abs(1 - _real(X))
        with np.errstate(divide="ignore"):
            return -p * base ** (p - 1)

    @property
    def spec(self):
        return f"linear:a={_fmt(self.a)}"


@dataclass(frozen=True)
class PowerRatio(_PolynomialKernel):
    """h(X) = ((1 - X) / X)^2, hence g(X) = X (1 - X) / 2."""

    family = "power"
    singular_at_zero = True

    @cached_property
    def poly(self):
        return ExactPoly((0, Fraction(1, 2), Fraction(-1, 2)))

    def h(self, X):
        self._check_domain(X)
        X = _real(X)
        r = (1 - X) / X
        return np.sign(1 - X) * r * r

    def dh(self, X):
        self._check_domain(X)
        X = _real(X)
        return -2 * abs(1 - X) / X ** 3

    @property
    def spec(self):
        return "power"


@dataclass(frozen=True)
class PolyG(_QuadratureH, _PolynomialKernel):
    """Polynomial g given by its coefficients, lowest degree first."""

    family = "poly"
    coefficients: tuple = field(default=(0, 1, -1))

    def __post_init__(self):
        coeffs = tuple(to_fraction(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        g = ExactPoly(coeffs)
        if g.is_zero or g.eval(Fraction(1)) != 0:
            raise InvalidKernel(f"poly kernel must vanish at X=1, got g(1)={g.eval(Fraction(1))}")
        if -g.derivative().eval(Fraction(1)) <= 0:
            raise InvalidKernel("poly kernel needs -g'(1) > 0")
        interior = [iv for iv in isolate_roots_unit(g).intervals if iv.hi > 0 and iv.lo < 1]
        if interior or g.eval(Fraction(1, 2)) <= 0:
            raise InvalidKernel("poly kernel must be positive on (0, 1)")

    @cached_property
    def poly(self):
        return ExactPoly(self.coefficients)

    @property
    def spec(self):
        return "poly:" + ",".join(_fmt(c) for c in self.coefficients)


@dataclass(frozen=True)
class ExpDemand(PayoffKernel):
    """g(X) = a (b^(1-X) - 1) / log b; every derivative has a fixed sign."""

    family = "exp"
    max_order = MAX_ANALYTIC_ORDER
    a: Fraction = Fraction(1, 2)
    b: Fraction = Fraction(2)

    def __post_init__(self):
        object.__setattr__(self, "a", to_fraction(self.a))
        object.__setattr__(self, "b", to_fraction(self.b))
        if self.a <= 0 or self.b <= 1:
            raise InvalidKernel(f"exp kernel needs a > 0 and b > 1, got a={self.a}, b={self.b}")

    def _params(self, X):
        if _is_mp(X):
            return mpmath.mpf(self.a.numerator) / self.a.denominator, mpmath.log(
                mpmath.mpf(self.b.numerator) / self.b.denominator
            )
        return float(self.a), math.log(float(self.b))

    def _g(self, k, X):
        X = _real(X)
        a, logb = self._params(X)
        tail = _exp((1 - X) * logb)
        if k == 0:
            return a * (tail - 1) / logb
        return (-1) ** k * a * logb ** (k - 1) * tail

    def h(self, X):
        X = _real(X)
        a, logb = self._params(X)
        return _signed_power(float(self.b) - _exp(X * logb), 1 / a)

    def dh(self, X):
        X = _real(X)
        a, logb = self._params(X)
        bX = _exp(X * logb)
        base = abs(float(self.b) - bX)
        with np.errstate(divide="ignore", invalid="ignore"):
            return -(1 / a) * base ** (1 / a - 1) * logb * bX

    @property
    def spec(self):
        return f"exp:a={_fmt(self.a)},b={_fmt(self.b)}"


@dataclass(frozen=True)
class LogDemand(PayoffKernel):
    """Inverse demand 1 - log X: h(X) = -log X and g(X) = -X log X."""

    family = "log"
    max_order = MAX_ANALYTIC_ORDER
    singular_at_zero = True

    def _g(self, k, X):
        X = _real(X)
        if k == 0:
            if isinstance(X, np.ndarray):
                safe = np.where(X > 0, X, 1.0)
                return np.where(X > 0, -X * np.log(safe), 0.0)
            return -X * _log(X) if X > 0 else 0 * X
        if k == 1:
            return -_log(X) - 1
        if not isinstance(X, np.ndarray) and X == 0:
            raise DomainError(f"g^({k}) of the log kernel is singular at 0")
        with np.errstate(divide="ignore", invalid="ignore"):
            return -((-1) ** k) * math.factorial(k - 2) / X ** (k - 1)

    def h(self, X):
        self._check_domain(X)
        return -_log(_real(X))

    def dh(self, X):
        self._check_domain(X)
        return -1 / _real(X)

    @property
    def spec(self):
        return "log"


@dataclass(frozen=True)
class PowerGap(_QuadratureH, PayoffKernel):
    """g(X) = a ((1 + c - X)^s - c^s): m-times but not (m+1)-times monotone for m < s < m+1."""

    family = "gap"
    max_order = MAX_ANALYTIC_ORDER
    a: Fraction = Fraction(1)
    c: Fraction = Fraction(1)
    s: Fraction = Fraction(3, 2)

    def __post_init__(self):
        for name in ("a", "c", "s"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if self.a <= 0 or self.c <= 0 or self.s <= 0:
            raise InvalidKernel("gap kernel needs a, c, s > 0")

    def _g(self, k, X):
        X = _real(X)
        a, c, s = float(self.a), float(self.c), float(self.s)
        if _is_mp(X):
            a, c, s = mpmath.mpf(a), mpmath.mpf(c), mpmath.mpf(s)
        base = 1 + c - X
        if k == 0:
            return a * (base ** s - c ** s)
        falling = 1.0
        for j in range(k):
            falling *= s - j
        return a * (-1) ** k * falling * base ** (s - k)

    @property
    def spec(self):
        return f"gap:a={_fmt(self.a)},c={_fmt(self.c)},s={_fmt(self.s)}"


def kernel_g(kernel: PayoffKernel, k: int, X):
    return kernel.g(k, X)


def kernel_h(kernel: PayoffKernel, X):
    return kernel.h(X)


def kernel_alpha(kernel: PayoffKernel) -> float:
    return kernel.alpha()


def check_t_monotone(kernel: PayoffKernel, m: int, grid_size: int = 1001,
                     eps: float = 1e-9, strict: bool = False) -> MonotoneReport:
    """Sample (-1)^k g^(k) >= -eps on [0, 1] for k = 0..m.

    With ``strict`` a polynomial kernel is checked at exact rational grid
    points with zero slack.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    if not kernel.supports_order(m):
        raise UnsupportedOrder(f"{kernel.spec} cannot be checked to order {m}")

    exact = strict and kernel.is_polynomial
    if exact:
        grid = [Fraction(i, grid_size - 1) for i in range(grid_size)]
        slack = 0
    else:
        grid = np.linspace(0.0, 1.0, grid_size)
        slack = eps

    first_failure = None
    failed = []
    for k in range(m + 1):
        if exact:
            values = [(-1) ** k * kernel.g(k, x) for x in grid]
            bad = [i for i, v in enumerate(values) if v < -slack]
        else:
            with np.errstate(all="ignore"):
                values = (-1) ** k * np.asarray(kernel.g(k, grid), dtype=float) * np.ones_like(grid)
            bad = np.nonzero(~(values >= -slack))[0].tolist()
        if bad:
            failed.append(k)
            if first_failure is None:
                i = bad[0]
                first_failure = (k, float(grid[i]), float(values[i]))
    report = MonotoneReport(m, not failed, first_failure, tuple(failed))
    logger.debug("{} monotone to order {}: {}", kernel.spec, m, report.verdict)
    return report


def monopoly_quantity(kernel: PayoffKernel, points: int = 1025) -> float:
    """Joint-profit maximizing total X^m, the largest solution of X = g(X) in [0, 1)."""
    grid = np.linspace(0.0, 1.0, points)
    with np.errstate(all="ignore"):
        phi = grid - np.asarray(kernel.g(0, grid), dtype=float)
    nonpos = np.nonzero(phi <= 0)[0]
    if len(nonpos) == 0:
        return 0.0
    i = nonpos[-1]
    if phi[i] == 0:
        return float(grid[i])
    return optimize.brentq(lambda x: x - float(kernel.g(0, x)), grid[i], grid[i + 1], xtol=1e-14)
