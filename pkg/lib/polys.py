"""Dense univariate polynomials over exact rationals.

Coefficients are ``fractions.Fraction`` stored lowest degree first. Real roots
in the unit interval are isolated with Sturm sequences evaluated in exact
arithmetic, so every reported bracket is certified.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import mpmath
import numpy as np

from lib.errors import NoRootInUnit

# Veltkamp splitter for IEEE doubles (2**27 + 1)
_SPLITTER = 134217729.0


def to_fraction(value) -> Fraction:
    """Exact rational from int, Fraction, decimal string or float.

    Floats go through their shortest repr so that ``0.7`` becomes ``7/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("booleans are not polynomial coefficients")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        return Fraction(repr(float(value)))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    return Fraction(str(value).strip())


def _sign(value) -> int:
    return (value > 0) - (value < 0)


def _two_sum(a, b):
    s = a + b
    z = s - a
    return s, (a - (s - z)) + (b - z)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def _compensated_horner(coeffs: Sequence[float], x: np.ndarray) -> np.ndarray:
    s = np.full_like(x, coeffs[-1])
    r = np.zeros_like(x)
    for c in reversed(coeffs[:-1]):
        p, pi = _two_prod(s, x)
        s, sigma = _two_sum(p, c)
        r = r * x + (pi + sigma)
    return s + r


@dataclass(frozen=True)
class ExactPoly:
    """Polynomial with exact rational coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        coeffs = [to_fraction(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def x(cls) -> "ExactPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "ExactPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __neg__(self):
        return ExactPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return ExactPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ExactPoly):
            if self.is_zero or other.is_zero:
                return ExactPoly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return ExactPoly(tuple(out))
        try:
            scalar = to_fraction(other)
        except (TypeError, ValueError):
            return NotImplemented
        return ExactPoly(tuple(c * scalar for c in self.coeffs))

    __rmul__ = __mul__

    def __divmod__(self, other: "ExactPoly"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        for shift in range(len(quot) - 1, -1, -1):
            c = rem[shift + other.degree] / lead
            quot[shift] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] -= c * b
        return ExactPoly(tuple(quot)), ExactPoly(tuple(rem[: other.degree]))

    def __floordiv__(self, other: "ExactPoly") -> "ExactPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "ExactPoly") -> "ExactPoly":
        return divmod(self, other)[1]

    def derivative(self, order: int = 1) -> "ExactPoly":
        coeffs = self.coeffs
        for _ in range(order):
            coeffs = tuple(i * c for i, c in enumerate(coeffs))[1:]
        return ExactPoly(coeffs)

    def trailing_zeros(self) -> int:
        """Multiplicity of the root at zero."""
        count = 0
        for c in self.coeffs:
            if c != 0:
                break
            count += 1
        return count

    def divide_by_x_power(self, m: int) -> "ExactPoly":
        return ExactPoly(self.coeffs[m:])

    def monic(self) -> "ExactPoly":
        return self * (1 / self.leading) if not self.is_zero else self

    def eval(self, x):
        """Evaluate at ``x``, keeping the numeric kind of ``x``.

        Rationals are exact. Python floats are evaluated exactly at the
        binary value of ``x`` and rounded once. mpmath numbers use the current
        working precision. numpy arrays use compensated Horner.
        """
        if isinstance(x, np.ndarray):
            if self.is_zero:
                return np.zeros_like(x, dtype=float)
            return _compensated_horner([float(c) for c in self.coeffs], x.astype(float))
        if isinstance(x, mpmath.mpf):
            acc = mpmath.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
            return acc
        if isinstance(x, (float, np.floating)):
            return float(self.eval(Fraction(float(x))))
        x = to_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = eval

    def to_pairs(self) -> list:
        """Coefficients as ``[numerator, denominator]`` string pairs."""
        return [[str(c.numerator), str(c.denominator)] for c in self.coeffs]

    def __repr__(self):
        terms = [f"{c}*X^{i}" for i, c in enumerate(self.coeffs) if c]
        return "ExactPoly(" + (" + ".join(terms) or "0") + ")"


def _coerce(value):
    if isinstance(value, ExactPoly):
        return value
    try:
        return ExactPoly.constant(to_fraction(value))
    except (TypeError, ValueError):
        return NotImplemented


def poly_arith(a: ExactPoly, b: ExactPoly, op: str) -> ExactPoly:
    if op == "add":
        return a + b
    elif op == "subtract":
        return a - b
    elif op == "multiply":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_derivative(a: ExactPoly) -> ExactPoly:
    return a.derivative()


def poly_eval(a: ExactPoly, X):
    return a.eval(X)


def poly_gcd(a: ExactPoly, b: ExactPoly) -> ExactPoly:
    while not b.is_zero:
        a, b = b, (a % b).monic()
    return a.monic()


def square_free_part(p: ExactPoly) -> ExactPoly:
    g = poly_gcd(p, p.derivative())
    return (p // g).monic() if g.degree > 0 else p.monic()


def sturm_sequence(p: ExactPoly) -> list:
    """Canonical Sturm chain p, p', -rem(p, p'), ...

    Each remainder is scaled by a positive constant to keep coefficients small;
    sign variations are unaffected.
    """
    seq = [p, p.derivative()]
    while not seq[-1].is_zero:
        r = -(seq[-2] % seq[-1])
        if r.is_zero:
            break
        seq.append(r * (1 / abs(r.leading)))
    return [s for s in seq if not s.is_zero]


def sign_variations(seq: Iterable[ExactPoly], x) -> int:
    signs = [s for s in (_sign(p.eval(x)) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_unit(p: ExactPoly) -> int:
    """Number of distinct real roots of ``p`` in [0, 1]."""
    m = p.trailing_zeros()
    sf = square_free_part(p.divide_by_x_power(m))
    seq = sturm_sequence(sf)
    return int(m > 0) + sign_variations(seq, Fraction(0)) - sign_variations(seq, Fraction(1))


@dataclass(frozen=True)
class RootInterval:
    lo: Fraction
    hi: Fraction

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def to_strings(self) -> list:
        return [str(self.lo), str(self.hi)]


@dataclass(frozen=True)
class IsolatedRoot:
    """A single root of a square-free polynomial, certified by its bracket."""

    poly: ExactPoly
    interval: RootInterval

    @property
    def value(self) -> float:
        return float(self.interval.midpoint)

    def refine(self, tol) -> "IsolatedRoot":
        return IsolatedRoot(self.poly, refine_root(self.poly, self.interval, tol))


@dataclass(frozen=True)
class RootList:
    intervals: tuple
    multiplicity_at_zero: int
    squarefree: ExactPoly = field(default_factory=ExactPoly, compare=False, repr=False)

    def __len__(self):
        return len(self.intervals)

    def roots(self) -> list:
        return [IsolatedRoot(self.squarefree, iv) for iv in self.intervals]


def _split_point(sf: ExactPoly, lo: Fraction, hi: Fraction) -> Fraction:
    width = hi - lo
    k = 0
    while True:
        # 1/2, 7/16, 9/16, 6/16, ... ; sf has finitely many roots
        offset = Fraction(8 + (k + 1) // 2 * (-1) ** k, 16) if k else Fraction(1, 2)
        mid = lo + width * offset
        if sf.eval(mid) != 0:
            return mid
        k += 1


def isolate_roots_unit(p: ExactPoly) -> RootList:
    """Isolate every distinct real root of ``p`` in [0, 1].

    Roots at the endpoints are returned as exact point intervals; interior
    roots get open rational brackets on which the square-free part of ``p``
    changes sign.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no isolated roots")
    m = p.trailing_zeros()
    sf = square_free_part(p.divide_by_x_power(m))
    zero, one = Fraction(0), Fraction(1)

    right_root = sf.eval(one) == 0
    inner = sf // ExactPoly((-1, 1)) if right_root else sf
    found = []
    if inner.degree > 0:
        seq = sturm_sequence(inner)
        stack = [(zero, one, sign_variations(seq, zero), sign_variations(seq, one))]
        while stack:
            lo, hi, vlo, vhi = stack.pop()
            count = vlo - vhi
            if count == 0:
                continue
            if count == 1:
                found.append(RootInterval(lo, hi))
                continue
            mid = _split_point(inner, lo, hi)
            vmid = sign_variations(seq, mid)
            stack.append((lo, mid, vlo, vmid))
            stack.append((mid, hi, vmid, vhi))

    intervals = sorted(found, key=lambda iv: iv.lo)
    if m > 0:
        intervals.insert(0, RootInterval(zero, zero))
    if right_root:
        intervals.append(RootInterval(one, one))
    return RootList(tuple(intervals), m, sf)


def refine_root(sf: ExactPoly, interval: RootInterval, tol) -> RootInterval:
    """Bisect an isolating interval of a square-free ``sf`` below width ``tol``.

    Small-denominator rational roots are snapped to exact point intervals.
    """
    if interval.is_exact:
        return interval
    tol = to_fraction(tol)
    lo, hi = interval.lo, interval.hi
    slo = _sign(sf.eval(lo))
    while hi - lo >= tol:
        mid = (lo + hi) / 2
        smid = _sign(sf.eval(mid))
        if smid == 0:
            return RootInterval(mid, mid)
        if smid == slo:
            lo = mid
        else:
            hi = mid
    candidate = ((lo + hi) / 2).limit_denominator(10 ** 6)
    if lo <= candidate <= hi and sf.eval(candidate) == 0:
        return RootInterval(candidate, candidate)
    return RootInterval(lo, hi)


def highest_root_unit(p: ExactPoly, tol=1e-12):
    """Largest root of ``p`` in [0, 1] as ``(float value, exact bracket)``."""
    roots = isolate_roots_unit(p)
    if not roots.intervals:
        raise NoRootInUnit(f"{p!r} has no root in [0, 1]")
    top = refine_root(roots.squarefree, roots.intervals[-1], tol)
    return float(top.midpoint), top


def compare_roots(a: IsolatedRoot, b: IsolatedRoot, tol=Fraction(1, 10 ** 40)) -> int:
    """Order two certified roots: -1, 0 or +1.

    Roots that cannot be separated at width ``tol`` are reported equal.
    """
    tol = to_fraction(tol)
    while True:
        ia, ib = a.interval, b.interval
        if ia.hi < ib.lo:
            return -1
        if ib.hi < ia.lo:
            return 1
        if ia.is_exact and ib.is_exact:
            return 0
        if ia.is_exact and b.poly.eval(ia.lo) == 0:
            return 0
        if ib.is_exact and a.poly.eval(ib.lo) == 0:
            return 0
        if ia.width < tol and ib.width < tol:
            return 0
        if not ia.is_exact:
            a = a.refine(ia.width / 4)
        if not ib.is_exact:
            b = b.refine(ib.width / 4)
