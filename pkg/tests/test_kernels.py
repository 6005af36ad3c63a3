from fractions import Fraction

import numpy as np
import pytest

from lib.errors import DomainError, InvalidKernel, KernelSpecError, UnsupportedOrder
from lib.factory import create_kernel
from lib.kernels import (ExpDemand, LinearG, LogDemand, PolyG, PowerGap, PowerRatio, Tullock,
                         check_t_monotone, kernel_alpha, kernel_g, kernel_h, monopoly_quantity)

ALL_KERNELS = [
    Tullock(), LinearG(Fraction(1, 2)), LinearG(2), PowerRatio(), PolyG((0, 1, -1)),
    ExpDemand(Fraction(1, 2), 2), LogDemand(), PowerGap(1, 1, Fraction(3, 2)),
]


@pytest.mark.parametrize("kernel", ALL_KERNELS, ids=lambda k: k.spec)
def test_g_is_minus_h_over_dh(kernel):
    grid = np.linspace(0.0, 1.0, 1003)[1:-1]
    g = np.asarray(kernel_g(kernel, 0, grid), dtype=float)
    ratio = -np.asarray(kernel_h(kernel, grid), dtype=float) / np.asarray(kernel.dh(grid), dtype=float)
    assert np.all(g > 0)
    assert np.max(np.abs(g - ratio)) < 1e-10


@pytest.mark.parametrize("order", [1, 2])
@pytest.mark.parametrize("kernel", ALL_KERNELS, ids=lambda k: k.spec)
def test_derivatives_match_finite_differences(kernel, order):
    grid, eps = np.linspace(0.05, 0.95, 101), 1e-6
    lower = np.asarray(kernel_g(kernel, order - 1, grid - eps), dtype=float)
    upper = np.asarray(kernel_g(kernel, order - 1, grid + eps), dtype=float)
    exact = np.asarray(kernel_g(kernel, order, grid), dtype=float)
    assert np.all(np.abs((upper - lower) / (2 * eps) - exact) <= 1e-6 * np.maximum(1.0, np.abs(exact)))


@pytest.mark.parametrize("kernel", ALL_KERNELS, ids=lambda k: k.spec)
def test_alpha_is_minus_slope_at_one(kernel):
    assert kernel_alpha(kernel) == -kernel_g(kernel, 1, 1.0)


@pytest.mark.parametrize("kernel", ALL_KERNELS, ids=lambda k: k.spec)
def test_normalization_and_derivative(kernel):
    assert abs(float(kernel.g(0, 1.0))) < 1e-15
    assert abs(float(kernel_h(kernel, 1.0))) < 1e-12
    x, eps = 0.4, 1e-6
    numeric = (float(kernel.g(0, x + eps)) - float(kernel.g(0, x - eps))) / (2 * eps)
    assert abs(numeric - float(kernel.g(1, x))) < 1e-6


def test_alpha_per_family():
    assert kernel_alpha(Tullock()) == 1
    assert kernel_alpha(PowerRatio()) == 0.5
    assert kernel_alpha(LinearG(3)) == 3
    assert abs(kernel_alpha(ExpDemand(Fraction(1, 2), 2)) - 0.5) < 1e-15
    assert abs(kernel_alpha(LogDemand()) - 1) < 1e-15


def test_tullock_values():
    t = Tullock()
    assert t.g(0, Fraction(1, 4)) == Fraction(3, 16)
    assert t.g(1, Fraction(1, 4)) == Fraction(1, 2)
    assert t.g(2, 0.3) == -2
    assert t.g(10, 0.3) == 0
    assert t.h(0.5) == 1.0


def test_exp_demand_closed_form_derivatives():
    k = ExpDemand(Fraction(1, 2), 2)
    x = 0.3
    for order in range(1, 6):
        expected = (-1) ** order * 0.5 * np.log(2) ** (order - 1) * 2 ** (1 - x)
        assert abs(k.g(order, x) - expected) < 1e-14


def test_order_and_domain_errors():
    with pytest.raises(UnsupportedOrder):
        ExpDemand(Fraction(1, 2), 2).g(151, 0.5)
    with pytest.raises(UnsupportedOrder):
        Tullock().g(-1, 0.5)
    with pytest.raises(DomainError):
        Tullock().h(0.0)
    with pytest.raises(DomainError):
        LogDemand().g(3, 0.0)
    assert LogDemand().g(0, 0.0) == 0


def test_invalid_parameters():
    with pytest.raises(InvalidKernel):
        LinearG(-1)
    with pytest.raises(InvalidKernel):
        ExpDemand(1, 1)
    with pytest.raises(InvalidKernel):
        PolyG((1, 1))
    with pytest.raises(InvalidKernel):
        PolyG((0, -1, 1))
    with pytest.raises(InvalidKernel):
        PowerGap(1, 0, 1)


def test_tullock_is_not_two_times_monotone():
    report = check_t_monotone(Tullock(), 2)
    assert not report.passed and report.verdict == "fail"
    assert report.first_failure[0] == 1 and report.first_failure[1] == 0.0
    assert report.failed_orders == (1, 2)


def test_monotone_families():
    assert check_t_monotone(LinearG(1), 10).passed
    assert check_t_monotone(LinearG(1), 10, strict=True).passed
    assert check_t_monotone(ExpDemand(Fraction(1, 2), 2), 40).passed


def test_power_gap_is_exactly_two_times_monotone():
    k = PowerGap(1, 1, Fraction(3, 2))
    assert check_t_monotone(k, 2).passed
    report = check_t_monotone(k, 3)
    assert not report.passed and report.failed_orders == (3,)


def test_monopoly_quantity():
    assert monopoly_quantity(Tullock()) == 0.0
    assert abs(monopoly_quantity(LinearG(1)) - 0.5) < 1e-12
    k = ExpDemand(Fraction(1, 2), 2)
    xm = monopoly_quantity(k)
    assert 0 < xm < 1 and abs(xm - k.g(0, xm)) < 1e-12


@pytest.mark.parametrize("kernel", ALL_KERNELS, ids=lambda k: k.spec)
def test_factory_round_trips_specs(kernel):
    assert create_kernel(kernel.spec) == kernel


def test_factory_parses_parameters():
    assert create_kernel("exp:a=1/2,b=2") == ExpDemand(Fraction(1, 2), 2)
    assert create_kernel("gap:a=1,c=1,s=1.5") == PowerGap(1, 1, Fraction(3, 2))
    assert create_kernel("poly:0,0.5,-0.5").poly == PowerRatio().poly


@pytest.mark.parametrize("spec", ["", "foo", "exp:a=x,b=2", "linear:z=1", "poly:1,1", "poly:"])
def test_factory_rejects_bad_specs(spec):
    with pytest.raises(KernelSpecError):
        create_kernel(spec)
