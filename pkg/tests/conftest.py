from fractions import Fraction

import pytest

from lib.analysis import integer_compositions
from lib.equilibrium import solve
from lib.kernels import ExpDemand, LinearG, LogDemand, PowerGap, PowerRatio, Tullock
from lib.recursion import Contest


@pytest.fixture(scope="session")
def tullock():
    return Tullock()


@pytest.fixture(scope="session")
def power():
    return PowerRatio()


@pytest.fixture(scope="session")
def exp_demand():
    return ExpDemand(Fraction(1, 2), 2)


@pytest.fixture(scope="session")
def log_demand():
    return LogDemand()


@pytest.fixture(scope="session")
def linear():
    return LinearG(1)


@pytest.fixture(scope="session")
def gap():
    return PowerGap(1, 1, Fraction(3, 2))


def tullock_contests(max_players, max_periods=None):
    """Every ordered Tullock contest with at most ``max_players`` players."""
    out = []
    for n in range(1, max_players + 1):
        for parts in integer_compositions(n):
            if max_periods is None or len(parts) <= max_periods:
                out.append(Contest(parts))
    return out


@pytest.fixture(scope="session")
def tullock_solutions(tullock):
    """Solutions of every Tullock contest with up to seven players, by parts."""
    return {c.n: solve(c, tullock) for c in tullock_contests(7)}
