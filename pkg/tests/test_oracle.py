import pytest

from lib.equilibrium import solve
from lib.errors import InvalidContest, NoConvergence, TooLarge
from lib.oracle import grid_spe, sim_fixed_point
from lib.recursion import Contest

from conftest import tullock_contests

SMALL = [c for c in tullock_contests(4, max_periods=3) if c.n != (1,)]


def test_simultaneous_pair(tullock):
    result = grid_spe(Contest((2,)), tullock, 1e-3)
    assert abs(result.total - 0.5) <= 2e-3
    assert len(result.value_tables_digest) == 64


def test_two_singletons(tullock):
    result = grid_spe(Contest((1, 1)), tullock, 1e-3)
    assert result.efforts_units == ((250,), (250,)) and result.total_units == 500
    for x in result.flat_efforts:
        assert abs(x - 0.25) <= 1e-6


def test_three_period_total(tullock):
    result = grid_spe(Contest((1, 2, 1)), tullock, 1e-3)
    assert abs(result.total - 0.883838) <= 5e-3
    assert len(result.efforts) == 3 and len(result.efforts[1]) == 2


def test_oracle_is_deterministic(tullock):
    a = grid_spe(Contest((1, 2)), tullock, 2e-3)
    b = grid_spe(Contest((1, 2)), tullock, 2e-3)
    assert a == b


@pytest.mark.parametrize("contest", SMALL, ids=str)
def test_oracle_agrees_with_solver(tullock_solutions, tullock, contest):
    step = 1e-3
    result = grid_spe(contest, tullock, step)
    assert abs(result.total - tullock_solutions[contest.n].X_star) <= 5 * step


@pytest.mark.parametrize("parts", [(1, 2, 1), (1, 1, 1)], ids=str)
def test_fine_grid_agrees_with_solver(tullock_solutions, tullock, parts):
    step = 5e-4
    result = grid_spe(Contest(parts), tullock, step)
    assert abs(result.total - tullock_solutions[parts].X_star) <= 5 * step


def test_halving_the_step_at_least_halves_the_error(tullock_solutions, tullock):
    def worst(step):
        return max(abs(grid_spe(c, tullock, step).total - tullock_solutions[c.n].X_star) for c in SMALL)

    errors = [worst(step) for step in (1e-2, 5e-3, 2.5e-3)]
    # 1e-12 is the floor set by the 60 bisections and double rounding
    for coarse, fine in zip(errors, errors[1:]):
        assert fine <= max(0.5 * coarse, 1e-12)


def test_size_guards(tullock):
    with pytest.raises(TooLarge):
        grid_spe(Contest((1,) * 5), tullock, 1e-3)
    with pytest.raises(TooLarge):
        grid_spe(Contest((6,)), tullock, 1e-3)
    with pytest.raises(TooLarge):
        grid_spe(Contest((2,)), tullock, 0.5)


@pytest.mark.parametrize("n", [2, 3, 10, 30])
def test_sim_fixed_point_matches_solver(tullock, n):
    X = sim_fixed_point(n, tullock)
    assert abs(X - (n - 1) / n) < 1e-9
    assert abs(X - solve(Contest((n,)), tullock).X_star) < 1e-9


def test_sim_fixed_point_linear(linear):
    assert abs(sim_fixed_point(3, linear) - 0.75) < 1e-9


def test_sim_fixed_point_errors(tullock):
    with pytest.raises(InvalidContest):
        sim_fixed_point(1, tullock)
    with pytest.raises(NoConvergence):
        sim_fixed_point(5, tullock, max_iter=1)
