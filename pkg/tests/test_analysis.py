import math
import random
from collections import defaultdict
from fractions import Fraction

import numpy as np
import pytest

from lib.analysis import (compare, convergence_table, design_optimize, dominance,
                          earlier_mover_report, equivalent_sim_size, family_contest,
                          integer_compositions, integer_partitions, large_contest_approx)
from lib.equilibrium import solve
from lib.errors import InvalidContest
from lib.kernels import LinearG
from lib.recursion import Contest, InfoMeasures


def test_partitions_and_compositions():
    assert sorted(integer_partitions(4)) == [(1, 1, 1, 1), (1, 1, 2), (1, 3), (2, 2), (4,)]
    assert len(list(integer_partitions(10))) == 42
    assert len(list(integer_compositions(6))) == 2 ** 5
    assert all(sum(c) == 6 for c in integer_compositions(6))


def test_dominance_pads_with_zeros():
    assert dominance(InfoMeasures((10, 25)), InfoMeasures((10, 17, 8))) == "incomparable"
    assert dominance(InfoMeasures((3, 3, 1)), InfoMeasures((3,))) == "a_dominates"
    assert dominance(InfoMeasures((3,)), InfoMeasures((3, 2))) == "b_dominates"
    assert dominance(InfoMeasures((4, 5, 2)), InfoMeasures((4, 5, 2))) == "equal"


def test_compare_unequal_pair(tullock):
    result = compare(Contest((5, 5)), Contest((8, 1, 1)), tullock)
    assert result.dominance == "incomparable"
    assert result.X_a > result.X_b
    assert result.consistent_with_theorem


def test_compare_refinement(tullock):
    result = compare(Contest((1, 1, 1)), Contest((3,)), tullock)
    assert result.dominance == "a_dominates"
    assert result.theorem_applies and result.consistent_with_theorem
    assert result.X_a > result.X_b and result.sum_heuristic == "a"


def test_compare_permuted_log_demand(log_demand):
    result = compare(Contest((1, 3)), Contest((3, 1)), log_demand)
    assert result.dominance == "equal"
    assert abs(result.X_a - math.exp((math.sqrt(37) - 7) / 6)) < 1e-9
    assert result.consistent_with_theorem


def test_design_maximizes_information(tullock):
    assert design_optimize(4, tullock).best_contest == Contest((1, 1, 1, 1))
    balanced = design_optimize(10, tullock, "max", max_periods=2)
    assert balanced.best_contest == Contest((5, 5))
    assert balanced.evaluated_count == 6


def test_design_minimum_is_simultaneous(tullock):
    result = design_optimize(4, tullock, "min")
    assert result.best_contest == Contest((4,))
    assert abs(result.best_value - 0.75) < 1e-12
    assert result.skipped == 0


def test_design_skips_empty_candidates(power):
    result = design_optimize(4, power, compositions=True)
    # only (1,1,1,1) lacks an interior root; (4), (1,3) and (2,2) tie at 1/2
    assert result.evaluated_count == 8 and result.skipped == 1
    assert result.best_contest == Contest((1, 3)) and result.best_value == 0.5


def test_design_rejects_bad_input(tullock):
    with pytest.raises(InvalidContest):
        design_optimize(0, tullock)
    with pytest.raises(ValueError):
        design_optimize(4, tullock, "best")
    with pytest.raises(InvalidContest):
        design_optimize(4, tullock, max_periods=0)


def test_linear_kernel_approximation_is_exact():
    rng = random.Random(11)
    for _ in range(20):
        kernel = LinearG(rng.choice([Fraction(1, 2), 1, 2]))
        contest = Contest(tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 4))))
        sol = solve(contest, kernel)
        approx = large_contest_approx(contest, kernel)
        assert abs(approx.X_star_linearized - sol.X_star) < 1e-12
        assert np.allclose(sol.flat_efforts,
                           [x for period in approx.efforts_approx for x in period], atol=1e-12, rtol=0)


def test_tullock_approximation(tullock):
    approx = large_contest_approx(Contest((1,) * 5), tullock)
    assert abs(approx.X_star_approx - (1 - 1 / 31)) < 1e-15
    assert approx.efforts_approx[0][0] == 0.5
    assert abs(approx.hhi_limit - 1 / 3) < 1e-12
    long = large_contest_approx(Contest((1,) * 40), tullock)
    assert abs(long.hhi_approx - 1 / 3) < 1e-12


def test_equivalent_simultaneous_size(tullock):
    five = equivalent_sim_size(5, tullock)
    assert five.exact == 24 and five.smallest_dominating == 25
    assert five.approx == 32
    two = equivalent_sim_size(2)
    assert two.exact == 2 and two.smallest_dominating == 2
    with pytest.raises(InvalidContest):
        equivalent_sim_size(1)


def test_equivalent_size_grows_exponentially(tullock):
    fourteen = equivalent_sim_size(14, tullock)
    assert 14000 <= fourteen.exact <= 19500


def test_mover_verdicts(tullock, power):
    strict = earlier_mover_report(solve(Contest((1, 2, 1)), tullock))
    assert strict.verdict == "strict_earlier_advantage" and strict.formula_agrees
    flat = earlier_mover_report(solve(Contest((1, 1)), tullock))
    assert flat.verdict == "flat" and flat.efforts == (0.25, 0.25)
    later = earlier_mover_report(solve(Contest((1, 2, 1)), power))
    assert later.verdict == "later_advantage" and later.formula_agrees
    with pytest.raises(ValueError):
        earlier_mover_report(solve(Contest((2,)), power))


def test_earlier_movers_work_harder(tullock_solutions):
    for parts, sol in tullock_solutions.items():
        if len(parts) < 2:
            continue
        report = earlier_mover_report(sol)
        assert report.formula_agrees, parts
        expected = "flat" if parts == (1, 1) else "strict_earlier_advantage"
        assert report.verdict == expected, parts


def test_permutation_invariance(tullock_solutions):
    groups = defaultdict(list)
    for parts, sol in tullock_solutions.items():
        if sol.X_star is not None:
            groups[tuple(sorted(parts))].append(sol.X_star)
    for key, values in groups.items():
        assert max(values) - min(values) <= 1e-10, key


def test_more_players_in_any_period_raise_effort(tullock_solutions):
    for parts, sol in tullock_solutions.items():
        if sol.X_star is None or sum(parts) >= 7:
            continue
        for t in range(len(parts)):
            bigger = parts[:t] + (parts[t] + 1,) + parts[t + 1:]
            assert tullock_solutions[bigger].X_star > sol.X_star, (parts, bigger)


def test_splitting_a_period_raises_effort(tullock_solutions):
    for parts, sol in tullock_solutions.items():
        if sol.X_star is None:
            continue
        for t, n in enumerate(parts):
            for a in range(1, n):
                finer = tullock_solutions[parts[:t] + (a, n - a) + parts[t + 1:]]
                if finer.conditions.condition2.verdict == "boundary":
                    # (2) and (1,1) share X* = 1/2 where g_2 vanishes
                    assert finer.X_star >= sol.X_star - 1e-12
                else:
                    assert finer.X_star > sol.X_star, (parts, finer.contest)


def test_all_small_tullock_contests_are_solved(tullock_solutions):
    unsolved = [p for p, s in tullock_solutions.items() if not s.solved]
    assert unsolved == [(1,)]


def test_family_contests():
    assert family_contest("seq", 3) == Contest((1, 1, 1))
    assert family_contest("half_and_half", 5) == Contest((3, 2))
    assert family_contest("leader", 4) == Contest((1, 3))
    assert family_contest("simultaneous", 6) == Contest((6,))
    with pytest.raises(ValueError):
        family_contest("random", 3)


def test_convergence_table_values(tullock):
    sim = convergence_table("sim", [10], tullock)
    assert abs(sim.loc[0, "X_star"] - 0.9) < 1e-12
    seq = convergence_table("seq", list(range(2, 11)), tullock)
    X = dict(zip(seq["n"], seq["X_star"]))
    assert abs(X[4] - 0.9082) < 1e-4
    assert abs(X[5] - 0.9587) < 1e-4
    assert all(X[n] > 0.99 for n in range(8, 11))
    ratio = seq.loc[seq["n"] == 10, "dissipation_ratio"].item()
    assert 0.85 <= ratio <= 1.15
    assert list(seq.columns) == ["n", "contest", "X_star", "one_minus_X_star", "S",
                                 "dissipation_ratio", "status"]


@pytest.mark.parametrize("family", ["seq", "half", "leader", "sim"])
def test_families_dissipate_monotonically(tullock, family):
    frame = convergence_table(family, list(range(2, 10)), tullock)
    assert (frame["status"] == "Solved").all()
    assert np.all(np.diff(frame["X_star"].to_numpy(dtype=float)) > 0)
