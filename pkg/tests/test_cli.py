import json
import math
import sys
from pathlib import Path

import pytest
from loguru import logger

from contest import build_parser, run
from lib.config import get_config

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture(autouse=True)
def restore_logger():
    yield
    logger.remove()
    logger.add(sys.stderr, level="WARNING")


def _run(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr().out


def test_solve_json(capsys):
    code, out = _run(capsys, "solve", "--contest", "1,2,1")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "Solved" and payload["method"] == "exact"
    assert abs(float(payload["X_star"]) - (7 + math.sqrt(13)) / 12) < 1e-12
    assert len(payload["efforts"]) == 4
    assert payload["conditions"]["condition1"]["verdict"] == "pass"


def test_solve_json_is_byte_stable(capsys):
    _, first = _run(capsys, "solve", "--contest", "1^5", "--exact")
    _, second = _run(capsys, "solve", "--contest", "1^5", "--exact")
    assert first == second
    assert json.dumps(json.loads(first), indent=2) + "\n" == first
    assert json.loads(first)["X_star_bracket"] is not None


def test_exact_rationals(capsys):
    _, out = _run(capsys, "solve", "--contest", "1,2,1", "--kernel", "power", "--exact")
    payload = json.loads(out)
    assert payload["X_star_exact"] == "1/3"
    assert payload["efforts_exact"] == ["1/27", "5/54", "5/54", "1/9"]


def test_no_interior_candidate_exits_one(capsys):
    code, out = _run(capsys, "solve", "--contest", "2", "--kernel", "power")
    assert code == 1
    assert json.loads(out)["status"] == "NoInteriorCandidate"


def test_measures_csv(capsys):
    code, out = _run(capsys, "measures", "--contest", "1,2,1")
    assert code == 0
    assert out == "S_1,S_2,S_3\n4,5,2\n"


def test_design(capsys):
    code, out = _run(capsys, "design", "--players", "10", "--max-periods", "2", "--objective", "max")
    assert code == 0
    assert json.loads(out)["best_contest"] == [5, 5]


def test_compare_table(capsys):
    code, out = _run(capsys, "compare", "--a", "5,5", "--b", "8,1,1", "--format", "table")
    assert code == 0
    assert "incomparable" in out and "dominance" in out


def test_sweep_csv(capsys):
    code, out = _run(capsys, "sweep", "--family", "sim", "--n-min", "10", "--n-max", "10")
    lines = out.strip().split("\n")
    assert code == 0
    assert lines[0] == "n,contest,X_star,one_minus_X_star,S,dissipation_ratio,status"
    assert lines[1].split(",")[2] == "0.9"


def test_best_response_curve(capsys):
    code, out = _run(capsys, "br", "--contest", "1,1,1", "--period", "3", "--points", "5")
    lines = out.strip().split("\n")
    assert code == 0
    assert lines[0] == "X_prev,effort,X_t,total" and len(lines) == 6


def test_oracle_reads_config_file(capsys):
    code, out = _run(capsys, "oracle", "--contest", "2", "--cfg", str(CONFIGS / "fine_oracle.yaml"))
    payload = json.loads(out)
    assert code == 0
    assert float(payload["step"]) == 5e-4
    assert abs(float(payload["total"]) - 0.5) <= 1e-3


def test_output_file(capsys, tmp_path):
    target = tmp_path / "sim.json"
    code, out = _run(capsys, "simfp", "--players", "10", "--output", str(target))
    assert code == 0 and out == ""
    assert abs(float(json.loads(target.read_text())["X_star"]) - 0.9) < 1e-9


def test_exact_f0_coefficients(capsys):
    _, out = _run(capsys, "solve", "--contest", "1^5", "--exact")
    assert json.loads(out)["f0_exact"] == [[str(c), "1"] for c in (0, 0, 1, -30, 150, -240, 120)]


def test_censored_measures(capsys):
    code, out = _run(capsys, "measures", "--contest", "1,2,1,3", "--censor", "2")
    assert code == 0
    assert out == "S_1,S_2\n7,6\n"


def test_censored_solve_matches_pooled_contest(capsys):
    _, censored = _run(capsys, "solve", "--contest", "1,2,1", "--censor", "2")
    _, pooled = _run(capsys, "solve", "--contest", "1,3")
    assert json.loads(censored) == json.loads(pooled)


@pytest.mark.parametrize("argv", [
    ["solve", "--contest", "0,1"],
    ["solve", "--contest", "1,2", "--kernel", "nope"],
    ["solve"],
    ["oracle", "--contest", "1^6"],
    ["br", "--contest", "1,2,1", "--period", "4"],
    ["solve", "--contest", "1,2", "--log-level", "LOUD"],
    ["design", "--players", "4", "--max-periods", "0"],
    ["solve", "--contest", "1,2,1", "--censor", "0"],
])
def test_errors_exit_two(capsys, argv):
    assert run(argv) == 2
    assert capsys.readouterr().out == ""


def test_opts_override_config():
    args = build_parser().parse_args(
        ["solve", "--contest", "1", "--opts", "OUTPUT.DIGITS", "6", "--tol", "1e-9"])
    config = get_config(args)
    assert config.OUTPUT.DIGITS == 6 and config.SOLVER.TOL == 1e-9
