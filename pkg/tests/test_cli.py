"""Command-line driver: exit codes and report files"""

import json

import pytest

from src.cli import EXIT_ERROR, EXIT_PASS, build_parser, main
from src.config import get_settings


@pytest.fixture(autouse=True)
def no_env_seed(monkeypatch):
    monkeypatch.delenv("LAB_SEED", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def test_passing_run_writes_a_report(tmp_path):
    out = tmp_path / "report.json"
    code = main(["entropy", "--seed", "7", "--instances", "3", "--out", str(out)])
    assert code == EXIT_PASS
    document = json.loads(out.read_text())
    assert document["schema"] == 1
    assert document["suites"][0]["suite"] == "entropy"
    assert document["suites"][0]["failures"] == 0


def test_csv_format(tmp_path):
    out = tmp_path / "report.csv"
    argv = ["cube", "--seed", "3", "--n", "2", "--instances", "2", "--format", "csv"]
    code = main([*argv, "--out", str(out)])
    assert code == EXIT_PASS
    assert out.read_text().splitlines()[0] == "suite,instance_id,name,lhs,rhs,margin,pass"


def test_config_file_supplies_the_seed(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"seed": 11, "instances": 2}))
    out = tmp_path / "report.json"
    assert main(["entropy", "--config", str(config), "--out", str(out)]) == EXIT_PASS
    assert json.loads(out.read_text())["seed"] == 11


def test_seed_from_the_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("LAB_SEED", "5")
    get_settings.cache_clear()
    out = tmp_path / "report.json"
    assert main(["entropy", "--instances", "2", "--out", str(out)]) == EXIT_PASS
    assert json.loads(out.read_text())["seed"] == 5


def test_missing_seed_is_an_error(tmp_path):
    assert main(["entropy", "--out", str(tmp_path / "r.json")]) == EXIT_ERROR


def test_invalid_parameters_are_errors(tmp_path):
    out = str(tmp_path / "r.json")
    assert main(["cube", "--seed", "1", "--p", "1.5", "--out", out]) == EXIT_ERROR
    assert main(["cube", "--seed", "-3", "--out", out]) == EXIT_ERROR


def test_unreadable_config_is_an_error(tmp_path):
    assert main(["entropy", "--config", str(tmp_path / "missing.json")]) == EXIT_ERROR


def test_unknown_suite_exits_with_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["nonesuch", "--seed", "1"])
    assert excinfo.value.code == 2


def test_list_suites():
    assert main(["--list-suites"]) == EXIT_PASS


def test_parser_accepts_all():
    args = build_parser().parse_args(["all", "--seed", "42", "--timings"])
    assert args.suite == "all"
    assert args.timings is True
