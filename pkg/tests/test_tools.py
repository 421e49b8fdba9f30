import importlib

from src.main import main
from tools.check_results import check_results, summarize


def test_admissible_primes(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run_census = importlib.import_module("tools.run_census")
    assert run_census.admissible_primes(31) == [3, 7, 11, 19, 23, 31]
    assert set(run_census.get_system_info()) == {"cpu_count", "memory_total", "memory_available"}


def test_summarize_payloads():
    census = {"p": 3, "unit_vectors": 24, "classes": 6, "phases": 4, "reps": []}
    assert summarize(census) == ["census", "p=3", "-", "24/6/4", "-"]
    suite = {"checks": [{}, {}], "failed": ["discrete.hadamard_f9"], "exit_code": 1}
    assert summarize(suite)[2] == "FAILED: discrete.hadamard_f9"
    run = {"descriptor": {"algorithm": "grover"}, "result": {"final_support": [1], "oracle_evals": 1}}
    assert summarize(run) == ["run", "grover", "-", [1], 1]


def test_check_results_table(tmp_path, capsys):
    log_file = str(tmp_path / "dqsim.log")
    results = tmp_path / "results"
    assert main(["--quiet", "--log-file", log_file, "census", "--p", "3", "--out", str(results / "census_p3.json")]) == 0
    capsys.readouterr()
    check_results(str(results))
    out = capsys.readouterr().out
    assert "census_p3.json" in out
    assert "24/6/4" in out


def test_check_results_empty_dir(tmp_path, capsys):
    check_results(str(tmp_path))
    assert "нет результатов" in capsys.readouterr().out
