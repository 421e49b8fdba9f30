import json

import pytest
from pydantic import ValidationError

from src.errors import ArityTooLarge, BadResidue, InvalidDescriptor
from src.experiments.runners import EXPERIMENTS, run_descriptor
from src.storage.models import (
    CheckResult,
    CheckSuiteResult,
    ExperimentDescriptor,
    InlineOracle,
    oracle_from_source,
)
from src.storage.result_writer import ResultWriter
from src.utils.check_report import build_report
from src.utils.limits import MAX_ARITY_ENV

DESCRIPTORS = [
    {"algorithm": "usat-modal", "n": 3, "oracle": "unique-sat(5)"},
    {"algorithm": "usat-discrete", "p": 3, "n": 3, "oracle": "unique-sat(none)"},
    {"algorithm": "grover", "p": 7, "N": 4, "marked": 1, "iterations": 1},
    {"algorithm": "dj", "p": 3, "oracle": {"n": 2, "outputs": [0, 1, 1, 0]}, "format": "csv"},
    {"algorithm": "db-search", "n": 4, "oracle": "unique-sat(11)", "strict": True},
]


@pytest.mark.parametrize("data", DESCRIPTORS)
def test_descriptor_round_trip(data):
    descriptor = ExperimentDescriptor.model_validate(data)
    assert ExperimentDescriptor.model_validate_json(descriptor.model_dump_json()) == descriptor
    assert ExperimentDescriptor.model_validate(descriptor.to_json()) == descriptor


def test_descriptor_infers_degree_and_arity():
    descriptor = ExperimentDescriptor.model_validate(DESCRIPTORS[3])
    assert descriptor.degree == 2
    assert descriptor.n == 2
    assert ExperimentDescriptor.model_validate(DESCRIPTORS[0]).degree == 1


def test_oracle_generators():
    assert oracle_from_source("unique-sat(5)", 3).satisfying() == [5]
    assert oracle_from_source("unique-sat(none)", 2).satisfying() == []
    assert oracle_from_source("constant-true", 2).is_constant()
    assert oracle_from_source("constant-false", 1).satisfying() == []
    assert oracle_from_source("balanced(0x0f)", 3).satisfying() == [0, 1, 2, 3]
    assert oracle_from_source("balanced(6)", 2).satisfying() == [1, 2]
    assert oracle_from_source(InlineOracle(n=1, outputs=[0, 1]), None).satisfying() == [1]


def test_oracle_generator_errors():
    with pytest.raises(InvalidDescriptor):
        oracle_from_source("random", 2)
    with pytest.raises(InvalidDescriptor):
        oracle_from_source("unique-sat(9)", 3)
    with pytest.raises(InvalidDescriptor):
        oracle_from_source("balanced(1)", 2)
    with pytest.raises(InvalidDescriptor):
        oracle_from_source("constant-true", None)
    with pytest.raises(InvalidDescriptor):
        oracle_from_source(InlineOracle(n=2, outputs=[0, 1]), 2)


def test_descriptor_preconditions():
    with pytest.raises(InvalidDescriptor):
        ExperimentDescriptor.model_validate({"algorithm": "grover", "p": 7, "N": 4})
    with pytest.raises(InvalidDescriptor):
        ExperimentDescriptor.model_validate({"algorithm": "grover", "p": 7, "N": 4, "marked": 4})
    with pytest.raises(InvalidDescriptor):
        ExperimentDescriptor.model_validate({"algorithm": "usat-discrete", "p": 3, "degree": 1, "n": 2, "oracle": "constant-false"})
    with pytest.raises(InvalidDescriptor):
        ExperimentDescriptor.model_validate({"algorithm": "usat-modal", "p": 3, "n": 2, "oracle": "constant-false"})
    with pytest.raises(InvalidDescriptor):
        ExperimentDescriptor.model_validate({"algorithm": "dj", "p": 3, "n": 2, "oracle": "unique-sat(1)"})
    with pytest.raises(InvalidDescriptor):
        ExperimentDescriptor.model_validate({"algorithm": "db-search", "n": 2, "oracle": "constant-false"})
    with pytest.raises(BadResidue):
        ExperimentDescriptor.model_validate({"algorithm": "dj", "p": 5, "n": 1, "oracle": "constant-true"})
    with pytest.raises(ValidationError):
        ExperimentDescriptor.model_validate({"algorithm": "shor", "p": 3})


def test_run_descriptor_dispatch():
    assert set(EXPERIMENTS) == {"grover", "dj", "usat-modal", "usat-discrete", "db-search"}
    result = run_descriptor(ExperimentDescriptor.model_validate(DESCRIPTORS[0]))
    assert result.result["verdict"] == "SAT"
    assert result.result["oracle_evals"] == 1
    search = run_descriptor(ExperimentDescriptor.model_validate(DESCRIPTORS[4]))
    assert search.result["index"] == 11
    assert search.result["oracle_evals"] == 8


def test_experiment_csv_rows():
    result = run_descriptor(ExperimentDescriptor.model_validate(DESCRIPTORS[3]))
    rows = result.csv_rows()
    assert len(rows) == 8
    assert set(rows[0]) == {"index", "re", "im"}
    modal = run_descriptor(ExperimentDescriptor.model_validate(DESCRIPTORS[0])).csv_rows()
    assert set(modal[0]) == {"index", "value"}


def test_result_writer_is_deterministic(tmp_path):
    writer = ResultWriter(str(tmp_path))
    payload = {"b": [3, 1], "a": {"z": 1, "y": "значение"}}
    first = writer.write_json(payload, "one.json")
    second = writer.write_json(json.loads(json.dumps(payload)), "two.json")
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text(encoding="utf-8").index('"a"') < first.read_text(encoding="utf-8").index('"b"')
    assert "значение" in first.read_text(encoding="utf-8")
    assert writer.load_json("one.json") == payload
    assert [p.name for p in writer.list_results()] == ["one.json", "two.json"]


def test_result_writer_csv(tmp_path):
    writer = ResultWriter(str(tmp_path))
    path = writer.write_csv([{"p": 3, "classes": 6}, {"p": 7, "classes": 42}], "nested/census.csv")
    assert path.read_text(encoding="utf-8") == "p,classes\n3,6\n7,42\n"
    assert ResultWriter.csv_text([]) == ""


def test_check_suite_exit_code_and_report(tmp_path):
    checks = [
        CheckResult(name="modal.a", group="modal", expected=1, observed=1, passed=True),
        CheckResult(name="discrete.b", group="discrete", expected=2, observed=3, passed=False),
        CheckResult(name="algorithms.c", group="algorithms", kind="hypothesis", expected=True, observed=False, passed=False),
    ]
    suite = CheckSuiteResult(checks=checks)
    assert [c.name for c in suite.failed] == ["discrete.b"]
    assert suite.exit_code == 1
    assert CheckSuiteResult(checks=[checks[0], checks[2]]).exit_code == 0

    report = build_report(checks)
    text = report.get_report()
    assert "Всего проверок: 3" in text
    assert "algorithms.c: опровергнута" in text
    path = report.save_report(str(tmp_path))
    assert path.read_text(encoding="utf-8") == text


def test_experiment_records_errors(monkeypatch):
    monkeypatch.setenv(MAX_ARITY_ENV, "2")
    descriptor = ExperimentDescriptor.model_validate(DESCRIPTORS[0])
    experiment = EXPERIMENTS["usat-modal"]()
    with pytest.raises(ArityTooLarge):
        experiment.execute(descriptor)
    assert len(experiment.get_errors()) == 1
    experiment.clear_errors()
    assert experiment.get_errors() == []
    with pytest.raises(ValueError):
        EXPERIMENTS["grover"]().execute(descriptor)
