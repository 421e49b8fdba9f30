import pytest

from src.arithmetic.field import validate_field
from src.arithmetic.linalg import OracleTable, StateVector, apply, is_invertible
from src.errors import (
    ArityTooLarge,
    ContextMismatch,
    MultiplyMarked,
    NoMarked,
    PromiseViolated,
    TooLarge,
    ZeroState,
)
from src.theories.modal import (
    ModalState,
    database_search_modal,
    measure_possibilistic,
    modal_gate,
    modal_gates_1q,
    modal_states_1q,
    unique_sat_modal,
)
from src.theories.outcomes import OutcomeSet, Verdict
from src.utils.limits import MAX_ARITY_ENV, max_arity

LISTED_GL2_F2 = [
    [[1, 0], [0, 1]], [[0, 1], [1, 0]], [[1, 1], [0, 1]],
    [[1, 0], [1, 1]], [[0, 1], [1, 1]], [[1, 1], [1, 0]],
]


def test_three_one_qubit_states_over_f2():
    states = modal_states_1q(2)
    assert len(states) == 3
    assert sorted(s.vector.to_json()["entries"] for s in states) == [[0, 1], [1, 0], [1, 1]]


def test_gl2_f2_matches_listed_maps():
    gates = modal_gates_1q(2)
    assert len(gates) == 6
    rows = sorted([[a.to_json() for a in row] for row in g.to_rows()] for g in gates)
    assert rows == sorted(LISTED_GL2_F2)


def test_gl2_sizes():
    # |GL(2, F_p)| = (p² - 1)(p² - p)
    assert len(modal_gates_1q(3)) == 48
    assert len(modal_gates_1q(5)) == 480
    with pytest.raises(TooLarge):
        modal_gates_1q(13)


def test_named_gates():
    assert modal_gate("S").to_json()["entries"] == [1, 0, 1, 1]
    assert modal_gate("S_DAGGER").to_json()["entries"] == [1, 1, 0, 1]
    assert all(is_invertible(modal_gate(name)) for name in ("X0", "X1", "S", "S_DAGGER"))
    with pytest.raises(KeyError):
        modal_gate("H")


def test_modal_state_validation():
    with pytest.raises(ZeroState):
        ModalState(StateVector.from_values(validate_field(2, 1), [0, 0]))
    with pytest.raises(ContextMismatch):
        ModalState(StateVector.from_values(validate_field(3, 2), [1, 0]))
    assert ModalState.zero_register(3).qubit_count == 3
    with pytest.raises(ZeroState):
        measure_possibilistic(StateVector.from_values(validate_field(2, 1), [0, 0]))


def test_possibilistic_classification():
    outcomes = measure_possibilistic(StateVector.from_values(validate_field(2, 1), [1, 0, 1, 0]))
    assert outcomes.sorted() == [0, 2]
    assert outcomes.classify(0) == "possible"
    assert outcomes.classify(1) == "impossible"
    single = OutcomeSet(frozenset({3}))
    assert single.is_certain(3)
    assert single.project(lambda k: k % 2).sorted() == [1]
    with pytest.raises(ZeroState):
        OutcomeSet(frozenset())


@pytest.mark.parametrize("n,count", [(1, 3), (2, 5), (3, 9)])
def test_unique_sat_modal_exhaustive(n, count):
    tables = OracleTable.all_unique_sat(n)
    assert len(tables) == count
    for f in tables:
        result = unique_sat_modal(f)
        assert result.oracle_evals == 1
        if f.satisfying():
            assert result.verdict == Verdict.SAT
            assert result.final_support != [0]
        else:
            assert result.verdict == Verdict.UNSAT
            assert result.final_support == [0]


def test_unique_sat_modal_result_json():
    payload = unique_sat_modal(OracleTable.unique_sat(3, 5)).to_json()
    assert payload["verdict"] == "SAT"
    assert payload["oracle_evals"] == 1
    assert payload["field"] == {"p": 2, "degree": 1}
    assert payload["final_state"]["dim"] == 16


def test_unique_sat_modal_strict_rejects_many_solutions():
    f = OracleTable(n=2, outputs=[1, 1, 0, 0])
    with pytest.raises(PromiseViolated):
        unique_sat_modal(f, strict=True)


def test_arity_guard_from_environment(monkeypatch):
    monkeypatch.setenv(MAX_ARITY_ENV, "2")
    assert max_arity() == 2
    with pytest.raises(ArityTooLarge):
        unique_sat_modal(OracleTable.unique_sat(3, 1))
    monkeypatch.setenv(MAX_ARITY_ENV, "not-a-number")
    assert max_arity() == 12
    monkeypatch.delenv(MAX_ARITY_ENV)
    assert max_arity() == 12


@pytest.mark.parametrize("N", [2, 4, 8, 16])
def test_database_search_finds_every_position(N):
    n = N.bit_length() - 1
    for marked in range(N):
        db = OracleTable.unique_sat(n, marked)
        result = database_search_modal(db)
        assert result.index == marked
        assert result.oracle_evals == n
        assert db.eval_count == n
        assert len(result.trace) == n


def test_database_search_strict_mode():
    result = database_search_modal(OracleTable.unique_sat(3, 6), strict=True)
    assert result.index == 6
    assert result.oracle_evals == 6
    with pytest.raises(NoMarked):
        database_search_modal(OracleTable.constant(2, False), strict=True)
    with pytest.raises(MultiplyMarked):
        database_search_modal(OracleTable(n=2, outputs=[1, 0, 0, 1]), strict=True)


@pytest.mark.parametrize("p", [2, 3])
def test_gates_keep_vectors_nonzero(p):
    ctx = validate_field(p, 1)
    vectors = [v for v in (StateVector.from_values(ctx, [a, b]) for a in range(p) for b in range(p)) if not v.is_zero()]
    for gate in modal_gates_1q(p):
        for v in vectors:
            assert not apply(gate, v).is_zero()


def test_database_search_outside_promise_is_not_checked_without_strict():
    assert database_search_modal(OracleTable.constant(2, False)).index == 3
    assert database_search_modal(OracleTable(n=2, outputs=[1, 0, 0, 1])).index in (0, 3)
