import pytest
from pydantic import ValidationError

from src.algorithms.deutsch_jozsa import deutsch_jozsa
from src.algorithms.grover import (
    GroverConfig,
    grover,
    grover_diffusion,
    grover_sweep,
    iteration_supports,
    phase_oracle,
)
from src.algorithms.unique_sat import pad_database, supernatural_condition, unique_sat_discrete
from src.arithmetic.field import validate_field
from src.arithmetic.linalg import OracleTable, apply, is_unitary, matmul
from src.errors import BadResidue, ContextMismatch, NotInvertibleN, PromiseViolated
from src.theories.outcomes import Verdict


def test_grover_diffusion_entries():
    D = grover_diffusion(4, 7)
    assert D.entry(0, 0) == 3
    assert D.entry(0, 1) == 4
    D = grover_diffusion(4, 3)
    assert D.entry(0, 0) == 1
    assert D.entry(2, 1) == -1


@pytest.mark.parametrize("N,p", [(2, 3), (2, 7), (4, 7), (8, 7), (4, 11)])
def test_grover_diffusion_is_unitary(N, p):
    assert is_unitary(grover_diffusion(N, p))


def test_grover_diffusion_requires_invertible_n():
    with pytest.raises(NotInvertibleN) as excinfo:
        grover_diffusion(3, 3)
    assert (excinfo.value.N, excinfo.value.p) == (3, 3)


def test_grover_config():
    assert GroverConfig(N=4, p=7).iterations == 2
    assert GroverConfig(N=8, p=7).iterations == 3
    assert GroverConfig(N=2, p=3).iterations == 1
    assert GroverConfig(N=16, p=7).n == 4
    with pytest.raises(ValidationError):
        GroverConfig(N=6, p=7)
    with pytest.raises(BadResidue):
        GroverConfig(N=4, p=5)


@pytest.mark.parametrize("p", [7, 3])
def test_grover_n4_single_iteration(p):
    cfg = GroverConfig(N=4, p=p, iterations=1)
    for marked in range(4):
        result = grover(marked, cfg)
        assert result.final_support == [marked]
        assert result.outcomes.is_certain(marked)
        assert result.oracle_evals == 1
        assert result.details["success"]


def test_grover_default_iterations_overshoot():
    for p in (3, 7):
        result = grover(2, GroverConfig(N=4, p=p))
        assert result.oracle_evals == 2
        assert result.final_support == [0, 1, 2, 3]
        assert not result.details["success"]


def test_grover_structured_diffusion_matches_dense():
    ctx = validate_field(7, 2)
    D = grover_diffusion(4, 7)
    O = phase_oracle(4, 1, ctx)
    result = grover(1, GroverConfig(N=4, p=7, iterations=1))
    start = grover(1, GroverConfig(N=4, p=7, iterations=0)).final_state
    assert apply(matmul(D, O), start) == result.final_state


def test_grover_n2_never_singleton():
    # при N = 2 диффузия - перестановка двух амплитуд
    assert iteration_supports(2, 7, 0, 4) == [[0, 1]] * 4
    sweep = grover_sweep(2, 7)
    assert sweep.first_success == {0: None, 1: None}
    assert not sweep.all_succeed


def test_grover_sweep_n4():
    sweep = grover_sweep(4, 7)
    assert sweep.first_success == {0: 1, 1: 1, 2: 1, 3: 1}
    assert sweep.all_succeed
    assert sweep.to_json()["first_success"] == {"0": 1, "1": 1, "2": 1, "3": 1}


def test_grover_rejects_bad_marked():
    with pytest.raises(ValueError):
        grover(4, GroverConfig(N=4, p=7))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_deutsch_jozsa_exhaustive(n):
    for value in (False, True):
        result = deutsch_jozsa(OracleTable.constant(n, value), 3)
        assert result.verdict == Verdict.CONSTANT
        assert result.oracle_evals == 1
        assert result.details["x_support"] == [0]
    for f in OracleTable.all_balanced(n):
        result = deutsch_jozsa(f, 3)
        assert result.verdict == Verdict.BALANCED
        assert result.oracle_evals == 1
        assert 0 not in result.details["x_support"]


def test_deutsch_jozsa_identity_function_is_balanced():
    assert deutsch_jozsa(OracleTable(n=1, outputs=[0, 1]), 3).verdict == Verdict.BALANCED
    assert deutsch_jozsa(OracleTable(n=1, outputs=[0, 1]), 7).verdict == Verdict.BALANCED


def test_deutsch_jozsa_promise_violation():
    with pytest.raises(PromiseViolated):
        deutsch_jozsa(OracleTable(n=2, outputs=[1, 0, 0, 0]), 3)


def test_supernatural_condition():
    assert supernatural_condition(7, 3).divides
    assert supernatural_condition(3, 2).divides
    report = supernatural_condition(7, 4)
    assert not report.divides
    assert report.padded_N == 6
    assert supernatural_condition(7, 3).padded_N is None
    with pytest.raises(ContextMismatch):
        supernatural_condition(2, 3)


def test_pad_database():
    assert pad_database(7, 4) == 6
    assert pad_database(3, 3) == 4
    assert pad_database(7, 3) == 3
    for p in (3, 7, 11, 19, 23):
        for N in range(1, 25):
            padded = pad_database(p, N)
            assert padded >= N
            assert supernatural_condition(p, padded).divides


@pytest.mark.parametrize("p,n", [(3, 2), (7, 3)])
def test_unique_sat_discrete_exhaustive(p, n):
    for f in OracleTable.all_unique_sat(n):
        result = unique_sat_discrete(f, p)
        assert result.oracle_evals == 1
        assert result.details["supernatural"]["divides"]
        if f.satisfying():
            assert result.verdict == Verdict.SAT
            assert result.details["amplitude"] == [0, 0]
        else:
            assert result.verdict == Verdict.UNSAT
            assert result.final_support == [0]


def test_unique_sat_discrete_inconclusive_without_divisibility():
    for x in range(8):
        result = unique_sat_discrete(OracleTable.unique_sat(3, x), 3)
        assert result.verdict == Verdict.INCONCLUSIVE
        assert result.details["amplitude"] != [0, 0]
        assert not result.details["supernatural"]["divides"]
        assert result.details["supernatural"]["padded_N"] == 4
    assert unique_sat_discrete(OracleTable.unique_sat(3, None), 3).verdict == Verdict.UNSAT


def test_unique_sat_discrete_strict():
    with pytest.raises(PromiseViolated):
        unique_sat_discrete(OracleTable(n=2, outputs=[1, 0, 1, 0]), 3, strict=True)
