"""Алгоритм Дойча-Йожи над F_{p²}."""
import logging

from ..arithmetic.field import validate_field
from ..arithmetic.linalg import OracleTable, StateVector, apply_oracle, apply_qubit_gate
from ..errors import PromiseViolated
from ..theories.discrete import hadamard
from ..theories.modal import check_arity
from ..theories.outcomes import CircuitResult, OutcomeSet, Verdict

logger = logging.getLogger(__name__)


def deutsch_jozsa(f: OracleTable, p: int = 3) -> CircuitResult:
    """
    Различение постоянной и сбалансированной функции за одно вычисление

    Регистр y готовится в состоянии H|1⟩ (фазовый откат), затем
    H^{⊗n} на x, U_f, H^{⊗n} на x и измерение регистра x.

    Args:
        f: постоянная или сбалансированная таблица
        p: характеристика поля F_{p²}

    Returns:
        CircuitResult с вердиктом constant (0̄ достоверен) или balanced (0̄ невозможен)
    """
    check_arity(f.n)
    ctx = validate_field(p, 2)
    H = hadamard(p)
    n_qubits = f.n + 1
    size = f.size
    evals_before = f.eval_count

    # |1⟩|0̄⟩
    state = StateVector.basis(ctx, 2 * size, size)
    for q in range(n_qubits):
        state = apply_qubit_gate(H, state, q, n_qubits)
    state = apply_oracle(f, state)
    for q in range(1, n_qubits):
        state = apply_qubit_gate(H, state, q, n_qubits)

    outcomes = OutcomeSet.from_state(state)
    x_outcomes = outcomes.project(lambda index: index % size)
    if x_outcomes.is_certain(0):
        verdict = Verdict.CONSTANT
    elif x_outcomes.is_impossible(0):
        verdict = Verdict.BALANCED
    else:
        raise PromiseViolated(f"Исход 0̄ возможен, но не достоверен: носитель регистра x {x_outcomes.sorted()}")

    logger.debug(f"dj n={f.n} над {ctx}: носитель x {x_outcomes.sorted()} -> {verdict.value}")
    return CircuitResult(
        algorithm="dj",
        verdict=verdict,
        outcomes=outcomes,
        oracle_evals=f.eval_count - evals_before,
        final_state=state,
        details={"n": f.n, "x_support": x_outcomes.sorted()},
    )
