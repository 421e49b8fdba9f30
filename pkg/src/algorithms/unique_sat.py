"""
Дискретный UNIQUE-SAT и условие делимости 2^N ≡ 1 (mod p).
"""
import logging
from typing import Any, Dict, Optional

from pydantic import BaseModel

from ..arithmetic.field import validate_field
from ..arithmetic.linalg import OracleTable, StateVector, apply_oracle, apply_qubit_gate
from ..errors import ContextMismatch, PromiseViolated
from ..theories.discrete import hadamard
from ..theories.modal import check_arity
from ..theories.outcomes import CircuitResult, OutcomeSet, Verdict
from ..utils.number_theory import multiplicative_order

logger = logging.getLogger(__name__)


class SupernaturalReport(BaseModel):
    """Выполнено ли p | 2^N - 1 и до какого размера дополнить базу"""
    p: int
    N: int
    divides: bool
    padded_N: Optional[int] = None

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump()


def _check_odd_prime(p: int) -> None:
    validate_field(p, 1)
    if p == 2:
        raise ContextMismatch("Условие делимости требует нечетную характеристику")


def pad_database(p: int, N: int) -> int:
    """Наименьшее N' ≥ N, кратное ord_p(2)"""
    _check_odd_prime(p)
    if N < 1:
        raise ValueError(f"Размер базы должен быть ≥ 1, получено {N}")
    order = multiplicative_order(2, p)
    return -(-N // order) * order


def supernatural_condition(p: int, N: int) -> SupernaturalReport:
    """
    Проверка 2^N ≡ 1 (mod p)

    Args:
        p: нечетное простое
        N: число битов (кубитов регистра x)

    Returns:
        SupernaturalReport; padded_N заполняется, если условие не выполнено
    """
    _check_odd_prime(p)
    divides = pow(2, N, p) == 1
    return SupernaturalReport(p=p, N=N, divides=divides, padded_N=None if divides else pad_database(p, N))


def unique_sat_discrete(f: OracleTable, p: int, strict: bool = False) -> CircuitResult:
    """
    Схема UNIQUE-SAT над F_{p²}: H^{⊗n} на x, U_f, H^{⊗n} на x, регистр y не затрагивается

    Амплитуда |0⟩|0̄⟩ равна s^{2n}·#{x: f(x) = 0}. Нулевая амплитуда означает SAT,
    носитель {|0⟩|0̄⟩} означает UNSAT, прочие исходы не разделяют случаи.

    Args:
        f: таблица с не более чем одним выполняющим набором
        p: характеристика поля
        strict: отвергать таблицы с двумя и более выполняющими наборами

    Returns:
        CircuitResult с вердиктом SAT, UNSAT или INCONCLUSIVE
    """
    check_arity(f.n)
    if strict and not f.is_unique_sat_admissible():
        raise PromiseViolated(f"Функция имеет {len(f.satisfying())} выполняющих наборов")
    ctx = validate_field(p, 2)
    H = hadamard(p)
    n_qubits = f.n + 1
    evals_before = f.eval_count

    state = StateVector.basis(ctx, 2 * f.size, 0)
    for q in range(1, n_qubits):
        state = apply_qubit_gate(H, state, q, n_qubits)
    state = apply_oracle(f, state)
    for q in range(1, n_qubits):
        state = apply_qubit_gate(H, state, q, n_qubits)

    outcomes = OutcomeSet.from_state(state)
    amplitude = state.entries[0]
    if not amplitude:
        verdict = Verdict.SAT
    elif outcomes.is_certain(0):
        verdict = Verdict.UNSAT
    else:
        verdict = Verdict.INCONCLUSIVE

    report = supernatural_condition(p, f.n)
    if verdict == Verdict.INCONCLUSIVE and report.divides:
        logger.warning(f"usat-discrete p={p}, n={f.n}: неопределенный исход при выполненном условии делимости")
    logger.debug(f"usat-discrete p={p}, n={f.n}: амплитуда {amplitude} -> {verdict.value}")
    return CircuitResult(
        algorithm="usat-discrete",
        verdict=verdict,
        outcomes=outcomes,
        oracle_evals=f.eval_count - evals_before,
        final_state=state,
        details={"n": f.n, "amplitude": amplitude.to_json(), "supernatural": report.to_json()},
    )
