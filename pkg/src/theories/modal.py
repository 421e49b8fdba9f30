"""
Модальная квантовая теория над F_p (в основном F_2).

Состояния - ненулевые векторы без нормировки, динамика - любые обратимые
линейные отображения, измерение - возможностное.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from ..arithmetic.field import FieldSpec, enumerate_elements, validate_field
from ..arithmetic.linalg import (
    Operator,
    OracleTable,
    StateVector,
    apply_oracle,
    apply_qubit_gate,
    is_invertible,
)
from ..errors import (
    ArityTooLarge,
    ContextMismatch,
    MultiplyMarked,
    NoMarked,
    PromiseViolated,
    TooLarge,
    ZeroState,
)
from ..utils.limits import max_arity
from .outcomes import CircuitResult, OutcomeSet, Verdict

logger = logging.getLogger(__name__)

MODAL_GATE_MAX_P = 11

# Матрицы из описания модальной теории; S_DAGGER над F_2 - просто транспонирование S
MODAL_GATES = {
    "X0": [[1, 0], [0, 1]],
    "X1": [[0, 1], [1, 0]],
    "S": [[1, 0], [1, 1]],
    "S_DAGGER": [[1, 1], [0, 1]],
}


def modal_gate(name: str, ctx: Optional[FieldSpec] = None) -> Operator:
    """Именованный вентиль модальной теории (X0, X1, S, S_DAGGER)"""
    if name not in MODAL_GATES:
        raise KeyError(f"Неизвестный модальный вентиль: {name}")
    return Operator.from_rows(ctx or validate_field(2, 1), MODAL_GATES[name])


@dataclass(frozen=True)
class ModalState:
    """Ненулевой вектор над простым полем"""
    vector: StateVector

    def __post_init__(self):
        if self.vector.ctx.degree != 1:
            raise ContextMismatch(f"Модальное состояние требует простое поле, получено {self.vector.ctx}")
        if self.vector.is_zero():
            raise ZeroState()

    @property
    def qubit_count(self) -> Optional[int]:
        """Число кубитов регистра, если размерность - степень двойки"""
        dim = self.vector.dim
        if dim & (dim - 1):
            return None
        return dim.bit_length() - 1

    @classmethod
    def zero_register(cls, n_qubits: int, ctx: Optional[FieldSpec] = None) -> "ModalState":
        return cls(StateVector.basis(ctx or validate_field(2, 1), 2 ** n_qubits, 0))


def modal_states_1q(p: int = 2) -> List[ModalState]:
    """Все допустимые состояния одного кубита над F_p (ненулевые векторы)"""
    ctx = validate_field(p, 1)
    elements = enumerate_elements(ctx)
    return [
        ModalState(StateVector(pair, ctx))
        for pair in itertools.product(elements, repeat=2)
        if any(pair)
    ]


def modal_gates_1q(p: int) -> List[Operator]:
    """
    Все обратимые отображения 2x2 над F_p

    Args:
        p: характеристика (не больше 11)

    Returns:
        матрицы в лексикографическом порядке элементов (a, b, c, d)
    """
    if p > MODAL_GATE_MAX_P:
        raise TooLarge("p для перечисления GL(2, F_p)", p, MODAL_GATE_MAX_P)
    ctx = validate_field(p, 1)
    elements = enumerate_elements(ctx)
    gates = []
    for cells in itertools.product(elements, repeat=4):
        gate = Operator(2, 2, cells, ctx)
        if is_invertible(gate):
            gates.append(gate)
    logger.debug(f"|GL(2, F_{p})| = {len(gates)}")
    return gates


def measure_possibilistic(s: Union[ModalState, StateVector]) -> OutcomeSet:
    """Возможные исходы: индексы базиса с ненулевой амплитудой"""
    vector = s.vector if isinstance(s, ModalState) else s
    if vector.is_zero():
        raise ZeroState()
    return OutcomeSet.from_state(vector)


def check_arity(n: int) -> None:
    limit = max_arity()
    if n > limit:
        raise ArityTooLarge(n, limit)


def unique_sat_modal(f: OracleTable, strict: bool = False) -> CircuitResult:
    """
    Черный ящик UNIQUE-SAT над F_2 за одно вычисление оракула

    Args:
        f: таблица истинности с не более чем одним выполняющим набором
        strict: отвергать таблицы с двумя и более выполняющими наборами

    Returns:
        CircuitResult с вердиктом UNSAT, если конечный носитель равен {|0⟩|0̄⟩}, иначе SAT
    """
    check_arity(f.n)
    if strict and not f.is_unique_sat_admissible():
        raise PromiseViolated(f"Функция имеет {len(f.satisfying())} выполняющих наборов")

    ctx = validate_field(2, 1)
    n_qubits = f.n + 1
    x_qubits = range(1, n_qubits)
    s_gate, s_dagger = modal_gate("S", ctx), modal_gate("S_DAGGER", ctx)
    controlled = {0: modal_gate("X0", ctx), 1: modal_gate("X1", ctx)}
    evals_before = f.eval_count

    # (1) |0⟩|0̄⟩
    state = ModalState.zero_register(n_qubits, ctx).vector
    # (2) S на каждом кубите x
    for q in x_qubits:
        state = apply_qubit_gate(s_gate, state, q, n_qubits)
    # (3) U_f
    state = apply_oracle(f, state)
    # (4) снова S на x
    for q in x_qubits:
        state = apply_qubit_gate(s_gate, state, q, n_qubits)
    # (5) S† на y
    state = apply_qubit_gate(s_dagger, state, 0, n_qubits)
    # (6) Σ_a |a⟩⟨a| ⊗ X_a^{⊗n}
    for a, gate in controlled.items():
        for q in x_qubits:
            state = apply_qubit_gate(gate, state, q, n_qubits, control=(0, a))
    # (7) снова S† на y
    state = apply_qubit_gate(s_dagger, state, 0, n_qubits)
    # (8)
    outcomes = measure_possibilistic(state)

    verdict = Verdict.UNSAT if outcomes.possible == {0} else Verdict.SAT
    logger.debug(f"usat-modal n={f.n}: носитель {outcomes.sorted()} -> {verdict.value}")
    return CircuitResult(
        algorithm="usat-modal",
        verdict=verdict,
        outcomes=outcomes,
        oracle_evals=f.eval_count - evals_before,
        final_state=state,
        details={"n": f.n},
    )


class SearchResult(BaseModel):
    """Результат двоичного поиска по базе данных"""
    index: int
    oracle_evals: int
    database_size: int
    trace: List[Dict[str, Any]] = Field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump()


def database_search_modal(db: OracleTable, strict: bool = False) -> SearchResult:
    """
    Поиск единственной отмеченной записи двоичным поиском по UNIQUE-SAT

    На каждом шаге запрашивается ограниченный оракул младшей половины
    диапазона: n вычислений для N = 2^n. В строгом режиме запрашиваются обе
    половины (2n вычислений), что позволяет обнаружить NoMarked и MultiplyMarked.
    Без strict для базы без отмеченной записи или с несколькими отмеченными
    результат не определен: возвращается N-1 или одна из отмеченных позиций.

    Args:
        db: оракул базы данных с ровно одной отмеченной записью
        strict: проверять обе половины на каждом шаге

    Returns:
        SearchResult с найденным индексом и числом вычислений оракула
    """
    check_arity(db.n)
    lo, hi = 0, db.size
    evals_before = db.eval_count
    trace: List[Dict[str, Any]] = []

    while hi - lo > 1:
        mid = (lo + hi) // 2
        lower = unique_sat_modal(db.restrict(range(lo, mid))).verdict
        step: Dict[str, Any] = {"lo": lo, "mid": mid, "hi": hi, "lower": lower.value}
        if strict:
            upper = unique_sat_modal(db.restrict(range(mid, hi))).verdict
            step["upper"] = upper.value
            if lower == upper == Verdict.UNSAT:
                raise NoMarked(lo, hi)
            if lower == upper == Verdict.SAT:
                raise MultiplyMarked(lo, hi)
        trace.append(step)
        if lower == Verdict.SAT:
            hi = mid
        else:
            lo = mid

    result = SearchResult(
        index=lo,
        oracle_evals=db.eval_count - evals_before,
        database_size=db.size,
        trace=trace,
    )
    logger.info(f"Модальный поиск N={db.size}: индекс {lo}, вычислений оракула {result.oracle_evals}")
    return result
