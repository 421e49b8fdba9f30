"""
Поиск Гровера над F_{p²} с диффузией -I + (2/N)·J.
"""
import logging
import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from ..arithmetic.field import FieldSpec, validate_field
from ..arithmetic.linalg import Operator, OracleTable, StateVector
from ..errors import IsotropicStart, IsotropicVector, NotInvertibleN
from ..theories.discrete import normalize
from ..theories.outcomes import CircuitResult, OutcomeSet

logger = logging.getLogger(__name__)


class GroverConfig(BaseModel):
    """Параметры поиска: размер базы N = 2^n, характеристика p, число итераций"""
    N: int = Field(ge=2)
    p: int
    iterations: Optional[int] = Field(default=None, ge=0)

    @field_validator("N")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError(f"Размер базы N={value} должен быть степенью двойки")
        return value

    @model_validator(mode="after")
    def _check_field(self) -> "GroverConfig":
        validate_field(self.p, 2)
        if math.gcd(self.N, self.p) != 1:
            raise NotInvertibleN(self.N, self.p)
        if self.iterations is None:
            self.iterations = round(math.sqrt(self.N))
        return self

    @property
    def n(self) -> int:
        return self.N.bit_length() - 1

    @property
    def ctx(self) -> FieldSpec:
        return validate_field(self.p, 2)


def _two_over_n(N: int, ctx: FieldSpec):
    if N % ctx.p == 0:
        raise NotInvertibleN(N, ctx.p)
    return ctx.element(2) * ctx.element(N).inverse()


def grover_diffusion(N: int, p: int) -> Operator:
    """
    Матрица диффузии: диагональ -1 + 2/N, вне диагонали 2/N

    Args:
        N: размер базы, не делящийся на p
        p: характеристика поля F_{p²}

    Returns:
        Operator N x N
    """
    ctx = validate_field(p, 2)
    off = _two_over_n(N, ctx)
    diag = off - 1
    return Operator(N, N, tuple(diag if j == k else off for j in range(N) for k in range(N)), ctx)


def phase_oracle(N: int, marked: int, ctx: FieldSpec) -> Operator:
    """Диагональная матрица с -1 на позиции marked"""
    return Operator(
        N, N,
        tuple((-ctx.one if j == marked else ctx.one) if j == k else ctx.zero for j in range(N) for k in range(N)),
        ctx,
    )


def _phase_flip(oracle: OracleTable, state: StateVector) -> StateVector:
    # Одно обращение к оракулу: знак меняется там, где f(x) = 1
    oracle.record_evaluation()
    return StateVector(
        tuple(-a if oracle.value(x) else a for x, a in enumerate(state.entries)),
        state.ctx,
    )


def _diffuse(state: StateVector, two_over_n) -> StateVector:
    # D·v = -v + (2/N)·(Σv)·1 без построения плотной матрицы
    shift = two_over_n * sum(state.entries, state.ctx.zero)
    return StateVector(tuple(shift - a for a in state.entries), state.ctx)


def uniform_state(N: int, ctx: FieldSpec) -> StateVector:
    """Нормированный вектор из единиц; IsotropicStart, если N ≡ 0 (mod p)"""
    try:
        return normalize(StateVector(tuple([ctx.one] * N), ctx), canonical=False).vector
    except IsotropicVector:
        raise IsotropicStart(N, ctx.p)


def grover(marked: int, cfg: GroverConfig) -> CircuitResult:
    """
    Итерации Гровера: инверсия фазы отмеченной записи, затем диффузия

    Args:
        marked: индекс отмеченной записи, 0 ≤ marked < N
        cfg: параметры поиска

    Returns:
        CircuitResult; success означает носитель, равный {marked}
    """
    if not 0 <= marked < cfg.N:
        raise ValueError(f"Индекс {marked} вне диапазона [0, {cfg.N})")
    ctx = cfg.ctx
    state = uniform_state(cfg.N, ctx)
    two_over_n = _two_over_n(cfg.N, ctx)
    oracle = OracleTable.unique_sat(cfg.n, marked)
    for _ in range(cfg.iterations):
        state = _diffuse(_phase_flip(oracle, state), two_over_n)

    outcomes = OutcomeSet.from_state(state)
    success = outcomes.possible == {marked}
    logger.debug(f"Гровер N={cfg.N} над {ctx}, marked={marked}: носитель {outcomes.sorted()}")
    return CircuitResult(
        algorithm="grover",
        outcomes=outcomes,
        oracle_evals=oracle.eval_count,
        final_state=state,
        details={"N": cfg.N, "marked": marked, "iterations": cfg.iterations, "success": success},
    )


class GroverSweep(BaseModel):
    """Первая итерация, на которой носитель становится {marked}, для каждой записи"""
    N: int
    p: int
    max_iterations: int
    first_success: Dict[int, Optional[int]]

    @property
    def all_succeed(self) -> bool:
        return all(k is not None for k in self.first_success.values())

    def to_json(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "p": self.p,
            "max_iterations": self.max_iterations,
            "first_success": {str(m): k for m, k in sorted(self.first_success.items())},
            "all_succeed": self.all_succeed,
        }


def grover_sweep(N: int, p: int, max_iterations: Optional[int] = None) -> GroverSweep:
    """
    Перебор всех отмеченных позиций и итераций 1..max_iterations (по умолчанию N)
    """
    cfg = GroverConfig(N=N, p=p, iterations=0)
    limit = max_iterations if max_iterations is not None else N
    ctx = cfg.ctx
    start = uniform_state(N, ctx)
    two_over_n = _two_over_n(N, ctx)
    first_success: Dict[int, Optional[int]] = {}
    for marked in range(N):
        oracle = OracleTable.unique_sat(cfg.n, marked)
        state = start
        first_success[marked] = None
        for k in range(1, limit + 1):
            state = _diffuse(_phase_flip(oracle, state), two_over_n)
            if state.support() == [marked]:
                first_success[marked] = k
                break
    sweep = GroverSweep(N=N, p=p, max_iterations=limit, first_success=first_success)
    logger.info(f"Гровер N={N} над F_{p}²: успех для всех записей - {sweep.all_succeed}")
    return sweep


def iteration_supports(N: int, p: int, marked: int, iterations: int) -> List[List[int]]:
    """Носитель состояния после каждой итерации 1..iterations"""
    cfg = GroverConfig(N=N, p=p, iterations=iterations)
    state = uniform_state(N, cfg.ctx)
    two_over_n = _two_over_n(N, cfg.ctx)
    oracle = OracleTable.unique_sat(cfg.n, marked)
    supports = []
    for _ in range(iterations):
        state = _diffuse(_phase_flip(oracle, state), two_over_n)
        supports.append(state.support())
    return supports
