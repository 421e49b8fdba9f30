"""
Дискретная квантовая теория над F_{p²}, p ≡ 3 (mod 4).

Состояния - векторы единичной нормы с точностью до фазы (p+1 скаляров
нормы 1), наблюдаемые - эрмитовы операторы, эволюция - унитарные.
"""
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from ..arithmetic.field import AnyElement, FieldSpec, Fp2Element, FpElement, enumerate_elements, validate_field
from ..arithmetic.linalg import (
    Operator,
    StateVector,
    apply,
    inner_product,
    is_hermitian,
    is_unitary,
    proportional,
    tensor,
)
from ..errors import (
    ContextMismatch,
    DimensionMismatch,
    ImpossibleOutcome,
    IsotropicVector,
    NotCanonical,
    NotTwoByTwo,
    NotUnitNorm,
    NoUnitaryScaling,
    TooLarge,
    ZeroVector,
)
from .outcomes import OutcomeSet

logger = logging.getLogger(__name__)

CENSUS_MAX_P = 31
HERMITIAN_MAX_P = 11
NO_CLONING_MAX_P = 11
UNITARY_SCAN_MAX_P = 3
# Полный перебор эрмитовых матриц 2x2 выполняется, пока p^8 не превышает предел
HERMITIAN_EXHAUSTIVE_LIMIT = 10 ** 4


def _discrete_field(p: int) -> FieldSpec:
    return validate_field(p, 2)


def _require_degree2(ctx: FieldSpec) -> None:
    if ctx.degree != 2:
        raise ContextMismatch(f"Дискретная теория требует поле F_p², получено {ctx}")


@dataclass(frozen=True)
class PhaseGroup:
    """Скаляры нормы 1: слой дискретного расслоения Хопфа"""
    p: int
    elements: Tuple[Fp2Element, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, s: Any) -> bool:
        return s in self.elements

    def is_closed(self) -> bool:
        members = set(self.elements)
        return all(a * b in members for a in self.elements for b in self.elements) and all(
            a.conj() in members for a in self.elements
        )


@lru_cache(maxsize=None)
def phase_group(p: int) -> PhaseGroup:
    """
    Группа фаз F_{p²}

    Args:
        p: характеристика, p ≡ 3 (mod 4)

    Returns:
        PhaseGroup из p+1 элементов с norm(s) = 1
    """
    ctx = _discrete_field(p)
    elements = tuple(s for s in enumerate_elements(ctx) if s.norm().value == 1)
    return PhaseGroup(p=p, elements=elements)


def _canonical_phase(vector: StateVector) -> AnyElement:
    """Фаза u, при которой первая ненулевая компонента u·a лексикографически минимальна"""
    first = next(a for a in vector.entries if a)
    return min(phase_group(vector.ctx.p).elements, key=lambda u: (u * first).key)


@dataclass(frozen=True)
class DiscreteState:
    """Вектор с ⟨ψ|ψ⟩ = 1; canonical отмечает канонического представителя класса"""
    vector: StateVector
    canonical: bool = False

    def __post_init__(self):
        _require_degree2(self.vector.ctx)
        norm = inner_product(self.vector, self.vector)
        if norm != 1:
            raise NotUnitNorm(str(norm))
        if self.canonical and self.vector.scale(_canonical_phase(self.vector)) != self.vector:
            raise NotCanonical(f"{self.vector} не является каноническим представителем")

    @property
    def ctx(self) -> FieldSpec:
        return self.vector.ctx

    @property
    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(a.key for a in self.vector.entries)

    def to_json(self) -> List[Any]:
        return [a.to_json() for a in self.vector.entries]

    def __str__(self) -> str:
        return str(self.vector)


def canonicalize(s: DiscreteState) -> DiscreteState:
    """Канонический представитель класса фазовой эквивалентности"""
    if s.canonical:
        return s
    u = _canonical_phase(s.vector)
    return DiscreteState(s.vector.scale(u), canonical=True)


def equivalent(s1: DiscreteState, s2: DiscreteState) -> bool:
    """Состояния эквивалентны, если отличаются фазовым множителем"""
    return canonicalize(s1).vector == canonicalize(s2).vector


def _norm_preimage(target: FpElement, ctx: FieldSpec) -> Optional[Fp2Element]:
    """Первый в лексикографическом порядке s с norm(s) = target"""
    return next((s for s in enumerate_elements(ctx) if s.norm() == target), None)


def normalize(v: StateVector, canonical: bool = True) -> DiscreteState:
    """
    Нормировка вектора скалярным множителем

    Args:
        v: ненулевой вектор над F_p² с ⟨v|v⟩ ≠ 0
        canonical: вернуть канонического представителя класса

    Returns:
        DiscreteState, равный s·v с ⟨sv|sv⟩ = 1
    """
    _require_degree2(v.ctx)
    if v.is_zero():
        raise ZeroVector()
    length = inner_product(v, v)
    if not length:
        raise IsotropicVector(v)
    # ⟨v|v⟩ лежит в F_p, а норма сюръективна на F_p*
    target = v.ctx.base.element(length.re).inverse()
    s = _norm_preimage(target, v.ctx)
    state = DiscreteState(v.scale(s))
    return canonicalize(state) if canonical else state


def _census_chunk(p: int, start: int, stop: int) -> Tuple[int, Set[Tuple[Tuple[int, int], Tuple[int, int]]]]:
    """
    Перебор векторов (a, b), у которых индекс a лежит в [start, stop)

    Работает на целых парах (re, im): отбор по норме b выполняется заранее.
    """
    phases = [(u.re, u.im) for u in phase_group(p).elements]
    by_norm: Dict[int, List[Tuple[int, int]]] = {}
    for re in range(p):
        for im in range(p):
            by_norm.setdefault((re * re + im * im) % p, []).append((re, im))

    def mul(u: Tuple[int, int], z: Tuple[int, int]) -> Tuple[int, int]:
        return ((u[0] * z[0] - u[1] * z[1]) % p, (u[0] * z[1] + u[1] * z[0]) % p)

    count = 0
    reps: Set[Tuple[Tuple[int, int], Tuple[int, int]]] = set()
    for index in range(start, stop):
        a = divmod(index, p)
        need = (1 - a[0] * a[0] - a[1] * a[1]) % p
        for b in by_norm.get(need, []):
            count += 1
            first = a if a != (0, 0) else b
            u = min(phases, key=lambda ph: mul(ph, first))
            reps.add((mul(u, a), mul(u, b)))
    return count, reps


class BlochCensus(BaseModel):
    """Перепись единичных векторов дискретной сферы Блоха"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    p: int
    unit_vectors: int
    classes: int
    phases: int
    class_reps: List[DiscreteState]

    @model_validator(mode="after")
    def _check_counts(self) -> "BlochCensus":
        if self.unit_vectors != self.classes * self.phases:
            raise ValueError(
                f"Нарушено unit_vectors = classes·phases: {self.unit_vectors} != {self.classes}·{self.phases}"
            )
        return self

    @property
    def formula_classes(self) -> int:
        return self.p * (self.p - 1)

    @property
    def formula_matches(self) -> bool:
        return self.classes == self.formula_classes

    def to_json(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "unit_vectors": self.unit_vectors,
            "classes": self.classes,
            "phases": self.phases,
            "formula_classes": self.formula_classes,
            "formula_matches": self.formula_matches,
            "reps": [rep.to_json() for rep in self.class_reps],
        }

    def csv_rows(self) -> List[Dict[str, int]]:
        rows = []
        for k, rep in enumerate(self.class_reps):
            (a_re, a_im), (b_re, b_im) = rep.to_json()
            rows.append({"p": self.p, "class": k, "a_re": a_re, "a_im": a_im, "b_re": b_re, "b_im": b_im})
        return rows


def bloch_census(p: int, d: int = 2, workers: int = 1, max_p: int = CENSUS_MAX_P) -> BlochCensus:
    """
    Полная перепись векторов единичной нормы в размерности 2

    Args:
        p: характеристика, p ≡ 3 (mod 4)
        d: размерность (поддерживается только 2)
        workers: число процессов; перебор делится по диапазонам первой компоненты
        max_p: верхняя граница p

    Returns:
        BlochCensus с числом векторов, классов, фаз и каноническими представителями
    """
    if d != 2:
        raise DimensionMismatch(f"Перепись поддерживается только для d=2, получено d={d}")
    if p > max_p:
        raise TooLarge("p для переписи сферы Блоха", p, max_p)
    ctx = _discrete_field(p)
    total = p * p
    chunk_count = max(1, min(total, workers * 4))
    bounds = [(total * k // chunk_count, total * (k + 1) // chunk_count) for k in range(chunk_count)]

    if workers > 1:
        logger.info(f"Перепись p={p}: {len(bounds)} диапазонов на {workers} процессах")
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_census_chunk, p, lo, hi) for lo, hi in bounds]
            results = [future.result() for future in futures]
    else:
        results = [_census_chunk(p, lo, hi) for lo, hi in bounds]

    unit_vectors = sum(count for count, _ in results)
    reps: Set[Tuple[Tuple[int, int], Tuple[int, int]]] = set()
    for _, chunk_reps in results:
        reps |= chunk_reps

    class_reps = [
        DiscreteState(StateVector.from_values(ctx, [list(a), list(b)]), canonical=True)
        for a, b in sorted(reps)
    ]
    census = BlochCensus(
        p=p,
        unit_vectors=unit_vectors,
        classes=len(class_reps),
        phases=phase_group(p).order,
        class_reps=class_reps,
    )
    logger.info(f"Перепись p={p}: {census.unit_vectors} векторов, {census.classes} классов, {census.phases} фаз")
    if not census.formula_matches:
        logger.warning(f"p={p}: число классов {census.classes} не совпадает с p(p-1) = {census.formula_classes}")
    return census


@dataclass(frozen=True)
class PauliCoefficients:
    """Коэффициенты разложения O = Σ a_μ X_μ"""
    a0: AnyElement
    a1: AnyElement
    a2: AnyElement
    a3: AnyElement

    def as_tuple(self) -> Tuple[AnyElement, ...]:
        return (self.a0, self.a1, self.a2, self.a3)

    def to_json(self) -> List[Any]:
        return [a.to_json() for a in self.as_tuple()]


def pauli_matrices(ctx: FieldSpec) -> Tuple[Operator, Operator, Operator, Operator]:
    """X0 = I, X1, X2 = [[0, -i], [i, 0]], X3 = diag(1, -1)"""
    _require_degree2(ctx)
    i = ctx.i
    return (
        Operator.from_rows(ctx, [[1, 0], [0, 1]]),
        Operator.from_rows(ctx, [[0, 1], [1, 0]]),
        Operator.from_rows(ctx, [[ctx.zero, -i], [i, ctx.zero]]),
        Operator.from_rows(ctx, [[1, 0], [0, -1]]),
    )


def pauli_compose(c: PauliCoefficients) -> Operator:
    ctx = c.a0.ctx
    _require_degree2(ctx)
    i = ctx.i
    return Operator.from_rows(ctx, [
        [c.a0 + c.a3, c.a1 - i * c.a2],
        [c.a1 + i * c.a2, c.a0 - c.a3],
    ])


def pauli_decompose(O: Operator) -> PauliCoefficients:
    """Обратное к pauli_compose; требует обратимость 2 (нечетное p)"""
    if O.rows != 2 or O.cols != 2:
        raise NotTwoByTwo(O.rows, O.cols)
    ctx = O.ctx
    _require_degree2(ctx)
    half = ctx.element(2).inverse()
    o00, o01, o10, o11 = O.entries
    return PauliCoefficients(
        a0=(o00 + o11) * half,
        a1=(o01 + o10) * half,
        a2=(o10 - o01) * (ctx.element(2) * ctx.i).inverse(),
        a3=(o00 - o11) * half,
    )


class HermitianCensus(BaseModel):
    """Перепись эрмитовых матриц 2x2 над F_p²"""
    p: int
    total: int
    diagonal_values: List[int]
    diagonal_choices: int
    off_diagonal_choices: int
    diagonals_in_base_field: bool
    off_diagonal_free: bool
    exhaustive_total: Optional[int] = None

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump()


def hermitian_census(p: int) -> HermitianCensus:
    """
    Перечисление эрмитовых матриц 2x2

    Условие O = O† поэлементное: диагональ неподвижна при сопряжении,
    O_10 = conj(O_01). Пока p^8 мало, дополнительно перебираются все матрицы.
    """
    if p > HERMITIAN_MAX_P:
        raise TooLarge("p для переписи эрмитовых матриц", p, HERMITIAN_MAX_P)
    ctx = _discrete_field(p)
    elements = enumerate_elements(ctx)
    diagonal = [a for a in elements if a.conj() == a]
    off_diagonal = [(z, w) for z in elements for w in elements if w == z.conj()]
    total = len(diagonal) ** 2 * len(off_diagonal)

    exhaustive_total = None
    if p ** 8 <= HERMITIAN_EXHAUSTIVE_LIMIT:
        exhaustive_total = sum(
            1 for cells in itertools.product(elements, repeat=4) if is_hermitian(Operator(2, 2, cells, ctx))
        )

    return HermitianCensus(
        p=p,
        total=total,
        diagonal_values=sorted(a.to_json()[0] for a in diagonal),
        diagonal_choices=len(diagonal),
        off_diagonal_choices=len(off_diagonal),
        diagonals_in_base_field=all(a.im == 0 for a in diagonal),
        off_diagonal_free=len({z for z, _ in off_diagonal}) == p * p,
        exhaustive_total=exhaustive_total,
    )


def measure_standard(s: DiscreteState) -> OutcomeSet:
    """Возможностное измерение в стандартном базисе: носитель состояния"""
    return OutcomeSet.from_state(s.vector)


def post_state(s: DiscreteState, outcome: int) -> DiscreteState:
    """
    Состояние после исхода outcome: проекция на базисный вектор и нормировка

    Проекция - один базисный вектор, поэтому изотропной быть не может.
    """
    if not 0 <= outcome < s.vector.dim:
        raise ImpossibleOutcome(outcome)
    amplitude = s.vector.entries[outcome]
    if not amplitude:
        raise ImpossibleOutcome(outcome)
    return normalize(StateVector.basis(s.ctx, s.vector.dim, outcome).scale(amplitude))


@lru_cache(maxsize=None)
def hadamard(p: int) -> Operator:
    """
    Преобразование Адамара s·[[1, 1], [1, -1]] с norm(s)·2 = 1

    Для p = 3 первый подходящий s равен 1+i.
    """
    ctx = _discrete_field(p)
    target = ctx.base.element(2).inverse()
    s = _norm_preimage(target, ctx)
    if s is None:
        raise NoUnitaryScaling(p)
    H = Operator.from_rows(ctx, [[1, 1], [1, -1]]).scale(s)
    if not is_unitary(H):
        raise NoUnitaryScaling(p)
    logger.debug(f"Адамар над {ctx}: s = {s}")
    return H


def unitary_group_2x2(p: int) -> List[Operator]:
    """Все унитарные матрицы 2x2 полным перебором (только p = 3)"""
    if p > UNITARY_SCAN_MAX_P:
        raise TooLarge("p для перебора унитарных матриц 2x2", p, UNITARY_SCAN_MAX_P)
    ctx = _discrete_field(p)
    elements = enumerate_elements(ctx)
    return [
        gate
        for gate in (Operator(2, 2, cells, ctx) for cells in itertools.product(elements, repeat=4))
        if is_unitary(gate)
    ]


def unit_vectors(p: int) -> List[StateVector]:
    """Все векторы единичной нормы размерности 2"""
    ctx = _discrete_field(p)
    elements = enumerate_elements(ctx)
    return [
        v for v in (StateVector(pair, ctx) for pair in itertools.product(elements, repeat=2))
        if inner_product(v, v) == 1
    ]


class NoCloningReport(BaseModel):
    """Контрпример к клонированию: линейное C копирует базис, но не суперпозицию"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    p: int
    cloner: Operator
    psi: DiscreteState
    produced: StateVector
    required: StateVector
    basis_clones: bool
    witness: bool

    def to_json(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "cloner": self.cloner.to_json(),
            "psi": self.psi.to_json(),
            "produced": self.produced.to_json(),
            "required": self.required.to_json(),
            "basis_clones": self.basis_clones,
            "witness": self.witness,
        }


def no_cloning_witness(p: int) -> NoCloningReport:
    """
    Линейное C с C(|b⟩|0⟩) = |b⟩|b⟩ для базисных b не клонирует ψ = H|0⟩

    На дополнении (|b⟩|1⟩) C доопределено перестановкой базиса; ψ⊗|0⟩
    лежит в линейной оболочке |00⟩, |10⟩, поэтому выбор не влияет на вывод.
    """
    if p > NO_CLONING_MAX_P:
        raise TooLarge("p для поиска контрпримера к клонированию", p, NO_CLONING_MAX_P)
    ctx = _discrete_field(p)
    # столбец k переходит в базисный вектор perm[k]
    perm = [0, 1, 3, 2]
    cells = [ctx.zero] * 16
    for col, row in enumerate(perm):
        cells[row * 4 + col] = ctx.one
    cloner = Operator(4, 4, tuple(cells), ctx)

    zero_ket = StateVector.basis(ctx, 2, 0)
    basis_clones = all(
        apply(cloner, tensor(b, zero_ket)) == tensor(b, b)
        for b in (StateVector.basis(ctx, 2, k) for k in range(2))
    )
    psi = normalize(apply(hadamard(p), zero_ket))
    produced = apply(cloner, tensor(psi.vector, zero_ket))
    required = tensor(psi.vector, psi.vector)
    lam = proportional(produced, required)
    witness = lam is None or lam.norm().value != 1
    return NoCloningReport(
        p=p,
        cloner=cloner,
        psi=psi,
        produced=produced,
        required=required,
        basis_clones=basis_clones,
        witness=witness,
    )
