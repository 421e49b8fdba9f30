"""
Точные векторы и матрицы над активным полем.

Порядок кубитов в составных состояниях: регистр y - старший бит индекса,
затем x_1, ..., x_n (x_n - младший бит). Индекс базисного состояния
|y⟩|x̄⟩ равен y·2^n + x.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from ..errors import ContextMismatch, DimensionMismatch, NotSquare
from .field import AnyElement, FieldSpec, enumerate_elements, validate_field

logger = logging.getLogger(__name__)


def _to_element(ctx: FieldSpec, value: Any) -> AnyElement:
    if isinstance(value, (int, list, tuple)):
        return ctx.from_json(value)
    if value.ctx != ctx:
        raise ContextMismatch(f"Элемент из {value.ctx} в контексте {ctx}")
    return value


@dataclass(frozen=True)
class StateVector:
    """Столбец из d элементов поля"""
    entries: Tuple[AnyElement, ...]
    ctx: FieldSpec

    def __post_init__(self):
        if not self.entries:
            raise DimensionMismatch("Вектор должен иметь размерность ≥ 1")

    @classmethod
    def from_values(cls, ctx: FieldSpec, values: Iterable[Any]) -> "StateVector":
        """Вектор из целых, пар [re, im] или готовых элементов"""
        return cls(tuple(_to_element(ctx, v) for v in values), ctx)

    @classmethod
    def basis(cls, ctx: FieldSpec, dim: int, index: int) -> "StateVector":
        if not 0 <= index < dim:
            raise DimensionMismatch(f"Индекс {index} вне диапазона [0, {dim})")
        zero, one = ctx.zero, ctx.one
        return cls(tuple(one if k == index else zero for k in range(dim)), ctx)

    @classmethod
    def from_json(cls, ctx: FieldSpec, data: Dict[str, Any]) -> "StateVector":
        vector = cls.from_values(ctx, data["entries"])
        if "dim" in data and int(data["dim"]) != vector.dim:
            raise DimensionMismatch(f"dim={data['dim']}, а элементов {vector.dim}")
        return vector

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[AnyElement]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> AnyElement:
        return self.entries[index]

    def __add__(self, other: "StateVector") -> "StateVector":
        _check_same(self, other)
        if self.dim != other.dim:
            raise DimensionMismatch(f"Сложение векторов размерностей {self.dim} и {other.dim}")
        return StateVector(tuple(a + b for a, b in zip(self.entries, other.entries)), self.ctx)

    def scale(self, c: Any) -> "StateVector":
        c = _to_element(self.ctx, c)
        return StateVector(tuple(c * a for a in self.entries), self.ctx)

    def __rmul__(self, c: Any) -> "StateVector":
        return self.scale(c)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def support(self) -> List[int]:
        """Индексы ненулевых амплитуд по возрастанию"""
        return [k for k, a in enumerate(self.entries) if a]

    def to_json(self) -> Dict[str, Any]:
        return {"dim": self.dim, "entries": [a.to_json() for a in self.entries]}

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.entries) + ")^T"


@dataclass(frozen=True)
class Operator:
    """Матрица rows x cols над полем, элементы по строкам"""
    rows: int
    cols: int
    entries: Tuple[AnyElement, ...]
    ctx: FieldSpec

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionMismatch(f"Недопустимый размер {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"Матрица {self.rows}x{self.cols} требует {self.rows * self.cols} элементов, получено {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, ctx: FieldSpec, rows: Sequence[Sequence[Any]]) -> "Operator":
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("Строки матрицы разной длины")
        entries = tuple(_to_element(ctx, v) for r in rows for v in r)
        return cls(len(rows), width, entries, ctx)

    @classmethod
    def from_json(cls, ctx: FieldSpec, data: Dict[str, Any]) -> "Operator":
        rows, cols = int(data["rows"]), int(data["cols"])
        entries = tuple(_to_element(ctx, v) for v in data["entries"])
        return cls(rows, cols, entries, ctx)

    @classmethod
    def column(cls, v: StateVector) -> "Operator":
        return cls(v.dim, 1, v.entries, v.ctx)

    def entry(self, j: int, k: int) -> AnyElement:
        return self.entries[j * self.cols + k]

    def row(self, j: int) -> Tuple[AnyElement, ...]:
        return self.entries[j * self.cols:(j + 1) * self.cols]

    def to_rows(self) -> List[List[AnyElement]]:
        return [list(self.row(j)) for j in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def scale(self, c: Any) -> "Operator":
        c = _to_element(self.ctx, c)
        return Operator(self.rows, self.cols, tuple(c * a for a in self.entries), self.ctx)

    def __rmul__(self, c: Any) -> "Operator":
        return self.scale(c)

    def __matmul__(self, other: Union["Operator", StateVector]) -> Union["Operator", StateVector]:
        if isinstance(other, StateVector):
            return apply(self, other)
        return matmul(self, other)

    def to_json(self) -> Dict[str, Any]:
        return {"rows": self.rows, "cols": self.cols, "entries": [a.to_json() for a in self.entries]}

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(a) for a in self.row(j)) + "]" for j in range(self.rows)) + "]"


def _check_same(a: Any, b: Any) -> None:
    if a.ctx != b.ctx:
        raise ContextMismatch(f"Операнды из разных полей: {a.ctx} и {b.ctx}")


def _require_square(M: Operator) -> None:
    if not M.is_square:
        raise NotSquare(M.rows, M.cols)


def identity(ctx: FieldSpec, d: int) -> Operator:
    zero, one = ctx.zero, ctx.one
    return Operator(d, d, tuple(one if j == k else zero for j in range(d) for k in range(d)), ctx)


def basis_vector(ctx: FieldSpec, d: int, k: int) -> StateVector:
    return StateVector.basis(ctx, d, k)


def inner_product(phi: StateVector, psi: StateVector) -> AnyElement:
    """
    Эрмитово скалярное произведение ⟨φ|ψ⟩ = Σ conj(a_j)·b_j

    Над F_p сопряжение тождественно, и это обычная сумма a_j·b_j.
    """
    _check_same(phi, psi)
    if phi.dim != psi.dim:
        raise DimensionMismatch(f"Скалярное произведение векторов размерностей {phi.dim} и {psi.dim}")
    total = phi.ctx.zero
    for a, b in zip(phi.entries, psi.entries):
        total = total + a.conj() * b
    return total


def conjugate_transpose(M: Operator) -> Operator:
    """(M†)_{jk} = conj(M_{kj})"""
    entries = tuple(M.entry(k, j).conj() for j in range(M.cols) for k in range(M.rows))
    return Operator(M.cols, M.rows, entries, M.ctx)


def matmul(A: Operator, B: Operator) -> Operator:
    _check_same(A, B)
    if A.cols != B.rows:
        raise DimensionMismatch(f"Произведение {A.rows}x{A.cols} на {B.rows}x{B.cols}")
    zero = A.ctx.zero
    b_cols = [tuple(B.entry(k, c) for k in range(B.rows)) for c in range(B.cols)]
    entries = []
    for j in range(A.rows):
        row = A.row(j)
        for col in b_cols:
            total = zero
            for a, b in zip(row, col):
                if a and b:
                    total = total + a * b
            entries.append(total)
    return Operator(A.rows, B.cols, tuple(entries), A.ctx)


def apply(M: Operator, v: StateVector) -> StateVector:
    _check_same(M, v)
    if M.cols != v.dim:
        raise DimensionMismatch(f"Применение матрицы {M.rows}x{M.cols} к вектору размерности {v.dim}")
    zero = M.ctx.zero
    out = []
    for j in range(M.rows):
        total = zero
        for a, b in zip(M.row(j), v.entries):
            if a and b:
                total = total + a * b
        out.append(total)
    return StateVector(tuple(out), M.ctx)


def tensor(A: Union[Operator, StateVector], B: Union[Operator, StateVector]) -> Union[Operator, StateVector]:
    """
    Кронекерово произведение с блочной раскладкой по строкам

    Два вектора дают вектор; если хотя бы один операнд - матрица,
    вектор трактуется как столбец и результат - матрица.
    """
    _check_same(A, B)
    if isinstance(A, StateVector) and isinstance(B, StateVector):
        return StateVector(tuple(a * b for a in A.entries for b in B.entries), A.ctx)
    if isinstance(A, StateVector):
        A = Operator.column(A)
    if isinstance(B, StateVector):
        B = Operator.column(B)
    entries = tuple(
        A.entry(r1, c1) * B.entry(r2, c2)
        for r1 in range(A.rows)
        for r2 in range(B.rows)
        for c1 in range(A.cols)
        for c2 in range(B.cols)
    )
    return Operator(A.rows * B.rows, A.cols * B.cols, entries, A.ctx)


def tensor_power(M: Union[Operator, StateVector], k: int) -> Union[Operator, StateVector]:
    """M^{⊗k} для k ≥ 1"""
    if k < 1:
        raise DimensionMismatch(f"Тензорная степень должна быть ≥ 1, получено {k}")
    result = M
    for _ in range(k - 1):
        result = tensor(result, M)
    return result


def _row_echelon(M: Operator) -> Tuple[int, AnyElement]:
    """Исключение Гаусса: ранг и определитель (для квадратных матриц)"""
    rows = M.to_rows()
    det = M.ctx.one
    rank = 0
    for col in range(M.cols):
        pivot = next((r for r in range(rank, M.rows) if rows[r][col]), None)
        if pivot is None:
            det = M.ctx.zero
            continue
        if pivot != rank:
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            det = -det
        lead = rows[rank][col]
        det = det * lead
        lead_inv = lead.inverse()
        for r in range(rank + 1, M.rows):
            if rows[r][col]:
                factor = rows[r][col] * lead_inv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == M.rows:
            break
    return rank, det


def determinant(M: Operator) -> AnyElement:
    _require_square(M)
    rank, det = _row_echelon(M)
    return det if rank == M.rows else M.ctx.zero


def is_invertible(M: Operator) -> bool:
    """Обратимость: полный ранг после исключения Гаусса"""
    _require_square(M)
    rank, _ = _row_echelon(M)
    return rank == M.rows


def is_unitary(M: Operator) -> bool:
    """M†M = I точно"""
    _require_square(M)
    return matmul(conjugate_transpose(M), M) == identity(M.ctx, M.rows)


def is_hermitian(M: Operator) -> bool:
    """M = M†"""
    _require_square(M)
    return M == conjugate_transpose(M)


def proportional(u: StateVector, v: StateVector) -> Optional[AnyElement]:
    """
    Поиск скаляра λ с u = λ·v

    Returns:
        λ или None, если векторы не пропорциональны
    """
    _check_same(u, v)
    if u.dim != v.dim:
        raise DimensionMismatch(f"Сравнение векторов размерностей {u.dim} и {v.dim}")
    pivot = next((k for k, b in enumerate(v.entries) if b), None)
    if pivot is None:
        return u.ctx.one if u.is_zero() else None
    lam = u.entries[pivot] / v.entries[pivot]
    return lam if v.scale(lam) == u else None


def find_isotropic_vector(ctx: FieldSpec, dim: int = 2) -> Optional[StateVector]:
    """
    Поиск ненулевого φ с ⟨φ|φ⟩ = 0 полным перебором в лексикографическом порядке

    Args:
        ctx: поле
        dim: размерность пространства

    Returns:
        первый найденный изотропный вектор или None
    """
    elements = enumerate_elements(ctx)
    for values in itertools.product(elements, repeat=dim):
        if not any(values):
            continue
        v = StateVector(tuple(values), ctx)
        if not inner_product(v, v):
            logger.debug(f"Изотропный вектор над {ctx}: {v}")
            return v
    return None


class OracleTable(BaseModel):
    """
    Таблица истинности f: {0,1}^n → {0,1} со счетчиком вычислений

    Индекс x соответствует битам x_1...x_n, x_1 - старший.
    """
    n: int = Field(ge=1)
    outputs: List[bool]
    eval_count: int = 0
    parent: Optional["OracleTable"] = Field(default=None, exclude=True, repr=False)

    @field_validator("outputs", mode="before")
    @classmethod
    def _coerce_outputs(cls, value: Any) -> Any:
        if isinstance(value, (list, tuple)):
            return [bool(int(v)) for v in value]
        return value

    @model_validator(mode="after")
    def _check_length(self) -> "OracleTable":
        if len(self.outputs) != 2 ** self.n:
            raise ValueError(f"Таблица арности {self.n} требует {2 ** self.n} значений, получено {len(self.outputs)}")
        return self

    @classmethod
    def constant(cls, n: int, value: bool) -> "OracleTable":
        return cls(n=n, outputs=[value] * (2 ** n))

    @classmethod
    def unique_sat(cls, n: int, index: Optional[int]) -> "OracleTable":
        """Функция с единственным выполняющим набором index (None - невыполнимая)"""
        if index is not None and not 0 <= index < 2 ** n:
            raise ValueError(f"Индекс {index} вне диапазона [0, {2 ** n})")
        return cls(n=n, outputs=[x == index for x in range(2 ** n)])

    @classmethod
    def balanced(cls, n: int, mask: int) -> "OracleTable":
        """Сбалансированная функция: f(x) = бит x маски (ровно 2^(n-1) единиц)"""
        outputs = [bool((mask >> x) & 1) for x in range(2 ** n)]
        if mask >> (2 ** n) or sum(outputs) != 2 ** (n - 1):
            raise ValueError(f"Маска {mask} не задает сбалансированную функцию арности {n}")
        return cls(n=n, outputs=outputs)

    @classmethod
    def all_balanced(cls, n: int) -> List["OracleTable"]:
        size = 2 ** n
        return [
            cls(n=n, outputs=[x in ones for x in range(size)])
            for ones in map(set, itertools.combinations(range(size), size // 2))
        ]

    @classmethod
    def all_unique_sat(cls, n: int) -> List["OracleTable"]:
        """Все 2^n + 1 функций с не более чем одним выполняющим набором"""
        return [cls.unique_sat(n, None)] + [cls.unique_sat(n, x) for x in range(2 ** n)]

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "OracleTable":
        return cls(n=data["n"], outputs=data["outputs"])

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "outputs": [int(v) for v in self.outputs]}

    @property
    def size(self) -> int:
        return 2 ** self.n

    def value(self, x: int) -> bool:
        return self.outputs[x]

    def satisfying(self) -> List[int]:
        return [x for x, v in enumerate(self.outputs) if v]

    def is_unique_sat_admissible(self) -> bool:
        return len(self.satisfying()) <= 1

    def is_constant(self) -> bool:
        return len(set(self.outputs)) == 1

    def is_balanced(self) -> bool:
        return sum(self.outputs) * 2 == self.size

    def record_evaluation(self) -> None:
        """Одно применение U_f ко всему состоянию; учитывается и у родительской таблицы"""
        self.eval_count += 1
        if self.parent is not None:
            self.parent.record_evaluation()

    def restrict(self, indices: Iterable[int]) -> "OracleTable":
        """Ограниченный оракул f_A(x) = f(x) ∧ (x ∈ A)"""
        allowed = set(indices)
        outputs = [v and x in allowed for x, v in enumerate(self.outputs)]
        return OracleTable(n=self.n, outputs=outputs, parent=self)


OracleTable.model_rebuild()


def oracle_permutation(f: OracleTable) -> List[int]:
    """Перестановка базиса U_f: |y⟩|x̄⟩ ↦ |y ⊕ f(x̄)⟩|x̄⟩"""
    size = f.size
    perm = []
    for index in range(2 * size):
        y, x = divmod(index, size)
        perm.append((y ^ int(f.outputs[x])) * size + x)
    return perm


def build_oracle(f: OracleTable, ctx: Optional[FieldSpec] = None) -> Operator:
    """
    Матрица перестановки U_f размера 2^(n+1)

    Args:
        f: таблица истинности
        ctx: поле элементов матрицы (по умолчанию F_2)

    Returns:
        Operator с элементами 0/1
    """
    ctx = ctx or validate_field(2, 1)
    perm = oracle_permutation(f)
    dim = len(perm)
    zero, one = ctx.zero, ctx.one
    cells = [zero] * (dim * dim)
    for col, row in enumerate(perm):
        cells[row * dim + col] = one
    f.record_evaluation()
    return Operator(dim, dim, tuple(cells), ctx)


def apply_oracle(f: OracleTable, state: StateVector) -> StateVector:
    """Применение U_f к состоянию через перестановку амплитуд (одно вычисление f)"""
    perm = oracle_permutation(f)
    if state.dim != len(perm):
        raise DimensionMismatch(f"Оракул арности {f.n} к состоянию размерности {state.dim}")
    out: List[Optional[AnyElement]] = [None] * state.dim
    for index, target in enumerate(perm):
        out[target] = state.entries[index]
    f.record_evaluation()
    return StateVector(tuple(out), state.ctx)


def apply_qubit_gate(
    gate: Operator,
    state: StateVector,
    qubit: int,
    n_qubits: int,
    control: Optional[Tuple[int, int]] = None,
) -> StateVector:
    """
    Применение вентиля 2x2 к одному кубиту

    Args:
        gate: матрица 2x2
        state: состояние из 2^n_qubits амплитуд
        qubit: номер кубита (0 - старший, регистр y)
        n_qubits: число кубитов
        control: (номер кубита, значение) - вентиль действует только там,
            где управляющий кубит равен значению

    Returns:
        новое состояние
    """
    _check_same(gate, state)
    if gate.rows != 2 or gate.cols != 2:
        raise DimensionMismatch(f"Ожидался вентиль 2x2, получено {gate.rows}x{gate.cols}")
    if state.dim != 2 ** n_qubits:
        raise DimensionMismatch(f"Состояние размерности {state.dim} не соответствует {n_qubits} кубитам")
    mask = 1 << (n_qubits - 1 - qubit)
    if control is not None:
        control_mask = 1 << (n_qubits - 1 - control[0])
        control_value = control_mask if control[1] else 0
    g00, g01, g10, g11 = gate.entries
    src = state.entries
    out = list(src)
    for index in range(state.dim):
        if index & mask:
            continue
        if control is not None and index & control_mask != control_value:
            continue
        a0, a1 = src[index], src[index | mask]
        out[index] = g00 * a0 + g01 * a1
        out[index | mask] = g10 * a0 + g11 * a1
    return StateVector(tuple(out), state.ctx)
