import re
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator

from ..arithmetic.field import validate_field
from ..arithmetic.linalg import OracleTable
from ..errors import InvalidDescriptor

DISCRETE_ALGORITHMS = {"grover", "dj", "usat-discrete"}
MODAL_ALGORITHMS = {"usat-modal", "db-search"}

_UNIQUE_SAT = re.compile(r"^unique-sat\((none|\d+)\)$")
_BALANCED = re.compile(r"^balanced\((0[xX][0-9a-fA-F]+|\d+)\)$")


class InlineOracle(BaseModel):
    """Таблица истинности, заданная прямо в дескрипторе"""
    n: int = Field(ge=1)
    outputs: List[int]


def oracle_from_source(source: Union[str, InlineOracle], n: Optional[int]) -> OracleTable:
    """
    Оракул из генератора или встроенной таблицы

    Генераторы: unique-sat(k), unique-sat(none), constant-true, constant-false,
    balanced(mask); маска десятичная или 0x...
    """
    if isinstance(source, InlineOracle):
        if n is not None and n != source.n:
            raise InvalidDescriptor(f"n={n} не совпадает с арностью таблицы {source.n}", field="oracle")
        try:
            return OracleTable(n=source.n, outputs=source.outputs)
        except ValueError as e:
            raise InvalidDescriptor(str(e), field="oracle")
    if n is None:
        raise InvalidDescriptor("Для генератора оракула требуется n", field="n")
    try:
        if source == "constant-true":
            return OracleTable.constant(n, True)
        if source == "constant-false":
            return OracleTable.constant(n, False)
        match = _UNIQUE_SAT.match(source)
        if match:
            arg = match.group(1)
            return OracleTable.unique_sat(n, None if arg == "none" else int(arg))
        match = _BALANCED.match(source)
        if match:
            return OracleTable.balanced(n, int(match.group(1), 0))
    except ValueError as e:
        raise InvalidDescriptor(str(e), field="oracle")
    raise InvalidDescriptor(f"Неизвестный генератор оракула: {source!r}", field="oracle")


class ExperimentDescriptor(BaseModel):
    """Описание запуска алгоритма; проверяется до выполнения"""
    algorithm: Literal["grover", "dj", "usat-modal", "usat-discrete", "db-search"]
    p: int = 2
    degree: Optional[int] = None
    n: Optional[int] = Field(default=None, ge=1)
    N: Optional[int] = Field(default=None, ge=2)
    oracle: Optional[Union[str, InlineOracle]] = None
    marked: Optional[int] = Field(default=None, ge=0)
    iterations: Optional[int] = Field(default=None, ge=0)
    strict: bool = False
    format: Literal["json", "csv"] = "json"

    @model_validator(mode="after")
    def _check_preconditions(self) -> "ExperimentDescriptor":
        if self.degree is None:
            self.degree = 2 if self.algorithm in DISCRETE_ALGORITHMS else 1
        validate_field(self.p, self.degree)
        if self.algorithm in DISCRETE_ALGORITHMS and self.degree != 2:
            raise InvalidDescriptor(f"{self.algorithm} требует поле степени 2", field="degree")
        if self.algorithm in MODAL_ALGORITHMS and (self.p, self.degree) != (2, 1):
            raise InvalidDescriptor(f"{self.algorithm} выполняется только над F_2", field="p")

        if self.algorithm == "grover":
            if self.N is None or self.marked is None:
                raise InvalidDescriptor("grover требует N и marked", field="N")
            if self.marked >= self.N:
                raise InvalidDescriptor(f"marked={self.marked} вне диапазона [0, {self.N})", field="marked")
        else:
            if self.oracle is None:
                raise InvalidDescriptor(f"{self.algorithm} требует oracle", field="oracle")
            table = self.oracle_table()
            if self.n is None:
                self.n = table.n
            if self.algorithm == "dj" and not (table.is_constant() or table.is_balanced()):
                raise InvalidDescriptor("dj требует постоянную или сбалансированную функцию", field="oracle")
            if self.algorithm.startswith("usat") and self.strict and not table.is_unique_sat_admissible():
                raise InvalidDescriptor("UNIQUE-SAT требует не более одного выполняющего набора", field="oracle")
            if self.algorithm == "db-search" and len(table.satisfying()) != 1:
                raise InvalidDescriptor("Поиск требует ровно одну отмеченную запись", field="oracle")
        return self

    def oracle_table(self) -> OracleTable:
        """Новая таблица (со своим счетчиком) на каждый вызов"""
        return oracle_from_source(self.oracle, self.n)

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)


class ExperimentResult(BaseModel):
    descriptor: ExperimentDescriptor
    result: Dict[str, Any]

    def to_json(self) -> Dict[str, Any]:
        return {"descriptor": self.descriptor.to_json(), "result": self.result}

    def csv_rows(self) -> List[Dict[str, Any]]:
        """Конечное состояние построчно: индекс и амплитуда"""
        state = self.result.get("final_state")
        if state is None:
            return [{"index": k, "value": v} for k, v in sorted(self.result.items()) if not isinstance(v, (dict, list))]
        rows = []
        for index, value in enumerate(state["entries"]):
            if isinstance(value, list):
                rows.append({"index": index, "re": value[0], "im": value[1]})
            else:
                rows.append({"index": index, "value": value})
        return rows


class CheckResult(BaseModel):
    """Итог одной именованной проверки"""
    name: str
    group: str
    kind: Literal["claim", "hypothesis"] = "claim"
    expected: Any = None
    observed: Any = None
    passed: bool
    error: Optional[str] = None


class CheckSuiteResult(BaseModel):
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if c.kind == "claim" and not c.passed]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_json(self) -> Dict[str, Any]:
        return {
            "checks": [c.model_dump(mode="json") for c in self.checks],
            "failed": [c.name for c in self.failed],
            "exit_code": self.exit_code,
        }
