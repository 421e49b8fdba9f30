"""Возможностная семантика измерений и общие результаты схем."""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, FrozenSet, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..arithmetic.linalg import StateVector
from ..errors import ZeroState


class Verdict(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    INCONCLUSIVE = "INCONCLUSIVE"
    CONSTANT = "constant"
    BALANCED = "balanced"


@dataclass(frozen=True)
class OutcomeSet:
    """
    Множество возможных исходов измерения в стандартном базисе

    Исход достоверен, если он единственный; невозможен, если отсутствует.
    """
    possible: FrozenSet[int]

    def __post_init__(self):
        if not self.possible:
            raise ZeroState()

    @classmethod
    def from_state(cls, state: StateVector) -> "OutcomeSet":
        return cls(frozenset(state.support()))

    def classify(self, index: int) -> str:
        if index not in self.possible:
            return "impossible"
        return "certain" if len(self.possible) == 1 else "possible"

    def is_certain(self, index: int) -> bool:
        return self.classify(index) == "certain"

    def is_impossible(self, index: int) -> bool:
        return index not in self.possible

    def project(self, register: Callable[[int], int]) -> "OutcomeSet":
        """Исходы измерения части регистра: образ множества при отображении индексов"""
        return OutcomeSet(frozenset(register(k) for k in self.possible))

    def sorted(self) -> List[int]:
        return sorted(self.possible)

    def to_json(self) -> List[int]:
        return self.sorted()


class CircuitResult(BaseModel):
    """Результат запуска алгоритма: вердикт, возможные исходы и конечное состояние"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    algorithm: str
    verdict: Optional[Verdict] = None
    outcomes: OutcomeSet
    oracle_evals: int
    final_state: StateVector
    details: Dict[str, Any] = Field(default_factory=dict)

    @property
    def final_support(self) -> List[int]:
        return self.outcomes.sorted()

    def to_json(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "algorithm": self.algorithm,
            "oracle_evals": self.oracle_evals,
            "final_support": self.final_support,
            "final_state": self.final_state.to_json(),
            "field": self.final_state.ctx.to_json(),
        }
        if self.verdict is not None:
            payload["verdict"] = self.verdict.value
        payload.update(self.details)
        return payload
