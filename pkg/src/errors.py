"""Иерархия исключений симулятора."""
from typing import Any, Optional


class DQSimError(Exception):
    """Базовое исключение для всех ошибок симулятора"""


# Поле

class NotPrime(DQSimError):
    def __init__(self, p: int):
        super().__init__(f"Характеристика {p} не является простым числом")
        self.p = p


class BadResidue(DQSimError):
    def __init__(self, p: int):
        super().__init__(
            f"Степень 2 требует p ≡ 3 (mod 4), а {p} ≡ {p % 4} (mod 4): x²+1 приводим"
        )
        self.p = p


class Degree2WithP2(DQSimError):
    def __init__(self):
        super().__init__("Над F_2 многочлен x²+1 = (x+1)², расширение степени 2 недоступно")
        self.p = 2


class ContextMismatch(DQSimError):
    """Операнды принадлежат разным полям или неподходящей степени"""


class ZeroDivisor(DQSimError):
    def __init__(self):
        super().__init__("Нулевой элемент не имеет обратного")


class TooLarge(DQSimError):
    def __init__(self, what: str, value: Any, limit: Any):
        super().__init__(f"{what}: {value} превышает ограничение {limit}")
        self.what = what
        self.value = value
        self.limit = limit


# Линейная алгебра

class DimensionMismatch(DQSimError):
    """Размерности операндов не согласованы"""


class NotSquare(DQSimError):
    def __init__(self, rows: int, cols: int):
        super().__init__(f"Ожидалась квадратная матрица, получено {rows}x{cols}")
        self.rows = rows
        self.cols = cols


class NotTwoByTwo(DQSimError):
    def __init__(self, rows: int, cols: int):
        super().__init__(f"Ожидалась матрица 2x2, получено {rows}x{cols}")
        self.rows = rows
        self.cols = cols


# Состояния и измерения

class ZeroState(DQSimError):
    def __init__(self):
        super().__init__("Нулевой вектор не является физическим состоянием")


class ZeroVector(DQSimError):
    def __init__(self):
        super().__init__("Нулевой вектор нельзя нормировать")


class IsotropicVector(DQSimError):
    def __init__(self, witness: Any):
        super().__init__(f"Вектор изотропен (⟨v|v⟩ = 0), нормировка невозможна: {witness}")
        self.witness = witness


class NotUnitNorm(DQSimError):
    def __init__(self, norm: Any):
        super().__init__(f"Ожидался вектор единичной нормы, ⟨ψ|ψ⟩ = {norm}")
        self.norm = norm


class NotCanonical(DQSimError):
    """Флаг canonical установлен для вектора, не являющегося каноническим представителем"""


class ImpossibleOutcome(DQSimError):
    def __init__(self, outcome: int):
        super().__init__(f"Исход {outcome} невозможен: нулевая амплитуда")
        self.outcome = outcome


class NoUnitaryScaling(DQSimError):
    def __init__(self, p: int):
        super().__init__(f"Для p={p} не найден множитель s с norm(s)·2 = 1")
        self.p = p


# Алгоритмы

class ArityTooLarge(DQSimError):
    def __init__(self, n: int, limit: int):
        super().__init__(f"Арность оракула n={n} превышает предел {limit} (см. DQSIM_MAX_N)")
        self.n = n
        self.limit = limit


class NoMarked(DQSimError):
    def __init__(self, lo: int, hi: int):
        super().__init__(f"В диапазоне [{lo}, {hi}) нет отмеченной записи")
        self.lo = lo
        self.hi = hi


class MultiplyMarked(DQSimError):
    def __init__(self, lo: int, hi: int):
        super().__init__(f"Обе половины диапазона [{lo}, {hi}) содержат отмеченные записи")
        self.lo = lo
        self.hi = hi


class PromiseViolated(DQSimError):
    """Оракул нарушает обещание алгоритма"""


class NotInvertibleN(DQSimError):
    def __init__(self, N: int, p: int):
        super().__init__(f"N={N} не обратимо в поле характеристики {p}")
        self.N = N
        self.p = p


class IsotropicStart(DQSimError):
    def __init__(self, N: int, p: int):
        super().__init__(f"Равномерное состояние размера N={N} изотропно над F_{p}²")
        self.N = N
        self.p = p


# Интерфейс командной строки

class InvalidDescriptor(DQSimError):
    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field
