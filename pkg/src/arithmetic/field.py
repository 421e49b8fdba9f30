"""
Точная арифметика в простых полях F_p и квадратичных расширениях
F_{p²} ≅ F_p[i]/(i²+1).

Вычеты хранятся в диапазоне [0, p); для вывода используется симметричный
диапазон [-(p-1)/2, (p-1)/2].
"""
import logging
import operator
from functools import lru_cache
from typing import Any, Callable, Dict, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, model_validator

from ..errors import (
    BadResidue,
    ContextMismatch,
    Degree2WithP2,
    NotPrime,
    TooLarge,
    ZeroDivisor,
)
from ..utils.number_theory import is_prime, mod_inverse

logger = logging.getLogger(__name__)

# Предел полного перебора элементов: p² ≤ 10^6
ENUMERATION_LIMIT = 10 ** 6


def check_field_params(p: int, degree: int) -> None:
    """
    Проверка параметров поля

    Args:
        p: характеристика
        degree: степень расширения (1 или 2)
    """
    if degree not in (1, 2):
        raise ContextMismatch(f"Поддерживаются только степени 1 и 2, получено {degree}")
    if not is_prime(p):
        raise NotPrime(p)
    if degree == 2:
        if p == 2:
            raise Degree2WithP2()
        if p % 4 != 3:
            raise BadResidue(p)


def symmetric(value: int, p: int) -> int:
    """Представитель вычета в симметричном диапазоне"""
    value %= p
    return value if value <= p // 2 else value - p


class FieldSpec(BaseModel):
    """Контекст поля: характеристика p и степень 1 (модальная теория) или 2 (дискретная)"""
    model_config = ConfigDict(frozen=True)

    characteristic: int
    degree: Literal[1, 2]

    @model_validator(mode="after")
    def _check_params(self) -> "FieldSpec":
        check_field_params(self.characteristic, self.degree)
        return self

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def order(self) -> int:
        return self.characteristic ** self.degree

    @property
    def base(self) -> "FieldSpec":
        """Простое подполе F_p"""
        return validate_field(self.characteristic, 1)

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    @property
    def i(self) -> "Fp2Element":
        if self.degree != 2:
            raise ContextMismatch(f"В {self} нет мнимой единицы")
        return Fp2Element(0, 1, self)

    def element(self, re: int, im: int = 0) -> "FieldElement":
        """
        Создание элемента поля

        Args:
            re: вещественная часть (любое целое, приводится по модулю p)
            im: мнимая часть, допустима только для степени 2

        Returns:
            FpElement или Fp2Element
        """
        if self.degree == 1:
            if im % self.characteristic:
                raise ContextMismatch(f"В {self} нет мнимой единицы")
            return FpElement(re, self)
        return Fp2Element(re, im, self)

    def from_json(self, data: Any) -> "FieldElement":
        """Элемент из JSON: целое (степень 1) или пара [re, im] (степень 2)"""
        if isinstance(data, (list, tuple)):
            if len(data) != 2:
                raise ContextMismatch(f"Ожидалась пара [re, im], получено {data!r}")
            return self.element(int(data[0]), int(data[1]))
        return self.element(int(data))

    def to_json(self) -> Dict[str, int]:
        return {"p": self.characteristic, "degree": self.degree}

    def __str__(self) -> str:
        if self.degree == 1:
            return f"F_{self.characteristic}"
        return f"F_{self.characteristic}²"


class FieldElement:
    """Общая часть элементов F_p и F_{p²}"""
    __slots__ = ()

    ctx: FieldSpec

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError(f"{type(self).__name__} неизменяем")

    def _coerce(self, other: Any) -> "FieldElement":
        if isinstance(other, int):
            return self.ctx.element(other)
        if type(other) is not type(self):
            raise ContextMismatch(f"Операнды разных типов: {type(self).__name__} и {type(other).__name__}")
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch(f"Операнды из разных полей: {self.ctx} и {other.ctx}")
        return other

    def __radd__(self, other: Any) -> "FieldElement":
        return self._coerce(other) + self

    def __rsub__(self, other: Any) -> "FieldElement":
        return self._coerce(other) - self

    def __rmul__(self, other: Any) -> "FieldElement":
        return self._coerce(other) * self

    def __sub__(self, other: Any) -> "FieldElement":
        return self + (-self._coerce(other))

    def __truediv__(self, other: Any) -> "FieldElement":
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int) -> "FieldElement":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ctx.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, int):
            other = self.ctx.element(other)
        if type(other) is not type(self):
            return NotImplemented
        return self.key == other.key and self.ctx == other.ctx

    def __hash__(self) -> int:
        return hash((self.key, self.ctx.characteristic, self.ctx.degree))

    def __lt__(self, other: "FieldElement") -> bool:
        return self.key < self._coerce(other).key

    def is_zero(self) -> bool:
        return not any(self.key)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)} in {self.ctx})"

    @property
    def key(self) -> tuple:
        raise NotImplementedError

    def inverse(self) -> "FieldElement":
        raise NotImplementedError

    def conj(self) -> "FieldElement":
        raise NotImplementedError


class FpElement(FieldElement):
    """Элемент простого поля F_p"""
    __slots__ = ("value", "ctx")

    def __init__(self, value: int, ctx: FieldSpec):
        object.__setattr__(self, "value", value % ctx.characteristic)
        object.__setattr__(self, "ctx", ctx)

    @property
    def key(self) -> tuple:
        return (self.value,)

    def __add__(self, other: Any) -> "FpElement":
        other = self._coerce(other)
        return FpElement(self.value + other.value, self.ctx)

    def __neg__(self) -> "FpElement":
        return FpElement(-self.value, self.ctx)

    def __mul__(self, other: Any) -> "FpElement":
        other = self._coerce(other)
        return FpElement(self.value * other.value, self.ctx)

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise ZeroDivisor()
        return FpElement(mod_inverse(self.value, self.ctx.characteristic), self.ctx)

    def conj(self) -> "FpElement":
        # Фробениус на F_p тождественен
        return self

    def to_json(self) -> int:
        return symmetric(self.value, self.ctx.characteristic)

    def __str__(self) -> str:
        return str(self.to_json())


class Fp2Element(FieldElement):
    """Элемент F_{p²} вида re + im·i, где i² = -1"""
    __slots__ = ("re", "im", "ctx")

    def __init__(self, re: int, im: int, ctx: FieldSpec):
        p = ctx.characteristic
        object.__setattr__(self, "re", re % p)
        object.__setattr__(self, "im", im % p)
        object.__setattr__(self, "ctx", ctx)

    @property
    def key(self) -> tuple:
        return (self.re, self.im)

    def __add__(self, other: Any) -> "Fp2Element":
        other = self._coerce(other)
        return Fp2Element(self.re + other.re, self.im + other.im, self.ctx)

    def __neg__(self) -> "Fp2Element":
        return Fp2Element(-self.re, -self.im, self.ctx)

    def __mul__(self, other: Any) -> "Fp2Element":
        other = self._coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        return Fp2Element(a * c - b * d, a * d + b * c, self.ctx)

    def conj(self) -> "Fp2Element":
        return Fp2Element(self.re, -self.im, self.ctx)

    def norm(self) -> FpElement:
        """conj(a)·a = re² + im², элемент простого подполя"""
        return FpElement(self.re * self.re + self.im * self.im, self.ctx.base)

    def inverse(self) -> "Fp2Element":
        if self.re == 0 and self.im == 0:
            raise ZeroDivisor()
        p = self.ctx.characteristic
        # x²+1 неприводим, поэтому norm ненулевая для ненулевого элемента
        n_inv = mod_inverse((self.re * self.re + self.im * self.im) % p, p)
        return Fp2Element(self.re * n_inv, -self.im * n_inv, self.ctx)

    def to_json(self) -> List[int]:
        p = self.ctx.characteristic
        return [symmetric(self.re, p), symmetric(self.im, p)]

    def __str__(self) -> str:
        re, im = self.to_json()
        if im == 0:
            return str(re)
        imag = {1: "i", -1: "-i"}.get(im, f"{im}i")
        if re == 0:
            return imag
        return f"{re}{imag}" if im < 0 else f"{re}+{imag}"


AnyElement = Union[FpElement, Fp2Element]

_ARITH_OPS: Dict[str, Callable[[Any, Any], Any]] = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
}


@lru_cache(maxsize=None)
def validate_field(p: int, degree: int) -> FieldSpec:
    """
    Проверка и создание контекста поля

    Args:
        p: характеристика
        degree: 1 (F_p) или 2 (F_{p²}, требуется p ≡ 3 mod 4)

    Returns:
        FieldSpec (один экземпляр на пару параметров)
    """
    check_field_params(p, degree)
    logger.debug(f"Создан контекст поля p={p}, degree={degree}")
    return FieldSpec(characteristic=p, degree=degree)


def field_from_json(data: Dict[str, int]) -> FieldSpec:
    """FieldSpec из {"p": <int>, "degree": <1|2>}"""
    return validate_field(int(data["p"]), int(data.get("degree", 1)))


def arith(a: AnyElement, b: AnyElement, op: str) -> AnyElement:
    """
    Покомпонентная арифметика по модулю p

    Args:
        a, b: элементы одного поля
        op: "add", "sub" или "mul"
    """
    if op not in _ARITH_OPS:
        raise ValueError(f"Неизвестная операция: {op}")
    if a.ctx != b.ctx or type(a) is not type(b):
        raise ContextMismatch(f"Операнды из разных полей: {a.ctx} и {b.ctx}")
    return _ARITH_OPS[op](a, b)


def conj(a: AnyElement) -> Fp2Element:
    """Комплексное сопряжение re - im·i (совпадает с a^p)"""
    if a.ctx.degree != 2:
        raise ContextMismatch(f"Сопряжение определено только над F_p², получено {a.ctx}")
    return a.conj()


def frobenius(a: AnyElement) -> AnyElement:
    """Автоморфизм Фробениуса a ↦ a^p, вычисленный возведением в степень"""
    return a ** a.ctx.characteristic


def inverse(a: AnyElement) -> AnyElement:
    """Мультипликативный обратный; ZeroDivisor для нуля"""
    return a.inverse()


def norm(a: AnyElement) -> FpElement:
    """Норма N(a) = conj(a)·a ∈ F_p"""
    if a.ctx.degree != 2:
        raise ContextMismatch(f"Норма определена только над F_p², получено {a.ctx}")
    return a.norm()


def enumerate_elements(ctx: FieldSpec) -> List[AnyElement]:
    """
    Полный список элементов поля в лексикографическом порядке (re, im)

    Args:
        ctx: контекст поля

    Returns:
        список из p^degree элементов
    """
    p = ctx.characteristic
    if p * p > ENUMERATION_LIMIT:
        raise TooLarge("p² для перебора элементов", p * p, ENUMERATION_LIMIT)
    return list(_enumerate_cached(p, ctx.degree))


@lru_cache(maxsize=32)
def _enumerate_cached(p: int, degree: int) -> Tuple[AnyElement, ...]:
    ctx = validate_field(p, degree)
    if degree == 1:
        return tuple(FpElement(v, ctx) for v in range(p))
    return tuple(Fp2Element(re, im, ctx) for re in range(p) for im in range(p))


def primitive_element(ctx: FieldSpec) -> AnyElement:
    """
    Первый в лексикографическом порядке порождающий элемент группы F*

    Args:
        ctx: контекст поля

    Returns:
        элемент порядка |F| - 1
    """
    group_order = ctx.order - 1
    for a in enumerate_elements(ctx)[1:]:
        power, k = a, 1
        while power != ctx.one and k < group_order:
            power = power * a
            k += 1
        if k == group_order and power == ctx.one:
            return a
    raise ContextMismatch(f"В {ctx} не найден порождающий элемент")
