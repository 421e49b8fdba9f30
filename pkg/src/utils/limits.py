"""Ограничения настольного масштаба и их переопределение через окружение."""
import logging
import os

logger = logging.getLogger(__name__)

DEFAULT_MAX_ARITY = 12
MAX_ARITY_ENV = "DQSIM_MAX_N"


def max_arity() -> int:
    """
    Предел арности n для плотной симуляции 2^(n+1) амплитуд

    Returns:
        значение DQSIM_MAX_N, если оно задано корректно, иначе 12
    """
    raw = os.environ.get(MAX_ARITY_ENV)
    if raw is None:
        return DEFAULT_MAX_ARITY
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Некорректное значение {MAX_ARITY_ENV}={raw!r}, используется {DEFAULT_MAX_ARITY}")
        return DEFAULT_MAX_ARITY
    if value < 1:
        logger.warning(f"{MAX_ARITY_ENV}={value} меньше 1, используется {DEFAULT_MAX_ARITY}")
        return DEFAULT_MAX_ARITY
    if value != DEFAULT_MAX_ARITY:
        logger.debug(f"Предел арности переопределен: {value}")
    return value
