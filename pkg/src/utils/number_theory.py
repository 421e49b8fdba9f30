"""Теоретико-числовые утилиты: простота, обратные по модулю, порядок элемента."""
from functools import lru_cache


def is_prime(n: int) -> bool:
    """
    Проверка простоты перебором делителей

    Args:
        n: проверяемое число

    Returns:
        True, если n простое
    """
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def mod_inverse(a: int, p: int) -> int:
    """Обратный элемент по модулю p (расширенный алгоритм Евклида)"""
    old_r, r = a % p, p
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise ZeroDivisionError(f"{a} необратимо по модулю {p}")
    return old_s % p


@lru_cache(maxsize=None)
def multiplicative_order(base: int, p: int) -> int:
    """
    Мультипликативный порядок base по модулю p

    Args:
        base: основание, взаимно простое с p
        p: модуль

    Returns:
        наименьшее k > 0, для которого base^k ≡ 1 (mod p)
    """
    base %= p
    if base == 0:
        raise ValueError(f"{base} не обратим по модулю {p}")
    k, acc = 1, base
    while acc != 1:
        acc = (acc * base) % p
        k += 1
    return k
