"""Small integer helpers: primes, factorization, valuations."""
from __future__ import annotations

import math
from functools import lru_cache

_PRIMES: list[int] = [2, 3, 5, 7, 11, 13]


def _extend_primes(limit: int) -> None:
    global _PRIMES
    if _PRIMES[-1] >= limit:
        return
    size = max(limit + 1, 2 * _PRIMES[-1])
    sieve = bytearray([1]) * (size + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(size) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, size + 1, p)))
    _PRIMES = [i for i in range(size + 1) if sieve[i]]


def primes_up_to(n: int) -> list[int]:
    _extend_primes(n)
    hi = 0
    while hi < len(_PRIMES) and _PRIMES[hi] <= n:
        hi += 1
    return _PRIMES[:hi]


def first_primes(k: int) -> tuple[int, ...]:
    """p_1 = 2 < p_2 = 3 < ... < p_k."""
    while len(_PRIMES) < k:
        _extend_primes(2 * _PRIMES[-1])
    return tuple(_PRIMES[:k])


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == ((n, 1),)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization as ascending ``(p, exponent)`` pairs."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def valuation(p: int, n: int) -> int:
    """Exponent of the highest power of ``p`` dividing ``n``."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def divisors(n: int) -> list[int]:
    small, large = [], []
    for a in range(1, math.isqrt(n) + 1):
        if n % a == 0:
            small.append(a)
            if a != n // a:
                large.append(n // a)
    return small + large[::-1]


def exponent_vector(n: int, primes: tuple[int, ...]) -> tuple[int, ...] | None:
    """Exponents of ``n`` over ``primes``, or None if another prime divides n."""
    out = []
    for p in primes:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append(e)
    return tuple(out) if n == 1 else None
