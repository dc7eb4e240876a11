"""Finite-type commutative monoids realized as submonoids of (N*, *).

Every spec here describes a multiplicatively closed subset of the positive
integers containing 1.  Elements are plain ``int`` values.
"""
from __future__ import annotations

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import NotInMonoid, ParseError
from .ntheory import divisors, exponent_vector, factorize, first_primes, is_prime


class MonoidSpec(ABC):

    @abstractmethod
    def contains(self, n: int) -> bool: ...

    @abstractmethod
    def elements_up_to(self, bound: int) -> list[int]: ...

    @abstractmethod
    def generators(self) -> tuple[int, ...] | None:
        """Monoid generators, or None when they are all primes (N*)."""

    def divisor_pairs(self, n: int) -> list[tuple[int, int]]:
        """Ordered pairs (a, b) in the monoid with a*b == n, ascending a."""
        self.check(n)
        return [(a, n // a) for a in divisors(n) if self.contains(a) and self.contains(n // a)]

    def check(self, n: int) -> int:
        if not isinstance(n, int) or n < 1 or not self.contains(n):
            raise NotInMonoid(f"{n!r} is not an element of {self}")
        return n

    def reducers(self, d: int) -> list[int]:
        """Generators g with d/g still in the monoid; used to shrink
        denominators in the Grothendieck extension."""
        gens = self.generators()
        if gens is None:
            gens = tuple(p for p, _ in factorize(d))
        return [g for g in gens if d % g == 0 and self.contains(d // g)]

    def is_submonoid_of(self, other: "MonoidSpec") -> bool:
        if isinstance(other, FullNStar) or self == other:
            return True
        gens = self.generators()
        if gens is None:
            return False
        return all(other.contains(g) for g in gens)


@dataclass(frozen=True)
class FullNStar(MonoidSpec):

    def contains(self, n):
        return isinstance(n, int) and n >= 1

    def elements_up_to(self, bound):
        return list(range(1, bound + 1))

    def generators(self):
        return None

    def divisor_pairs(self, n):
        self.check(n)
        return [(a, n // a) for a in divisors(n)]

    def __str__(self):
        return "nstar"


def _smooth_numbers(gens: Sequence[int], bound: int) -> list[int]:
    found = [1] if bound >= 1 else []
    for g in gens:
        grown = []
        for x in found:
            y = x * g
            while y <= bound:
                grown.append(y)
                y *= g
        found.extend(grown)
    return sorted(set(found))


@dataclass(frozen=True)
class PrimeGenerated(MonoidSpec):
    """Gamma(k): the monoid generated by the first k primes."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")

    @property
    def primes(self) -> tuple[int, ...]:
        return first_primes(self.k)

    def contains(self, n):
        return isinstance(n, int) and n >= 1 and exponent_vector(n, self.primes) is not None

    def elements_up_to(self, bound):
        return _smooth_numbers(self.primes, bound)

    def generators(self):
        return self.primes

    def __str__(self):
        return f"gamma({self.k})"


@lru_cache(maxsize=1 << 18)
def _generated_contains(gens: tuple[int, ...], n: int) -> bool:
    if n == 1:
        return True
    return any(n % g == 0 and _generated_contains(gens, n // g) for g in gens)


@dataclass(frozen=True)
class FinitelyGenerated(MonoidSpec):
    gens: tuple[int, ...]

    def __post_init__(self):
        gens = tuple(sorted(set(self.gens)))
        if any(not isinstance(g, int) or g < 2 for g in gens):
            raise ValueError(f"generators must be integers >= 2, got {self.gens!r}")
        object.__setattr__(self, "gens", gens)

    def contains(self, n):
        # memoized search over exponent vectors; terminates since n shrinks
        return isinstance(n, int) and n >= 1 and _generated_contains(self.gens, n)

    def elements_up_to(self, bound):
        return _smooth_numbers(self.gens, bound)

    def generators(self):
        return self.gens

    def __str__(self):
        return "gen(" + ",".join(map(str, self.gens)) + ")"


def embed_affine(vectors: Sequence[Sequence[int]], primes: Sequence[int], v: Sequence[int]) -> int:
    """Image of ``v`` in N* under (a_1..a_k) -> prod p_i^a_i.

    ``vectors`` only documents the ambient affine monoid; whether ``v`` lies
    in it is not checked.
    """
    if len(v) != len(primes):
        raise ValueError(f"vector {tuple(v)} does not match {len(primes)} primes")
    out = 1
    for p, a in zip(primes, v):
        if a < 0:
            raise ValueError(f"negative exponent in {tuple(v)}")
        out *= p**a
    return out


@dataclass(frozen=True)
class AffineEmbedded(MonoidSpec):
    """An affine monoid in N^k, carried into N* by a choice of k primes."""

    vectors: tuple[tuple[int, ...], ...]
    primes: tuple[int, ...]
    _inner: FinitelyGenerated = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vectors = tuple(tuple(int(a) for a in v) for v in self.vectors)
        primes = tuple(self.primes)
        if len(set(primes)) != len(primes) or not all(is_prime(p) for p in primes):
            raise ValueError(f"need distinct primes, got {primes}")
        if any(len(v) != len(primes) or min(v, default=0) < 0 for v in vectors):
            raise ValueError(f"vectors must be nonnegative of length {len(primes)}")
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "primes", primes)
        gens = [embed_affine(vectors, primes, v) for v in vectors]
        object.__setattr__(self, "_inner", FinitelyGenerated(tuple(g for g in gens if g > 1)))

    def embed(self, v: Sequence[int]) -> int:
        return embed_affine(self.vectors, self.primes, v)

    def contains(self, n):
        return self._inner.contains(n)

    def elements_up_to(self, bound):
        return self._inner.elements_up_to(bound)

    def generators(self):
        return self._inner.gens

    def __str__(self):
        vs = ",".join("(" + ",".join(map(str, v)) + ")" for v in self.vectors)
        return f"affine[{vs}]@primes({','.join(map(str, self.primes))})"


def contains(spec: MonoidSpec, n: int) -> bool:
    return spec.contains(n)


def divisor_pairs(spec: MonoidSpec, n: int) -> list[tuple[int, int]]:
    return spec.divisor_pairs(n)


def elements_up_to(spec: MonoidSpec, bound: int) -> list[int]:
    return spec.elements_up_to(bound)


def _int_list(s: str) -> tuple[int, ...]:
    s = s.strip()
    return tuple(int(x) for x in s.split(",")) if s else ()


def parse_monoid(text: str) -> MonoidSpec:
    """Parse ``nstar``, ``gamma(k)``, ``gen(4,6,9)`` or
    ``affine[(1,0),(1,2)]@primes(2,3)``."""
    s = re.sub(r"\s+", "", text)
    try:
        if s == "nstar":
            return FullNStar()
        if m := re.fullmatch(r"gamma\((\d+)\)", s):
            return PrimeGenerated(int(m.group(1)))
        if m := re.fullmatch(r"gen\(([\d,]*)\)", s):
            return FinitelyGenerated(_int_list(m.group(1)))
        if m := re.fullmatch(r"affine\[(.*)\]@primes\(([\d,]+)\)", s):
            vecs = tuple(_int_list(v) for v in re.findall(r"\(([\d,]*)\)", m.group(1)))
            return AffineEmbedded(vecs, _int_list(m.group(2)))
    except ValueError as exc:
        raise ParseError(f"bad monoid spec {text!r}: {exc}") from exc
    raise ParseError(f"unknown monoid spec {text!r}")
