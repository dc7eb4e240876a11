"""Derivations on the convolution ring.

The general construction pairs a derivation D of the coefficient ring with a
completely additive character delta (a monoid map into (M, +)):

    D~(alpha)(n) = D(alpha(n)) + alpha(n) * delta(n).

The p-derivation, the log-derivation and the holomorphic derivation are
provided as separate code paths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .arith import ArithFunction
from .errors import BoundTooSmall, MissingPrimeValue, MixedRings, SpecMismatch, WrongRing
from .modules import ModuleFunction
from .monoid import FullNStar, PrimeGenerated
from .ntheory import factorize, is_prime, valuation
from .rings import ComplexField, PolynomialRing, Ring


@dataclass(frozen=True)
class BaseDerivation:
    """A derivation R -> R: either zero or d/dz on a polynomial ring."""

    kind: str

    def __post_init__(self):
        if self.kind not in ("zero", "poly"):
            raise ValueError(f"unknown base derivation {self.kind!r}")

    def check(self, ring: Ring) -> None:
        if self.kind == "poly" and not isinstance(ring, PolynomialRing):
            raise WrongRing(f"d/dz needs a polynomial ring, got {ring}")

    def __call__(self, ring: Ring, x):
        if self.kind == "zero":
            return ring.zero
        return ring.derivative(x)


ZERO = BaseDerivation("zero")
POLY_DERIVATIVE = BaseDerivation("poly")


@dataclass(frozen=True)
class AdditiveCharacter:
    """delta with delta(mn) = delta(m) + delta(n), fixed by prime values.

    Values are vectors of length ``rank`` (scalars are accepted for rank 1).
    """

    ring: Ring
    prime_values: Mapping[int, object] | Callable[[int], object]
    rank: int = 1
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def at_prime(self, p: int) -> tuple:
        if callable(self.prime_values):
            v = self.prime_values(p)
        else:
            try:
                v = self.prime_values[p]
            except KeyError:
                raise MissingPrimeValue(f"no character value at prime {p}") from None
        if self.rank == 1:
            v = (v,)
        elif len(v) != self.rank:
            raise ValueError(f"character value at {p} has length {len(v)}, expected {self.rank}")
        return tuple(self.ring.coerce(x) for x in v)

    def __call__(self, n: int) -> tuple:
        if n in self._cache:
            return self._cache[n]
        ring = self.ring
        out = (ring.zero,) * self.rank
        for p, e in factorize(n):
            k = ring.from_int(e)
            out = tuple(ring.add(s, ring.mul(k, x)) for s, x in zip(out, self.at_prime(p)))
        self._cache[n] = out
        return out

    def extend(self, q: Fraction) -> tuple:
        """The group extension m/n -> delta(m) - delta(n)."""
        q = Fraction(q)
        return tuple(self.ring.sub(x, y) for x, y in zip(self(q.numerator), self(q.denominator)))


def omega_character(ring: Ring) -> AdditiveCharacter:
    """delta(p) = 1, so delta(n) counts prime factors with multiplicity."""
    return AdditiveCharacter(ring, lambda p: ring.one)


def log_character(ring: Ring, sign: int = -1) -> AdditiveCharacter:
    """delta(p) = sign * log p, for complex or complex-polynomial rings."""
    return AdditiveCharacter(ring, lambda p: ring.coerce(sign * math.log(p)))


@dataclass(frozen=True)
class DerivationSpec:
    character: AdditiveCharacter
    base: BaseDerivation | tuple[BaseDerivation, ...] = ZERO

    def __post_init__(self):
        bases = self.bases
        if len(bases) != self.character.rank:
            raise ValueError(f"{len(bases)} base derivations for a rank-{self.character.rank} character")
        for b in bases:
            b.check(self.character.ring)

    @property
    def ring(self) -> Ring:
        return self.character.ring

    @property
    def rank(self) -> int:
        return self.character.rank

    @property
    def bases(self) -> tuple[BaseDerivation, ...]:
        if isinstance(self.base, BaseDerivation):
            return (self.base,) * self.character.rank
        return tuple(self.base)

    def apply_base(self, x) -> tuple:
        ring = self.ring
        return tuple(b(ring, x) for b in self.bases)


def lift_derivation(dspec: DerivationSpec, alpha: ArithFunction) -> ModuleFunction:
    """D~(alpha)(n) = D(alpha(n)) + alpha(n) delta(n), valued in R^rank."""
    ring = alpha.ring
    if ring != dspec.ring:
        raise MixedRings(f"derivation over {dspec.ring}, function over {ring}")
    add, mul = ring.add, ring.mul
    delta = dspec.character
    out = {}
    for n, v in alpha.items():
        out[n] = tuple(add(d, mul(v, c)) for d, c in zip(dspec.apply_base(v), delta(n)))
    return ModuleFunction._raw(alpha.spec, ring, dspec.rank, alpha.bound, out)


def p_derivation(p: int, alpha: ArithFunction, base: BaseDerivation = ZERO) -> ArithFunction:
    """n -> D(alpha(n)) + alpha(np) v_p(np).

    The formula reads alpha at np, so the result is only known up to
    floor(bound / p) and carries that bound.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    spec = alpha.spec
    if not (isinstance(spec, FullNStar) or isinstance(spec, PrimeGenerated) and p in spec.primes):
        raise SpecMismatch(f"p-derivation at {p} needs N* or a Gamma(k) containing {p}, got {spec}")
    new_bound = alpha.bound // p
    if new_bound < 1:
        raise BoundTooSmall(f"bound {alpha.bound} leaves nothing after dividing by {p}")
    ring = alpha.ring
    base.check(ring)
    add, mul = ring.add, ring.mul
    out = {}
    for n, v in alpha.items():
        if n > new_bound:
            break
        out[n] = base(ring, v)
    for m, v in alpha.items():
        if m % p:
            continue
        n = m // p
        if n > new_bound:
            break
        term = mul(ring.from_int(valuation(p, m)), v)
        out[n] = add(out[n], term) if n in out else term
    return ArithFunction._raw(spec, ring, new_bound, out)


def log_derivation(alpha: ArithFunction) -> ArithFunction:
    """n -> -log(n) alpha(n) over the complex numbers."""
    ring = alpha.ring
    if not isinstance(ring, ComplexField):
        raise WrongRing(f"log-derivation needs complex coefficients, got {ring}")
    return ArithFunction._raw(alpha.spec, ring, alpha.bound, {n: -math.log(n) * v for n, v in alpha.items()})


def holo_derivation(alpha: ArithFunction) -> ArithFunction:
    """n -> alpha(n)' - log(n) alpha(n) for polynomial (germ) values."""
    ring = alpha.ring
    if not (isinstance(ring, PolynomialRing) and isinstance(ring.base, ComplexField)):
        raise WrongRing(f"holomorphic derivation needs Poly over C, got {ring}")
    out = {}
    for n, v in alpha.items():
        ln = math.log(n)
        dv = ring.derivative(v)
        out[n] = tuple(d - ln * c for d, c in zip(dv, v))
    return ArithFunction._raw(alpha.spec, ring, alpha.bound, out)
