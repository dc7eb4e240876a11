"""The ring of Dirichlet convolutions over a monoid, in bounded-exact form.

An :class:`ArithFunction` stores a function Gamma -> R on every monoid element
n <= bound.  Convolution and inversion only ever look at divisors of n, and
divisors never exceed n, so every stored value is exact; nothing beyond the
bound is known.  Values are kept sparsely (nonzero entries only).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

from .errors import (
    MissingPrimeValue,
    MixedRings,
    MonoidMismatch,
    NotAUnit,
    NotASubmonoid,
    NotInvertible,
    OutsideWindow,
)
from .monoid import MonoidSpec
from .ntheory import factorize
from .rings import Ring, RingElement


class _ZeroUpToBound:
    """Norm result for a function with no nonzero value inside its bound."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZeroUpToBound"

    def __bool__(self):
        return False


ZeroUpToBound = _ZeroUpToBound()


class ArithFunction:
    __slots__ = ("spec", "ring", "bound", "_values")

    def __init__(self, spec: MonoidSpec, ring: Ring, bound: int, values: Mapping | None = None):
        if not isinstance(bound, int) or bound < 1:
            raise ValueError(f"bound must be a positive integer, got {bound!r}")
        clean = {}
        for n, v in (values or {}).items():
            spec.check(n)
            if n > bound:
                raise OutsideWindow(f"value at {n} lies beyond bound {bound}")
            v = ring.coerce(v)
            if not ring.is_zero(v):
                clean[n] = v
        self.spec = spec
        self.ring = ring
        self.bound = bound
        self._values = clean

    @classmethod
    def _raw(cls, spec, ring, bound, values: dict) -> "ArithFunction":
        # trusted constructor: keys already in spec and <= bound, values normalized
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.ring = ring
        obj.bound = bound
        obj._values = {n: v for n, v in values.items() if not ring.is_zero(v)}
        return obj

    def __getitem__(self, n: int):
        if n > self.bound:
            raise OutsideWindow(f"{n} exceeds bound {self.bound}")
        self.spec.check(n)
        return self._values.get(n, self.ring.zero)

    def value(self, n: int) -> RingElement:
        return RingElement(self[n], self.ring)

    def support(self) -> list[int]:
        return sorted(self._values)

    def items(self) -> Iterator[tuple[int, object]]:
        """Nonzero (n, raw value) pairs in ascending n."""
        for n in sorted(self._values):
            yield n, self._values[n]

    def is_zero(self) -> bool:
        return not self._values

    def truncate(self, bound: int) -> "ArithFunction":
        bound = min(bound, self.bound)
        return ArithFunction._raw(
            self.spec, self.ring, bound, {n: v for n, v in self._values.items() if n <= bound}
        )

    def equals(self, other: "ArithFunction") -> bool:
        """Equality up to the common bound (ring tolerance applies)."""
        _check_compatible(self, other)
        bound = min(self.bound, other.bound)
        zero = self.ring.zero
        for n in set(self._values) | set(other._values):
            if n <= bound and not self.ring.eq(self._values.get(n, zero), other._values.get(n, zero)):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, ArithFunction):
            return NotImplemented
        if other.spec != self.spec or other.ring != self.ring:
            return False
        return self.equals(other)

    __hash__ = None

    def __add__(self, other):
        return fn_add(self, other)

    def __sub__(self, other):
        return fn_add(self, fn_neg(other))

    def __neg__(self):
        return fn_neg(self)

    def __mul__(self, other):
        if isinstance(other, ArithFunction):
            return fn_convolve(self, other)
        return fn_scale(other, self)

    def __rmul__(self, other):
        return fn_scale(other, self)

    def __repr__(self):
        shown = ", ".join(f"{n}: {self.ring.format(v)}" for n, v in list(self.items())[:8])
        more = ", ..." if len(self._values) > 8 else ""
        return f"ArithFunction({self.spec}, {self.ring}, bound={self.bound}, {{{shown}{more}}})"


def _check_compatible(a, b) -> None:
    if a.ring != b.ring:
        raise MixedRings(f"functions over {a.ring} and {b.ring}")
    if a.spec != b.spec:
        raise MonoidMismatch(f"functions over {a.spec} and {b.spec}")


def fn_make(spec: MonoidSpec, ring: Ring, bound: int, assignments: Mapping | None = None) -> ArithFunction:
    """Build a function from a partial assignment; other positions are zero."""
    return ArithFunction(spec, ring, bound, assignments)


def unit(spec: MonoidSpec, ring: Ring, bound: int) -> ArithFunction:
    """The convolution identity e."""
    return ArithFunction._raw(spec, ring, bound, {1: ring.one})


def zero(spec: MonoidSpec, ring: Ring, bound: int) -> ArithFunction:
    return ArithFunction._raw(spec, ring, bound, {})


def indicator(spec: MonoidSpec, ring: Ring, bound: int, n: int, value=None) -> ArithFunction:
    spec.check(n)
    v = ring.one if value is None else ring.coerce(value)
    return ArithFunction(spec, ring, bound, {n: v})


def from_callable(spec: MonoidSpec, ring: Ring, bound: int, f: Callable[[int], object]) -> ArithFunction:
    """Tabulate ``f`` on every monoid element up to ``bound``."""
    return ArithFunction._raw(spec, ring, bound, {n: ring.coerce(f(n)) for n in spec.elements_up_to(bound)})


def constant(spec: MonoidSpec, ring: Ring, bound: int, value=1) -> ArithFunction:
    v = ring.coerce(value)
    return ArithFunction._raw(spec, ring, bound, {n: v for n in spec.elements_up_to(bound)})


def fn_add(a: ArithFunction, b: ArithFunction) -> ArithFunction:
    _check_compatible(a, b)
    ring = a.ring
    bound = min(a.bound, b.bound)
    out = {n: v for n, v in a._values.items() if n <= bound}
    for n, v in b._values.items():
        if n <= bound:
            out[n] = ring.add(out[n], v) if n in out else v
    return ArithFunction._raw(a.spec, ring, bound, out)


def fn_neg(a: ArithFunction) -> ArithFunction:
    ring = a.ring
    return ArithFunction._raw(a.spec, ring, a.bound, {n: ring.neg(v) for n, v in a._values.items()})


def fn_scale(r, a: ArithFunction) -> ArithFunction:
    """Scalar action of R, i.e. multiplication by i(r)."""
    ring = a.ring
    r = ring.coerce(r)
    return ArithFunction._raw(a.spec, ring, a.bound, {n: ring.mul(r, v) for n, v in a._values.items()})


def _convolve_raw(ring: Ring, xs: list, ys: list, bound: int) -> dict:
    """Sparse double loop; xs, ys are ascending (n, value) lists.

    For every output index the contributions are summed in ascending order of
    the left factor, which is the ascending divisor-pair order.
    """
    out: dict = {}
    if ring.native:
        for a, x in xs:
            limit = bound // a
            for b, y in ys:
                if b > limit:
                    break
                k = a * b
                out[k] = out[k] + x * y if k in out else x * y
        norm = ring.normalize
        return {k: norm(v) for k, v in out.items()}
    add, mul = ring.add, ring.mul
    for a, x in xs:
        limit = bound // a
        for b, y in ys:
            if b > limit:
                break
            k = a * b
            out[k] = add(out[k], mul(x, y)) if k in out else mul(x, y)
    return out


def fn_convolve(a: ArithFunction, b: ArithFunction) -> ArithFunction:
    """(a*b)(n) = sum over ab = n in the monoid of a(a) b(b), exact up to
    min(bound_a, bound_b)."""
    _check_compatible(a, b)
    bound = min(a.bound, b.bound)
    xs = [(n, v) for n, v in a.items() if n <= bound]
    ys = [(n, v) for n, v in b.items() if n <= bound]
    return ArithFunction._raw(a.spec, a.ring, bound, _convolve_raw(a.ring, xs, ys, bound))


def fn_invert(a: ArithFunction) -> ArithFunction:
    """Convolution inverse via the recursion
    b(1) = a(1)^-1,  b(n) = -a(1)^-1 * sum_{xy = n, y != n} a(x) b(y),
    evaluated in ascending n.
    """
    ring = a.ring
    try:
        inv1 = ring.inverse(a._values.get(1, ring.zero))
    except NotInvertible as exc:
        raise NotAUnit(f"value at 1 is not a unit of {ring}: {exc}") from exc
    bound = a.bound
    tail = [(n, v) for n, v in a.items() if n > 1]
    neg_inv1 = ring.neg(inv1)
    # acc[n] collects sum a(x) b(y) over xy = n, y < n, pushed forward as each
    # b(y) becomes final; the heap yields pending indices in ascending order
    acc: dict = {}
    pending = [1]
    out = {}
    add, mul = ring.add, ring.mul
    while pending:
        n = heapq.heappop(pending)
        if n == 1:
            bn = inv1
        else:
            bn = mul(neg_inv1, acc.pop(n))
            if ring.is_zero(bn):
                continue
        out[n] = bn
        limit = bound // n
        for x, v in tail:
            if x > limit:
                break
            k = x * n
            if k in acc:
                acc[k] = add(acc[k], mul(v, bn))
            else:
                acc[k] = mul(v, bn)
                heapq.heappush(pending, k)
    return ArithFunction._raw(a.spec, ring, bound, out)


def fn_norm(a: ArithFunction):
    """Least n <= bound with a(n) != 0, or ``ZeroUpToBound``."""
    return min(a._values) if a._values else ZeroUpToBound


def fn_embed_scalar(r, spec: MonoidSpec, ring: Ring, bound: int) -> ArithFunction:
    """i(r): r at 1, zero elsewhere."""
    return ArithFunction._raw(spec, ring, bound, {1: ring.coerce(r)})


def fn_project(a: ArithFunction) -> RingElement:
    """pi(a) = a(1)."""
    return RingElement(a._values.get(1, a.ring.zero), a.ring)


def is_unit(a: ArithFunction) -> bool:
    try:
        a.ring.inverse(a._values.get(1, a.ring.zero))
    except NotInvertible:
        return False
    return True


@dataclass(frozen=True)
class TotallyMultiplicativeFn:
    """L with L(1) = 1 and L(ab) = L(a)L(b), fixed by its values at primes.

    ``prime_values`` is either a mapping prime -> value or a callable.
    """

    ring: Ring
    prime_values: Mapping[int, object] | Callable[[int], object]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def at_prime(self, p: int):
        if callable(self.prime_values):
            return self.ring.coerce(self.prime_values(p))
        try:
            return self.ring.coerce(self.prime_values[p])
        except KeyError:
            raise MissingPrimeValue(f"no value given at prime {p}") from None

    def __call__(self, n: int):
        if n in self._cache:
            return self._cache[n]
        ring = self.ring
        out = ring.one
        for p, e in factorize(n):
            lp = self.at_prime(p)
            for _ in range(e):
                out = ring.mul(out, lp)
        self._cache[n] = out
        return out


def tm_build(prime_values, ring: Ring) -> TotallyMultiplicativeFn:
    return TotallyMultiplicativeFn(ring, prime_values)


def tm_eval(L: TotallyMultiplicativeFn, n: int) -> RingElement:
    return RingElement(L(n), L.ring)


def fn_twist(L: TotallyMultiplicativeFn, a: ArithFunction) -> ArithFunction:
    """Pointwise product n -> L(n) a(n); a ring endomorphism."""
    if L.ring != a.ring:
        raise MixedRings(f"character over {L.ring}, function over {a.ring}")
    ring = a.ring
    return ArithFunction._raw(a.spec, ring, a.bound, {n: ring.mul(L(n), v) for n, v in a._values.items()})


def fn_extend_submonoid(a: ArithFunction, target: MonoidSpec) -> ArithFunction:
    """Extension by zero from a submonoid into ``target``."""
    if not a.spec.is_submonoid_of(target):
        raise NotASubmonoid(f"{a.spec} is not a submonoid of {target}")
    return ArithFunction._raw(target, a.ring, a.bound, dict(a._values))


def fn_restrict(a: ArithFunction, sub: MonoidSpec) -> ArithFunction:
    """Forget the values outside the submonoid ``sub``."""
    if not sub.is_submonoid_of(a.spec):
        raise NotASubmonoid(f"{sub} is not a submonoid of {a.spec}")
    return ArithFunction._raw(sub, a.ring, a.bound, {n: v for n, v in a._values.items() if sub.contains(n)})
