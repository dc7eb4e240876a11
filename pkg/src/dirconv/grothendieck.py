"""The Grothendieck group of a monoid in N* and the extension ring over it.

Every monoid handled here sits inside (N*, *), so its Grothendieck group sits
inside the positive rationals and a group element is simply a
``fractions.Fraction``.

An element alpha of the extension ring is stored as a pair (d, core) with
d in the monoid and core(n) = alpha(n / d); alpha vanishes at every q with
dq outside the monoid.  The core is an ordinary bounded-exact function, so
alpha(q) is known exactly whenever dq <= core.bound.
"""
from __future__ import annotations

import math
import operator
from fractions import Fraction
from typing import Callable, Mapping

from .arith import ArithFunction, _check_compatible, fn_add, fn_convolve, fn_neg
from .derivations import DerivationSpec
from .errors import MissingPrimeValue, MixedRings, MonoidMismatch, OutsideWindow, RankMismatch
from .modules import ModuleFunction, mod_action, mod_add, mod_neg
from .monoid import MonoidSpec
from .ntheory import factorize
from .rings import Ring


def groth_reduce(m: int, n: int, spec: MonoidSpec | None = None) -> Fraction:
    """The class of (m, n), i.e. the reduced fraction m/n."""
    if spec is not None:
        spec.check(m)
        spec.check(n)
    return Fraction(m, n)


def universal_extend(
    f: Mapping[int, object] | Callable[[int], object],
    q: Fraction,
    op: Callable = operator.mul,
    inverse: Callable | None = None,
    identity=1,
):
    """Extend a monoid map into an abelian group (given by prime values) to
    the Grothendieck group: m/n -> f(m) * f(n)^-1.

    Defaults describe a multiplicative group; pass ``op=operator.add,
    inverse=operator.neg, identity=0`` for an additive one.
    """
    if inverse is None:
        inverse = (lambda x: 1 / x) if op is operator.mul else operator.neg

    def at(p):
        if callable(f):
            return f(p)
        try:
            return f[p]
        except KeyError:
            raise MissingPrimeValue(f"no value at prime {p}") from None

    def on_monoid(n):
        out = identity
        for p, e in factorize(n):
            v = at(p)
            for _ in range(e):
                out = op(out, v)
        return out

    q = Fraction(q)
    top = on_monoid(q.numerator)
    if q.denominator == 1:
        return top
    return op(top, inverse(on_monoid(q.denominator)))


def _in_group(spec: MonoidSpec, q: Fraction) -> bool:
    """Cheap necessary test for q in the group: its primes must divide
    some generator.  Finer lattice conditions are not checked."""
    gens = spec.generators()
    if gens is None:
        return True
    allowed = math.prod(gens)
    return all(allowed % p == 0 for n in (q.numerator, q.denominator) for p, _ in factorize(n))


def _shift(core, e: int):
    """n -> core(n / e); the known window grows by the factor e."""
    if isinstance(core, ModuleFunction):
        return ModuleFunction._raw(core.spec, core.ring, core.rank, core.bound * e, {n * e: v for n, v in core._values.items()})
    return ArithFunction._raw(core.spec, core.ring, core.bound * e, {n * e: v for n, v in core._values.items()})


def _unshift(core, g: int):
    if isinstance(core, ModuleFunction):
        return ModuleFunction._raw(core.spec, core.ring, core.rank, core.bound // g, {n // g: v for n, v in core._values.items()})
    return ArithFunction._raw(core.spec, core.ring, core.bound // g, {n // g: v for n, v in core._values.items()})


def _canonicalize(d: int, core):
    """Strip generators g | d while the whole core support lies in g*Gamma.

    Returns (d, core, canonical); canonical is False when the core is zero
    up to its bound, where the support condition cannot be decided.
    """
    spec = core.spec
    if not core._values:
        return d, core, d == 1
    changed = True
    while changed and d > 1:
        changed = False
        support = list(core._values)
        for g in spec.reducers(d):
            if core.bound // g >= 1 and all(n % g == 0 and spec.contains(n // g) for n in support):
                d //= g
                core = _unshift(core, g)
                changed = True
                break
    return d, core, True


class _ExtBase:
    __slots__ = ("denominator", "core", "canonical")

    def __init__(self, denominator: int, core, *, canonicalize: bool = True):
        core.spec.check(denominator)
        if canonicalize:
            denominator, core, canonical = _canonicalize(denominator, core)
        else:
            canonical = False
        self.denominator = denominator
        self.core = core
        self.canonical = canonical

    @property
    def spec(self) -> MonoidSpec:
        return self.core.spec

    @property
    def ring(self) -> Ring:
        return self.core.ring

    @property
    def bound(self) -> int:
        return self.core.bound

    def _zero_value(self):
        raise NotImplementedError

    def known(self, q) -> bool:
        """Whether the value at q is determined by the stored data.

        Inside the window d*q <= bound every value is exact.  Beyond it the
        only certain zeros are at q involving a prime the monoid never
        produces; in particular the lattice (1/d)Gamma says nothing there,
        since canonical stripping only inspected the window.
        """
        q = Fraction(q)
        return q * self.denominator <= self.bound or not _in_group(self.spec, q)

    def __getitem__(self, q):
        q = Fraction(q)
        if not self.known(q):
            raise OutsideWindow(f"value at {q} needs core index {q * self.denominator} > {self.bound}")
        n = q * self.denominator
        if n.denominator != 1 or not self.spec.contains(n.numerator):
            return self._zero_value()
        return self.core._values.get(n.numerator, self._zero_value())

    def items(self):
        """Nonzero (q, value) pairs ordered by core index."""
        d = self.denominator
        for n, v in self.core.items():
            yield Fraction(n, d), v

    def support(self) -> list[Fraction]:
        return [q for q, _ in self.items()]

    def _values_equal(self, u, v) -> bool:
        raise NotImplementedError

    def equals(self, other) -> bool:
        """Equality as functions on the group, wherever both sides are known."""
        _check_ext(self, other)
        for a, b in ((self, other), (other, self)):
            for q, v in a.items():
                if not b.known(q):
                    continue
                if not a._values_equal(v, b[q]):
                    return False
        return True

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        try:
            return self.equals(other)
        except (MixedRings, MonoidMismatch, RankMismatch):
            return False

    __hash__ = None


def _check_ext(a, b) -> None:
    if a.ring != b.ring:
        raise MixedRings(f"{a.ring} vs {b.ring}")
    if a.spec != b.spec:
        raise MonoidMismatch(f"{a.spec} vs {b.spec}")
    if getattr(a.core, "rank", 1) != getattr(b.core, "rank", 1):
        raise RankMismatch(f"rank {a.core.rank} vs {b.core.rank}")


class ExtFunction(_ExtBase):
    """An element of the extension ring, as (denominator, core)."""

    __slots__ = ()

    def _zero_value(self):
        return self.ring.zero

    def _values_equal(self, u, v):
        return self.ring.eq(u, v)

    def __add__(self, other):
        return ext_add(self, other)

    def __neg__(self):
        return ext_neg(self)

    def __sub__(self, other):
        return ext_add(self, ext_neg(other))

    def __mul__(self, other):
        return ext_convolve(self, other)

    def __repr__(self):
        terms = ", ".join(f"{q}: {self.ring.format(v)}" for q, v in list(self.items())[:8])
        return f"ExtFunction(d={self.denominator}, bound={self.bound}, {{{terms}}})"


class ExtModuleFunction(_ExtBase):
    """An element of the extension module with values in R^rank."""

    __slots__ = ()

    @property
    def rank(self) -> int:
        return self.core.rank

    def _zero_value(self):
        return (self.ring.zero,) * self.core.rank

    def _values_equal(self, u, v):
        return all(self.ring.eq(x, y) for x, y in zip(u, v))

    def __add__(self, other):
        return ext_mod_add(self, other)

    def __neg__(self):
        return ExtModuleFunction(self.denominator, mod_neg(self.core))

    def __repr__(self):
        return f"ExtModuleFunction(d={self.denominator}, rank={self.rank}, bound={self.bound}, support={len(self.core._values)})"


def ext_make(d: int, core: ArithFunction) -> ExtFunction:
    return ExtFunction(d, core)


def ext_embed(alpha: ArithFunction) -> ExtFunction:
    """i_*: extension by zero from the monoid to its group."""
    return ExtFunction(1, alpha)


def ext_from_values(spec: MonoidSpec, ring: Ring, bound: int, values: Mapping, denominator: int | None = None) -> ExtFunction:
    """Build from {q: value}; ``bound`` is the bound of the core.

    The denominator defaults to the lcm of the reduced denominators of the
    support, which must then lie in the monoid.
    """
    qs = {Fraction(q): v for q, v in values.items()}
    if denominator is None:
        denominator = 1
        for q in qs:
            denominator = math.lcm(denominator, q.denominator)
    spec.check(denominator)
    core_values = {}
    for q, v in qs.items():
        n = q * denominator
        if n.denominator != 1:
            raise ValueError(f"{q} is not cleared by denominator {denominator}")
        core_values[n.numerator] = v
    return ExtFunction(denominator, ArithFunction(spec, ring, bound, core_values))


def ext_add(a: ExtFunction, b: ExtFunction) -> ExtFunction:
    _check_compatible(a.core, b.core)
    d1, d2 = a.denominator, b.denominator
    return ExtFunction(d1 * d2, fn_add(_shift(a.core, d2), _shift(b.core, d1)))


def ext_neg(a: ExtFunction) -> ExtFunction:
    return ExtFunction(a.denominator, fn_neg(a.core))


def ext_convolve(a: ExtFunction, b: ExtFunction) -> ExtFunction:
    """(d', A) * (d'', B) = (d'd'', A * B): the sum over q'q'' = q becomes a
    sum over ab = d'd''q in the monoid."""
    _check_compatible(a.core, b.core)
    return ExtFunction(a.denominator * b.denominator, fn_convolve(a.core, b.core))


def ext_mod_embed(f: ModuleFunction) -> ExtModuleFunction:
    return ExtModuleFunction(1, f)


def ext_mod_make(d: int, core: ModuleFunction) -> ExtModuleFunction:
    return ExtModuleFunction(d, core)


def ext_mod_add(f: ExtModuleFunction, g: ExtModuleFunction) -> ExtModuleFunction:
    d1, d2 = f.denominator, g.denominator
    return ExtModuleFunction(d1 * d2, mod_add(_shift(f.core, d2), _shift(g.core, d1)))


def ext_module_action(alpha: ExtFunction, f: ExtModuleFunction) -> ExtModuleFunction:
    return ExtModuleFunction(alpha.denominator * f.denominator, mod_action(alpha.core, f.core))


def ext_derivation(dspec: DerivationSpec, alpha: ExtFunction) -> ExtModuleFunction:
    """q -> D(alpha(q)) + alpha(q) delta(q), delta extended to the group by
    m/n -> delta(m) - delta(n)."""
    ring = alpha.ring
    if ring != dspec.ring:
        raise MixedRings(f"derivation over {dspec.ring}, function over {ring}")
    d = alpha.denominator
    add, mul = ring.add, ring.mul
    delta = dspec.character
    out = {}
    for n, v in alpha.core.items():
        shifted = delta.extend(Fraction(n, d))
        out[n] = tuple(add(b, mul(v, c)) for b, c in zip(dspec.apply_base(v), shifted))
    core = ModuleFunction._raw(alpha.spec, ring, dspec.rank, alpha.bound, out)
    return ExtModuleFunction(d, core)
