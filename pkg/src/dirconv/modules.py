"""Functions Gamma -> R^m as a module over the convolution ring."""
from __future__ import annotations

from typing import Iterator, Mapping, Sequence

from .arith import ArithFunction, TotallyMultiplicativeFn, fn_twist
from .errors import MixedRings, MonoidMismatch, NotASubmonoid, OutsideWindow, RankMismatch
from .monoid import MonoidSpec
from .rings import Ring


class ModuleFunction:
    __slots__ = ("spec", "ring", "rank", "bound", "_values")

    def __init__(self, spec: MonoidSpec, ring: Ring, rank: int, bound: int, values: Mapping | None = None):
        if rank < 1:
            raise ValueError("rank must be positive")
        if bound < 1:
            raise ValueError("bound must be positive")
        clean = {}
        for n, vec in (values or {}).items():
            spec.check(n)
            if n > bound:
                raise OutsideWindow(f"value at {n} lies beyond bound {bound}")
            vec = tuple(ring.coerce(x) for x in vec)
            if len(vec) != rank:
                raise RankMismatch(f"vector of length {len(vec)} in a rank-{rank} function")
            if not all(ring.is_zero(x) for x in vec):
                clean[n] = vec
        self.spec, self.ring, self.rank, self.bound = spec, ring, rank, bound
        self._values = clean

    @classmethod
    def _raw(cls, spec, ring, rank, bound, values: dict) -> "ModuleFunction":
        obj = cls.__new__(cls)
        obj.spec, obj.ring, obj.rank, obj.bound = spec, ring, rank, bound
        obj._values = {n: v for n, v in values.items() if not all(ring.is_zero(x) for x in v)}
        return obj

    @classmethod
    def from_function(cls, a: ArithFunction) -> "ModuleFunction":
        return cls._raw(a.spec, a.ring, 1, a.bound, {n: (v,) for n, v in a._values.items()})

    def to_function(self) -> ArithFunction:
        if self.rank != 1:
            raise RankMismatch(f"rank {self.rank} function is not scalar valued")
        return ArithFunction._raw(self.spec, self.ring, self.bound, {n: v[0] for n, v in self._values.items()})

    def component(self, i: int) -> ArithFunction:
        return ArithFunction._raw(self.spec, self.ring, self.bound, {n: v[i] for n, v in self._values.items()})

    def __getitem__(self, n: int) -> tuple:
        if n > self.bound:
            raise OutsideWindow(f"{n} exceeds bound {self.bound}")
        self.spec.check(n)
        return self._values.get(n, (self.ring.zero,) * self.rank)

    def items(self) -> Iterator[tuple[int, tuple]]:
        for n in sorted(self._values):
            yield n, self._values[n]

    def support(self) -> list[int]:
        return sorted(self._values)

    def is_zero(self) -> bool:
        return not self._values

    def truncate(self, bound: int) -> "ModuleFunction":
        bound = min(bound, self.bound)
        return ModuleFunction._raw(
            self.spec, self.ring, self.rank, bound, {n: v for n, v in self._values.items() if n <= bound}
        )

    def equals(self, other: "ModuleFunction") -> bool:
        _check(self, other)
        bound = min(self.bound, other.bound)
        zero = (self.ring.zero,) * self.rank
        eq = self.ring.eq
        for n in set(self._values) | set(other._values):
            if n <= bound:
                u, v = self._values.get(n, zero), other._values.get(n, zero)
                if not all(eq(x, y) for x, y in zip(u, v)):
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, ModuleFunction):
            return NotImplemented
        if (other.spec, other.ring, other.rank) != (self.spec, self.ring, self.rank):
            return False
        return self.equals(other)

    __hash__ = None

    def __add__(self, other):
        return mod_add(self, other)

    def __neg__(self):
        return mod_neg(self)

    def __sub__(self, other):
        return mod_add(self, mod_neg(other))

    def __rmul__(self, alpha):
        if isinstance(alpha, ArithFunction):
            return mod_action(alpha, self)
        return NotImplemented

    def __repr__(self):
        return f"ModuleFunction({self.spec}, {self.ring}, rank={self.rank}, bound={self.bound}, support={len(self._values)})"


def _check(f, g) -> None:
    if f.ring != g.ring:
        raise MixedRings(f"{f.ring} vs {g.ring}")
    if f.spec != g.spec:
        raise MonoidMismatch(f"{f.spec} vs {g.spec}")
    if f.rank != g.rank:
        raise RankMismatch(f"rank {f.rank} vs rank {g.rank}")


def mod_add(f: ModuleFunction, g: ModuleFunction) -> ModuleFunction:
    _check(f, g)
    add = f.ring.add
    bound = min(f.bound, g.bound)
    out = {n: v for n, v in f._values.items() if n <= bound}
    for n, v in g._values.items():
        if n <= bound:
            out[n] = tuple(map(add, out[n], v)) if n in out else v
    return ModuleFunction._raw(f.spec, f.ring, f.rank, bound, out)


def mod_neg(f: ModuleFunction) -> ModuleFunction:
    neg = f.ring.neg
    return ModuleFunction._raw(f.spec, f.ring, f.rank, f.bound, {n: tuple(map(neg, v)) for n, v in f._values.items()})


def mod_scale(r, f: ModuleFunction) -> ModuleFunction:
    ring = f.ring
    r = ring.coerce(r)
    return ModuleFunction._raw(
        f.spec, ring, f.rank, f.bound, {n: tuple(ring.mul(r, x) for x in v) for n, v in f._values.items()}
    )


def mod_action(alpha: ArithFunction, f: ModuleFunction) -> ModuleFunction:
    """(alpha . f)(n) = sum_{ab = n} alpha(a) f(b)."""
    if alpha.ring != f.ring:
        raise MixedRings(f"{alpha.ring} vs {f.ring}")
    if alpha.spec != f.spec:
        raise MonoidMismatch(f"{alpha.spec} vs {f.spec}")
    ring = f.ring
    add, mul = ring.add, ring.mul
    bound = min(alpha.bound, f.bound)
    ys = [(n, v) for n, v in f.items() if n <= bound]
    out: dict = {}
    for a, x in alpha.items():
        if a > bound:
            break
        limit = bound // a
        for b, vec in ys:
            if b > limit:
                break
            k = a * b
            term = tuple(mul(x, y) for y in vec)
            out[k] = tuple(map(add, out[k], term)) if k in out else term
    return ModuleFunction._raw(f.spec, ring, f.rank, bound, out)


def mod_map(matrix: Sequence[Sequence], f: ModuleFunction) -> ModuleFunction:
    """Push forward along the linear map R^m -> R^m' given by an m' x m matrix."""
    ring = f.ring
    rows = [tuple(ring.coerce(x) for x in row) for row in matrix]
    if not rows or any(len(row) != f.rank for row in rows):
        raise RankMismatch(f"matrix shape does not accept rank-{f.rank} vectors")
    add, mul, zero = ring.add, ring.mul, ring.zero
    out = {}
    for n, v in f._values.items():
        img = []
        for row in rows:
            s = zero
            for c, x in zip(row, v):
                s = add(s, mul(c, x))
            img.append(s)
        out[n] = tuple(img)
    return ModuleFunction._raw(f.spec, ring, len(rows), f.bound, out)


def mod_phi_L(L: TotallyMultiplicativeFn, f: ModuleFunction) -> ModuleFunction:
    """n -> L(n) f(n)."""
    if L.ring != f.ring:
        raise MixedRings(f"character over {L.ring}, function over {f.ring}")
    mul = f.ring.mul
    return ModuleFunction._raw(
        f.spec, f.ring, f.rank, f.bound, {n: tuple(mul(L(n), x) for x in v) for n, v in f._values.items()}
    )


def mod_twist_action(L: TotallyMultiplicativeFn, alpha: ArithFunction, f: ModuleFunction) -> ModuleFunction:
    """The twisted action alpha ._L f = twist_L(alpha) . f."""
    return mod_action(fn_twist(L, alpha), f)


def mod_extend_submonoid(f: ModuleFunction, target: MonoidSpec) -> ModuleFunction:
    if not f.spec.is_submonoid_of(target):
        raise NotASubmonoid(f"{f.spec} is not a submonoid of {target}")
    return ModuleFunction._raw(target, f.ring, f.rank, f.bound, dict(f._values))


def mod_restrict(f: ModuleFunction, sub: MonoidSpec) -> ModuleFunction:
    if not sub.is_submonoid_of(f.spec):
        raise NotASubmonoid(f"{sub} is not a submonoid of {f.spec}")
    return ModuleFunction._raw(sub, f.ring, f.rank, f.bound, {n: v for n, v in f._values.items() if sub.contains(n)})
