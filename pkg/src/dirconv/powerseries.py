"""Truncated multivariate power series and their Laurent extension, with the
encode/decode maps to functions on Gamma(k) and on its group.

A function on Gamma(k) corresponds to the series
sum alpha(p_1^a_1 ... p_k^a_k) x_1^a_1 ... x_k^a_k.  Series are truncated
per variable (exponent a_i <= caps[i]).  A series may also carry a
``window``: coefficient a is then only claimed exact when
p_1^a_1 ... p_k^a_k <= window, mirroring the bound of the function it came
from.  ``window=None`` means every coefficient within the caps is exact.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .arith import ArithFunction
from .errors import DenominatorOutsideVariables, MixedRings, OutsideWindow, ShapeMismatch, SpecMismatch
from .grothendieck import ExtFunction
from .monoid import FullNStar, MonoidSpec, PrimeGenerated
from .ntheory import exponent_vector, factorize, first_primes
from .rings import Ring


def _weight(primes, exps) -> int:
    out = 1
    for p, a in zip(primes, exps):
        out *= p**a
    return out


class TruncatedSeries:
    __slots__ = ("ring", "caps", "coeffs", "window")

    def __init__(self, ring: Ring, caps, coeffs: Mapping | None = None, window: int | None = None):
        caps = tuple(int(c) for c in caps)
        if not caps or min(caps) < 0:
            raise ShapeMismatch(f"bad caps {caps}")
        clean = {}
        for exps, v in (coeffs or {}).items():
            exps = tuple(exps)
            if len(exps) != len(caps):
                raise ShapeMismatch(f"exponent {exps} has wrong length for caps {caps}")
            if any(a < 0 or a > c for a, c in zip(exps, caps)):
                continue
            v = ring.coerce(v)
            if not ring.is_zero(v):
                clean[exps] = v
        self.ring = ring
        self.caps = caps
        self.coeffs = clean
        self.window = window

    @classmethod
    def _raw(cls, ring, caps, coeffs, window):
        obj = cls.__new__(cls)
        obj.ring, obj.caps, obj.window = ring, caps, window
        obj.coeffs = {e: v for e, v in coeffs.items() if not ring.is_zero(v)}
        return obj

    @property
    def nvars(self) -> int:
        return len(self.caps)

    @property
    def primes(self) -> tuple[int, ...]:
        return first_primes(self.nvars)

    def exact_at(self, exps) -> bool:
        if any(a < 0 or a > c for a, c in zip(exps, self.caps)):
            return False
        return self.window is None or _weight(self.primes, exps) <= self.window

    def __getitem__(self, exps):
        return self.coeffs.get(tuple(exps), self.ring.zero)

    def items(self) -> Iterator[tuple[tuple[int, ...], object]]:
        for e in sorted(self.coeffs):
            yield e, self.coeffs[e]

    def equals(self, other: "TruncatedSeries") -> bool:
        """Coefficientwise equality wherever both sides are exact."""
        _check(self, other)
        zero = self.ring.zero
        for e in set(self.coeffs) | set(other.coeffs):
            if self.exact_at(e) and other.exact_at(e):
                if not self.ring.eq(self.coeffs.get(e, zero), other.coeffs.get(e, zero)):
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other.ring != self.ring or other.nvars != self.nvars:
            return False
        return self.equals(other)

    __hash__ = None

    def __add__(self, other):
        return series_add(self, other)

    def __mul__(self, other):
        return series_mul(self, other)

    def __neg__(self):
        return TruncatedSeries._raw(self.ring, self.caps, {e: self.ring.neg(v) for e, v in self.coeffs.items()}, self.window)

    def __repr__(self):
        return f"TruncatedSeries({self.ring}, caps={self.caps}, window={self.window}, terms={len(self.coeffs)})"


def _check(s, t) -> None:
    if s.ring != t.ring:
        raise MixedRings(f"{s.ring} vs {t.ring}")
    if s.nvars != t.nvars:
        raise ShapeMismatch(f"{s.nvars} vs {t.nvars} variables")


def _min_window(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def series_add(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    _check(s, t)
    caps = tuple(map(min, s.caps, t.caps))
    ring = s.ring
    out = {}
    for src in (s, t):
        for e, v in src.coeffs.items():
            if all(a <= c for a, c in zip(e, caps)):
                out[e] = ring.add(out[e], v) if e in out else v
    return TruncatedSeries._raw(ring, caps, out, _min_window(s.window, t.window))


def series_mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, discarding every term beyond the componentwise-min caps."""
    _check(s, t)
    caps = tuple(map(min, s.caps, t.caps))
    ring = s.ring
    add, mul = ring.add, ring.mul
    ts = list(t.items())
    out: dict = {}
    for e, x in s.items():
        if any(a > c for a, c in zip(e, caps)):
            continue
        for f, y in ts:
            g = tuple(a + b for a, b in zip(e, f))
            if any(a > c for a, c in zip(g, caps)):
                continue
            out[g] = add(out[g], mul(x, y)) if g in out else mul(x, y)
    return TruncatedSeries._raw(ring, caps, out, _min_window(s.window, t.window))


def series_one(ring: Ring, caps) -> TruncatedSeries:
    return TruncatedSeries(ring, caps, {(0,) * len(caps): ring.one})


def monomial(ring: Ring, caps, exps, value=None) -> TruncatedSeries:
    return TruncatedSeries(ring, caps, {tuple(exps): ring.one if value is None else value})


def default_caps(k: int, bound: int) -> tuple[int, ...]:
    """Largest exponents d_i with p_i^d_i <= bound."""
    caps = []
    for p in first_primes(k):
        d = 0
        while p ** (d + 1) <= bound:
            d += 1
        caps.append(d)
    return tuple(caps)


def iso_encode(alpha: ArithFunction, caps=None) -> TruncatedSeries:
    """Gamma(k) function -> power series in k variables.

    The window of the result is the bound of ``alpha``: a coefficient is
    exact iff its weight p^a does not exceed it.
    """
    spec = alpha.spec
    if not isinstance(spec, PrimeGenerated):
        raise SpecMismatch(f"encoding needs a Gamma(k) function, got {spec}")
    primes = spec.primes
    caps = default_caps(spec.k, alpha.bound) if caps is None else tuple(caps)
    if len(caps) != spec.k:
        raise ShapeMismatch(f"{len(caps)} caps for {spec.k} variables")
    out = {}
    for n, v in alpha.items():
        e = exponent_vector(n, primes)
        if all(a <= c for a, c in zip(e, caps)):
            out[e] = v
    window = None if _weight(primes, caps) <= alpha.bound else alpha.bound
    return TruncatedSeries._raw(alpha.ring, caps, out, window)


def iso_decode(s: TruncatedSeries) -> ArithFunction:
    """Power series -> Gamma(k) function.

    Positions whose exponents exceed the caps are filled with zero, so the
    result is the zero-padded lift of the truncated series; its bound is the
    series window, or the weight of the cap corner when every coefficient is
    exact.
    """
    primes = s.primes
    bound = s.window if s.window is not None else _weight(primes, s.caps)
    values = {}
    for e, v in s.coeffs.items():
        n = _weight(primes, e)
        if n <= bound:
            values[n] = v
    return ArithFunction._raw(PrimeGenerated(s.nvars), s.ring, bound, values)


def restrict_variables(s: TruncatedSeries, k: int) -> TruncatedSeries:
    """Set x_{k+1}, ... to zero: the series image of restricting to Gamma(k)."""
    if not 1 <= k <= s.nvars:
        raise ShapeMismatch(f"cannot keep {k} of {s.nvars} variables")
    out = {e[:k]: v for e, v in s.coeffs.items() if not any(e[k:])}
    return TruncatedSeries._raw(s.ring, s.caps[:k], out, s.window)


class LaurentSeries:
    """x^shift * body, with shift_i <= 0 and body a truncated series.

    Canonical form: no variable with a negative shift divides every body term.
    """

    __slots__ = ("shift", "body")

    def __init__(self, shift, body: TruncatedSeries, *, canonicalize: bool = True):
        shift = tuple(int(s) for s in shift)
        if len(shift) != body.nvars:
            raise ShapeMismatch(f"shift {shift} for {body.nvars} variables")
        if canonicalize:
            shift, body = _laurent_canonical(shift, body)
        self.shift = shift
        self.body = body

    @property
    def ring(self) -> Ring:
        return self.body.ring

    @property
    def nvars(self) -> int:
        return self.body.nvars

    def items(self):
        """(exponent in Z^k, coefficient) pairs."""
        for e, v in self.body.items():
            yield tuple(a + s for a, s in zip(e, self.shift)), v

    def known(self, exps) -> bool:
        """Exact positions: within the caps and, when there is a window,
        of weight at most the window.  Positions below the shift count as
        zeros only inside that region."""
        b = tuple(a - s for a, s in zip(exps, self.shift))
        body = self.body
        if any(x > c for x, c in zip(b, body.caps)):
            return False
        if body.window is None:
            return True
        weight = Fraction(1)
        for p, x in zip(body.primes, b):
            weight *= Fraction(p) ** x
        return weight <= body.window

    def __getitem__(self, exps):
        if not self.known(exps):
            raise OutsideWindow(f"coefficient at {tuple(exps)} is outside the exact region")
        b = tuple(a - s for a, s in zip(exps, self.shift))
        if min(b) < 0:
            return self.ring.zero
        return self.body[b]

    def equals(self, other: "LaurentSeries") -> bool:
        _check(self.body, other.body)
        for a, b in ((self, other), (other, self)):
            for e, v in a.items():
                if b.known(e) and not self.ring.eq(v, b[e]):
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if other.ring != self.ring or other.nvars != self.nvars:
            return False
        return self.equals(other)

    __hash__ = None

    def __mul__(self, other):
        return laurent_mul(self, other)

    def __add__(self, other):
        return laurent_add(self, other)

    def __repr__(self):
        return f"LaurentSeries(shift={self.shift}, body={self.body!r})"


def _shift_body(body: TruncatedSeries, delta) -> TruncatedSeries:
    """Multiply by the monomial x^delta (delta >= 0), growing caps to match."""
    if not any(delta):
        return body
    primes = body.primes
    caps = tuple(c + d for c, d in zip(body.caps, delta))
    window = None if body.window is None else body.window * _weight(primes, delta)
    out = {tuple(a + d for a, d in zip(e, delta)): v for e, v in body.coeffs.items()}
    return TruncatedSeries._raw(body.ring, caps, out, window)


def _laurent_canonical(shift, body: TruncatedSeries):
    shift = list(shift)
    primes = body.primes
    if not body.coeffs:
        return tuple(shift), body
    caps = list(body.caps)
    coeffs = dict(body.coeffs)
    window = body.window
    for i in range(len(shift)):
        while shift[i] < 0 and caps[i] > 0 and all(e[i] >= 1 for e in coeffs):
            coeffs = {e[:i] + (e[i] - 1,) + e[i + 1 :]: v for e, v in coeffs.items()}
            shift[i] += 1
            caps[i] -= 1
            if window is not None:
                window //= primes[i]
    return tuple(shift), TruncatedSeries._raw(body.ring, tuple(caps), coeffs, window)


def laurent_canonicalize(ls: LaurentSeries) -> LaurentSeries:
    return LaurentSeries(ls.shift, ls.body)


def laurent_mul(s: LaurentSeries, t: LaurentSeries) -> LaurentSeries:
    shift = tuple(a + b for a, b in zip(s.shift, t.shift))
    return LaurentSeries(shift, series_mul(s.body, t.body))


def laurent_add(s: LaurentSeries, t: LaurentSeries) -> LaurentSeries:
    low = tuple(map(min, s.shift, t.shift))
    a = _shift_body(s.body, tuple(x - m for x, m in zip(s.shift, low)))
    b = _shift_body(t.body, tuple(x - m for x, m in zip(t.shift, low)))
    return LaurentSeries(low, series_add(a, b))


def _variables_for(alpha: ExtFunction, k: int | None) -> int:
    spec = alpha.spec
    if isinstance(spec, PrimeGenerated):
        return spec.k if k is None else k
    if not isinstance(spec, FullNStar):
        raise SpecMismatch(f"Laurent encoding needs N* or Gamma(k), got {spec}")
    if k is not None:
        return k
    largest = 2
    for n in [alpha.denominator, *alpha.core.support()]:
        for p, _ in factorize(n):
            largest = max(largest, p)
    k = 1
    while first_primes(k)[-1] < largest:
        k += 1
    return k


def laurent_encode(alpha: ExtFunction, k: int | None = None, caps=None) -> LaurentSeries:
    """q = prod p_i^a_i (a_i in Z) -> x^a; the denominator becomes the shift."""
    k = _variables_for(alpha, k)
    primes = first_primes(k)
    d_exps = exponent_vector(alpha.denominator, primes)
    if d_exps is None:
        raise DenominatorOutsideVariables(f"denominator {alpha.denominator} has a prime beyond p_{k} = {primes[-1]}")
    core = alpha.core
    caps = default_caps(k, core.bound) if caps is None else tuple(caps)
    out = {}
    for n, v in core.items():
        e = exponent_vector(n, primes)
        if e is None:
            raise SpecMismatch(f"support element {n} has a prime beyond p_{k} = {primes[-1]}")
        if all(a <= c for a, c in zip(e, caps)):
            out[e] = v
    window = None if _weight(primes, caps) <= core.bound else core.bound
    body = TruncatedSeries._raw(core.ring, caps, out, window)
    return LaurentSeries(tuple(-a for a in d_exps), body)


def laurent_decode(ls: LaurentSeries, spec: MonoidSpec | None = None) -> ExtFunction:
    """Inverse of :func:`laurent_encode`; defaults to the Gamma(k) group."""
    spec = PrimeGenerated(ls.nvars) if spec is None else spec
    primes = ls.body.primes
    d = _weight(primes, [-s for s in ls.shift])
    body = ls.body
    bound = body.window if body.window is not None else _weight(primes, body.caps)
    values = {}
    for e, v in body.coeffs.items():
        n = _weight(primes, e)
        if n <= bound:
            values[n] = v
    return ExtFunction(d, ArithFunction._raw(spec, ls.ring, bound, values))

