"""Commutative coefficient rings.

A ring object is an immutable descriptor that knows how to combine *raw*
values (``Fraction``, ``int``, ``complex`` or coefficient tuples).  The
function containers elsewhere in the package store raw values and call back
into the descriptor; :class:`RingElement` is the tagged wrapper used at the
public boundary.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import MixedRings, NotInvertible, ParseError, WrongRing


class Ring:
    """Base class for coefficient ring descriptors."""

    # raw values support +, -, * directly; hot loops may use the operators
    # and call ``normalize`` once at the end
    native = False

    @property
    def zero(self) -> Any:
        raise NotImplementedError

    @property
    def one(self) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        return self.normalize(a + b)

    def sub(self, a, b):
        return self.normalize(a - b)

    def neg(self, a):
        return self.normalize(-a)

    def mul(self, a, b):
        return self.normalize(a * b)

    def normalize(self, a):
        return a

    def inverse(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        """Structural zero test, used to keep sparse storage sparse."""
        return a == self.zero

    def eq(self, a, b) -> bool:
        return a == b

    def from_int(self, n: int):
        return self.coerce(n)

    def coerce(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def element(self, x) -> "RingElement":
        return RingElement(self.coerce(x), self)

    @property
    def is_domain(self) -> bool:
        return False


def _unwrap(ring: Ring, x):
    if isinstance(x, RingElement):
        if x.ring != ring:
            raise MixedRings(f"element of {x.ring} used in {ring}")
        return x.value
    return x


@dataclass(frozen=True)
class RationalField(Ring):
    native = True

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def normalize(self, a):
        return a if isinstance(a, Fraction) else Fraction(a)

    def inverse(self, a):
        if a == 0:
            raise NotInvertible("0 is not invertible in Q")
        return 1 / Fraction(a)

    def coerce(self, x):
        x = _unwrap(self, x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q exactly")

    def parse(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {text!r}") from exc

    def format(self, a):
        return str(a)

    @property
    def is_domain(self):
        return True

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class IntegerRing(Ring):
    native = True

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def inverse(self, a):
        if a in (1, -1):
            return a
        raise NotInvertible(f"{a} is not a unit of Z")

    def coerce(self, x):
        x = _unwrap(self, x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot coerce {x!r} into Z")
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise TypeError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def parse(self, text):
        try:
            return int(text.strip())
        except ValueError as exc:
            raise ParseError(f"bad integer literal {text!r}") from exc

    def format(self, a):
        return str(a)

    @property
    def is_domain(self):
        return True

    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class ModularRing(Ring):
    modulus: int
    native = True

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {self.modulus!r}")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def normalize(self, a):
        return a % self.modulus

    def inverse(self, a):
        a %= self.modulus
        if math.gcd(a, self.modulus) != 1:
            raise NotInvertible(f"{a} is not a unit mod {self.modulus}")
        return pow(a, -1, self.modulus)

    def is_zero(self, a):
        return a % self.modulus == 0

    def eq(self, a, b):
        return (a - b) % self.modulus == 0

    def coerce(self, x):
        x = _unwrap(self, x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return x.numerator * self.inverse(x.denominator) % self.modulus
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {x!r} into Z/{self.modulus}")
        return x % self.modulus

    def parse(self, text):
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:mod\s*(\d+))?\s*", text)
        if not m:
            raise ParseError(f"bad modular literal {text!r}")
        if m.group(2) is not None and int(m.group(2)) != self.modulus:
            raise ParseError(f"literal {text!r} is not modulo {self.modulus}")
        return int(m.group(1)) % self.modulus

    def format(self, a):
        return f"{a % self.modulus} mod {self.modulus}"

    @property
    def is_domain(self):
        return all(self.modulus % p for p in range(2, math.isqrt(self.modulus) + 1))

    def __str__(self):
        return f"Zmod:{self.modulus}"


def _format_float(x: float) -> str:
    return repr(float(x))


@dataclass(frozen=True)
class ComplexField(Ring):
    """Double-precision complex numbers; ``eq`` is absolute-tolerance based."""

    tolerance: float = 1e-9
    native = True

    def __post_init__(self):
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")

    @property
    def zero(self):
        return 0j

    @property
    def one(self):
        return 1 + 0j

    def normalize(self, a):
        return complex(a)

    def inverse(self, a):
        if a == 0:
            raise NotInvertible("0 is not invertible in C")
        return 1 / complex(a)

    def eq(self, a, b):
        return abs(a - b) <= self.tolerance

    def coerce(self, x):
        x = _unwrap(self, x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (int, float, complex, Fraction)):
            return complex(x)
        raise TypeError(f"cannot coerce {x!r} into C")

    def parse(self, text):
        s = text.strip().replace(" ", "")
        if s.endswith("i"):
            s = s[:-1] + "j"
        try:
            return complex(s)
        except ValueError as exc:
            raise ParseError(f"bad complex literal {text!r}") from exc

    def format(self, a):
        a = complex(a)
        im = _format_float(a.imag)
        sign = "" if im.startswith("-") else "+"
        return f"{_format_float(a.real)}{sign}{im}i"

    @property
    def is_domain(self):
        return True

    def __str__(self):
        return "C" if self.tolerance == 1e-9 else f"C:{self.tolerance!r}"


@dataclass(frozen=True)
class PolynomialRing(Ring):
    """Polynomials in one variable ``z`` truncated above ``degree_cap``.

    Values are tuples of ``degree_cap + 1`` base-ring coefficients.  With the
    default complex base this models germs of holomorphic functions at a
    basepoint.
    """

    degree_cap: int
    base: Ring = ComplexField()

    def __post_init__(self):
        if self.degree_cap < 0:
            raise ValueError("degree_cap must be nonnegative")
        if isinstance(self.base, PolynomialRing):
            raise ValueError("nested polynomial rings are not supported")

    @property
    def zero(self):
        return (self.base.zero,) * (self.degree_cap + 1)

    @property
    def one(self):
        return (self.base.one,) + (self.base.zero,) * self.degree_cap

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        base = self.base
        out = list(self.zero)
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j in range(self.degree_cap + 1 - i):
                out[i + j] = base.add(out[i + j], base.mul(x, b[j]))
        return tuple(out)

    def scale(self, c, a):
        """Multiply by a base-ring scalar."""
        return tuple(self.base.mul(c, x) for x in a)

    def inverse(self, a):
        base = self.base
        try:
            c0 = base.inverse(a[0])
        except NotInvertible as exc:
            raise NotInvertible(f"constant term {base.format(a[0])} is not a unit") from exc
        out = [c0]
        for n in range(1, self.degree_cap + 1):
            s = base.zero
            for k in range(1, n + 1):
                s = base.add(s, base.mul(a[k], out[n - k]))
            out.append(base.neg(base.mul(c0, s)))
        return tuple(out)

    def derivative(self, a):
        base = self.base
        out = [base.mul(base.from_int(k), a[k]) for k in range(1, self.degree_cap + 1)]
        out.append(base.zero)
        return tuple(out)

    def is_zero(self, a):
        return all(self.base.is_zero(x) for x in a)

    def eq(self, a, b):
        return all(self.base.eq(x, y) for x, y in zip(a, b))

    def constant(self, c):
        return (self.base.coerce(c),) + (self.base.zero,) * self.degree_cap

    def coerce(self, x):
        x = _unwrap(self, x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (tuple, list)):
            if len(x) > self.degree_cap + 1:
                raise ValueError(f"{len(x)} coefficients exceed degree cap {self.degree_cap}")
            coeffs = [self.base.coerce(c) for c in x]
            return tuple(coeffs) + (self.base.zero,) * (self.degree_cap + 1 - len(coeffs))
        return self.constant(x)

    def evaluate(self, a, z, center=0):
        """Horner evaluation at ``z`` of the polynomial in ``(z - center)``."""
        w = z - center
        acc = 0
        for c in reversed(a):
            acc = acc * w + c
        return acc

    def parse(self, text):
        parts = [p for p in text.strip().split(",")]
        if not parts or any(not p.strip() for p in parts):
            raise ParseError(f"bad polynomial literal {text!r}")
        if len(parts) > self.degree_cap + 1:
            raise ParseError(f"polynomial literal {text!r} exceeds degree cap {self.degree_cap}")
        coeffs = [self.base.parse(p) for p in parts]
        return tuple(coeffs) + (self.base.zero,) * (self.degree_cap + 1 - len(coeffs))

    def format(self, a):
        coeffs = list(a)
        while len(coeffs) > 1 and self.base.is_zero(coeffs[-1]):
            coeffs.pop()
        return ",".join(self.base.format(c) for c in coeffs)

    @property
    def is_domain(self):
        return False

    def __str__(self):
        if self.base == ComplexField():
            return f"Poly:{self.degree_cap}"
        return f"Poly:{self.degree_cap}@{self.base}"


@dataclass(frozen=True)
class RingElement:
    """A raw value tagged with the ring it lives in."""

    value: Any
    ring: Ring

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise MixedRings(f"cannot combine elements of {self.ring} and {other.ring}")
            return other.value
        return self.ring.coerce(other)

    def __add__(self, other):
        return RingElement(self.ring.add(self.value, self._other(other)), self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring.sub(self.value, self._other(other)), self.ring)

    def __rsub__(self, other):
        return RingElement(self.ring.sub(self._other(other), self.value), self.ring)

    def __neg__(self):
        return RingElement(self.ring.neg(self.value), self.ring)

    def __mul__(self, other):
        return RingElement(self.ring.mul(self.value, self._other(other)), self.ring)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, RingElement) and other.ring != self.ring:
            return False
        try:
            return self.ring.eq(self.value, self._other(other))
        except (TypeError, ParseError):
            return NotImplemented

    __hash__ = None  # equality may be tolerance based

    def is_zero(self):
        return self.ring.is_zero(self.value)

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"RingElement({self.ring.format(self.value)!r}, {self.ring})"


def _check_same(a: RingElement, b: RingElement) -> Ring:
    if a.ring != b.ring:
        raise MixedRings(f"cannot combine elements of {a.ring} and {b.ring}")
    return a.ring


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    ring = _check_same(a, b)
    return RingElement(ring.add(a.value, b.value), ring)


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    ring = _check_same(a, b)
    return RingElement(ring.mul(a.value, b.value), ring)


def ring_inverse(a: RingElement) -> RingElement:
    """Multiplicative inverse; raises :class:`NotInvertible` for non-units."""
    return RingElement(a.ring.inverse(a.value), a.ring)


def poly_derivative(a: RingElement) -> RingElement:
    """Formal d/dz.  The result keeps the operand's degree cap, so its top
    coefficient is always zero."""
    if not isinstance(a.ring, PolynomialRing):
        raise WrongRing(f"poly_derivative needs a polynomial ring, got {a.ring}")
    return RingElement(a.ring.derivative(a.value), a.ring)


_RING_RE = re.compile(
    r"""^(?:
        (?P<q>Q) |
        (?P<z>Z) |
        Zmod:(?P<mod>\d+) |
        C(?::(?P<tol>[0-9.eE+-]+))? |
        Poly:(?P<cap>\d+)(?:@(?P<base>.+))?
    )$""",
    re.VERBOSE,
)


def parse_ring(text: str) -> Ring:
    """Parse a ring descriptor: ``Q``, ``Z``, ``Zmod:m``, ``C``, ``C:tol``,
    ``Poly:k`` (complex coefficients) or ``Poly:k@<base>``."""
    m = _RING_RE.match(text.strip())
    if not m:
        raise ParseError(f"unknown ring descriptor {text!r}")
    try:
        if m.group("q"):
            return RationalField()
        if m.group("z"):
            return IntegerRing()
        if m.group("mod"):
            return ModularRing(int(m.group("mod")))
        if m.group("cap") is not None:
            base = parse_ring(m.group("base")) if m.group("base") else ComplexField()
            return PolynomialRing(int(m.group("cap")), base)
        tol = float(m.group("tol")) if m.group("tol") else 1e-9
        return ComplexField(tol)
    except ValueError as exc:
        raise ParseError(f"bad ring descriptor {text!r}: {exc}") from exc
