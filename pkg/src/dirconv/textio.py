"""Plain-text formats.

Function file::

    monoid=nstar ring=Q bound=12
    1 1
    2 -1/2

Lines hold nonzero values in ascending n.  Module functions add ``rank=m``
to the header and write vectors ``[v1,...,vm]`` (polynomial entries are
parenthesized).  Extension-ring files add ``denominator=d`` and list the
core.  Series files use ``ring=R caps=c1,...,ck [window=W] [shift=...]``
headers and ``a1,...,ak <value>`` lines.  Blank lines and ``#`` comments are
ignored.
"""
from __future__ import annotations

import re
from typing import Iterable

from .arith import ArithFunction, TotallyMultiplicativeFn
from .derivations import AdditiveCharacter
from .errors import MissingPrimeValue, ParseError, SemanticError
from .grothendieck import ExtFunction
from .modules import ModuleFunction
from .monoid import FullNStar, MonoidSpec, parse_monoid
from .ntheory import is_prime
from .powerseries import LaurentSeries, TruncatedSeries
from .rings import PolynomialRing, RationalField, Ring, parse_ring

DEFAULT_BOUND = 1024


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    if not out:
        raise ParseError("empty input")
    return out


def parse_header(line: str) -> dict[str, str]:
    fields = {}
    for token in line.split():
        if "=" not in token:
            raise ParseError(f"header token {token!r} is not key=value")
        key, value = token.split("=", 1)
        fields[key] = value
    return fields


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"bad {what} {text!r}") from None


def _context(fields, defaults) -> tuple[MonoidSpec, Ring, int]:
    defaults = defaults or {}
    spec = parse_monoid(fields["monoid"]) if "monoid" in fields else defaults.get("monoid", FullNStar())
    ring = parse_ring(fields["ring"]) if "ring" in fields else defaults.get("ring", RationalField())
    bound = _int(fields["bound"], "bound") if "bound" in fields else defaults.get("bound", DEFAULT_BOUND)
    if bound < 1:
        raise ParseError(f"bound must be positive, got {bound}")
    return spec, ring, bound


def _entries(lines: Iterable[str]):
    for line in lines:
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise ParseError(f"expected '<n> <value>', got {line!r}")
        yield parts[0], parts[1]


def read_function(text: str, defaults: dict | None = None) -> ArithFunction:
    lines = _lines(text)
    fields = parse_header(lines[0]) if "=" in lines[0] else {}
    body = lines[1:] if fields else lines
    spec, ring, bound = _context(fields, defaults)
    values = {}
    for key, lit in _entries(body):
        n = _int(key, "index")
        if n in values:
            raise ParseError(f"index {n} given twice")
        values[n] = ring.parse(lit)
    return ArithFunction(spec, ring, bound, values)


def function_header(spec: MonoidSpec, ring: Ring, bound: int) -> str:
    return f"monoid={spec} ring={ring} bound={bound}"


def write_function(alpha: ArithFunction) -> str:
    out = [function_header(alpha.spec, alpha.ring, alpha.bound)]
    out += [f"{n} {alpha.ring.format(v)}" for n, v in alpha.items()]
    return "\n".join(out) + "\n"


def _parse_vector(lit: str, ring: Ring) -> tuple:
    m = re.fullmatch(r"\[(.*)\]", lit.strip())
    if not m:
        raise ParseError(f"bad vector literal {lit!r}")
    inner = m.group(1)
    if isinstance(ring, PolynomialRing):
        parts = re.findall(r"\(([^()]*)\)", inner)
    else:
        parts = inner.split(",")
    return tuple(ring.parse(p) for p in parts)


def _format_vector(vec, ring: Ring) -> str:
    if isinstance(ring, PolynomialRing):
        return "[" + ",".join(f"({ring.format(x)})" for x in vec) + "]"
    return "[" + ",".join(ring.format(x) for x in vec) + "]"


def read_module_function(text: str, defaults: dict | None = None) -> ModuleFunction:
    lines = _lines(text)
    fields = parse_header(lines[0])
    spec, ring, bound = _context(fields, defaults)
    rank = _int(fields.get("rank", "1"), "rank")
    values = {}
    for key, lit in _entries(lines[1:]):
        values[_int(key, "index")] = _parse_vector(lit, ring)
    return ModuleFunction(spec, ring, rank, bound, values)


def write_module_function(f: ModuleFunction) -> str:
    out = [function_header(f.spec, f.ring, f.bound) + f" rank={f.rank}"]
    out += [f"{n} {_format_vector(v, f.ring)}" for n, v in f.items()]
    return "\n".join(out) + "\n"


def read_ext_function(text: str, defaults: dict | None = None) -> ExtFunction:
    lines = _lines(text)
    fields = parse_header(lines[0])
    d = _int(fields.pop("denominator", "1"), "denominator")
    core = read_function("\n".join([" ".join(f"{k}={v}" for k, v in fields.items()), *lines[1:]]), defaults)
    return ExtFunction(d, core)


def write_ext_function(alpha: ExtFunction) -> str:
    core = alpha.core
    out = [function_header(core.spec, core.ring, core.bound) + f" denominator={alpha.denominator}"]
    out += [f"{n} {core.ring.format(v)}" for n, v in core.items()]
    return "\n".join(out) + "\n"


def _int_tuple(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"bad {what} {text!r}") from None


def read_series(text: str) -> TruncatedSeries | LaurentSeries:
    lines = _lines(text)
    fields = parse_header(lines[0])
    if "ring" not in fields or "caps" not in fields:
        raise ParseError("series header needs ring= and caps=")
    ring = parse_ring(fields["ring"])
    caps = _int_tuple(fields["caps"], "caps")
    window = _int(fields["window"], "window") if "window" in fields else None
    coeffs = {}
    for key, lit in _entries(lines[1:]):
        exps = _int_tuple(key, "exponent vector")
        if len(exps) != len(caps):
            raise ParseError(f"exponent {key} does not match caps {fields['caps']}")
        if any(a < 0 or a > c for a, c in zip(exps, caps)):
            raise ParseError(f"exponent {key} outside caps {fields['caps']}")
        coeffs[exps] = ring.parse(lit)
    body = TruncatedSeries(ring, caps, coeffs, window)
    if "shift" in fields:
        return LaurentSeries(_int_tuple(fields["shift"], "shift"), body, canonicalize=False)
    return body


def write_series(s: TruncatedSeries | LaurentSeries) -> str:
    body = s.body if isinstance(s, LaurentSeries) else s
    head = f"ring={body.ring} caps={','.join(map(str, body.caps))}"
    if body.window is not None:
        head += f" window={body.window}"
    if isinstance(s, LaurentSeries):
        head += f" shift={','.join(map(str, s.shift))}"
    out = [head] + [f"{','.join(map(str, e))} {body.ring.format(v)}" for e, v in body.items()]
    return "\n".join(out) + "\n"


def _prime_lookup(alpha: ArithFunction):
    """p -> alpha(p); absent primes up to the bound are 0, beyond it unknown."""
    values = {n: v for n, v in alpha.items() if is_prime(n)}

    def at(p):
        if p > alpha.bound:
            raise MissingPrimeValue(f"no value at prime {p} beyond bound {alpha.bound}")
        return values.get(p, alpha.ring.zero)

    return at


def character_from_function(alpha: ArithFunction) -> TotallyMultiplicativeFn:
    """Totally multiplicative function from the prime entries of a file;
    composite entries must agree with multiplicativity."""
    ring = alpha.ring
    L = TotallyMultiplicativeFn(ring, _prime_lookup(alpha))
    for n, v in alpha.items():
        if n > 1 and not is_prime(n) and not ring.eq(L(n), v):
            raise SemanticError(f"character value at {n} is not multiplicative")
    if 1 in alpha._values and not ring.eq(alpha._values[1], ring.one):
        raise SemanticError("character value at 1 must be 1")
    return L


def additive_character_from_function(alpha: ArithFunction) -> AdditiveCharacter:
    """Additive character from the prime entries of a file."""
    ring = alpha.ring
    delta = AdditiveCharacter(ring, _prime_lookup(alpha))
    for n, v in alpha.items():
        if not is_prime(n) and not ring.eq(delta(n)[0], v):
            raise SemanticError(f"character value at {n} is not additive")
    return delta
