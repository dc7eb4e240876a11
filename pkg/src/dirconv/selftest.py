"""Built-in identity suite behind ``dirconv selftest``.

Every check is seeded, so the output is the same on every run.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .arith import ArithFunction, constant, fn_convolve, fn_invert, fn_make, unit
from .derivations import DerivationSpec, AdditiveCharacter, lift_derivation, p_derivation
from .grothendieck import ext_convolve, ext_derivation, ext_embed, ext_from_values, ext_mod_embed
from .modules import mod_action, mod_add
from .monoid import FullNStar, PrimeGenerated
from .powerseries import iso_decode, iso_encode, laurent_decode, laurent_encode
from .rings import ComplexField, PolynomialRing, RationalField
from .series_eval import check_derivative_identity

SEED = 20240611


def _random_fn(rng, spec, ring, bound, size=12, unit_at_one=False):
    elems = spec.elements_up_to(bound)
    picks = rng.sample(elems, min(size, len(elems)))
    values = {n: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for n in picks}
    if unit_at_one:
        values[1] = Fraction(rng.choice([1, -1, 2, 3]))
    return fn_make(spec, ring, bound, values)


def check_mobius() -> bool:
    Q, spec = RationalField(), FullNStar()
    one = constant(spec, Q, 2000)
    return fn_convolve(fn_invert(one), one).equals(unit(spec, Q, 2000))


def check_inverse_roundtrip() -> bool:
    rng = random.Random(SEED)
    Q, spec = RationalField(), FullNStar()
    for _ in range(10):
        a = _random_fn(rng, spec, Q, 300, unit_at_one=True)
        inv = fn_invert(a)
        if not fn_convolve(a, inv).equals(unit(spec, Q, 300)):
            return False
        if not fn_invert(inv).equals(a):
            return False
    return True


def check_iso_roundtrip() -> bool:
    rng = random.Random(SEED + 1)
    Q, spec = RationalField(), PrimeGenerated(3)
    bound = 10800
    box = [2 ** i * 3 ** j * 5 ** k for i in range(5) for j in range(4) for k in range(3)]
    for _ in range(10):
        a = fn_make(spec, Q, bound, {n: rng.randint(-9, 9) for n in rng.sample(box, 12)})
        b = fn_make(spec, Q, bound, {n: rng.randint(-9, 9) for n in rng.sample(box, 12)})
        sa, sb = iso_encode(a, (4, 3, 2)), iso_encode(b, (4, 3, 2))
        if not iso_decode(sa).equals(a):
            return False
        if not iso_encode(fn_convolve(a, b), (4, 3, 2)).equals(sa * sb):
            return False
    return True


def check_laurent_roundtrip() -> bool:
    rng = random.Random(SEED + 2)
    Q, spec = RationalField(), PrimeGenerated(2)
    for _ in range(10):
        vals = {Fraction(2) ** rng.randint(-3, 3) * Fraction(3) ** rng.randint(-3, 3): rng.randint(1, 9) for _ in range(4)}
        a = ext_from_values(spec, Q, 10 ** 6, vals)
        if not laurent_decode(laurent_encode(a)).equals(a):
            return False
    return True


def check_leibniz_lift() -> bool:
    rng = random.Random(SEED + 3)
    Q, spec = RationalField(), FullNStar()
    dspec = DerivationSpec(AdditiveCharacter(Q, lambda p: Fraction(p % 5, 2)))
    for _ in range(10):
        a, b = _random_fn(rng, spec, Q, 256), _random_fn(rng, spec, Q, 256)
        lhs = lift_derivation(dspec, fn_convolve(a, b))
        rhs = mod_add(mod_action(a, lift_derivation(dspec, b)), mod_action(b, lift_derivation(dspec, a)))
        if not lhs.equals(rhs):
            return False
    return True


def check_leibniz_p() -> bool:
    rng = random.Random(SEED + 4)
    Q, spec = RationalField(), FullNStar()
    for p in (2, 3, 5):
        for _ in range(5):
            a, b = _random_fn(rng, spec, Q, 256), _random_fn(rng, spec, Q, 256)
            lhs = p_derivation(p, fn_convolve(a, b))
            rhs = fn_convolve(a, p_derivation(p, b)) + fn_convolve(p_derivation(p, a), b)
            if not lhs.equals(rhs):
                return False
    return True


def check_ext_diagram() -> bool:
    rng = random.Random(SEED + 5)
    Q, spec = RationalField(), FullNStar()
    dspec = DerivationSpec(AdditiveCharacter(Q, lambda p: Fraction(1, p)))
    for _ in range(10):
        a, b = _random_fn(rng, spec, Q, 200), _random_fn(rng, spec, Q, 200)
        if not ext_embed(fn_convolve(a, b)).equals(ext_convolve(ext_embed(a), ext_embed(b))):
            return False
        if not ext_mod_embed(lift_derivation(dspec, a)).equals(ext_derivation(dspec, ext_embed(a))):
            return False
    return True


def check_derivative_identity_sample() -> bool:
    rng = random.Random(SEED + 6)
    P = PolynomialRing(2, ComplexField())
    spec = FullNStar()
    for _ in range(3):
        values = {n: tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3)) for n in rng.sample(range(1, 51), 10)}
        a = ArithFunction(spec, P, 50, values)
        z = complex(rng.uniform(1, 3), rng.uniform(-5, 5))
        if check_derivative_identity(a, z, 1e-4).discrepancy >= 1e-6:
            return False
    return True


CHECKS: list[tuple[str, Callable[[], bool]]] = [
    ("mobius: mu * 1 = e", check_mobius),
    ("inverse round trip", check_inverse_roundtrip),
    ("power-series round trip and product", check_iso_roundtrip),
    ("laurent round trip", check_laurent_roundtrip),
    ("leibniz: lifted derivation", check_leibniz_lift),
    ("leibniz: p-derivations p=2,3,5", check_leibniz_p),
    ("extension ring embedding and diagram", check_ext_diagram),
    ("dirichlet series derivative identity", check_derivative_identity_sample),
]


def run_selftest() -> tuple[bool, list[str]]:
    lines, ok = [], True
    for name, check in CHECKS:
        try:
            passed = check()
        except Exception as exc:  # a crash is reported as a failure line
            passed = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        ok &= passed
        lines.append(f"{'PASS' if passed else 'FAIL'} {name}")
    return ok, lines
