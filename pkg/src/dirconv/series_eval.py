"""Numerical evaluation of truncated Dirichlet series

    F_alpha(z) = sum_{n <= B} alpha(n)(z) n^{-z}

for complex or polynomial (germ) coefficients, and a finite-difference check
of F'_alpha = F_{D alpha} with D the holomorphic derivation.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .arith import ArithFunction, TotallyMultiplicativeFn, fn_twist
from .derivations import holo_derivation
from .errors import WrongRing
from .rings import ComplexField, PolynomialRing


@dataclass(frozen=True)
class DirichletSeriesValue:
    z: complex
    value: complex
    truncation: int
    # bound on the omitted tail sum_{n > B} |n^-z|, only when Re z > 1
    tail_bound: float | None = None


def _coefficient(ring, v, z, center):
    if isinstance(ring, PolynomialRing):
        return ring.evaluate(v, z, center)
    return v


def eval_F(alpha: ArithFunction, z: complex, center: complex = 0) -> DirichletSeriesValue:
    """Finite sum over the stored support in ascending n.

    Polynomial values are read as polynomials in (z - center).  For finitely
    supported alpha this is the exact value of the series.
    """
    ring = alpha.ring
    if not (isinstance(ring, ComplexField) or isinstance(ring, PolynomialRing) and isinstance(ring.base, ComplexField)):
        raise WrongRing(f"evaluation needs C or Poly over C, got {ring}")
    z = complex(z)
    total = 0j
    for n, v in alpha.items():
        total += _coefficient(ring, v, z, center) * cmath.exp(-z * math.log(n))
    sigma = z.real
    tail = alpha.bound ** (1 - sigma) / (sigma - 1) if sigma > 1 else None
    return DirichletSeriesValue(z, total, alpha.bound, tail)


@dataclass(frozen=True)
class DerivativeCheck:
    z: complex
    finite_difference: complex
    analytic: complex
    discrepancy: float


def check_derivative_identity(alpha: ArithFunction, z: complex, h: float = 1e-4, center: complex = 0) -> DerivativeCheck:
    """Central difference of F_alpha at z against F of the derived function.

    For finite support the identity is exact, so the discrepancy is O(h^2)
    plus rounding.
    """
    z = complex(z)
    fd = (eval_F(alpha, z + h, center).value - eval_F(alpha, z - h, center).value) / (2 * h)
    analytic = eval_F(holo_derivation(alpha), z, center).value
    return DerivativeCheck(z, fd, analytic, abs(fd - analytic))


def eval_twist(L: TotallyMultiplicativeFn, alpha: ArithFunction) -> ArithFunction:
    """n -> L(n) alpha(n) for complex or germ-valued functions."""
    return fn_twist(L, alpha)
