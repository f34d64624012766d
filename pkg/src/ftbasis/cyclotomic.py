"""Exact rational polynomials and the cyclotomic rationality decision.

The angle c of a unit eigenvalue e^{i 2 pi c} is rational iff the minimal
monic polynomial of that eigenvalue over Q exists and equals some
cyclotomic polynomial Phi_n.  The decision therefore reduces to an exact
match against finitely many candidates: deg Phi_n = phi(n), and
phi(n) >= sqrt(n/2) bounds the search to n <= 2 deg^2 + 1.  A polynomial
with any non-integer coefficient is rejected immediately.

All arithmetic is exact (fractions.Fraction); no floating point enters
the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ValidationError


class Reason:
    NON_INTEGER_COEFFICIENT = "non-integer-coefficient"
    NO_CYCLOTOMIC_MATCH = "no-cyclotomic-match"
    MATCHED = "matched"


@dataclass(frozen=True)
class AngleVerdict:
    rational: bool
    witness_order: int | None
    reason: str


@dataclass(frozen=True)
class RationalPolynomial:
    """Dense polynomial over Q, constant term first, trailing zeros stripped."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_ints(cls, *coeffs) -> "RationalPolynomial":
        return cls(tuple(Fraction(c) for c in coeffs))

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    @property
    def monic(self) -> bool:
        return self.degree >= 0 and self.coeffs[-1] == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci == 0:
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] += ci * cj
        return RationalPolynomial(tuple(out))

    def divide_exact(self, divisor: "RationalPolynomial") -> "RationalPolynomial":
        """Exact long division; raises if the remainder is nonzero."""
        if divisor.degree < 0:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        lead = divisor.coeffs[-1]
        dd = divisor.degree
        quot = [Fraction(0)] * max(len(rem) - dd, 1)
        for top in range(len(rem) - 1, dd - 1, -1):
            q = rem[top] / lead
            quot[top - dd] = q
            if q != 0:
                for j, cj in enumerate(divisor.coeffs):
                    rem[top - dd + j] -= q * cj
        if any(r != 0 for r in rem):
            raise ValidationError("polynomial division left a remainder")
        return RationalPolynomial(tuple(quot))

    def eval_complex(self, x: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + complex(c)
        return acc

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data: list[str]) -> "RationalPolynomial":
        return cls(tuple(Fraction(s) for s in data))


def _x_power_minus_one(n: int) -> RationalPolynomial:
    coeffs = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    return RationalPolynomial(tuple(coeffs))


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValidationError("totient needs a positive argument")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> RationalPolynomial:
    """Phi_n, computed by exact division of x^n - 1 by the proper-divisor product."""
    if n < 1:
        raise ValidationError("cyclotomic index must be positive")
    if n == 1:
        return RationalPolynomial.from_ints(-1, 1)
    num = _x_power_minus_one(n)
    den = RationalPolynomial.from_ints(1)
    for d in range(1, n):
        if n % d == 0:
            den = den * cyclotomic_poly(d)
    return num.divide_exact(den)


def is_cyclotomic(p: RationalPolynomial) -> AngleVerdict:
    """Decide whether a monic polynomial equals some Phi_n.

    Matching means the corresponding root e^{i 2 pi c} has rational c;
    a verdict of rational=True always carries the witness order n.
    """
    if not p.monic or p.degree < 1:
        raise ValidationError("input must be monic of degree >= 1")
    if not p.is_integral():
        return AngleVerdict(False, None, Reason.NON_INTEGER_COEFFICIENT)
    deg = p.degree
    for n in range(1, 2 * deg * deg + 2):
        if euler_phi(n) == deg and cyclotomic_poly(n) == p:
            return AngleVerdict(True, n, Reason.MATCHED)
    return AngleVerdict(False, None, Reason.NO_CYCLOTOMIC_MATCH)


def angle_of_root(p: RationalPolynomial, approx_root: complex) -> AngleVerdict:
    """Rationality of c for a unit eigenvalue e^{i 2 pi c} with minimal polynomial p.

    The numeric approximation only identifies which root is meant; the
    verdict itself is the exact cyclotomic decision on p.
    """
    if not p.monic or p.degree < 1:
        raise ValidationError("input must be monic of degree >= 1")
    roots = np.roots([float(c) for c in reversed(p.coeffs)])
    if float(np.min(np.abs(roots - approx_root))) > 1e-6:
        raise ValidationError("approximation is not near any root of the polynomial")
    return is_cyclotomic(p)
