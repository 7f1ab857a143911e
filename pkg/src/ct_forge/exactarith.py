"""Exact arithmetic for half-integer Gamma values and the closed-form products
built from them.

Everything here is exact: rationals are `fractions.Fraction`, half integers
are carried as twice their value, and Gamma values track an explicit integer
power of sqrt(pi).  No floating point enters this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import DomainError, NonRationalError, PoleError


@dataclass(frozen=True)
class HalfInt:
    """A half integer q stored exactly as ``twice`` = 2q."""

    twice: int

    @classmethod
    def of_int(cls, n: int) -> "HalfInt":
        return cls(2 * n)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    @property
    def is_nonpositive_integer(self) -> bool:
        return self.twice % 2 == 0 and self.twice <= 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __str__(self) -> str:
        return str(self.as_fraction())


@dataclass(frozen=True)
class GammaValue:
    """Exact value ``rational_part * sqrt(pi)**pi_half_exp``.

    A single Gamma at a half integer has pi_half_exp in {0, 1}; products and
    quotients accumulate arbitrary integer exponents.
    """

    rational_part: Fraction
    pi_half_exp: int

    def __mul__(self, other: "GammaValue") -> "GammaValue":
        return GammaValue(self.rational_part * other.rational_part,
                          self.pi_half_exp + other.pi_half_exp)

    def __truediv__(self, other: "GammaValue") -> "GammaValue":
        return GammaValue(self.rational_part / other.rational_part,
                          self.pi_half_exp - other.pi_half_exp)

    def to_fraction(self) -> Fraction:
        """The value as a pure rational; the sqrt(pi) exponent must be zero."""
        if self.pi_half_exp != 0:
            raise NonRationalError(
                f"value carries sqrt(pi)^{self.pi_half_exp}, not rational")
        return self.rational_part


def gamma_half(q: HalfInt) -> GammaValue:
    """Exact Gamma at a half integer, via the recurrence from Gamma(1) = 1 and
    Gamma(1/2) = sqrt(pi).

    Negative half integers are fine (e.g. Gamma(-1/2) = -2 sqrt(pi));
    nonpositive integers are poles.
    """
    t = q.twice
    if t % 2 == 0:
        n = t // 2
        if n <= 0:
            raise PoleError(f"Gamma({q}) is a pole")
        return GammaValue(Fraction(math.factorial(n - 1)), 0)
    rat = Fraction(1)
    if t > 1:
        # Gamma(1/2 + m): multiply up through (2s-1)/2, s = 1..m.
        for s in range(1, (t - 1) // 2 + 1):
            rat *= Fraction(2 * s - 1, 2)
    elif t < 1:
        # Gamma(1/2 - m): divide down through (1-2s)/2, s = 1..m.
        for s in range(1, (1 - t) // 2 + 1):
            rat /= Fraction(1 - 2 * s, 2)
    return GammaValue(rat, 1)


def catalan(k: int) -> Fraction:
    """The k-th Catalan number binom(2k, k)/(k+1), as an exact rational."""
    if k < 1:
        raise DomainError(f"catalan requires k >= 1, got {k}")
    return Fraction(math.comb(2 * k, k), k + 1)


def _gamma_quotient(num_twice: Iterable[int],
                    den_twice: Iterable[int]) -> Optional[Fraction]:
    """prod Gamma(num)/prod Gamma(den), arguments in twice-units.

    Returns None when any denominator argument is a nonpositive integer:
    the reciprocal of a Gamma pole is zero and collapses the whole product,
    even if a numerator argument is also a pole (that is the convention that
    keeps the closed-form evaluators total at a = 0).  A numerator pole with
    a pole-free denominator raises PoleError; a leftover sqrt(pi) power
    raises NonRationalError.
    """
    den = list(den_twice)
    if any(HalfInt(t).is_nonpositive_integer for t in den):
        return None
    acc = GammaValue(Fraction(1), 0)
    for t in num_twice:
        q = HalfInt(t)
        if q.is_nonpositive_integer:
            raise PoleError(f"Gamma({q}) pole in a numerator")
        acc = acc * gamma_half(q)
    for t in den:
        acc = acc / gamma_half(HalfInt(t))
    return acc.to_fraction()


def morris_rhs(n: int, a: int, b: int, twoc: int) -> Fraction:
    """Gamma-product closed form for the n-variable constant term of
    prod (1-x_i)^{-a} x_i^{-b} prod_{i<j} (x_j-x_i)^{-2c} with c = twoc/2:

        (1/n!) prod_{j=0}^{n-1} G(a+b+(n-1+j)c) G(c)
                               / [G(a+jc) G(c+jc) G(b+jc+1)]
    """
    if n < 1:
        raise DomainError(f"morris_rhs requires n >= 1, got {n}")
    if a < 0 or b < 0:
        raise DomainError("morris_rhs requires a >= 0 and b >= 0")
    if twoc < 1:
        raise DomainError("morris_rhs requires twoc >= 1")
    num = []
    den = []
    for j in range(n):
        num.append(2 * (a + b) + (n - 1 + j) * twoc)
        num.append(twoc)
        den.append(2 * a + j * twoc)
        den.append(twoc + j * twoc)
        den.append(2 * b + j * twoc + 2)
    q = _gamma_quotient(num, den)
    if q is None:
        return Fraction(0)
    return q / math.factorial(n)


def mm_rhs(n: int) -> Fraction:
    """2^(n^2) times the product of the first n Catalan numbers.

    Stated for n >= 2; n = 1 is accepted as the natural extension (value 2).
    """
    if n < 1:
        raise DomainError(f"mm_rhs requires n >= 1, got {n}")
    prod = Fraction(2) ** (n * n)
    for k in range(1, n + 1):
        prod *= catalan(k)
    return prod


def thm_rhs(n: int, a: int, twoc: int) -> Fraction:
    """Closed form 2^(2an + 4c*binom(n,2) - 2n) * (1/n!) *
    prod_{j=0}^{n-1} G(a-1/2+(n-1+j)c) G(c) / [G(1/2+jc) G(c+jc) G(a+jc)]
    with c = twoc/2.

    a = 0 collapses to 0 through the reciprocal-Gamma convention.
    """
    if n < 1:
        raise DomainError(f"thm_rhs requires n >= 1, got {n}")
    if a < 0:
        raise DomainError("thm_rhs requires a >= 0")
    if twoc < 1:
        raise DomainError("thm_rhs requires twoc >= 1")
    num = []
    den = []
    for j in range(n):
        num.append(2 * a - 1 + (n - 1 + j) * twoc)
        num.append(twoc)
        den.append(1 + j * twoc)
        den.append(twoc + j * twoc)
        den.append(2 * a + j * twoc)
    q = _gamma_quotient(num, den)
    if q is None:
        return Fraction(0)
    exponent = 2 * a * n + 2 * twoc * (n * (n - 1) // 2) - 2 * n
    return Fraction(2) ** exponent * q / math.factorial(n)
