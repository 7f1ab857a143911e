"""Catalog of the verified constant-term identities.

Each identity instance is named by an IdentitySpec: a family plus the
parameters (n, a, b, twoc), where twoc carries the half-integer exponent
parameter c as the integer 2c.  The four families:

    cry      prod_j (1-x_j)^-2  *  prod_{j<k} (x_k-x_j)^-1
             = prod_k Cat(k)
    mm       prod_j x_j^-1 (1-x_j)^-2  *  prod_{j<k} (x_k-x_j)^-1 (1-x_k-x_j)^-1
             = 2^(n^2) prod_k Cat(k)
    morris   prod_j x_j^-b (1-x_j)^-a  *  prod_{j<k} (x_k-x_j)^-2c
             = Gamma-product closed form (morris_rhs)
    thm      prod_j x_j^-(a-1) (1-x_j)^-a  *  prod_{j<k} (x_k-x_j)^-2c (1-x_k-x_j)^-2c
             = 2^(2an+2*twoc*binom(n,2)-2n) * Gamma-product (thm_rhs)

All pair factors are oriented larger-index-first, (x_k - x_j) for j < k.
For the thm family both orientations of the printed statement circulate;
the orientation here is the one confirmed by the independent series oracle
at n = 2 (they differ by (-1)^binom(n,2) when twoc is odd).

verify() computes the left side with the exact CT engine and the right
side with the exact Gamma evaluators and compares, exactly.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, factorial
from typing import Optional

from .ctengine import CTOrder, FactoredRational, ct_iterated
from .errors import DomainError, ParseError
from .exactarith import (
    GammaValue,
    HalfInt,
    catalan,
    gamma_half,
    mm_rhs,
    morris_rhs,
    thm_rhs,
)
from .polyring import Poly


class IdentityFamily(str, Enum):
    CRY = "cry"
    MM = "mm"
    MORRIS = "morris"
    THM = "thm"


# Families with pinned parameters reject any other explicit value; None
# means "use the family default".  morris and thm keep (a, twoc) free.
_PINNED = {
    IdentityFamily.CRY: {"a": 2, "b": 0, "twoc": 1},
    IdentityFamily.MM: {"a": 2, "b": 0, "twoc": 1},
    IdentityFamily.MORRIS: {},
    IdentityFamily.THM: {"b": 0},
}

_DEFAULTS = {
    IdentityFamily.MORRIS: {"a": 2, "b": 0, "twoc": 1},
    IdentityFamily.THM: {"a": 2, "b": 0, "twoc": 1},
}


@dataclass(frozen=True)
class IdentitySpec:
    family: IdentityFamily
    n: int
    a: int
    b: int
    twoc: int

    @classmethod
    def create(cls, family, n: int, a: Optional[int] = None,
               b: Optional[int] = None, twoc: Optional[int] = None) -> "IdentitySpec":
        if not isinstance(family, IdentityFamily):
            try:
                family = IdentityFamily(str(family).lower())
            except ValueError:
                raise DomainError(f"unknown identity family {family!r}") from None
        if not isinstance(n, int) or n < 1:
            raise DomainError(f"n must be a positive integer, got {n!r}")
        params = {"a": a, "b": b, "twoc": twoc}
        pinned = _PINNED[family]
        defaults = _DEFAULTS.get(family, {})
        resolved = {}
        for name, given in params.items():
            if name in pinned:
                if given is not None and given != pinned[name]:
                    raise DomainError(
                        f"{family.value} fixes {name}={pinned[name]}; got {given}")
                resolved[name] = pinned[name]
            else:
                resolved[name] = defaults[name] if given is None else given
        a, b, twoc = resolved["a"], resolved["b"], resolved["twoc"]
        for name, val in (("a", a), ("b", b), ("twoc", twoc)):
            if not isinstance(val, int):
                raise DomainError(f"{name} must be an integer, got {val!r}")
        if a < 0 or b < 0:
            raise DomainError("a and b must be nonnegative")
        if twoc < 1:
            raise DomainError("twoc must be a positive integer (twoc = 2c)")
        if family is IdentityFamily.THM and a < 1:
            raise DomainError("thm requires a >= 1")
        return cls(family, n, a, b, twoc)


def build_integrand(spec: IdentitySpec) -> FactoredRational:
    """The family integrand as a FactoredRational with numerator 1."""
    n = spec.n
    fam = spec.family
    singles = []  # (base, exp) per variable j, exp may come out 0
    if fam is IdentityFamily.CRY:
        mono_exp, one_minus_exp = 0, 2
    elif fam is IdentityFamily.MM:
        mono_exp, one_minus_exp = 1, 2
    elif fam is IdentityFamily.MORRIS:
        mono_exp, one_minus_exp = spec.b, spec.a
    else:
        mono_exp, one_minus_exp = spec.a - 1, spec.a
    pair_exp = spec.twoc if fam in (IdentityFamily.MORRIS, IdentityFamily.THM) else 1
    with_mixed = fam in (IdentityFamily.MM, IdentityFamily.THM)

    one = Poly.one()
    factors = []
    for j in range(n):
        xj = Poly.var(j)
        if mono_exp > 0:
            factors.append((xj, mono_exp))
        if one_minus_exp > 0:
            factors.append((one - xj, one_minus_exp))
    for j in range(n):
        for k in range(j + 1, n):
            xj, xk = Poly.var(j), Poly.var(k)
            factors.append((xk - xj, pair_exp))
            if with_mixed:
                factors.append((one - xk - xj, pair_exp))
    return FactoredRational.create(one, factors)


def rhs(spec: IdentitySpec) -> Fraction:
    fam = spec.family
    if fam is IdentityFamily.CRY:
        prod = Fraction(1)
        for k in range(1, spec.n + 1):
            prod *= catalan(k)
        return prod
    if fam is IdentityFamily.MM:
        return mm_rhs(spec.n)
    if fam is IdentityFamily.MORRIS:
        return morris_rhs(spec.n, spec.a, spec.b, spec.twoc)
    return thm_rhs(spec.n, spec.a, spec.twoc)


@dataclass(frozen=True)
class VerificationReport:
    spec: IdentitySpec
    lhs: Fraction
    rhs: Fraction
    equal: bool
    elapsed_ms: float

    def to_json(self) -> dict:
        return {
            "spec": spec_to_json(self.spec),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def verify(spec: IdentitySpec, order: Optional[CTOrder] = None) -> VerificationReport:
    """Exact check of one identity instance; a mismatch is a report with
    equal=False, not an exception."""
    start = time.perf_counter()
    lhs = ct_iterated(build_integrand(spec), order)
    right = rhs(spec)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return VerificationReport(spec, lhs, right, lhs == right, elapsed_ms)


def check_cat_identity(n: int) -> bool:
    """Gamma-product form of the a=2, b=0, twoc=1 specialization against the
    Catalan product, both exact.  Transcribed from the displayed arguments
    (not routed through morris_rhs, so the two sides stay independent):

        (1/n!) prod_{j=0}^{n-1} G((n+3+j)/2) G(1/2)
                              / [G((4+j)/2) G((1+j)/2) G((2+j)/2)]
        ==  prod_{k=1}^{n} Cat(k)
    """
    if n < 1:
        raise DomainError("n must be positive")
    acc = GammaValue(Fraction(1), 0)
    for j in range(n):
        acc = acc * gamma_half(HalfInt(n + 3 + j)) * gamma_half(HalfInt(1))
        acc = acc / gamma_half(HalfInt(4 + j))
        acc = acc / gamma_half(HalfInt(1 + j))
        acc = acc / gamma_half(HalfInt(2 + j))
    left = acc.to_fraction() / factorial(n)
    right = Fraction(1)
    for k in range(1, n + 1):
        right *= catalan(k)
    return left == right


def check_ratio_identity(n: int) -> bool:
    """G(n+1) G(1/2) / (G((n+2)/2) G((n+1)/2)) == 2^n, exactly."""
    if n < 1:
        raise DomainError("n must be positive")
    q = gamma_half(HalfInt(2 * n + 2)) * gamma_half(HalfInt(1))
    q = q / gamma_half(HalfInt(n + 2)) / gamma_half(HalfInt(n + 1))
    return q.to_fraction() == Fraction(2) ** n


def pair_factor_count(spec: IdentitySpec) -> int:
    """How many distinct pair factors build_integrand emits: one per pair
    for cry/morris, two per pair for mm/thm."""
    pairs = comb(spec.n, 2)
    return 2 * pairs if spec.family in (IdentityFamily.MM, IdentityFamily.THM) else pairs


# -- JSON interchange ------------------------------------------------------

def spec_to_json(spec: IdentitySpec) -> dict:
    return {
        "family": spec.family.name,
        "n": spec.n,
        "a": spec.a,
        "b": spec.b,
        "twoc": spec.twoc,
    }


def spec_from_json(obj: dict) -> IdentitySpec:
    if not isinstance(obj, dict) or "family" not in obj or "n" not in obj:
        raise ParseError("identity spec needs at least 'family' and 'n'")
    try:
        return IdentitySpec.create(
            obj["family"],
            obj["n"],
            a=obj.get("a"),
            b=obj.get("b"),
            twoc=obj.get("twoc"),
        )
    except DomainError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed identity spec: {exc}") from exc


def spec_dumps(spec: IdentitySpec) -> str:
    return json.dumps(spec_to_json(spec))


def spec_loads(text: str) -> IdentitySpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from exc
    return spec_from_json(obj)
