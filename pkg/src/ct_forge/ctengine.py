"""Exact iterated constant-term extraction for factored rational functions.

A FactoredRational is a polynomial numerator over a product of polynomial
factors raised to positive integer powers:

    num / prod(base_i ** exp_i)

Constant-term extraction in a variable v views f as a Laurent series in v
around 0 under the nested-circle convention: the contour for v is tighter
than the contour of every variable that has not been extracted yet, so a
factor h0 + h1*v with v-free h0 != 0 has no zero inside the v-circle and
its reciprocal expands as a geometric series

    (h0 + h1*v)**-e = sum_t C(e+t-1, t) * (-1)**t * h1**t * h0**(-e-t) * v**t

while a pure monomial factor (c*v)**-e shifts which coefficient is wanted.
The engine convolves the factor series with the numerator's v-coefficients
up to the needed order.  No polynomial gcd is ever computed: results stay
factored, and every new denominator base is the v-free part h0 of an input
base, which keeps all bases affine per variable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    NonAffineError,
    ParseError,
    ResidualVariableError,
    ZeroConstantError,
)
from .polyring import Poly, parse_poly

Factor = Tuple[Poly, int]


@dataclass(frozen=True)
class CTOrder:
    """Extraction order, innermost (smallest contour) first."""

    sequence: Tuple[int, ...]

    def __post_init__(self):
        seq = tuple(int(v) for v in self.sequence)
        if len(set(seq)) != len(seq):
            raise ValueError("extraction order repeats a variable")
        if any(v < 0 for v in seq):
            raise ValueError("variable indices are nonnegative")
        object.__setattr__(self, "sequence", seq)

    @classmethod
    def default(cls, n: int) -> "CTOrder":
        return cls(tuple(range(n)))

    def is_default(self) -> bool:
        return self.sequence == tuple(range(len(self.sequence)))


_binom_cache: Dict[Tuple[int, int], int] = {}


def _binom(n: int, k: int) -> int:
    key = (n, k)
    v = _binom_cache.get(key)
    if v is None:
        v = math.comb(n, k)
        _binom_cache[key] = v
    return v


@dataclass(frozen=True)
class FactoredRational:
    """num / prod(base**exp); exps positive, bases nonconstant primitives."""

    num: Poly
    den: Tuple[Factor, ...]

    @classmethod
    def create(cls, num: Poly, den: Sequence[Tuple[Poly, int]] = ()) -> "FactoredRational":
        """Normalize: fold rational contents and constant factors into the
        numerator, merge repeated bases, drop everything on a zero numerator."""
        scale = Fraction(1)
        merged: Dict[Poly, int] = {}
        for base, exp in den:
            if not isinstance(exp, int) or exp <= 0:
                raise ValueError(f"factor exponents must be positive integers, got {exp!r}")
            if base.is_zero():
                raise ZeroDivisionError("zero polynomial in denominator")
            if base.is_constant():
                scale /= base.constant_coeff() ** exp
                continue
            content, prim = base.content_and_primitive()
            scale /= content ** exp
            merged[prim] = merged.get(prim, 0) + exp
        num = num * scale
        if num.is_zero():
            return cls(Poly.zero(), ())
        factors = tuple(sorted(merged.items(), key=lambda f: (str(f[0]), f[1])))
        return cls(num, factors)

    @classmethod
    def from_poly(cls, p: Poly) -> "FactoredRational":
        return cls.create(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def variables(self) -> frozenset:
        vs = set(self.num.variables())
        for base, _ in self.den:
            vs |= base.variables()
        return frozenset(vs)

    def as_constant(self) -> Fraction:
        """The value of a variable-free result."""
        leftover = self.variables()
        if leftover:
            names = ", ".join(f"x{v + 1}" for v in sorted(leftover))
            raise ResidualVariableError(f"variables remain after extraction: {names}")
        val = self.num.constant_coeff()
        for base, exp in self.den:
            val /= base.constant_coeff() ** exp
        return val

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        if not isinstance(other, FactoredRational):
            return NotImplemented
        return FactoredRational.create(self.num * other.num, self.den + other.den)

    def eval_complex(self, point) -> complex:
        val = self.num.eval_complex(point)
        for base, exp in self.den:
            val /= base.eval_complex(point) ** exp
        return val

    def __str__(self) -> str:
        if not self.den:
            return str(self.num)
        parts = " * ".join(
            f"({base})" + (f"^{exp}" if exp > 1 else "") for base, exp in self.den)
        return f"({self.num}) / [{parts}]"


def _is_monomial_in(base: Poly, v: int) -> bool:
    """True when base is c*v for a rational constant c."""
    terms = list(base.terms())
    return len(terms) == 1 and terms[0][0] == ((v, 1),)


def pole_order(f: FactoredRational, v: int) -> int:
    """Order of the pole of f at v = 0: the total exponent of pure-monomial
    v factors in the denominator, minus the v-valuation of the numerator,
    floored at 0.  Factors whose base has nonzero v-free part are regular
    at v = 0 and contribute nothing."""
    if f.num.is_zero():
        return 0
    order = sum(exp for base, exp in f.den if _is_monomial_in(base, v))
    valuation = min(
        next((e for var, e in m if var == v), 0) for m, _ in f.num.terms())
    return max(order - valuation, 0)


def ct_var(f: FactoredRational, v: int) -> FactoredRational:
    """Constant term of f in variable v, exactly.

    Denominator factors split three ways by their shape in v: v-free factors
    pass through untouched, pure monomials c*v shift which numerator
    coefficient is wanted, and affine factors with nonzero v-free part h0
    expand as geometric series.  The result is the coefficient of v**shift
    in the convolution of those series with the numerator, written over
    denominator bases h0**(exp+shift).
    """
    if f.is_zero():
        return f
    passthrough: List[Factor] = []
    series_factors: List[Tuple[Poly, Poly, int]] = []  # (h0, h1, exp)
    shift = 0
    mono_scale = Fraction(1)
    for base, exp in f.den:
        d = base.degree_in(v)
        if d == 0:
            passthrough.append((base, exp))
            continue
        if d > 1:
            raise NonAffineError(
                f"factor ({base}) has degree {d} in x{v + 1}; "
                "constant-term extraction needs affine factors")
        h0 = base.coeff_of(v, 0)
        if h0.is_zero():
            if not _is_monomial_in(base, v):
                raise ZeroConstantError(
                    f"factor ({base}) contains x{v + 1} but has no x{v + 1}-free part "
                    "and is not a pure monomial")
            c = base.coeff_of(v, 1).constant_coeff()
            shift += exp
            mono_scale /= c ** exp
            continue
        series_factors.append((h0, base.coeff_of(v, 1), exp))

    # Wanted: coefficient of v**shift in num * prod (h0 + h1*v)**-exp.
    # Each factor's series is truncated at order M = shift and cleared of
    # negative powers by the common per-factor denominator h0**(exp+M), so
    # the convolution below is purely polynomial.
    M = shift
    acc: Dict[int, Poly] = {}
    for m, c in f.num.terms():
        d = next((e for var, e in m if var == v), 0)
        if d > M:
            continue  # series powers are nonnegative; cannot reach v**M
        stripped = Poly._raw({tuple(p for p in m if p[0] != v): c})
        acc[d] = acc.get(d, Poly.zero()) + stripped

    out_den: List[Factor] = list(passthrough)
    for h0, h1, exp in series_factors:
        out_den.append((h0, exp + M))
        # series coefficient of v**t over that denominator:
        #   C(exp+t-1, t) * (-h1)**t * h0**(M-t)
        fac_series: List[Poly] = []
        neg_h1_pow = Poly.one()
        for t in range(M + 1):
            fac_series.append(_binom(exp + t - 1, t) * neg_h1_pow * (h0 ** (M - t)))
            neg_h1_pow = neg_h1_pow * (-h1)
        new_acc: Dict[int, Poly] = {}
        for d, p in acc.items():
            for t in range(M + 1 - d):
                q = p * fac_series[t]
                if q.is_zero():
                    continue
                k = d + t
                new_acc[k] = new_acc.get(k, Poly.zero()) + q
        acc = new_acc

    target = acc.get(M, Poly.zero()) * mono_scale
    return FactoredRational.create(target, out_den)


def ct_iterated(f: FactoredRational, order: Optional[CTOrder] = None) -> Fraction:
    """Apply ct_var along the extraction order and return the constant.

    The default order consumes x1 first, then x2, and so on through every
    variable present in f, matching the convention that lower-index
    variables ride smaller circles.
    """
    if order is None:
        order = CTOrder(tuple(sorted(f.variables())))
    g = f
    for v in order.sequence:
        g = ct_var(g, v)
    return g.as_constant()


def factored_add(f: FactoredRational, g: FactoredRational) -> FactoredRational:
    """Sum over the merged denominator, still without any gcd."""
    fden = {base: exp for base, exp in f.den}
    gden = {base: exp for base, exp in g.den}
    bases = set(fden) | set(gden)
    common = tuple((b, max(fden.get(b, 0), gden.get(b, 0))) for b in bases)
    fnum = f.num
    gnum = g.num
    for b, e in common:
        fnum = fnum * b ** (e - fden.get(b, 0))
        gnum = gnum * b ** (e - gden.get(b, 0))
    return FactoredRational.create(fnum + gnum, common)


def factored_scale(f: FactoredRational, c) -> FactoredRational:
    return FactoredRational.create(f.num * Fraction(c), f.den)


def factored_equivalent(f: FactoredRational, g: FactoredRational) -> bool:
    """Whether f and g represent the same rational function, decided by
    cross-multiplying numerators against the other side's denominator."""
    left = f.num
    for base, exp in g.den:
        left = left * base ** exp
    right = g.num
    for base, exp in f.den:
        right = right * base ** exp
    return left == right


def denominator_poly(f: FactoredRational) -> Poly:
    """Expanded denominator; exponential in factor count, for display/tests."""
    p = Poly.one()
    for base, exp in f.den:
        p = p * base ** exp
    return p


# -- JSON interchange ------------------------------------------------------

def factored_to_json(f: FactoredRational) -> dict:
    return {
        "num": str(f.num),
        "den": [[str(base), exp] for base, exp in f.den],
    }


def factored_from_json(obj: dict) -> FactoredRational:
    try:
        num = parse_poly(obj["num"])
        den = [(parse_poly(base), int(exp)) for base, exp in obj["den"]]
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed factored-rational object: {exc}") from exc
    return FactoredRational.create(num, den)


def factored_dumps(f: FactoredRational) -> str:
    return json.dumps(factored_to_json(f))


def factored_loads(text: str) -> FactoredRational:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from exc
    return factored_from_json(obj)
