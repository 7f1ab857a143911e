"""Floating-point contour quadrature, the independent numeric cross-check.

The constant term of f equals the n-fold contour integral of f over nested
circles |x_j| = j*epsilon against the measure prod_j dx_j/(2*pi*i*x_j).
Parameterizing each circle by angle turns that measure into dtheta/(2*pi),
so the estimate is the plain mean of f over a uniform product grid of
angles.  The rule is spectrally accurate here: the integrand is analytic
in an annulus around every circle, so the error decays geometrically in
the per-circle sample count N (dominated by the radius ratios j/k), and
halving is checked by comparing N against 2N rather than by any error
expansion.

The module also evaluates the four-form substitution chain for the thm
family.  Each form is a contour integral (1/(2*pi*i))^n of a listed
integrand over circles centered at 0 or 1; on a circle w = c + r*e^(i*t)
the plain measure dw/(2*pi*i) becomes (w - c) * dt/(2*pi), so every form
reduces to prefactor * mean(integrand * prod_j (w_j - c_j)).  The two
square-root forms use the principal branch, and the factor arguments are
checked to stay in the right half-plane, away from the branch cut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .ctengine import FactoredRational
from .errors import ConfigError
from .identities import IdentitySpec, build_integrand
from .polyring import Poly

_CHUNK_ELEMS = 1 << 21


@dataclass(frozen=True)
class QuadratureConfig:
    """Base radius epsilon and per-circle sample count (a power of two)."""

    epsilon: float = 0.025
    points: int = 1024

    def __post_init__(self):
        if not (self.epsilon > 0):
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")
        if self.points < 2 or self.points & (self.points - 1):
            raise ConfigError(f"points must be a power of two >= 2, got {self.points}")

    def doubled(self) -> "QuadratureConfig":
        return QuadratureConfig(self.epsilon, 2 * self.points)


def default_epsilon(n: int, shifted: bool = False) -> float:
    """Default base radius: 0.05/n for origin circles, 0.0125/n for the
    shifted chain contours (whose radii carry factors 2 and 4)."""
    return (0.0125 if shifted else 0.05) / n


class ChainForm(Enum):
    X_FORM = "x"
    Z_FORM = "z"
    Y_FORM = "y"
    T_FORM = "t"


def converged(v1: complex, v2: complex, tol: float) -> bool:
    """N-doubling acceptance: |v1 - v2| <= tol * max(1, |v2|)."""
    if not (tol > 0):
        raise ConfigError("tolerance must be positive")
    return abs(v1 - v2) <= tol * max(1.0, abs(v2))


def _circle(center: float, radius: float, points: int) -> np.ndarray:
    angles = 2.0 * np.pi * np.arange(points) / points
    return center + radius * np.exp(1j * angles)


def _broadcast_axes(circles: Sequence[np.ndarray]) -> List[np.ndarray]:
    n = len(circles)
    return [c.reshape((1,) * j + (-1,) + (1,) * (n - 1 - j)) for j, c in enumerate(circles)]


def _poly_on_grid(p: Poly, xs: Sequence[np.ndarray]):
    total = 0
    for mono, coef in p.terms():
        term = complex(coef)
        for v, e in mono:
            term = term * xs[v] ** e
        total = total + term
    if np.isscalar(total):
        total = np.asarray(total, dtype=complex)
    return total


def _torus_mean(circles: Sequence[np.ndarray],
                evaluate: Callable[[Sequence[np.ndarray]], np.ndarray]) -> complex:
    """Mean of evaluate(xs) over the product grid, chunked along the first
    axis so peak memory stays bounded."""
    n = len(circles)
    points = len(circles[0])
    tail = points ** (n - 1)
    block = max(1, _CHUNK_ELEMS // tail)
    total = 0j
    first = circles[0]
    rest = _broadcast_axes(circles)[1:] if n > 1 else []
    for start in range(0, points, block):
        piece = first[start:start + block].reshape((-1,) + (1,) * (n - 1))
        vals = evaluate([piece] + rest)
        total += complex(np.sum(vals))
    return total / points ** n


def _factored_evaluator(f: FactoredRational) -> Callable:
    def evaluate(xs):
        num = _poly_on_grid(f.num, xs)
        out = num.astype(complex) if num.dtype != complex else num
        for base, exp in f.den:
            out = out / _poly_on_grid(base, xs) ** exp
        return out
    return evaluate


def contour_ct(spec: IdentitySpec, cfg: QuadratureConfig) -> complex:
    """Quadrature estimate of the constant term of the spec's integrand on
    circles |x_j| = j*epsilon.  The imaginary part of the result is an
    error indicator; convergence is the caller's job (compare N with 2N,
    or use contour_ct_converged)."""
    n = spec.n
    if n > 4:
        raise ConfigError("quadrature supports n <= 4 (cost grows as points**n)")
    if n * cfg.epsilon >= 0.1:
        raise ConfigError(
            f"n*epsilon = {n * cfg.epsilon:.4f} must stay below 0.1 so every "
            "circle avoids the non-origin poles")
    circles = [_circle(0.0, j * cfg.epsilon, cfg.points) for j in range(1, n + 1)]
    return _torus_mean(circles, _factored_evaluator(build_integrand(spec)))


def contour_ct_converged(
        spec: IdentitySpec,
        epsilon: Optional[float] = None,
        tol: float = 1e-6,
        start_points: int = 64,
        max_points: int = 2048) -> Tuple[complex, int, bool]:
    """Double the sample count until two successive estimates agree to tol;
    returns (estimate, points, converged)."""
    if epsilon is None:
        epsilon = default_epsilon(spec.n)
    cfg = QuadratureConfig(epsilon, start_points)
    value = contour_ct(spec, cfg)
    while cfg.points < max_points:
        cfg = cfg.doubled()
        nxt = contour_ct(spec, cfg)
        if converged(value, nxt, tol):
            return nxt, cfg.points, True
        value = nxt
    return value, cfg.points, False


# -- the substitution chain -------------------------------------------------

def _chain_prefactor(form: ChainForm, n: int, a: int, twoc: int) -> float:
    e = 2 * a * n + 2 * twoc * math.comb(n, 2)
    sign = -1.0 if n % 2 else 1.0
    if form is ChainForm.X_FORM:
        return 1.0
    if form is ChainForm.Z_FORM:
        return sign * 2.0 ** (e - n)
    if form is ChainForm.Y_FORM:
        return sign * 2.0 ** (e - 2 * n)
    return 2.0 ** (e - 2 * n)


def _chain_factors(form: ChainForm, n: int, a: int, twoc: int):
    """Integer-exponent reciprocal factors and square-root reciprocal
    factors of the form's integrand, as polynomials in w_1..w_n."""
    one = Poly.one()
    den: List[Tuple[Poly, int]] = []
    roots: List[Poly] = []
    ws = [Poly.var(j) for j in range(n)]
    if form is ChainForm.X_FORM:
        for w in ws:
            den.append((w, a))
            den.append((one - w, a))
        for j in range(n):
            for k in range(j + 1, n):
                den.append((ws[k] - ws[j], twoc))
                den.append((one - ws[k] - ws[j], twoc))
    elif form is ChainForm.Z_FORM:
        for w in ws:
            den.append((one - w * w, a))
        for j in range(n):
            for k in range(j + 1, n):
                den.append((ws[j] * ws[j] - ws[k] * ws[k], twoc))
    elif form is ChainForm.Y_FORM:
        for w in ws:
            den.append((one - w, a))
            roots.append(w)
        for j in range(n):
            for k in range(j + 1, n):
                den.append((ws[j] - ws[k], twoc))
    else:
        for w in ws:
            den.append((w, a))
            roots.append(one - w)
        for j in range(n):
            for k in range(j + 1, n):
                den.append((ws[k] - ws[j], twoc))
    return den, roots


_CHAIN_GEOMETRY = {
    ChainForm.X_FORM: (0.0, 1),
    ChainForm.Z_FORM: (1.0, 2),
    ChainForm.Y_FORM: (1.0, 4),
    ChainForm.T_FORM: (0.0, 4),
}


def chain_values(n: int, a: int, twoc: int,
                 cfg: QuadratureConfig) -> Dict[ChainForm, complex]:
    """Quadrature estimates of all four substitution-chain forms of the thm
    constant term; in exact arithmetic all four would be equal."""
    if n > 3:
        raise ConfigError("the chain check supports n <= 3")
    if a < 1 or twoc < 1:
        raise ConfigError("chain parameters need a >= 1 and twoc >= 1")
    if n * cfg.epsilon >= 0.1 or 4 * n * cfg.epsilon >= 0.5:
        raise ConfigError(
            f"epsilon {cfg.epsilon} too large: need n*eps < 0.1 and 4n*eps < 0.5")
    out: Dict[ChainForm, complex] = {}
    for form in ChainForm:
        center, mult = _CHAIN_GEOMETRY[form]
        den, roots = _chain_factors(form, n, a, twoc)
        circles = [_circle(center, mult * j * cfg.epsilon, cfg.points)
                   for j in range(1, n + 1)]

        def evaluate(xs, den=den, roots=roots, center=center):
            acc = None
            for x in xs:
                measure = x - center
                acc = measure if acc is None else acc * measure
            for base, exp in den:
                acc = acc / _poly_on_grid(base, xs) ** exp
            for base in roots:
                vals = _poly_on_grid(base, xs)
                if not np.all(vals.real > 0):
                    raise ConfigError(
                        "square-root factor left the right half-plane; "
                        "shrink epsilon")
                acc = acc * vals ** -0.5
            return acc

        out[form] = _chain_prefactor(form, n, a, twoc) * _torus_mean(circles, evaluate)
    return out


def chain_spread(values: Dict[ChainForm, complex]) -> float:
    """Largest pairwise relative difference among the four form values."""
    vs = list(values.values())
    scale = max(1.0, max(abs(v) for v in vs))
    worst = 0.0
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            worst = max(worst, abs(vs[i] - vs[j]) / scale)
    return worst


def oracle_report(value: complex, cfg: QuadratureConfig, is_converged: bool) -> dict:
    return {
        "re": value.real,
        "im": value.imag,
        "N": cfg.points,
        "epsilon": cfg.epsilon,
        "converged": is_converged,
    }
