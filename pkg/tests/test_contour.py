"""Tests for the numeric contour oracle and the substitution-chain check.

Tolerances follow the module contract: quadrature is spectrally accurate,
so modest sample counts already sit at the double-precision floor for the
small instances exercised here.
"""

import math
import random

import pytest

from ct_forge.contour import (
    ChainForm,
    QuadratureConfig,
    chain_spread,
    chain_values,
    contour_ct,
    contour_ct_converged,
    converged,
    default_epsilon,
    oracle_report,
)
from ct_forge.ctengine import ct_iterated
from ct_forge.errors import ConfigError
from ct_forge.exactarith import thm_rhs
from ct_forge.identities import IdentitySpec, build_integrand, rhs


def rel_err(value: complex, exact) -> float:
    exact = float(exact)
    return abs(value - exact) / max(1.0, abs(exact))


class TestQuadratureConfig:
    def test_defaults(self):
        cfg = QuadratureConfig()
        assert cfg.epsilon == 0.025 and cfg.points == 1024

    def test_doubled(self):
        assert QuadratureConfig(0.01, 64).doubled().points == 128

    @pytest.mark.parametrize("eps,points", [
        (0.0, 64), (-0.1, 64), (0.01, 0), (0.01, 1), (0.01, 100),
    ])
    def test_validation(self, eps, points):
        with pytest.raises(ConfigError):
            QuadratureConfig(eps, points)

    def test_default_epsilon(self):
        assert default_epsilon(2) == pytest.approx(0.025)
        assert default_epsilon(3, shifted=True) == pytest.approx(0.0125 / 3)


class TestConverged:
    def test_examples(self):
        assert converged(32.0000001, 32.0000002, 1e-6)
        assert not converged(31.9, 32.0, 1e-6)
        assert converged(0, 0, 1e-9)  # the max(1, .) floor handles zero

    def test_tolerance_domain(self):
        with pytest.raises(ConfigError):
            converged(1.0, 1.0, 0.0)


class TestContourCt:
    def test_cry_n1(self):
        value = contour_ct(IdentitySpec.create("cry", 1),
                           QuadratureConfig(0.05, 256))
        assert abs(value - 1.0) < 1e-10

    def test_mm_n2(self):
        value = contour_ct(IdentitySpec.create("mm", 2),
                           QuadratureConfig(0.02, 1024))
        assert rel_err(value, 32) < 1e-6

    def test_morris_n2(self):
        value = contour_ct(IdentitySpec.create("morris", 2),
                           QuadratureConfig(0.02, 1024))
        assert rel_err(value, 2) < 1e-6

    def test_radius_guard(self):
        with pytest.raises(ConfigError):
            contour_ct(IdentitySpec.create("cry", 2), QuadratureConfig(0.05, 64))

    def test_variable_cap(self):
        with pytest.raises(ConfigError):
            contour_ct(IdentitySpec.create("cry", 5), QuadratureConfig(0.01, 64))

    def test_converging_wrapper(self):
        value, points, ok = contour_ct_converged(IdentitySpec.create("mm", 2))
        assert ok and points <= 2048
        assert rel_err(value, 32) < 1e-6


class TestEpsilonIndependence:
    def test_contour_deformation_invariance(self):
        """The estimate must not depend on the base radius: 100 random
        instances compared between epsilon and epsilon/2.

        The radii are drawn from the top of the allowed window because the
        roundoff floor of the estimate scales like epsilon**-(pole depth):
        the integrand magnitude near the origin grows as a power of 1/eps
        while the true mean stays O(1), so shrinking the circles trades
        truncation error (already at machine level) for cancellation error.
        At n*eps in [0.072, 0.09] the floor for the deepest grid instances
        (b = 2, twoc = 2, depth 6) stays under 1e-7 even at epsilon/2."""
        rng = random.Random(20250817)
        cfg_pool = []
        for _ in range(100):
            n = rng.choice((1, 2))
            family = rng.choice(("cry", "mm", "morris", "thm"))
            kwargs = {}
            if family == "morris":
                kwargs = {"a": rng.randint(1, 3), "b": rng.randint(0, 2),
                          "twoc": rng.randint(1, 2)}
            elif family == "thm":
                kwargs = {"a": rng.randint(1, 3), "twoc": rng.randint(1, 2)}
            cfg_pool.append((IdentitySpec.create(family, n, **kwargs),
                             rng.uniform(0.072, 0.09) / n))
        for spec, eps in cfg_pool:
            v1 = contour_ct(spec, QuadratureConfig(eps, 128))
            v2 = contour_ct(spec, QuadratureConfig(eps / 2, 128))
            assert abs(v1 - v2) <= 1e-6 * max(1.0, abs(v2)), (spec, eps)
            # the true value is real; the imaginary part is pure noise
            assert abs(v1.imag) <= 1e-9 * max(1.0, abs(v1.real)), (spec, eps)
            exact = ct_iterated(build_integrand(spec))
            assert rel_err(v1, exact) < 1e-6, (spec, eps)


class TestChain:
    @pytest.mark.parametrize("a,expect", [(1, 1), (2, 2), (3, 6)])
    @pytest.mark.parametrize("twoc", [1, 2])
    def test_n1_closed_form(self, a, expect, twoc):
        values = chain_values(1, a, twoc, QuadratureConfig(0.0125, 256))
        assert set(values) == set(ChainForm)
        assert math.comb(2 * a - 2, a - 1) == expect
        for form, v in values.items():
            assert rel_err(v, expect) < 1e-8, form

    def test_n2_agreement_grid(self):
        for a in (1, 2, 3):
            for twoc in (1, 2):
                cfg = QuadratureConfig(default_epsilon(2, shifted=True), 128)
                values = chain_values(2, a, twoc, cfg)
                assert chain_spread(values) < 1e-5, (a, twoc)
                exact = thm_rhs(2, a, twoc)
                for form, v in values.items():
                    assert rel_err(v, exact) < 1e-5, (a, twoc, form)

    def test_config_errors(self):
        cfg = QuadratureConfig(0.005, 64)
        with pytest.raises(ConfigError):
            chain_values(4, 2, 1, cfg)
        with pytest.raises(ConfigError):
            chain_values(2, 0, 1, cfg)
        with pytest.raises(ConfigError):
            chain_values(2, 2, 1, QuadratureConfig(0.07, 64))

    def test_spread_of_identical_values(self):
        vals = {form: 5.0 + 0j for form in ChainForm}
        assert chain_spread(vals) == 0.0


class TestOracleReport:
    def test_payload(self):
        payload = oracle_report(31.5 + 2e-9j, QuadratureConfig(0.02, 128), True)
        assert payload == {"re": 31.5, "im": 2e-9, "N": 128,
                           "epsilon": 0.02, "converged": True}
