"""Tests for the identity catalog: spec validation, integrand construction,
closed forms, and the pair-factor orientation pinned by the series oracle."""

import itertools
import json
from fractions import Fraction

import pytest

import oracle_series
from ct_forge.ctengine import ct_iterated
from ct_forge.errors import DomainError, ParseError
from ct_forge.identities import (
    IdentityFamily,
    IdentitySpec,
    build_integrand,
    check_cat_identity,
    check_ratio_identity,
    pair_factor_count,
    rhs,
    spec_dumps,
    spec_from_json,
    spec_loads,
    verify,
)
from ct_forge.polyring import Poly

x1 = Poly.var(0)
one = Poly.one()


class TestIdentitySpec:
    def test_defaults(self):
        spec = IdentitySpec.create("morris", 2)
        assert (spec.a, spec.b, spec.twoc) == (2, 0, 1)
        assert IdentitySpec.create("thm", 2).a == 2

    def test_family_parsing(self):
        assert IdentitySpec.create("MM", 2).family is IdentityFamily.MM
        assert IdentitySpec.create("Morris", 1).family is IdentityFamily.MORRIS
        with pytest.raises(DomainError):
            IdentitySpec.create("qjacobi", 2)

    def test_pinned_parameters(self):
        # cry and mm admit no free parameters; matching values are accepted
        assert IdentitySpec.create("cry", 2, a=2).a == 2
        with pytest.raises(DomainError):
            IdentitySpec.create("cry", 2, a=3)
        with pytest.raises(DomainError):
            IdentitySpec.create("mm", 2, twoc=2)
        with pytest.raises(DomainError):
            IdentitySpec.create("thm", 2, b=1)

    @pytest.mark.parametrize("kwargs", [
        {"n": 0}, {"n": 2, "a": -1}, {"n": 2, "b": -2}, {"n": 2, "twoc": 0},
    ])
    def test_domain(self, kwargs):
        n = kwargs.pop("n")
        with pytest.raises(DomainError):
            IdentitySpec.create("morris", n, **kwargs)

    def test_thm_needs_positive_a(self):
        with pytest.raises(DomainError):
            IdentitySpec.create("thm", 2, a=0)
        assert IdentitySpec.create("morris", 2, a=0).a == 0


class TestBuildIntegrand:
    def test_cry_n1(self):
        f = build_integrand(IdentitySpec.create("cry", 1))
        assert f.num == 1
        assert f.den == ((one - x1, 2),)

    def test_mm_n2(self):
        f = build_integrand(IdentitySpec.create("mm", 2))
        x2 = Poly.var(1)
        assert set(f.den) == {(x1, 1), (x2, 1), (one - x1, 2), (one - x2, 2),
                              (x2 - x1, 1), (one - x2 - x1, 1)}

    def test_thm_monomial_exponent(self):
        f = build_integrand(IdentitySpec.create("thm", 1, a=3, twoc=2))
        assert f.num == 1
        assert set(f.den) == {(x1, 2), (one - x1, 3)}
        # a = 1 makes the monomial exponent vanish entirely
        g = build_integrand(IdentitySpec.create("thm", 1, a=1))
        assert g.den == ((one - x1, 1),)

    @pytest.mark.parametrize("family,n", list(itertools.product(
        ["cry", "mm", "morris", "thm"], [1, 2, 3, 4])))
    def test_structural_counts(self, family, n):
        spec = IdentitySpec.create(family, n)
        f = build_integrand(spec)
        pair_bases = [b for b, _ in f.den if len(b.variables()) > 1]
        single_bases = [b for b, _ in f.den if len(b.variables()) == 1]
        assert len(pair_bases) == pair_factor_count(spec)
        expected_pairs = n * (n - 1)
        if spec.family in (IdentityFamily.CRY, IdentityFamily.MORRIS):
            expected_pairs //= 2
        assert len(pair_bases) == expected_pairs
        assert len(single_bases) <= 2 * n

    def test_morris_exponents_follow_parameters(self):
        f = build_integrand(IdentitySpec.create("morris", 2, a=3, b=2, twoc=2))
        exps = {str(b): e for b, e in f.den}
        assert exps["x1"] == 2 and exps["1 - x1"] == 3
        assert exps["-x1 + x2"] == 2


class TestOrientationPin:
    """The pair orientation (x_k - x_j) for j < k is the one that makes the
    thm family true; the series oracle decides, not the engine."""

    @pytest.mark.parametrize("a,value", [(1, 2), (2, 32), (3, 512)])
    def test_thm_n2_twoc1(self, a, value):
        spec = IdentitySpec.create("thm", 2, a=a, twoc=1)
        lhs = ct_iterated(build_integrand(spec))
        assert lhs == oracle_series.series_ct2(a - 1, a, 1, 1) == value
        # the flipped orientation gives the negated value at odd twoc
        assert oracle_series.series_ct2_flipped_pair(a - 1, a, 1, 1) == -value

    @pytest.mark.parametrize("a,value", [(1, 6), (2, 180), (3, 4200)])
    def test_thm_n2_twoc2(self, a, value):
        spec = IdentitySpec.create("thm", 2, a=a, twoc=2)
        assert ct_iterated(build_integrand(spec)) == value
        assert oracle_series.series_ct2(a - 1, a, 2, 2) == value


class TestRhs:
    def test_dispatch(self):
        assert rhs(IdentitySpec.create("cry", 3)) == 10
        assert rhs(IdentitySpec.create("mm", 3)) == 5120
        assert rhs(IdentitySpec.create("morris", 2)) == 2
        assert rhs(IdentitySpec.create("thm", 2)) == 32


class TestVerify:
    def test_mm_n2(self):
        report = verify(IdentitySpec.create("mm", 2))
        assert report.equal
        assert report.lhs == report.rhs == 32
        assert report.elapsed_ms >= 0
        payload = report.to_json()
        assert payload["lhs"] == "32" and payload["equal"] is True
        assert payload["spec"]["family"] == "MM"

    def test_degenerate_morris_instance(self):
        # a = b = 0 leaves only the pair factor; both sides are 0
        report = verify(IdentitySpec.create("morris", 2, a=0, b=0, twoc=1))
        assert report.equal and report.lhs == 0

    def test_series_oracle_agreement_n2(self):
        # every family at n = 2 against the independent series oracle
        cases = [(IdentitySpec.create("cry", 2), (0, 2, 1, 0)),
                 (IdentitySpec.create("mm", 2), (1, 2, 1, 1))]
        for a in range(4):
            for b in range(3):
                for twoc in (1, 2):
                    cases.append((IdentitySpec.create("morris", 2, a=a, b=b, twoc=twoc),
                                  (b, a, twoc, 0)))
        for a in range(1, 4):
            for twoc in (1, 2):
                cases.append((IdentitySpec.create("thm", 2, a=a, twoc=twoc),
                              (a - 1, a, twoc, twoc)))
        for spec, (p, q, r, w) in cases:
            lhs = ct_iterated(build_integrand(spec))
            assert lhs == oracle_series.series_ct2(p, q, r, w), spec
            assert lhs == rhs(spec), spec


class TestGammaIdentities:
    def test_cat_identity(self):
        for n in range(1, 11):
            assert check_cat_identity(n)

    def test_ratio_identity(self):
        for n in range(1, 11):
            assert check_ratio_identity(n)

    def test_domain(self):
        with pytest.raises(DomainError):
            check_cat_identity(0)
        with pytest.raises(DomainError):
            check_ratio_identity(-1)


class TestSpecJson:
    def test_documented_form(self):
        spec = spec_loads('{"family":"MM","n":3,"a":2,"b":0,"twoc":1}')
        assert spec == IdentitySpec.create("mm", 3)

    def test_round_trip(self):
        for fam in ("cry", "mm", "morris", "thm"):
            spec = IdentitySpec.create(fam, 2)
            assert spec_loads(spec_dumps(spec)) == spec

    def test_partial_object_uses_defaults(self):
        spec = spec_from_json({"family": "morris", "n": 2, "a": 3})
        assert (spec.a, spec.b, spec.twoc) == (3, 0, 1)

    def test_errors(self):
        with pytest.raises(ParseError):
            spec_loads("{")
        with pytest.raises(ParseError):
            spec_from_json({"n": 2})
        with pytest.raises(DomainError):
            spec_from_json({"family": "cry", "n": 2, "a": 5})
        with pytest.raises(DomainError):
            spec_from_json({"family": "mm", "n": "two"})

    def test_rationals_render_plain(self):
        report = verify(IdentitySpec.create("morris", 1, a=2, b=1))
        assert report.to_json()["rhs"] == str(Fraction(2))
