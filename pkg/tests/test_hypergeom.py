"""Hypergeometric series: classification, evaluation and closed summation theorems"""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats, integers

import hypergeom
from error_handler import DivergentSeries, DomainError, PoleError
from hypergeom import ParamList, Verdict

PI = math.pi
N_RANDOM = 200


def _series_terms(a, b, c, z):
    term = 1.0
    n = 0
    while True:
        yield term
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        n += 1


class TestPochhammer:

    @pytest.mark.parametrize("a, n, expected", [
        (3.0, 4, 360.0),
        (7.25, 0, 1.0),
        (0.5, 3, 1.875),
        (-2.0, 3, 0.0),
        (1.0, 10, math.factorial(10)),
    ])
    def test_known_values(self, a, n, expected):
        assert hypergeom.pochhammer(a, n) == pytest.approx(expected, rel=1e-15)

    @settings(deadline=None)
    @given(floats(min_value=-10.0, max_value=10.0), integers(min_value=0, max_value=30))
    def test_recurrence(self, a, n):
        lhs = hypergeom.pochhammer(a, n + 1)
        rhs = hypergeom.pochhammer(a, n) * (a + n)
        assert lhs == pytest.approx(rhs, rel=1e-13, abs=1e-300)

    def test_log_form(self):
        log_abs, sign = hypergeom.log_pochhammer(-2.5, 3)
        assert sign == -1.0
        assert log_abs == pytest.approx(math.log(1.875), rel=1e-15)
        assert hypergeom.log_pochhammer(-2.0, 4) == (-math.inf, 0.0)

    def test_negative_order_rejected(self):
        with pytest.raises(DomainError):
            hypergeom.pochhammer(1.0, -1)
        with pytest.raises(DomainError):
            hypergeom.pochhammer(1.0, 1.5)


class TestParamList:

    def test_omega(self):
        params = ParamList((1.0, 0.5), (2.0,), -1.0)
        assert params.omega == pytest.approx(0.5)
        assert (params.p, params.q) == (2, 1)

    def test_too_many_numerators(self):
        with pytest.raises(DomainError):
            ParamList((1.0, 1.0, 1.0), (2.0,), 0.5)

    @pytest.mark.parametrize("bad", [0.0, -2.0])
    def test_nonpositive_integer_denominator(self, bad):
        with pytest.raises(DomainError):
            ParamList((1.0, 1.0), (bad,), 0.5)


class TestClassify:

    @pytest.mark.parametrize("c, verdict", [
        (0.5, Verdict.DIVERGENT),       # omega = -1.5
        (1.5, Verdict.CONDITIONAL),     # omega = -0.5
        (2.5, Verdict.ABSOLUTE),        # omega = +0.5
    ])
    def test_at_minus_one(self, c, verdict):
        result = hypergeom.classify(ParamList((1.0, 1.0), (c,), -1.0))
        assert result.verdict is verdict
        assert result.omega == pytest.approx(c - 2.0)

    def test_at_plus_one(self):
        assert hypergeom.classify(ParamList((1.0, 1.0), (2.5,), 1.0)).verdict is Verdict.ABSOLUTE
        assert hypergeom.classify(ParamList((1.0, 1.0), (1.5,), 1.0)).verdict is Verdict.DIVERGENT

    def test_other_regions(self):
        assert hypergeom.classify(ParamList((1.0, 1.0), (1.5,), 0.3)).verdict is Verdict.ABSOLUTE
        assert hypergeom.classify(ParamList((1.0, 1.0), (1.5,), -2.0)).verdict is Verdict.DIVERGENT
        assert hypergeom.classify(ParamList((1.0,), (1.5,), 40.0)).verdict is Verdict.ENTIRE
        assert hypergeom.classify(ParamList((-3.0, 1.0), (1.5,), 5.0)).verdict is Verdict.ENTIRE


class TestPfq:

    def test_known_values(self):
        assert hypergeom.pfq(ParamList((1.0, 1.0), (3.0,), 1.0)) == pytest.approx(2.0, rel=1e-12)
        assert hypergeom.pfq(ParamList((1.0, 0.5), (1.5,), -1.0)) == pytest.approx(PI / 4, rel=1e-13)
        assert hypergeom.pfq(ParamList((1.0,), (), 0.5)) == pytest.approx(2.0, rel=1e-14)
        assert hypergeom.pfq(ParamList((), (), 1.0)) == pytest.approx(math.e, rel=1e-14)
        assert hypergeom.pfq(ParamList((1.0, 1.0), (2.0,), 0.5)) == pytest.approx(2.0 * math.log(2.0), rel=1e-13)

    def test_zero_argument(self):
        assert hypergeom.pfq(ParamList((2.5, 0.3), (1.7,), 0.0)) == 1.0

    def test_terminating(self):
        # (1 - z)^2 with z = 2
        assert hypergeom.pfq(ParamList((-2.0, 1.0), (1.0,), 2.0)) == pytest.approx(1.0, abs=1e-15)

    def test_against_mpmath_inside_disc(self, rng):
        for _ in range(50):
            a, b = rng.uniform(0.1, 3.0, 2)
            c = rng.uniform(0.5, 4.0)
            z = rng.uniform(-0.5, 0.9)
            ref = float(mpmath.hyp2f1(a, b, c, z))
            assert hypergeom.pfq(ParamList((a, b), (c,), z)) == pytest.approx(ref, rel=1e-11)

    def test_unit_argument_matches_gauss(self, rng):
        for _ in range(N_RANDOM):
            a, b = rng.uniform(0.1, 2.0, 2)
            c = a + b + rng.uniform(0.2, 3.0)
            value = hypergeom.pfq(ParamList((a, b), (c,), 1.0))
            assert value == pytest.approx(hypergeom.gauss_sum(a, b, c), rel=1e-9)

    def test_divergent(self):
        with pytest.raises(DivergentSeries):
            hypergeom.pfq(ParamList((1.0, 1.0), (1.5,), 1.0))
        with pytest.raises(DivergentSeries):
            hypergeom.pfq(ParamList((1.0, 1.0), (2.0,), 2.0))
        with pytest.raises(DivergentSeries):
            hypergeom.pfq(ParamList((1.0, 1.0, 1.0), (1.2, 0.5), -1.0))


class TestGaussMinusOne:

    @pytest.mark.parametrize("a, b, c, expected", [
        (1.0, 1.0, 2.0, math.log(2.0)),
        (1.0, 0.5, 1.5, PI / 4),
        (0.0, 3.0, 2.0, 1.0),
        (2.0, 1.0, 1.0, 0.25),
    ])
    def test_known_values(self, a, b, c, expected):
        assert hypergeom.gauss_2f1_minus1(a, b, c) == pytest.approx(expected, rel=1e-14)

    def test_against_mpmath(self, rng):
        for _ in range(50):
            a, b = rng.uniform(0.1, 3.0, 2)
            c = rng.uniform(0.5, 4.0)
            ref = float(mpmath.hyp2f1(a, b, c, -1))
            assert hypergeom.gauss_2f1_minus1(a, b, c) == pytest.approx(ref, rel=1e-11, abs=1e-12)

    def test_pfaff_matches_euler_summation(self, rng):
        for _ in range(40):
            a, b = rng.uniform(0.2, 1.5, 2)
            c = a + b + rng.uniform(-0.3, 1.0)
            accelerated, _ = hypergeom.euler_transform(_series_terms(a, b, c, -1.0))
            assert hypergeom.gauss_2f1_minus1(a, b, c) == pytest.approx(accelerated, rel=1e-9)

    def test_contiguous_relation(self, rng):
        for _ in range(50):
            a, b = rng.uniform(0.1, 2.0, 2)
            c = rng.uniform(2.0, 4.0)
            f_lower = hypergeom.gauss_2f1_minus1(a, b, c - 1)
            f_mid = hypergeom.gauss_2f1_minus1(a, b, c)
            f_upper = hypergeom.gauss_2f1_minus1(a, b, c + 1)
            parts = [
                -2.0 * c * (c - 1) * f_lower,
                c * (c - 1 + (2 * c - a - b - 1)) * f_mid,
                -(c - a) * (c - b) * f_upper,
            ]
            scale = max(abs(p) for p in parts)
            assert abs(math.fsum(parts)) <= 1e-12 * scale

    def test_pole(self):
        with pytest.raises(PoleError):
            hypergeom.gauss_2f1_minus1(1.0, 1.0, -1.0)


class TestSummationTheorems:

    def test_gauss_known(self):
        assert hypergeom.gauss_sum(1.0, 1.0, 3.0) == pytest.approx(2.0, rel=1e-15)
        assert hypergeom.gauss_sum(0.5, 0.5, 2.0) == pytest.approx(4.0 / PI, rel=1e-14)

    def test_gauss_against_series(self, rng):
        checked = 0
        for _ in range(N_RANDOM):
            a, b = rng.uniform(-0.9, 2.5, 2)
            c = a + b + rng.uniform(1.0, 3.0)
            if c <= 0.2 or abs(c - round(c)) < 1e-6:
                continue
            summed = hypergeom.pfq(ParamList((a, b), (c,), 1.0))
            assert hypergeom.gauss_sum(a, b, c) == pytest.approx(summed, rel=1e-9, abs=1e-12)
            checked += 1
        assert checked > N_RANDOM // 2

    def test_gauss_domain(self):
        with pytest.raises(DomainError):
            hypergeom.gauss_sum(1.0, 1.0, 1.5)

    def test_kummer_known(self):
        assert hypergeom.kummer_sum(1.0, 1.0) == pytest.approx(0.5, rel=1e-15)

    def test_kummer_against_series(self, rng):
        for _ in range(N_RANDOM):
            a = rng.uniform(0.5, 3.0)
            b = rng.uniform(0.1, a)
            c = 1 + a - b
            via_pfaff = hypergeom.pfq(ParamList((a, b), (c,), -1.0))
            assert hypergeom.kummer_sum(a, b) == pytest.approx(via_pfaff, rel=1e-9, abs=1e-12)
            assert hypergeom.kummer_sum(a, b) == pytest.approx(float(mpmath.hyp2f1(a, b, c, -1)),
                                                               rel=1e-9, abs=1e-12)

    def test_f43_degenerate(self):
        for a, b in ((1.0, 0.3), (2.5, 0.7)):
            assert hypergeom.f43_sum(a, b, 0.0) == pytest.approx(1.0, rel=1e-14)

    def test_f43_against_series(self, rng):
        for _ in range(N_RANDOM):
            a = rng.uniform(1.0, 4.0)
            b, c = rng.uniform(0.1, a / 4, 2)
            params = ParamList((a, 1 + a / 2, b, c), (a / 2, 1 + a - b, 1 + a - c), -1.0)
            assert hypergeom.f43_sum(a, b, c) == pytest.approx(hypergeom.pfq(params), rel=1e-9)

    def test_f43_domain(self):
        with pytest.raises(DomainError):
            hypergeom.f43_sum(1.0, 1.0, 1.0)


class TestPsiForm:

    def test_zero_shift(self):
        assert hypergeom.f21_psi_form(0.0) == pytest.approx(PI / 4, rel=1e-14)

    @pytest.mark.parametrize("c", [0.1, 0.5, 1.0, 2.7, 9.0])
    def test_matches_pfaff(self, c):
        expected = hypergeom.gauss_2f1_minus1(1.0, 0.5 + c, 1.5 + c)
        assert hypergeom.f21_psi_form(c) == pytest.approx(expected, rel=1e-12)

    def test_vectorised_against_mpmath(self):
        shifts = np.linspace(0.0, 5.0, 21)
        ours = np.array([hypergeom.f21_psi_form(float(c)) for c in shifts])
        ref = np.array([float(mpmath.hyp2f1(1, 0.5 + c, 1.5 + c, -1)) for c in shifts])
        np.testing.assert_allclose(ours, ref, rtol=1e-12)


class TestReferenceValues:

    @pytest.mark.parametrize("nu, verdict", [
        (0.5, Verdict.ABSOLUTE),
        (1.5, Verdict.CONDITIONAL),
        (2.5, Verdict.DIVERGENT),
    ])
    def test_binomial_series_classification(self, nu, verdict):
        alpha = 0.3
        params = ParamList((nu, nu / 2 + alpha), (1 + nu / 2 + alpha,), -1.0)
        result = hypergeom.classify(params)
        assert result.verdict is verdict
        assert result.omega == pytest.approx(1.0 - nu)

    def test_theorem_values(self):
        assert hypergeom.gauss_sum(0.7, 0.0, 2.3) == pytest.approx(1.0, rel=1e-15)
        gauss = hypergeom.gauss_sum(0.3, 0.4, 2.0)
        assert gauss == pytest.approx(hypergeom.pfq(ParamList((0.3, 0.4), (2.0,), 1.0)), rel=1e-10)
        assert hypergeom.kummer_sum(1.0, 0.5) == pytest.approx(PI / 4, rel=1e-14)
        assert hypergeom.kummer_sum(1.3, 0.0) == pytest.approx(1.0, rel=1e-15)
        assert hypergeom.kummer_sum(0.8, 0.3) == pytest.approx(
            hypergeom.gauss_2f1_minus1(0.8, 0.3, 1.5), rel=1e-12)
        assert hypergeom.f43_sum(1.0, 0.5, 0.5) == pytest.approx(PI / 4, rel=1e-14)

    def test_f43_accelerated_sum(self):
        a, b, c = 2.0, 0.4, 0.7
        params = ParamList((a, 1 + a / 2, b, c), (a / 2, 1 + a - b, 1 + a - c), -1.0)
        assert hypergeom.f43_sum(a, b, c) == pytest.approx(hypergeom.pfq(params), rel=1e-9)

    def test_kummer_cross_check_of_pfaff(self):
        nu = 1.0
        value = hypergeom.gauss_2f1_minus1(nu, nu / 2, 1 + nu / 2)
        assert value == pytest.approx(hypergeom.kummer_sum(nu, nu / 2), rel=1e-13)
