import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from bdris import specfun
from bdris.specfun import (
    ConvergenceError,
    DomainError,
    bessel_i,
    bessel_i_scaled,
    gauss_2f1_unit_a,
    laguerre_half,
    ln_gamma,
    log_reg_lower_gamma,
    log_reg_upper_gamma,
    reg_lower_gamma,
    reg_upper_gamma,
)

# Reference values computed once with mpmath at 40 significant digits.
P_5000_5000 = 0.50188063403381735535
P_1E6_1E6 = 0.50013298076087259124
P_UNIFORM_REGION = 2.1200425627998347091e-06  # P(2848040.1302187853, 2840285.0842428757)
Q_1E5_103E3 = 2.8706236917814666643e-21
LOG_P_3_1EM120 = -830.72239294708450125
LOG_P_50_1EM3 = -493.86651129285190503
LOG_P_4225_10 = -1173.0911753548765138
I0_1 = 1.2660658777520083356
I0_5 = 27.239871823604446895
I1_5 = 24.335642142450527199
I1_50 = 2.9030785901035567968e20
I0_700 = 1.5295933476718737363e302
LAGUERRE_HALF = {
    0.0: 1.0,
    0.5: 1.2355820575582631692,
    1.0: 1.4464913440831718334,
    5.0: 2.6532018973295492084,
    10.0: 3.6586716081480354531,
    20.0: 5.1097537081211111282,
}
# z is taken as the exact binary double, so near z = 1 these differ from
# the decimal-argument values.
HYP2F1 = [
    (0.5, 1.5, 0.25, 1.0986122886681096914),  # ln 3
    (400.5, 401.0, 0.999999, 34674.129854986097652),
    (0.5, 1.5, 0.999999999999, 14.508668799513628775),
    (2.5, 3.0, 0.9999, 262.71934124106948023),
    (0.3, 2.5, 0.95, 1.2120514325167284139),
    (1.2, 5.0, 0.99, 1.4192751054421041859),
    (2.0, 2.99999, 0.75, 2.2623883039003343306),  # c - b just under 1
    (30.0, 30.9999999, 0.99, 37.084368767021564489),
]


class TestLnGamma:
    def test_trivial_values(self):
        assert ln_gamma(1.0) == 0.0
        assert ln_gamma(2.0) == 0.0
        assert ln_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-15)

    def test_frozen_extremes(self):
        assert ln_gamma(1e-3) == pytest.approx(6.9071788853838536825, rel=1e-13)
        assert ln_gamma(1e6) == pytest.approx(12815504.569147611660, rel=1e-13)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(min_value=-3, max_value=6))
    def test_relative_error_against_mpmath(self, log10x):
        x = 10.0**log10x
        ref = float(mpmath.loggamma(mpmath.mpf(x)))
        assert abs(ln_gamma(x) - ref) <= 1e-13 * max(abs(ref), 1e-300) + 1e-15

    @pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            ln_gamma(x)


class TestIncompleteGamma:
    def test_trivial(self):
        assert reg_lower_gamma(3.7, 0.0) == 0.0
        assert reg_upper_gamma(3.7, 0.0) == 1.0
        assert reg_lower_gamma(1.0, 1.0) == pytest.approx(1.0 - math.exp(-1.0), abs=1e-15)

    def test_transition_point_large_shape(self):
        assert reg_lower_gamma(5000.0, 5000.0) == pytest.approx(P_5000_5000, abs=1e-12)
        assert reg_lower_gamma(1e6, 1e6) == pytest.approx(P_1E6_1E6, abs=1e-12)

    def test_uniform_expansion_region(self):
        got = reg_lower_gamma(2848040.1302187853, 2840285.0842428757)
        assert got == pytest.approx(P_UNIFORM_REGION, rel=1e-9)

    def test_upper_tail_large_shape(self):
        assert reg_upper_gamma(1e5, 1.03e5) == pytest.approx(Q_1E5_103E3, rel=1e-9)

    def test_deep_log_tails(self):
        assert log_reg_lower_gamma(3.0, 1e-120) == pytest.approx(LOG_P_3_1EM120, rel=1e-13)
        assert log_reg_lower_gamma(50.0, 1e-3) == pytest.approx(LOG_P_50_1EM3, rel=1e-12)
        assert log_reg_lower_gamma(422.5, 10.0) == pytest.approx(LOG_P_4225_10, rel=1e-12)
        # exponentiating would underflow, the log form must not
        assert reg_lower_gamma(422.5, 10.0) == 0.0

    @settings(max_examples=300, deadline=None)
    @given(st.floats(min_value=-2, max_value=4), st.floats(min_value=0, max_value=0.999))
    def test_complement_series_vs_continued_fraction(self, log10a, frac):
        # on [a, a+1) P comes from the series, Q independently from the CF
        a = 10.0**log10a
        x = a + frac
        p = reg_lower_gamma(a, x)
        q = math.exp(specfun._upper_gamma_cf(a, x))
        assert 0.0 <= p <= 1.0
        assert abs(p + q - 1.0) <= 1e-12

    @settings(max_examples=100, deadline=None)
    @given(st.floats(min_value=4.01, max_value=6), st.floats(min_value=0, max_value=5))
    def test_complement_uniform_expansion_vs_continued_fraction(self, log10a, width):
        a = 10.0**log10a
        x = a + width * math.sqrt(a)
        p = reg_lower_gamma(a, x)
        q = math.exp(specfun._upper_gamma_cf(a, x))
        assert abs(p + q - 1.0) <= 1e-12

    @settings(max_examples=200, deadline=None)
    @given(st.floats(min_value=-2, max_value=4.5), st.floats(min_value=-3, max_value=0.6))
    def test_against_mpmath(self, log10a, log10ratio):
        a = 10.0**log10a
        x = a * 10.0**log10ratio
        ref = mpmath.gammainc(mpmath.mpf(a), 0, mpmath.mpf(x), regularized=True)
        assert abs(reg_lower_gamma(a, x) - float(ref)) <= 1e-12
        if ref > 1e-300:
            assert log_reg_lower_gamma(a, x) == pytest.approx(float(mpmath.log(ref)), rel=1e-10, abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(min_value=-1, max_value=6), st.lists(st.floats(min_value=0, max_value=3), min_size=2, max_size=6))
    def test_monotone_in_x(self, log10a, fractions):
        a = 10.0**log10a
        xs = sorted(a * f for f in fractions)
        vals = [reg_lower_gamma(a, x) for x in xs]
        assert all(v2 >= v1 - 1e-15 for v1, v2 in zip(vals, vals[1:]))

    @pytest.mark.parametrize("a", [0.3, 1.0, 17.0, 800.0, 2e4, 1e6])
    def test_limit_far_above_shape(self, a):
        assert reg_lower_gamma(a, a + 20.0 * math.sqrt(a) + 20.0) == pytest.approx(1.0, abs=1e-12)

    def test_log_forms_agree(self):
        for a, x in [(0.5, 0.2), (40.0, 55.0), (3e4, 2.9e4), (3e4, 3.1e4)]:
            assert math.exp(log_reg_lower_gamma(a, x)) == pytest.approx(reg_lower_gamma(a, x), rel=1e-14)
            assert math.exp(log_reg_upper_gamma(a, x)) == pytest.approx(reg_upper_gamma(a, x), rel=1e-14)

    @pytest.mark.parametrize("a,x", [(0.0, 1.0), (-1.0, 1.0), (1.0, -0.1)])
    def test_domain(self, a, x):
        with pytest.raises(DomainError):
            reg_lower_gamma(a, x)


class TestBessel:
    def test_trivial(self):
        assert bessel_i(0, 0.0) == 1.0
        assert bessel_i(1, 0.0) == 0.0

    @pytest.mark.parametrize("order,x,ref", [(0, 1.0, I0_1), (0, 5.0, I0_5), (1, 5.0, I1_5),
                                             (1, 50.0, I1_50), (0, 700.0, I0_700)])
    def test_frozen(self, order, x, ref):
        assert bessel_i(order, x) == pytest.approx(ref, rel=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(st.sampled_from([0, 1]), st.floats(min_value=-700, max_value=700))
    def test_against_mpmath(self, order, x):
        ref = float(mpmath.besseli(order, x))
        got = bessel_i(order, x)
        assert got == pytest.approx(ref, rel=1e-12, abs=1e-300)

    def test_parity(self):
        assert bessel_i(0, -3.2) == bessel_i(0, 3.2)
        assert bessel_i(1, -3.2) == -bessel_i(1, 3.2)

    def test_overflow_guard(self):
        with pytest.raises(OverflowError):
            bessel_i(0, 701.0)
        # the scaled form stays usable beyond the guard
        assert bessel_i_scaled(0, 1e4) == pytest.approx(float(mpmath.besseli(0, 1e4) * mpmath.exp(-1e4)), rel=1e-12)

    def test_bad_order(self):
        with pytest.raises(DomainError):
            bessel_i(2, 1.0)


class TestLaguerreHalf:
    @pytest.mark.parametrize("kappa", sorted(LAGUERRE_HALF))
    def test_frozen_hypergeometric_values(self, kappa):
        assert laguerre_half(-kappa) == pytest.approx(LAGUERRE_HALF[kappa], abs=1e-10, rel=1e-13)

    def test_bessel_identity_at_minus_ten(self):
        expected = math.exp(-5.0) * (11.0 * bessel_i(0, 5.0) + 10.0 * bessel_i(1, 5.0))
        assert laguerre_half(-10.0) == pytest.approx(expected, rel=1e-14)

    def test_origin(self):
        assert laguerre_half(0.0) == 1.0

    def test_monotone_increasing_in_kappa(self):
        kappas = np.linspace(0.0, 5000.0, 2001)
        vals = [laguerre_half(-k) for k in kappas]
        assert np.all(np.diff(vals) > 0)

    def test_rejects_positive(self):
        with pytest.raises(DomainError):
            laguerre_half(0.1)


class TestGauss2F1:
    @pytest.mark.parametrize("b,c,z,ref", HYP2F1)
    def test_frozen(self, b, c, z, ref):
        assert gauss_2f1_unit_a(b, c, z) == pytest.approx(ref, rel=1e-10)

    def test_origin_exact(self):
        assert gauss_2f1_unit_a(3.3, 7.1, 0.0) == 1.0

    @pytest.mark.parametrize("b,c", [(0.5, 1.5), (4.5, 5.0), (0.2, 3.0)])
    def test_derivative_at_origin(self, b, c):
        h = 1e-7
        slope = (gauss_2f1_unit_a(b, c, h) - 1.0) / h
        assert slope == pytest.approx(b / c, abs=1e-6)

    @pytest.mark.parametrize("k", [0.34, 3.0, 158.2, 1200.0])
    @pytest.mark.parametrize("one_minus_z", [1e-2, 1e-5, 1e-9])
    def test_sep_slice_near_one_matches_euler_quadrature(self, k, one_minus_z):
        # 2F1(1, k+1/2; k+1; z) = (1/B(k+1/2, 1/2)) int_0^1 t^(k-1/2) (1-t)^(-1/2) / (1 - z t) dt
        z = 1.0 - one_minus_z
        b = k + 0.5

        def f(u):  # t = 1 - u^2 removes the endpoint singularity
            t = 1.0 - u * u
            return 2.0 * t ** (k - 0.5) / (u * u + one_minus_z * t)

        edge = math.sqrt(one_minus_z)
        pts = [p for p in (edge, 10 * edge) if p < 1.0]
        quad, _ = integrate.quad(f, 0.0, 1.0, points=pts, epsabs=0.0, epsrel=1e-12, limit=500)
        beta = math.exp(math.lgamma(b) + math.lgamma(0.5) - math.lgamma(k + 1.0))
        assert gauss_2f1_unit_a(b, k + 1.0, z, complement=one_minus_z) == pytest.approx(quad / beta, rel=1e-9)

    @settings(max_examples=150, deadline=None)
    @given(st.floats(min_value=0.05, max_value=50), st.floats(min_value=0.01, max_value=20),
           st.floats(min_value=0.0, max_value=0.999))
    def test_against_mpmath(self, b, gap, z):
        c = b + gap
        ref = float(mpmath.hyp2f1(1, b, c, z))
        assert gauss_2f1_unit_a(b, c, z) == pytest.approx(ref, rel=1e-10)

    @pytest.mark.parametrize("b,c,z", [(1.0, 2.0, 1.0), (1.0, 2.0, -0.1), (2.0, 2.0, 0.5), (0.0, 1.0, 0.5)])
    def test_domain(self, b, c, z):
        with pytest.raises(DomainError):
            gauss_2f1_unit_a(b, c, z)

    def test_convergence_error_type(self):
        assert issubclass(ConvergenceError, ArithmeticError)
