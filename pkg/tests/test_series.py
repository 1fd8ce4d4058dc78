"""Tests for the inverse gamma law, the log-significand series, and the
truncation cutoffs and tail expressions."""

import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from invgamma_benford.benford import BaseConfig
from invgamma_benford.oracle import OracleConfig, fb_cdf_oracle, oracle_window
from invgamma_benford.series import (
    InvGammaParams,
    SeriesEvaluation,
    TruncationSpec,
    UnsupportedBaseError,
    canonicalize_beta,
    cutoff_alpha1,
    fb_cdf_series,
    fb_cdf_series_values,
    fb_prime_series,
    fb_prime_series_values,
    invgamma_cdf,
    invgamma_pdf,
    tail_bound_alpha1,
    tail_bound_general,
    truncation_cutoff,
)
from invgamma_benford.special import complex_log_gamma

B10 = BaseConfig(10)


def test_params_validation():
    with pytest.raises(ValueError):
        InvGammaParams(0.0, 1.0)
    with pytest.raises(ValueError):
        InvGammaParams(1.0, -1.0)
    with pytest.raises(ValueError):
        InvGammaParams(math.inf, 1.0)


class TestDensityAndCdf:
    def test_pdf_unit_point(self):
        assert invgamma_pdf(1.0, InvGammaParams(1.0, 1.0)) == pytest.approx(math.exp(-1.0), rel=1e-14)

    @pytest.mark.parametrize("alpha,beta", [(0.5, 1.0), (2.0, 3.0), (10.0, 1.0)])
    def test_pdf_normalizes(self, alpha, beta):
        p = InvGammaParams(alpha, beta)
        total, _ = quad(lambda x: invgamma_pdf(x, p), 0.0, np.inf, limit=300)
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_pdf_mode(self):
        p = InvGammaParams(2.0, 3.0)
        res = minimize_scalar(lambda x: -invgamma_pdf(x, p), bracket=(0.5, 1.5))
        assert res.x == pytest.approx(3.0 / 3.0, abs=1e-6)

    def test_pdf_domain(self):
        with pytest.raises(ValueError):
            invgamma_pdf(0.0, InvGammaParams(1.0, 1.0))

    def test_cdf_total_mass(self):
        assert invgamma_cdf(math.inf, InvGammaParams(2.0, 5.0)) == 1.0

    def test_cdf_shape_one_closed_form(self):
        assert invgamma_cdf(1.0, InvGammaParams(1.0, 1.0)) == pytest.approx(math.exp(-1.0), rel=1e-13)

    def test_cdf_matches_quadrature(self):
        p = InvGammaParams(3.0, 4.0)
        val, _ = quad(lambda x: invgamma_pdf(x, p), 0.0, 2.0, limit=300)
        assert invgamma_cdf(2.0, p) == pytest.approx(val, abs=1e-9)

    def test_cdf_monotone(self):
        p = InvGammaParams(2.5, 1.7)
        xs = np.linspace(0.05, 40.0, 300)
        vals = [invgamma_cdf(float(x), p) for x in xs]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


class TestCanonicalize:
    def test_already_canonical(self):
        p, m = canonicalize_beta(InvGammaParams(1.0, 1.0), B10)
        assert p.beta == 1.0 and m == 0

    def test_one_decade(self):
        p, m = canonicalize_beta(InvGammaParams(1.0, 40.0), B10)
        assert p.beta == 4.0 and m == 1

    def test_three_decades_up(self):
        p, m = canonicalize_beta(InvGammaParams(1.0, 0.004), B10)
        assert p.beta == pytest.approx(4.0, rel=1e-12) and m == -3

    def test_range_and_reconstruction(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            beta = math.exp(rng.uniform(-200.0, 200.0))
            p, m = canonicalize_beta(InvGammaParams(2.0, beta), B10)
            assert 1.0 <= p.beta < 10.0
            assert math.log10(beta) == pytest.approx(m + math.log10(p.beta), abs=1e-10)


class TestTruncationCutoff:
    def test_hand_value_milli(self):
        assert truncation_cutoff(InvGammaParams(1.0, 1.0), B10, 0.001).cutoff_m == 5

    def test_hand_value_unit(self):
        assert truncation_cutoff(InvGammaParams(1.0, 1.0), B10, 1.0).cutoff_m == 3

    def test_strictly_exceeds_threshold(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            alpha = rng.uniform(0.05, 60.0)
            beta = rng.uniform(1.0, 10.0)
            eps = 10.0 ** rng.uniform(-10, -1)
            m = truncation_cutoff(InvGammaParams(alpha, beta), B10, eps).cutoff_m
            lb = B10.log_base
            threshold = max(alpha + 1.0,
                            -(math.log(eps) + math.lgamma(alpha) - math.log(2.0)
                              - alpha * lb - math.log(beta)) / lb)
            assert m > threshold

    def test_monotone_in_epsilon(self):
        p = InvGammaParams(2.0, 3.0)
        cuts = [truncation_cutoff(p, B10, eps).cutoff_m for eps in (1e-2, 1e-4, 1e-6, 1e-8)]
        assert all(a <= b for a, b in zip(cuts, cuts[1:]))

    def test_base_two_refused(self):
        with pytest.raises(UnsupportedBaseError):
            truncation_cutoff(InvGammaParams(1.0, 1.0), BaseConfig(2), 0.001)

    def test_bad_epsilon(self):
        with pytest.raises(ValueError):
            truncation_cutoff(InvGammaParams(1.0, 1.0), B10, 0.0)


class TestTailBounds:
    def test_general_hand_value(self):
        # 10 * (Gamma(1, 10^5) + 10^-5) with the incomplete term fully underflowed
        got = tail_bound_general(InvGammaParams(1.0, 1.0), B10, 5)
        assert got == pytest.approx(1e-4, rel=1e-12)

    def test_general_z_maximized_at_zero(self):
        p = InvGammaParams(2.0, 3.0)
        uniform = tail_bound_general(p, B10, 3)
        for z in np.linspace(0.0, 1.0, 21):
            assert tail_bound_general(p, B10, 3, z=float(z)) <= uniform * (1 + 1e-15)

    def test_general_decreasing_in_cutoff(self):
        p = InvGammaParams(0.7, 2.0)
        vals = [tail_bound_general(p, B10, m) for m in range(1, 12)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_general_requires_canonical_beta(self):
        with pytest.raises(ValueError):
            tail_bound_general(InvGammaParams(1.0, 40.0), B10, 3)

    def test_alpha1_hand_value(self):
        lb = math.log(10.0)
        expected = 4.0 * (math.pi ** 2 + lb) / (math.pi * math.sqrt(lb)) \
            * math.exp(-math.pi ** 2 / lb)
        assert tail_bound_alpha1(B10, 1) == pytest.approx(expected, rel=1e-13)

    def test_alpha1_decreasing(self):
        vals = [tail_bound_alpha1(B10, m) for m in range(1, 40)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 1e-60

    def test_alpha1_below_validity_floor(self):
        with pytest.raises(ValueError):
            tail_bound_alpha1(B10, 0)

    def test_alpha1_sound_against_partial_sums(self):
        # richer partial sum as the oracle for the dropped tail, at shape 1
        rng = np.random.default_rng(31)
        for _ in range(10):
            beta = rng.uniform(1.0, 10.0)
            z = rng.uniform(0.0, 1.0)
            p = InvGammaParams(1.0, beta)
            for m in (3, 5, 8):
                small = fb_prime_series(z, p, B10, TruncationSpec(1.0, m)).value
                big = fb_prime_series(z, p, B10, TruncationSpec(1.0, 8 * m)).value
                assert abs(small - big) <= tail_bound_alpha1(B10, m)


class TestCutoffAlpha1:
    def test_hand_value(self):
        assert cutoff_alpha1(B10, 0.001) == 3

    @pytest.mark.parametrize("eps", [1e-2, 1e-4, 1e-8])
    @pytest.mark.parametrize("base", [3, 10, 16])
    def test_forces_tail_below_epsilon(self, eps, base):
        cfg = BaseConfig(base)
        m = cutoff_alpha1(cfg, eps)
        assert tail_bound_alpha1(cfg, m) <= eps

    def test_monotone_in_epsilon(self):
        cuts = [cutoff_alpha1(B10, eps) for eps in (1e-1, 1e-3, 1e-6, 1e-10)]
        assert all(a <= b for a, b in zip(cuts, cuts[1:]))

    def test_bad_epsilon(self):
        with pytest.raises(ValueError):
            cutoff_alpha1(B10, -1.0)


class TestPrimeSeries:
    def test_cutoff_one_is_exactly_one(self):
        ev = fb_prime_series(0.37, InvGammaParams(2.0, 3.0), B10, TruncationSpec(1.0, 1))
        assert ev.value == 1.0

    def test_trapezoid_integral_is_one(self):
        p = InvGammaParams(1.0, 1.0)
        trunc = truncation_cutoff(p, B10, 1e-8)
        zs = np.linspace(0.0, 1.0, 2001)
        vals = fb_prime_series_values(zs, p, B10, trunc)
        integral = getattr(np, "trapezoid", np.trapz)(vals, zs)
        assert abs(integral - 1.0) <= 2e-8 + 1e-6

    def test_matches_finite_difference_of_oracle(self):
        # centered difference at z = 0 through the periodic extension
        p = InvGammaParams(1.0, 1.0)
        trunc = truncation_cutoff(p, B10, 1e-8)
        h = 1e-4
        cfg = OracleConfig()
        upper = fb_cdf_oracle(h, p, B10, cfg)
        lower = fb_cdf_oracle(1.0 - h, p, B10, cfg) - 1.0
        fd = (upper - lower) / (2.0 * h)
        assert fb_prime_series(0.0, p, B10, trunc).value == pytest.approx(fd, abs=1e-5)

    def test_residual_uses_tighter_alpha1_bound(self):
        p = InvGammaParams(1.0, 1.0)
        trunc = truncation_cutoff(p, B10, 0.001)
        ev = fb_prime_series(0.2, p, B10, trunc)
        general = tail_bound_general(p, B10, trunc.cutoff_m)
        alpha1 = tail_bound_alpha1(B10, trunc.cutoff_m)
        assert ev.residual_bound == min(general, alpha1)
        assert ev.certified

    def test_uncertified_for_base_two(self):
        ev = fb_prime_series(0.2, InvGammaParams(1.0, 1.0), BaseConfig(2), TruncationSpec(0.001, 9))
        assert ev.residual_bound is None and not ev.certified


class TestCdfSeries:
    def test_endpoints_exact(self):
        for alpha, beta in ((0.3, 1.0), (1.0, 1.0), (7.0, 4.2), (50.0, 8.0)):
            p = InvGammaParams(alpha, beta)
            trunc = truncation_cutoff(p, B10, 1e-6)
            assert fb_cdf_series(0.0, p, B10, trunc).value == 0.0
            assert fb_cdf_series(1.0, p, B10, trunc).value == 1.0

    def test_against_direct_summation(self):
        p = InvGammaParams(1.0, 1.0)
        trunc = truncation_cutoff(p, B10, 1e-8)
        oracle = fb_cdf_oracle(0.5, p, B10, OracleConfig(k_range=100))
        assert fb_cdf_series(0.5, p, B10, trunc).value == pytest.approx(oracle, abs=1e-7)

    def test_beta_scale_invariance(self):
        p = InvGammaParams(2.0, 3.0)
        q = InvGammaParams(2.0, 30.0)
        trunc = truncation_cutoff(p, B10, 1e-8)
        for z in np.linspace(0.0, 1.0, 11):
            a = fb_cdf_series(float(z), p, B10, trunc).value
            b = fb_cdf_series(float(z), q, B10, trunc).value
            assert abs(a - b) <= 2e-8

    def test_certification_sound_against_oracle(self):
        # residual_bound + oracle tolerance dominates the observed gap
        rng = np.random.default_rng(41)
        for _ in range(30):
            alpha = rng.uniform(0.01, 50.0)
            beta = rng.uniform(1.0, 10.0)
            z = rng.uniform(0.0, 1.0)
            p = InvGammaParams(alpha, beta)
            trunc = truncation_cutoff(p, B10, 1e-8)
            ev = fb_cdf_series(z, p, B10, trunc)
            oracle = fb_cdf_oracle(z, p, B10, OracleConfig(k_range=oracle_window(p, B10)))
            assert abs(ev.value - oracle) <= ev.residual_bound + 1e-9

    def test_realness_of_paired_terms(self):
        # assemble the two-sided sum in complex arithmetic; the imaginary
        # residue must vanish to rounding
        p = InvGammaParams(3.0, 2.0)
        lb = B10.log_base
        theta = math.log(2.0) / lb
        lg = math.lgamma(3.0)
        for z in (0.1, 0.37, 0.81):
            total = 0j
            for k in range(1, 12):
                for sign in (1.0, -1.0):
                    g = cmath.exp(complex_log_gamma(complex(3.0, sign * 2.0 * math.pi * k / lb)) - lg)
                    phase = cmath.exp(complex(0.0, -sign * 2.0 * math.pi * k * theta))
                    w = cmath.exp(complex(0.0, sign * 2.0 * math.pi * k * z)) - 1.0
                    total += g * phase * w / complex(0.0, sign * 2.0 * math.pi * k)
            assert abs(total.imag) <= 1e-12

    def test_monotone_on_grid_within_slack(self):
        eps = 1e-8
        for alpha, beta in ((0.5, 1.0), (5.0, 4.0)):
            p = InvGammaParams(alpha, beta)
            trunc = truncation_cutoff(p, B10, eps)
            vals = fb_cdf_series_values(np.linspace(0.0, 1.0, 1001), p, B10, trunc)
            assert float(np.min(np.diff(vals))) >= -2.0 * eps

    def test_scalar_matches_vectorized_bitwise(self):
        p = InvGammaParams(2.7, 6.1)
        trunc = truncation_cutoff(p, B10, 1e-8)
        zs = np.linspace(0.0, 1.0, 101)
        vec = fb_cdf_series_values(zs, p, B10, trunc)
        scal = np.array([fb_cdf_series(float(z), p, B10, trunc).value for z in zs])
        assert np.array_equal(vec, scal)

    @pytest.mark.parametrize("base_int", [3, 16])
    def test_other_bases_match_oracle(self, base_int):
        cfg = BaseConfig(base_int)
        p = InvGammaParams(2.5, 1.4)
        trunc = truncation_cutoff(p, cfg, 1e-8)
        oracle_cfg = OracleConfig(k_range=oracle_window(p, cfg))
        for z in (0.2, 0.55, 0.9):
            got = fb_cdf_series(z, p, cfg, trunc).value
            assert got == pytest.approx(fb_cdf_oracle(z, p, cfg, oracle_cfg), abs=1e-9)

    def test_concurrent_evaluation_matches_serial(self):
        # all evaluation is pure; shared coefficient tables are read-only
        from concurrent.futures import ThreadPoolExecutor

        p = InvGammaParams(3.0, 2.0)
        trunc = truncation_cutoff(p, B10, 1e-8)
        zs = [float(z) for z in np.linspace(0.0, 1.0, 64)]
        serial = [fb_cdf_series(z, p, B10, trunc).value for z in zs]
        with ThreadPoolExecutor(max_workers=8) as pool:
            threaded = list(pool.map(lambda z: fb_cdf_series(z, p, B10, trunc).value, zs))
        assert serial == threaded

    def test_uncertified_for_base_two(self):
        ev = fb_cdf_series(0.5, InvGammaParams(1.0, 1.0), BaseConfig(2), TruncationSpec(0.001, 9))
        assert ev.residual_bound is None and not ev.certified
        assert 0.0 <= ev.value <= 1.0

    def test_residual_is_requested_epsilon(self):
        p = InvGammaParams(4.0, 2.0)
        trunc = truncation_cutoff(p, B10, 1e-5)
        assert fb_cdf_series(0.3, p, B10, trunc).residual_bound == 1e-5

    def test_z_domain(self):
        p = InvGammaParams(1.0, 1.0)
        trunc = TruncationSpec(1e-3, 5)
        with pytest.raises(ValueError):
            fb_cdf_series(-0.1, p, B10, trunc)
        with pytest.raises(ValueError):
            fb_cdf_series(1.1, p, B10, trunc)


def test_truncation_spec_validation():
    with pytest.raises(ValueError):
        TruncationSpec(0.0, 5)
    with pytest.raises(ValueError):
        TruncationSpec(1e-3, 0)
    with pytest.raises(TypeError):
        TruncationSpec(1e-3, 2.5)


def test_series_evaluation_certified_flag():
    assert SeriesEvaluation(1.0, 1e-8, 5).certified
    assert not SeriesEvaluation(1.0, None, 5).certified
