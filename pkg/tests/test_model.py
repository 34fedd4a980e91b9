"""Model types, the convolution identity, and half-normal moments."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from agecompat.model import (
    D_SCOPE_UPPER_COEF,
    AgeProfile,
    DiffStats,
    Gaussian,
    convolve_diff,
    d_scope,
    gaussian_pdf,
    same_age_diff_stats,
)
from agecompat.verify import integrate

PEAK_UNIT_SIGMA = 0.3989422804014327  # 1/sqrt(2*pi)

# difference-density values for (18, 1.8) vs (14, 1.4), 40-digit quadrature
CONV_DENSITY_POINTS = {
    0.0: 0.03756323932092022,
    2.5: 0.14091280278845097,
    4.0: 0.174947763133355,
    5.5: 0.14091280278845097,
    9.0: 0.01580997830737062,
}

sigmas = st.floats(min_value=0.05, max_value=50.0, allow_nan=False)


class TestGaussian:
    def test_rejects_nonpositive_sigma(self):
        with pytest.raises(ValueError):
            Gaussian(10.0, 0.0)
        with pytest.raises(ValueError):
            Gaussian(10.0, -1.0)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            Gaussian(math.nan, 1.0)

    def test_immutable(self):
        g = Gaussian(10.0, 1.0)
        with pytest.raises(AttributeError):
            g.mu = 11.0


class TestAgeProfile:
    def test_sigma_is_ratio_times_age(self):
        prof = AgeProfile(20.0, 0.15)
        assert prof.sigma == pytest.approx(3.0)
        assert prof.gaussian == Gaussian(20.0, prof.sigma)

    def test_from_sigma_round_trip(self):
        prof = AgeProfile.from_sigma(16.0, 2.4)
        assert prof.s == pytest.approx(0.15)
        assert prof.sigma == pytest.approx(2.4)

    @pytest.mark.parametrize("s,inside", [(0.05, False), (0.1, True),
                                          (0.15, True), (0.2, True),
                                          (0.25, False)])
    def test_supported_band_flag(self, s, inside):
        assert AgeProfile(30.0, s).in_supported_band is inside

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            AgeProfile(0.0, 0.1)
        with pytest.raises(ValueError):
            AgeProfile(20.0, 0.0)


class TestGaussianPdf:
    def test_peak_value(self):
        g = Gaussian(7.0, 1.0)
        assert gaussian_pdf(7.0, g) == pytest.approx(PEAK_UNIT_SIGMA, abs=1e-15)

    def test_one_sigma_identity(self):
        g = Gaussian(3.0, 2.5)
        peak = gaussian_pdf(3.0, g)
        assert gaussian_pdf(3.0 + 2.5, g) == pytest.approx(
            peak * math.exp(-0.5), rel=1e-14)
        assert gaussian_pdf(3.0 - 2.5, g) == pytest.approx(
            peak * math.exp(-0.5), rel=1e-14)

    def test_normalizes_to_one(self):
        g = Gaussian(40.0, 4.0)
        total = integrate(lambda x: gaussian_pdf(x, g),
                          g.mu - 8 * g.sigma, g.mu + 8 * g.sigma, tol=1e-13)
        assert total == pytest.approx(1.0, abs=1e-12)


class TestConvolveDiff:
    def test_three_four_five(self):
        out = convolve_diff(Gaussian(5.0, 3.0), Gaussian(5.0, 4.0))
        assert out.mu == 0.0
        assert out.sigma == pytest.approx(5.0, rel=1e-15)

    def test_cohort_pair(self):
        out = convolve_diff(Gaussian(18.0, 1.8), Gaussian(14.0, 1.4))
        assert out.mu == pytest.approx(4.0)
        assert out.sigma == pytest.approx(math.sqrt(5.2), rel=1e-15)

    def test_against_numerical_convolution(self):
        # density of X1 - X2 evaluated by direct integration
        g1, g2 = Gaussian(18.0, 1.8), Gaussian(14.0, 1.4)
        out = convolve_diff(g1, g2)
        for y, frozen in CONV_DENSITY_POINTS.items():
            numeric = integrate(
                lambda x: gaussian_pdf(x, g1) * gaussian_pdf(x - y, g2),
                g1.mu - 10 * g1.sigma, g1.mu + 10 * g1.sigma, tol=1e-12)
            assert numeric == pytest.approx(frozen, abs=1e-11)
            assert gaussian_pdf(y, out) == pytest.approx(frozen, abs=1e-12)

    def test_self_convolution_scale(self):
        out = convolve_diff(Gaussian(9.0, 2.0), Gaussian(9.0, 2.0))
        assert out.mu == 0.0
        assert out.sigma == pytest.approx(math.sqrt(2.0) * 2.0, rel=1e-15)

    @given(sigmas, sigmas)
    def test_variance_additive(self, s1, s2):
        out = convolve_diff(Gaussian(1.0, s1), Gaussian(2.0, s2))
        assert out.sigma ** 2 == pytest.approx(s1 * s1 + s2 * s2, rel=1e-12)


class TestSameAgeDiffStats:
    def test_unit_sigma_values(self):
        stats = same_age_diff_stats(1.0)
        assert stats.sigma_d == pytest.approx(1.4142135623730951, abs=1e-15)
        assert stats.mean_d == pytest.approx(1.1283791670955126, abs=1e-15)
        assert stats.disp_d == pytest.approx(0.8525024664274217, abs=1e-15)

    def test_ratio_contracts(self):
        stats = same_age_diff_stats(3.7)
        assert stats.mean_d / 3.7 == pytest.approx(1.128, abs=1e-3)
        assert stats.disp_d / 3.7 == pytest.approx(0.853, abs=1e-3)

    def test_linear_in_sigma(self):
        one = same_age_diff_stats(1.0)
        two = same_age_diff_stats(2.0)
        assert two == DiffStats(2 * one.sigma_d, 2 * one.mean_d, 2 * one.disp_d)

    def test_mean_by_quadrature(self):
        sigma = 1.6
        scale = math.sqrt(2.0) * sigma
        half_normal = lambda u: 2.0 * gaussian_pdf(u, Gaussian(0.0, scale))
        mean = integrate(lambda u: u * half_normal(u), 0.0, 12.0 * scale, tol=1e-12)
        assert mean == pytest.approx(same_age_diff_stats(sigma).mean_d, abs=1e-9)

    def test_half_normal_density_normalizes(self):
        sigma = 2.2
        scale = math.sqrt(2.0) * sigma
        total = integrate(lambda u: 2.0 * gaussian_pdf(u, Gaussian(0.0, scale)),
                          0.0, 12.0 * sigma, tol=1e-12)
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_lower_edge_justification(self):
        # mean minus dispersion falls short of one sigma (~0.276 sigma)
        stats = same_age_diff_stats(1.0)
        gap = stats.mean_d - stats.disp_d
        assert gap == pytest.approx(0.276, abs=1e-3)
        assert gap < 1.0

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            same_age_diff_stats(0.0)


class TestDScope:
    def test_cohort_pair(self):
        lo, hi = d_scope(1.8, 1.4)
        assert lo == 1.4
        assert hi == pytest.approx(1.4 * D_SCOPE_UPPER_COEF, rel=1e-15)
        assert hi == pytest.approx(2.7734, abs=2.5e-3)

    def test_symmetric(self):
        lo, hi = d_scope(2.0, 2.0)
        assert lo == 2.0
        assert hi == pytest.approx(3.962, abs=2.5e-3)

    def test_benchmark_configuration(self):
        lo, hi = d_scope(3.0, 2.4)
        assert lo == 2.4
        assert hi == pytest.approx(4.754, abs=2.5e-3)

    def test_lower_edge_is_min_sigma(self):
        assert d_scope(5.0, 0.5)[0] == 0.5

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            d_scope(-1.0, 2.0)
        with pytest.raises(ValueError):
            d_scope(1.0, 0.0)
