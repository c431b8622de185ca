#!/usr/bin/env python3
"""
Tests for the conditional moments computed by quadrature
"""

import math
import unittest

import numpy as np
from scipy import integrate

from closedform import (
    gaussian_mean_slope,
    mean_p1_uniform,
    mean_phalf_uniform,
    mean_phalf_uniform_neareps,
    variance_p0_uniform,
    variance_phalf_uniform,
)
from errors import (
    ConfigInvalid,
    DivergentIntegral,
    EvaluationAtOrPastBlowup,
    NonPositiveTime,
    RatioNotConverged,
)
from model import (
    GaussianDistribution,
    ModelParams,
    UniformBox,
    drift_denominator,
    noise_time,
    time_from_epsilon,
    velocity_growth,
)
from moments import (
    SUPPORT,
    QuadratureSpec,
    RadialIntegrand,
    conditional_mean,
    conditional_variance,
    noise_gradient_moment,
    observable_density,
    truncated_integrals,
    truncated_ratio_limit,
)


class TestQuadratureSpec(unittest.TestCase):
    """Test quadrature settings"""

    def test_l_values(self):
        """Test the doubling truncation sequence"""
        values = QuadratureSpec(l_start=3, l_stop=5).l_values()
        np.testing.assert_allclose(values, [8.0, 16.0, 32.0])

    def test_invalid(self):
        """Test bad settings name their field"""
        with self.assertRaises(ConfigInvalid) as context:
            QuadratureSpec.from_dict({'truncation': 'box'})
        self.assertEqual(context.exception.field, 'quadrature.truncation')
        with self.assertRaises(ConfigInvalid):
            QuadratureSpec.from_dict({'rel_tol': 1e-6, 'order': 3})
        with self.assertRaises(ConfigInvalid):
            QuadratureSpec(l_start=5, l_stop=5)

    def test_round_trip(self):
        """Test from_dict(to_dict()) keeps every field"""
        spec = QuadratureSpec(rel_tol=1e-9, truncation=SUPPORT)
        self.assertEqual(QuadratureSpec.from_dict(spec.to_dict()), spec)


class TestRatioLimit(unittest.TestCase):
    """Test the L -> infinity limit of truncated ratios"""

    def test_convergent_ratio(self):
        """Test plain ratios that settle"""
        estimate = truncated_ratio_limit(lambda L: 2.0 + math.exp(-L), lambda L: 1.0)
        self.assertAlmostEqual(estimate.value, 2.0, places=6)
        self.assertTrue(estimate.converged)

    def test_divergent_denominator(self):
        """Test the increment ratio of linearly growing integrals"""
        estimate = truncated_ratio_limit(lambda L: 3.0 * L + 1.0, lambda L: L + 2.0)
        self.assertAlmostEqual(estimate.value, 3.0, places=12)

    def test_not_converged(self):
        """Test a ratio growing like log L is reported with its history"""
        with self.assertRaises(RatioNotConverged) as context:
            truncated_ratio_limit(lambda L: math.log(L) ** 2, lambda L: math.log(L))
        self.assertGreater(len(context.exception.history), 1)


class TestConditionalMean(unittest.TestCase):
    """Test conditional means against closed forms"""

    def setUp(self):
        """Set up test fixtures"""
        self.box = UniformBox(1.0)

    def assertRelative(self, value, expected, rtol):
        np.testing.assert_allclose(np.atleast_1d(value), np.atleast_1d(expected), rtol=rtol)

    def test_noise_free_profile(self):
        """Test the p = 0 mean is x/D(t)"""
        for beta in (0.0, 1.0):
            params = ModelParams(alpha=-1.0, beta=beta)
            t = 0.5
            estimate = conditional_mean(params, self.box, t, 0.8)
            self.assertRelative(estimate.value, 0.8 / drift_denominator(params, t), 1e-6)
            self.assertTrue(estimate.converged)

    def test_origin(self):
        """Test the mean vanishes at x = 0"""
        params = ModelParams(alpha=-1.0, p=2.0, n=2)
        estimate = conditional_mean(params, self.box, 0.5, (0.0, 0.0))
        np.testing.assert_array_equal(estimate.value, [0.0, 0.0])

    def test_half_exponent(self):
        """Test p = 1/2 against the Bessel closed form"""
        params = ModelParams(alpha=-1.0, p=0.5)
        for x in (0.3, 1.2):
            estimate = conditional_mean(params, self.box, 0.5, x)
            self.assertRelative(estimate.value, mean_phalf_uniform(params, 0.5, x), 1e-6)

    def test_unit_exponent(self):
        """Test p = 1 against D x/(n sigma^2 S) through the ratio limit"""
        params = ModelParams(alpha=-1.0, p=1.0)
        estimate = conditional_mean(params, self.box, 0.5, 0.5)
        self.assertRelative(estimate.value, mean_p1_uniform(params, 0.5, 0.5), 1e-4)

        plane = params.replace(n=2)
        x = (0.5, 0.3)
        estimate = conditional_mean(plane, self.box, 0.5, x)
        self.assertRelative(estimate.value, mean_p1_uniform(plane, 0.5, x), 1e-4)

    def test_gaussian_in_higher_dimensions(self):
        """Test the p = 0 Gaussian mean keeps its slope in every dimension"""
        line = ModelParams(alpha=-1.0)
        slope = gaussian_mean_slope(line, 1.0, 0.5)
        dist = GaussianDistribution(1.0)
        for x in ((0.4, -0.7), (0.2, 0.5, -0.3)):
            params = line.replace(n=len(x))
            estimate = conditional_mean(params, dist, 0.5, x)
            np.testing.assert_allclose(estimate.value, slope * np.array(x), atol=1e-6)

    def test_support_truncation(self):
        """Test the mean restricted to the box support"""
        params = ModelParams(alpha=-1.0)
        t, x = 0.5, 0.5
        D = drift_denominator(params, t)
        spread = noise_time(params, t)

        def weight(u):
            return math.exp(-((u * D - x) ** 2) / (2.0 * spread))

        top, _ = integrate.quad(lambda u: u * weight(u), -1.0, 1.0, epsabs=1e-14)
        bottom, _ = integrate.quad(weight, -1.0, 1.0, epsabs=1e-14)
        spec = QuadratureSpec(truncation=SUPPORT)
        estimate = conditional_mean(params, self.box, t, x, spec)
        self.assertAlmostEqual(estimate.scalar(), top / bottom, places=7)

    def test_half_exponent_near_blowup(self):
        """Test the leading Bessel form against quadrature as eps shrinks"""
        params = ModelParams(alpha=-1.0, p=0.5)
        for eps, tolerance in ((0.1, 2e-2), (0.02, 5e-3)):
            t = time_from_epsilon(params, eps)
            estimate = conditional_mean(params, self.box, t, 1.0)
            leading = mean_phalf_uniform_neareps(params, eps, 1.0)[0]
            self.assertRelative(estimate.value, leading, tolerance)

    def test_large_bessel_arguments(self):
        """Test angular factors stay finite where kappa is far above 1e9"""
        params = ModelParams(alpha=-1.0)
        integrand = RadialIntegrand(params, self.box, 0.5, np.array([0.5]), QuadratureSpec())
        w = np.linspace(25.0, 60.0, 176)
        self.assertTrue(np.all(np.isfinite(integrand.log_weight(w))))
        np.testing.assert_allclose(integrand.mean_cosine(w), -1.0, atol=1e-8)

        estimate = conditional_mean(params, self.box, 0.5, 0.5)
        self.assertRelative(estimate.value, -1.0, 1e-6)
        for p in (1.5, 2.0):
            near = params.replace(p=p)
            for eps in (0.1, 0.005):
                value = conditional_mean(near, self.box, time_from_epsilon(near, eps), 0.5)
                self.assertTrue(math.isfinite(value.scalar()))
                self.assertLess(value.scalar(), 0.0)

    def test_time_checks(self):
        """Test times outside (0, T] are rejected"""
        params = ModelParams(alpha=-1.0)
        with self.assertRaises(NonPositiveTime):
            conditional_mean(params, self.box, 0.0, 1.0)
        with self.assertRaises(EvaluationAtOrPastBlowup):
            conditional_mean(params, self.box, 1.5, 1.0)


class TestConditionalVariance(unittest.TestCase):
    """Test conditional variances"""

    def test_noise_free_profile(self):
        """Test the p = 0 variance sigma^2 S/D^2 at any x"""
        params = ModelParams(alpha=-1.0, beta=0.5, sigma=0.8)
        for x in (0.0, 0.9):
            estimate = conditional_variance(params, UniformBox(1.0), 0.5, x)
            self.assertAlmostEqual(
                estimate.scalar() / variance_p0_uniform(params, 0.5), 1.0, places=6
            )

    def test_half_exponent(self):
        """Test p = 1/2 against the Bessel closed form"""
        params = ModelParams(alpha=-1.0, p=0.5)
        for x in (0.0, 0.6):
            estimate = conditional_variance(params, UniformBox(1.0), 0.5, x)
            self.assertAlmostEqual(
                estimate.scalar() / variance_phalf_uniform(params, 0.5, x), 1.0, places=6
            )

    def test_divergent(self):
        """Test the p = 1 second moment diverges"""
        params = ModelParams(alpha=-1.0, p=1.0)
        with self.assertRaises(DivergentIntegral):
            conditional_variance(params, UniformBox(1.0), 0.5, 0.5)


class TestObservableDensity(unittest.TestCase):
    """Test the u-marginal"""

    def test_noise_free_profile(self):
        """Test the p = 0 marginal f_L g/(|alpha| |D|)"""
        params = ModelParams(alpha=-1.0, beta=0.5)
        t = 0.5
        expected = 0.5 * velocity_growth(params, t) / abs(drift_denominator(params, t))
        estimate = observable_density(params, UniformBox(1.0), t, 0.7)
        self.assertAlmostEqual(estimate.scalar() / expected, 1.0, places=7)

    def test_origin_values(self):
        """Test rho(t, 0) = f_L/(eps |1 - p|) at eps = 0.1"""
        box = UniformBox(0.5)
        for p, expected in ((2.0, 10.0), (0.5, 20.0)):
            params = ModelParams(alpha=-1.0, p=p)
            t = time_from_epsilon(params, 0.1)
            estimate = observable_density(params, box, t, 0.0)
            self.assertAlmostEqual(estimate.scalar() / expected, 1.0, places=6)

    def test_divergent(self):
        """Test the p = 1 marginal diverges without a support cut"""
        params = ModelParams(alpha=-1.0, p=1.0)
        with self.assertRaises(DivergentIntegral):
            observable_density(params, UniformBox(1.0), 0.5, 0.5)
        spec = QuadratureSpec(truncation=SUPPORT)
        capped = observable_density(params, UniformBox(1.0), 0.5, 0.5, spec)
        self.assertGreater(capped.scalar(), 0.0)


class TestNoiseGradientMoment(unittest.TestCase):
    """Test the noise-gradient correction"""

    def test_identity_with_mean(self):
        """Test the moment equals (x - D mean)/(2 S)"""
        params = ModelParams(alpha=-1.0, p=2.0)
        t = time_from_epsilon(params, 0.2)
        box = UniformBox(1.0)
        for x in (0.25, 1.0):
            mean = conditional_mean(params, box, t, x).scalar()
            expected = (x - drift_denominator(params, t) * mean) / (2.0 * noise_time(params, t))
            value = noise_gradient_moment(params, box, t, x).scalar()
            self.assertAlmostEqual(value / expected, 1.0, places=6)

    def test_truncated_families(self):
        """Test the truncated families approach the mean"""
        params = ModelParams(alpha=-1.0, p=1.0)
        numerator, denominator = truncated_integrals(params, UniformBox(1.0), 0.5, 0.5)
        estimate = truncated_ratio_limit(numerator, denominator)
        self.assertAlmostEqual(
            estimate.value / mean_p1_uniform(params, 0.5, 0.5)[0], 1.0, delta=1e-4
        )


def run_tests():
    """Run all tests"""
    test_suite = unittest.TestSuite()
    loader = unittest.TestLoader()
    test_suite.addTest(loader.loadTestsFromTestCase(TestQuadratureSpec))
    test_suite.addTest(loader.loadTestsFromTestCase(TestRatioLimit))
    test_suite.addTest(loader.loadTestsFromTestCase(TestConditionalMean))
    test_suite.addTest(loader.loadTestsFromTestCase(TestConditionalVariance))
    test_suite.addTest(loader.loadTestsFromTestCase(TestObservableDensity))
    test_suite.addTest(loader.loadTestsFromTestCase(TestNoiseGradientMoment))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(test_suite)

    return result.wasSuccessful()


if __name__ == "__main__":
    success = run_tests()
    exit(0 if success else 1)
