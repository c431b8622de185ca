#!/usr/bin/env python3
"""
Tests for the special function wrappers
"""

import math
import unittest

import numpy as np
from scipy import special

from errors import NonPositiveArgument, PoleArgument, SpecialFunctionOverflow
from specfun import (
    bessel_i_ratio,
    bessel_i_scaled,
    bessel_k,
    bessel_k_ratio,
    gamma,
    gamma_ratio,
    log_bessel_i_scaled,
    log_gamma,
    sphere_area,
)


class TestGamma(unittest.TestCase):
    """Test Gamma and its logarithm"""

    def test_values(self):
        """Test known values"""
        self.assertAlmostEqual(gamma(5.0).value, 24.0, places=10)
        self.assertAlmostEqual(gamma(0.5).value, math.sqrt(math.pi), places=14)
        self.assertAlmostEqual(gamma(-0.5).value, -2.0 * math.sqrt(math.pi), places=13)
        self.assertLess(gamma(3.0).est_rel_error, 1e-10)

    def test_poles(self):
        """Test nonpositive integers are rejected"""
        for z in (0.0, -1.0, -3.0):
            with self.assertRaises(PoleArgument):
                gamma(z)
        with self.assertRaises(PoleArgument):
            gamma_ratio(1.5, -2.0)

    def test_overflow(self):
        """Test large arguments point to log_gamma"""
        with self.assertRaises(SpecialFunctionOverflow):
            gamma(171.5)
        self.assertAlmostEqual(log_gamma(200.0).value, math.lgamma(200.0), places=8)

    def test_ratio(self):
        """Test Gamma ratios keep their sign"""
        self.assertAlmostEqual(gamma_ratio(4.5, 2.5), 3.5 * 2.5, places=12)
        self.assertAlmostEqual(gamma_ratio(-0.5, 0.5), -2.0, places=12)
        self.assertAlmostEqual(gamma_ratio(300.5, 300.0) / math.sqrt(300.0), 1.0, delta=1e-3)


class TestBessel(unittest.TestCase):
    """Test the modified Bessel functions"""

    def test_half_order(self):
        """Test K_1/2(z) = sqrt(pi/(2z)) e^-z"""
        for z in (0.1, 1.0, 7.5):
            expected = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z)
            self.assertAlmostEqual(bessel_k(0.5, z).value / expected, 1.0, places=12)

    def test_recurrence(self):
        """Test K_(nu+1) = K_(nu-1) + (2 nu/z) K_nu at random points"""
        rng = np.random.default_rng(11)
        for nu, z in zip(rng.uniform(0.5, 4.0, 10), rng.uniform(0.1, 20.0, 10)):
            left = bessel_k(nu + 1.0, z).value
            # K_(-nu) = K_nu
            right = bessel_k(abs(nu - 1.0), z).value + 2.0 * nu / z * bessel_k(nu, z).value
            self.assertAlmostEqual(left / right, 1.0, places=10)

    def test_ratios(self):
        """Test the closed-form half-integer ratios"""
        self.assertAlmostEqual(bessel_k_ratio(1.5, 0.5, 2.0), 1.5, places=12)
        self.assertAlmostEqual(bessel_k_ratio(1.5, 0.5, 800.0), 1.0 + 1.0 / 800.0, places=12)
        self.assertAlmostEqual(float(bessel_i_ratio(0.5, -0.5, 1.0)), math.tanh(1.0), places=12)

    def test_scaled_i(self):
        """Test e^-z I_1/2(z) = (1 - e^-2z)/sqrt(2 pi z)"""
        z = 3.0
        expected = -math.expm1(-2.0 * z) / math.sqrt(2.0 * math.pi * z)
        self.assertAlmostEqual(float(bessel_i_scaled(0.5, z)), expected, places=12)

    def test_large_arguments(self):
        """Test scaled I and its ratios where scipy alone breaks down"""
        for z in (1.5e5, 1e9, 1e12, 1e300):
            expected = 1.0 / math.sqrt(2.0 * math.pi * z)
            self.assertAlmostEqual(float(bessel_i_scaled(0.5, z)) / expected, 1.0, places=12)
            self.assertAlmostEqual(
                float(log_bessel_i_scaled(-0.5, z)), math.log(expected), places=10
            )
            self.assertEqual(float(bessel_i_ratio(0.5, -0.5, z)), 1.0)
        ratio = float(bessel_i_ratio(1.0, 0.0, 1e10))
        self.assertAlmostEqual((1.0 - ratio) * 1e10, 0.5, places=4)

    def test_series_matches_scipy(self):
        """Test the large-argument branch joins the direct one"""
        z = 1.5e5
        for nu in (0.0, 1.0, 2.5):
            direct = math.log(special.ive(nu, z))
            self.assertAlmostEqual(float(log_bessel_i_scaled(nu, z)), direct, places=9)
            ratio = special.ive(nu + 1.0, z) / special.ive(nu, z)
            self.assertAlmostEqual(float(bessel_i_ratio(nu + 1.0, nu, z)), ratio, places=9)
        values = log_bessel_i_scaled(1.0, np.array([1e3, 1e7, 1e11]))
        self.assertTrue(np.all(np.isfinite(values)))

    def test_argument_checks(self):
        """Test K at z <= 0, negative orders and overflowing values"""
        with self.assertRaises(NonPositiveArgument):
            bessel_k(1.0, 0.0)
        with self.assertRaises(NonPositiveArgument):
            bessel_k_ratio(1.0, 0.0, -1.0)
        with self.assertRaises(NonPositiveArgument):
            bessel_k(-0.5, 1.0)
        with self.assertRaises(NonPositiveArgument):
            bessel_k_ratio(1.0, -1.0, 2.0)
        with self.assertRaises(SpecialFunctionOverflow):
            bessel_k(10.0, 1e-300)


class TestSphereArea(unittest.TestCase):
    """Test the unit sphere area"""

    def test_low_dimensions(self):
        """Test omega_1 = 2, omega_2 = 2 pi, omega_3 = 4 pi"""
        self.assertAlmostEqual(sphere_area(1), 2.0)
        self.assertAlmostEqual(sphere_area(2), 2.0 * math.pi)
        self.assertAlmostEqual(sphere_area(3), 4.0 * math.pi)


def run_tests():
    """Run all tests"""
    test_suite = unittest.TestSuite()
    loader = unittest.TestLoader()
    test_suite.addTest(loader.loadTestsFromTestCase(TestGamma))
    test_suite.addTest(loader.loadTestsFromTestCase(TestBessel))
    test_suite.addTest(loader.loadTestsFromTestCase(TestSphereArea))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(test_suite)

    return result.wasSuccessful()


if __name__ == "__main__":
    success = run_tests()
    exit(0 if success else 1)
