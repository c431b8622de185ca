#!/usr/bin/env python3
"""
Tests for the phase-space density and its Fokker-Planck residual
"""

import math
import unittest

import numpy as np
from scipy import integrate

from density import fp_residual, log_phase_density, log_phase_density_rows, phase_density
from errors import NonPositiveTime, NonSmoothPoint, ZeroVelocityWithPositiveP
from model import ModelParams, UniformBox, drift_denominator, noise_time, velocity_growth


class TestPhaseDensity(unittest.TestCase):
    """Test values of P(t, x, u)"""

    def setUp(self):
        """Set up test fixtures"""
        self.params = ModelParams(alpha=-1.0)
        self.box = UniformBox(10.0)

    def test_value_on_characteristic(self):
        """Test P = f(2) / sqrt(pi) at u D = x for p = 0"""
        value = phase_density(self.params, self.box, 0.5, 1.0, -2.0)
        self.assertAlmostEqual(value.value, 0.05 / math.sqrt(math.pi), places=14)
        self.assertAlmostEqual(value.log_value, math.log(value.value), places=12)

    def test_outside_support(self):
        """Test the density vanishes where u g/alpha leaves the box"""
        box = UniformBox(1.0)
        self.assertEqual(log_phase_density(self.params, box, 0.5, 1.0, -2.0), -math.inf)
        self.assertEqual(phase_density(self.params, box, 0.5, 1.0, -2.0).value, 0.0)

    def test_rows_match_single_points(self):
        """Test the vectorized rows agree with single evaluations"""
        params = self.params.replace(p=1.5, beta=0.3)
        rows = np.array([[-1.2], [0.4], [0.0], [2.5]])
        logs = log_phase_density_rows(params, self.box, 0.4, 0.7, rows)
        self.assertEqual(logs[2], -math.inf)
        for row, log_value in zip(rows[[0, 1, 3]], logs[[0, 1, 3]]):
            self.assertAlmostEqual(
                log_value, log_phase_density(params, self.box, 0.4, 0.7, row), places=12
            )

    def test_product_form_without_noise_exponent(self):
        """Test P factorizes over coordinates for p = 0"""
        params = self.params.replace(beta=0.5)
        plane = params.replace(n=2)
        x = (0.3, -0.8)
        u = (-1.1, 0.6)
        expected = sum(log_phase_density(params, self.box, 0.6, xi, ui) for xi, ui in zip(x, u))
        self.assertAlmostEqual(log_phase_density(plane, self.box, 0.6, x, u), expected, places=12)

    def test_x_marginal(self):
        """Test int P dx = f(u g/alpha) g/|alpha|"""
        params = ModelParams(alpha=-1.0, beta=0.5, p=1.0)
        t = 0.5
        u = 0.7
        g = velocity_growth(params, t)
        centre = u * drift_denominator(params, t)
        width = 20.0 * math.sqrt(params.sigma**2 * noise_time(params, t)) * abs(u) ** params.p
        value, _ = integrate.quad(
            lambda x: phase_density(params, self.box, t, x, u).value,
            centre - width,
            centre + width,
            points=[centre],
            epsabs=1e-13,
            epsrel=1e-11,
        )
        self.assertAlmostEqual(value, 0.05 * g, places=9)

    def test_small_friction_limit(self):
        """Test continuity in beta at beta = 0"""
        for p in (0.0, 0.5, 2.0):
            still = ModelParams(alpha=-1.0, p=p)
            slow = still.replace(beta=1e-6)
            a = log_phase_density(still, self.box, 0.5, 0.4, -1.3)
            b = log_phase_density(slow, self.box, 0.5, 0.4, -1.3)
            self.assertAlmostEqual(a, b, delta=1e-4)

    def test_errors(self):
        """Test time and velocity checks"""
        with self.assertRaises(NonPositiveTime):
            phase_density(self.params, self.box, 0.0, 1.0, -1.0)
        with self.assertRaises(ZeroVelocityWithPositiveP):
            phase_density(self.params.replace(p=1.0), self.box, 0.5, 1.0, 0.0)
        self.assertGreater(phase_density(self.params, self.box, 0.5, 0.0, 0.0).value, 0.0)


class TestFokkerPlanckResidual(unittest.TestCase):
    """Test the density solves the Fokker-Planck equation"""

    def test_random_smooth_points(self):
        """Test small residuals near the characteristics"""
        rng = np.random.default_rng(2024)
        box = UniformBox(10.0)
        for _ in range(20):
            params = ModelParams(
                alpha=-1.0,
                beta=float(rng.choice([0.0, 0.5, 1.0])),
                p=float(rng.choice([0.0, 0.5, 1.0, 2.0])),
            )
            t = float(rng.uniform(0.3, 0.7))
            u = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.8, 1.5))
            spread = math.sqrt(params.sigma**2 * noise_time(params, t)) * abs(u) ** params.p
            x = u * drift_denominator(params, t) + float(rng.uniform(-1.0, 1.0)) * spread
            residual = fp_residual(params, box, t, x, u)
            self.assertLess(residual, 1e-4, msg=f"{params} t={t} x={x} u={u}")

    def test_plane(self):
        """Test the residual in two dimensions"""
        params = ModelParams(alpha=-1.0, beta=0.5, p=1.0, n=2)
        residual = fp_residual(params, UniformBox(10.0), 0.5, (0.4, -0.2), (-0.9, 0.5))
        self.assertLess(residual, 1e-4)

    def test_non_smooth_points(self):
        """Test stencils crossing kinks are rejected"""
        params = ModelParams(alpha=-1.0)
        with self.assertRaises(NonSmoothPoint):
            fp_residual(params, UniformBox(1.0), 0.5, 0.0, 1.0)
        with self.assertRaises(NonSmoothPoint):
            fp_residual(params.replace(p=1.0), UniformBox(10.0), 0.5, 0.0, 1e-3)
        with self.assertRaises(NonPositiveTime):
            fp_residual(params, UniformBox(10.0), 5e-4, 0.0, 1.0)


def run_tests():
    """Run all tests"""
    test_suite = unittest.TestSuite()
    loader = unittest.TestLoader()
    test_suite.addTest(loader.loadTestsFromTestCase(TestPhaseDensity))
    test_suite.addTest(loader.loadTestsFromTestCase(TestFokkerPlanckResidual))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(test_suite)

    return result.wasSuccessful()


if __name__ == "__main__":
    success = run_tests()
    exit(0 if success else 1)
