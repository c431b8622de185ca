#!/usr/bin/env python3
"""
Tests for model parameters, critical times and initial distributions
"""

import math
import unittest

import numpy as np
from scipy import integrate

from errors import (
    ConfigInvalid,
    DimensionMismatch,
    EvaluationAtOrPastBlowup,
    UnsupportedDimension,
    UnsupportedParameters,
)
from model import (
    NO_BLOWUP,
    EvalPoint,
    GaussianDistribution,
    ModelParams,
    PowerLaw,
    UniformBox,
    as_vector,
    burgers_exact,
    critical_time,
    distribution_from_dict,
    drift_denominator,
    epsilon_from_time,
    has_blowup,
    initial_density,
    time_from_epsilon,
)


class TestModelParams(unittest.TestCase):
    """Test parameter validation"""

    def test_defaults(self):
        """Test default parameter values"""
        params = ModelParams(alpha=-1.0)
        self.assertEqual(params.beta, 0.0)
        self.assertEqual(params.sigma, 1.0)
        self.assertEqual(params.p, 0.0)
        self.assertEqual(params.n, 1)

    def test_invalid_fields_are_named(self):
        """Test that each invalid field is reported by name"""
        cases = [
            ({'alpha': 0.0}, 'alpha'),
            ({'alpha': -1.0, 'sigma': 0.0}, 'sigma'),
            ({'alpha': -1.0, 'beta': -0.1}, 'beta'),
            ({'alpha': -1.0, 'p': -1.0}, 'p'),
            ({'alpha': -1.0, 'n': 0}, 'n'),
        ]
        for kwargs, field in cases:
            with self.assertRaises(ConfigInvalid) as context:
                ModelParams(**kwargs)
            self.assertEqual(context.exception.field, field)

    def test_replace(self):
        """Test copying with changed fields"""
        params = ModelParams(alpha=-1.0, p=2.0)
        changed = params.replace(p=0.5, n=2)
        self.assertEqual(changed.p, 0.5)
        self.assertEqual(changed.n, 2)
        self.assertEqual(params.p, 2.0)


class TestCriticalTime(unittest.TestCase):
    """Test the blow-up time and the time/epsilon conversions"""

    def test_no_friction(self):
        """Test T = -1/alpha without friction"""
        self.assertEqual(critical_time(ModelParams(alpha=-1.0)), 1.0)
        self.assertEqual(critical_time(ModelParams(alpha=-4.0)), 0.25)

    def test_no_blowup(self):
        """Test the sentinel for profiles that never steepen"""
        self.assertEqual(critical_time(ModelParams(alpha=1.0)), NO_BLOWUP)
        self.assertEqual(critical_time(ModelParams(alpha=-0.5, beta=1.0)), NO_BLOWUP)
        self.assertFalse(has_blowup(ModelParams(alpha=-1.0, beta=1.0)))

    def test_friction(self):
        """Test T = ln(alpha/(alpha + beta))/beta"""
        params = ModelParams(alpha=-2.0, beta=1.0)
        self.assertAlmostEqual(critical_time(params), math.log(2.0), places=14)
        self.assertAlmostEqual(drift_denominator(params, math.log(2.0)), 0.0, places=14)

    def test_small_friction_limit(self):
        """Test continuity of T as beta -> 0"""
        self.assertAlmostEqual(critical_time(ModelParams(alpha=-1.0, beta=1e-9)), 1.0, places=8)

    def test_epsilon_round_trip(self):
        """Test t = T(1 - eps) and its inverse"""
        params = ModelParams(alpha=-1.0)
        self.assertAlmostEqual(time_from_epsilon(params, 0.1), 0.9)
        self.assertAlmostEqual(epsilon_from_time(params, 0.9), 0.1)
        self.assertIsNone(epsilon_from_time(ModelParams(alpha=1.0), 0.5))
        with self.assertRaises(UnsupportedParameters):
            time_from_epsilon(ModelParams(alpha=1.0), 0.1)

    def test_eval_point(self):
        """Test evaluation points carry their distance to blow-up"""
        params = ModelParams(alpha=-1.0)
        point = EvalPoint.near_blowup(params, 0.1, 1.0)
        self.assertAlmostEqual(point.t, 0.9)
        self.assertEqual(point.x, (1.0,))
        self.assertTrue(point.before_blowup)
        self.assertAlmostEqual(EvalPoint.at(params, 0.5, [2.0]).epsilon, 0.5)


class TestBurgersExact(unittest.TestCase):
    """Test the inviscid solution"""

    def test_linear_profile(self):
        """Test u = x/(t + 1/alpha)"""
        params = ModelParams(alpha=-1.0)
        np.testing.assert_allclose(burgers_exact(params, 0.5, 1.0), [-2.0])
        np.testing.assert_allclose(burgers_exact(params, 0.0, [1.0]), [-1.0])

    def test_friction_profile(self):
        """Test u = x/D(t) with friction"""
        params = ModelParams(alpha=-2.0, beta=1.0, n=2)
        t = 0.3
        D = math.exp(t) / -2.0 + math.expm1(t)
        np.testing.assert_allclose(burgers_exact(params, t, [1.0, -2.0]), [1.0 / D, -2.0 / D])

    def test_at_blowup(self):
        """Test evaluation at T is rejected"""
        with self.assertRaises(EvaluationAtOrPastBlowup):
            burgers_exact(ModelParams(alpha=-1.0), 1.0, 1.0)

    def test_dimension_mismatch(self):
        """Test vectors must have n components"""
        with self.assertRaises(DimensionMismatch):
            as_vector([1.0, 2.0], 1)


class TestInitialDistributions(unittest.TestCase):
    """Test normalization and sampling of the initial distributions"""

    def setUp(self):
        """Set up test fixtures"""
        self.uniforms = np.random.default_rng(0).random((100000, 1))

    def integral(self, dist):
        value, _ = integrate.quad(
            lambda x: initial_density(dist, x), -np.inf, np.inf, epsabs=1e-12, epsrel=1e-12
        )
        return value

    def test_uniform_box(self):
        """Test f_L = 1/(2L) inside the box and 0 outside"""
        dist = UniformBox(2.0)
        self.assertAlmostEqual(initial_density(dist, 0.5), 0.25)
        self.assertEqual(initial_density(dist, 3.0), 0.0)
        self.assertAlmostEqual(initial_density(UniformBox(1.0), [0.2, -0.3]), 0.25)
        value, _ = integrate.quad(lambda x: initial_density(dist, x), -2.0, 2.0)
        self.assertAlmostEqual(value, 1.0, places=10)

    def test_gaussian_normalization(self):
        """Test the Gaussian integrates to 1"""
        self.assertAlmostEqual(self.integral(GaussianDistribution(2.0)), 1.0, places=8)

    def test_powerlaw_normalization(self):
        """Test the normalizable power law integrates to 1"""
        self.assertAlmostEqual(self.integral(PowerLaw(s=2.0, k=1.0)), 1.0, places=8)
        self.assertAlmostEqual(self.integral(PowerLaw(s=1.5, k=3.0)), 1.0, places=8)
        self.assertAlmostEqual(initial_density(PowerLaw(s=2.0), 0.0), 2.0 / math.pi)

    def test_powerlaw_dimension(self):
        """Test power laws are restricted to the line"""
        with self.assertRaises(UnsupportedDimension):
            initial_density(PowerLaw(s=2.0), [0.0, 0.0])

    def test_uniform_sampling(self):
        """Test the uniform map u -> L(2u - 1)"""
        draws = UniformBox(2.0).sample(np.array([[0.5], [0.75]]))
        np.testing.assert_allclose(draws, [[0.0], [1.0]])

    def test_gaussian_sampling(self):
        """Test Gaussian draws have variance 1/(2k^2)"""
        draws = GaussianDistribution(2.0).sample(self.uniforms)
        self.assertAlmostEqual(float(np.var(draws)), 0.125, delta=0.125 * 0.02)

    def test_powerlaw_sampling(self):
        """Test P(|x| < 1) = 1/2 + 1/pi for s = 2"""
        draws = PowerLaw(s=2.0).sample(self.uniforms)
        fraction = float(np.mean(np.abs(draws) < 1.0))
        self.assertAlmostEqual(fraction, 0.5 + 1.0 / math.pi, delta=0.01)
        with self.assertRaises(UnsupportedParameters):
            PowerLaw(s=0.4).sample(self.uniforms)

    def test_from_dict(self):
        """Test building distributions from config dictionaries"""
        self.assertEqual(distribution_from_dict({'kind': 'uniform', 'L': 3.0}), UniformBox(3.0))
        self.assertEqual(distribution_from_dict(PowerLaw(0.75, 2.0).to_dict()), PowerLaw(0.75, 2.0))
        with self.assertRaises(ConfigInvalid):
            distribution_from_dict({'kind': 'cauchy'})
        with self.assertRaises(ConfigInvalid):
            UniformBox(0.0)


def run_tests():
    """Run all tests"""
    test_suite = unittest.TestSuite()
    loader = unittest.TestLoader()
    test_suite.addTest(loader.loadTestsFromTestCase(TestModelParams))
    test_suite.addTest(loader.loadTestsFromTestCase(TestCriticalTime))
    test_suite.addTest(loader.loadTestsFromTestCase(TestBurgersExact))
    test_suite.addTest(loader.loadTestsFromTestCase(TestInitialDistributions))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(test_suite)

    return result.wasSuccessful()


if __name__ == "__main__":
    success = run_tests()
    exit(0 if success else 1)
