#!/usr/bin/env python3
"""
Closed-form conditional moments

Exact expressions for the conditional mean and variance where the velocity
integrals can be done by hand: p = 0 with a uniform or Gaussian initial
distribution, p = 1 and p = 1/2 with a uniform distribution (L -> infinity),
the near-origin slope for power-law distributions, and the residual of the
viscous Burgers equation on the p = 0 Gaussian mean.

Functions whose printed form disagrees with the integrals carry a
*_printed twin so the difference can be measured.
"""

from typing import Optional

import math

import numpy as np

from errors import (
    DivergentIntegral,
    EvaluationAtOrPastBlowup,
    UnsupportedDimension,
    UnsupportedParameters,
    WrongExponent,
)
from model import (
    ModelParams,
    UniformBox,
    VectorLike,
    as_vector,
    burgers_exact,
    critical_time,
    drift_denominator,
    noise_time,
    time_from_epsilon,
    velocity_growth,
)
from specfun import bessel_i_ratio, bessel_k_ratio, tricomi_u


def _require_p(params: ModelParams, p: float):
    if params.p != p:
        raise WrongExponent(f"formula needs p = {p}, got p = {params.p}")


def _require_before_blowup(params: ModelParams, t: float):
    T = critical_time(params)
    if t >= T:
        raise EvaluationAtOrPastBlowup(f"t = {t} is not before T = {T}")


def _require_gaussian_case(params: ModelParams):
    _require_p(params, 0.0)
    if params.beta != 0.0:
        raise UnsupportedParameters(f"Gaussian closed forms need beta = 0, got {params.beta}")
    if params.n != 1:
        raise UnsupportedDimension(f"Gaussian closed forms need n = 1, got {params.n}")


def mean_p0_uniform(params: ModelParams, t: float, x: VectorLike) -> np.ndarray:
    """p = 0 mean: the noise-free Burgers velocity before T, 0 at T"""
    _require_p(params, 0.0)
    T = critical_time(params)
    if t == T:
        return np.zeros(params.n)
    return burgers_exact(params, t, x)


def variance_p0_uniform(params: ModelParams, t: float, x: Optional[VectorLike] = None) -> float:
    """p = 0 total variance n sigma^2 S(t) / D(t)^2, independent of x"""
    _require_p(params, 0.0)
    _require_before_blowup(params, t)
    D = drift_denominator(params, t)
    return params.n * params.sigma**2 * noise_time(params, t) / D**2


def variance_p0_uniform_printed(params: ModelParams, t: float) -> float:
    """Variance as printed: sigma t/(t + 1/alpha)^2, and sigma t/D(t) for beta > 0"""
    _require_p(params, 0.0)
    _require_before_blowup(params, t)
    if params.beta == 0.0:
        return params.sigma * t / (t + 1.0 / params.alpha) ** 2
    return params.sigma * t / drift_denominator(params, t)


def observable_density_p0_uniform(params: ModelParams, dist: UniformBox, t: float) -> float:
    """Interior u-marginal for p = 0 and a uniform box: f_L (g/(|alpha||D|))^n"""
    _require_p(params, 0.0)
    _require_before_blowup(params, t)
    scale = velocity_growth(params, t) / (abs(params.alpha) * abs(drift_denominator(params, t)))
    return math.exp(dist.log_normalization(params.n)) * scale**params.n


def _gaussian_denominator(params: ModelParams, k: float, t: float) -> float:
    alpha, sigma = params.alpha, params.sigma
    return alpha**2 * t**2 + 2.0 * (k**2 * sigma**2 + alpha) * t + 1.0


def gaussian_mean_slope(params: ModelParams, k: float, t: float) -> float:
    """a(t) with mean = a(t) x for p = 0 and a Gaussian f"""
    _require_gaussian_case(params)
    alpha = params.alpha
    return (1.0 + alpha * t) * alpha / _gaussian_denominator(params, k, t)


def gaussian_mean_slope_rate(params: ModelParams, k: float, t: float) -> float:
    """da/dt"""
    _require_gaussian_case(params)
    alpha, sigma = params.alpha, params.sigma
    q = _gaussian_denominator(params, k, t)
    dq = 2.0 * alpha**2 * t + 2.0 * (k**2 * sigma**2 + alpha)
    return (alpha**2 * q - alpha * (1.0 + alpha * t) * dq) / q**2


def mean_p0_gaussian(params: ModelParams, k: float, t: float, x: VectorLike) -> np.ndarray:
    """(1 + alpha t) alpha x / (alpha^2 t^2 + 2(k^2 sigma^2 + alpha) t + 1)"""
    return gaussian_mean_slope(params, k, t) * as_vector(x, params.n)


def variance_p0_gaussian(params: ModelParams, k: float, t: float, x: VectorLike = 0.0) -> float:
    """sigma^2 alpha^2 t / (alpha^2 t^2 + 2(k^2 sigma^2 + alpha) t + 1)"""
    _require_gaussian_case(params)
    return params.sigma**2 * params.alpha**2 * t / _gaussian_denominator(params, k, t)


def tstar_p0_gaussian(params: ModelParams, k: float) -> float:
    """
    Time of the minimum of the mean slope a(t)

    Positive exactly when sigma*k < sqrt(-alpha/2).
    """
    _require_gaussian_case(params)
    alpha = params.alpha
    if alpha >= 0.0:
        raise UnsupportedParameters(f"t* needs alpha < 0, got {alpha}")
    return (math.sqrt(2.0 / -alpha) * params.sigma * k - 1.0) / alpha


def viscous_residual(params: ModelParams, k: float, t: float, x: float, nu: float) -> float:
    """
    Residual u_t + u u_x - nu u_xx of the p = 0 Gaussian mean

    The mean is linear in x, so u_xx = 0 and the residual is x (a' + a^2)
    whatever the viscosity.
    """
    a = gaussian_mean_slope(params, k, t)
    rate = gaussian_mean_slope_rate(params, k, t)
    return x * (rate + a * a)


def _require_powerlaw_case(params: ModelParams):
    _require_p(params, 0.0)
    if params.n != 1:
        raise UnsupportedParameters(f"power-law slope needs n = 1, got {params.n}")
    if params.beta != 0.0:
        raise UnsupportedParameters(f"power-law slope needs beta = 0, got {params.beta}")


def powerlaw_second_moment(s: float, k: float, z: float) -> float:
    """
    E[y^2] under the weight (1 + k^2 y^2)^(-s) exp(-z k^2 y^2) on the line

        U(3/2, 5/2 - s, z) / (2 k^2 U(1/2, 3/2 - s, z))

    At z = 0 it is 1/((2s - 3) k^2), finite for s > 3/2.
    """
    if z == 0.0:
        if s <= 1.5:
            raise DivergentIntegral(f"second moment of the power law diverges for s = {s}")
        return 1.0 / ((2.0 * s - 3.0) * k**2)
    return tricomi_u(1.5, 2.5 - s, z) / (2.0 * k**2 * tricomi_u(0.5, 1.5 - s, z))


def powerlaw_origin_slope(params: ModelParams, s: float, k: float, t: float) -> float:
    """
    Coefficient of x in the p = 0 mean near x = 0 for f ~ (1 + k^2 x^2)^(-s)

        slope = alpha (1 + alpha t) / (sigma^2 t) * E[y^2],
        z = (1 + alpha t)^2 / (2 sigma^2 t k^2),

    with E[y^2] from powerlaw_second_moment. It is alpha at t = 0 and
    vanishes at T.
    """
    _require_powerlaw_case(params)
    if not s > 0.0 or not k > 0.0:
        raise UnsupportedParameters(f"power-law slope needs s > 0 and k > 0, got {s}, {k}")
    alpha, spread = params.alpha, params.sigma**2 * t
    if t == 0.0:
        return alpha
    T = critical_time(params)
    if t > T or t < 0.0:
        raise EvaluationAtOrPastBlowup(f"t = {t} is outside [0, T = {T}]")
    closing = 1.0 + alpha * t
    if closing == 0.0:
        return 0.0
    z = closing**2 / (2.0 * spread * k**2)
    return alpha * closing / spread * powerlaw_second_moment(s, k, z)


def powerlaw_origin_slope_printed(params: ModelParams, s: float, k: float, t: float) -> float:
    """Printed coefficient alpha^2 (1 + alpha t) / ((2(s - 1) - 1) k^2) of x near 0"""
    _require_powerlaw_case(params)
    if s < 2.0 or not float(s).is_integer():
        raise UnsupportedParameters(f"power-law slope needs an integer s >= 2, got {s}")
    alpha = params.alpha
    return alpha**2 * (1.0 + alpha * t) / ((2.0 * (s - 1.0) - 1.0) * k**2)


def mean_p1_uniform(params: ModelParams, t: float, x: VectorLike) -> np.ndarray:
    """p = 1, L -> infinity: D(t) x / (n sigma^2 S(t))"""
    _require_p(params, 1.0)
    if t > critical_time(params):
        raise EvaluationAtOrPastBlowup(f"t = {t} is past T")
    D = drift_denominator(params, t)
    spread = params.sigma**2 * noise_time(params, t)
    return D * as_vector(x, params.n) / (params.n * spread)


def _phalf_argument(params: ModelParams, t: float, xi: float):
    D = drift_denominator(params, t)
    spread = params.sigma**2 * noise_time(params, t)
    return D, spread, abs(D) * xi / spread


def mean_phalf_uniform(params: ModelParams, t: float, x: VectorLike) -> np.ndarray:
    """
    Exact p = 1/2 mean for a uniform box in the L -> infinity limit

        mean = (x/D) K_(n/2+1)(z)/K_(n/2)(z) * I_(n/2)(z)/I_(n/2-1)(z),

    with z = |D| |x| / (sigma^2 S).
    """
    _require_p(params, 0.5)
    _require_before_blowup(params, t)
    x = as_vector(x, params.n)
    xi = float(np.linalg.norm(x))
    if xi == 0.0:
        return np.zeros(params.n)
    n = params.n
    D, _, z = _phalf_argument(params, t, xi)
    k_ratio = bessel_k_ratio(n / 2.0 + 1.0, n / 2.0, z)
    i_ratio = float(bessel_i_ratio(n / 2.0, n / 2.0 - 1.0, z))
    return x / D * k_ratio * i_ratio


def variance_phalf_uniform(params: ModelParams, t: float, x: VectorLike) -> float:
    """Exact p = 1/2 total variance: E|u|^2 - |mean|^2 with E|u|^2 = (|x|/D)^2 K_(n/2+2)/K_(n/2)"""
    _require_p(params, 0.5)
    _require_before_blowup(params, t)
    x = as_vector(x, params.n)
    xi = float(np.linalg.norm(x))
    n = params.n
    if xi == 0.0:
        # z -> 0 limit of (|x|/D)^2 K_(n/2+2)(z)/K_(n/2)(z)
        D = drift_denominator(params, t)
        spread = params.sigma**2 * noise_time(params, t)
        return n * (n + 2.0) * spread**2 / D**4
    D, _, z = _phalf_argument(params, t, xi)
    second = (xi / D) ** 2 * bessel_k_ratio(n / 2.0 + 2.0, n / 2.0, z)
    mean = mean_phalf_uniform(params, t, x)
    return second - float(mean @ mean)


def mean_phalf_uniform_neareps(params: ModelParams, eps: float, x: VectorLike) -> np.ndarray:
    """
    Leading near-blowup form of the p = 1/2 mean

        mean ~ sign(D) x |x| / (n sigma^2 S) * K_(n/2+1)(z)/K_(n/2)(z)

    with z = |D||x|/(sigma^2 S). It drops the factor
    I_(n/2)(z)/I_(n/2-1)(z) / (z/n) = 1 + O(z^2) of the exact mean.
    """
    _require_p(params, 0.5)
    t = time_from_epsilon(params, eps)
    x = as_vector(x, params.n)
    xi = float(np.linalg.norm(x))
    if xi == 0.0:
        return np.zeros(params.n)
    n = params.n
    D, spread, z = _phalf_argument(params, t, xi)
    return math.copysign(1.0, D) * x * xi / (n * spread) * bessel_k_ratio(n / 2.0 + 1.0, n / 2.0, z)


def mean_phalf_uniform_neareps_printed(
    params: ModelParams, eps: float, x: VectorLike
) -> np.ndarray:
    """
    Printed p = 1/2 form (beta = 0)

        2 alpha sqrt(1-eps) x |x| / (n sigma^2) * K_(n/2+1)(w)/K_(n/2)(w),
        w = eps |x| / (sigma^2 sqrt(1-eps))

    It tends to twice the leading term alpha x / eps as eps -> 0.
    """
    _require_p(params, 0.5)
    if params.beta != 0.0:
        raise UnsupportedParameters("printed p = 1/2 form needs beta = 0")
    x = as_vector(x, params.n)
    xi = float(np.linalg.norm(x))
    if xi == 0.0:
        return np.zeros(params.n)
    n, sigma = params.n, params.sigma
    w = eps * xi / (sigma**2 * math.sqrt(1.0 - eps))
    prefactor = 2.0 * params.alpha * math.sqrt(1.0 - eps) * xi / (n * sigma**2)
    return prefactor * x * bessel_k_ratio(n / 2.0 + 1.0, n / 2.0, w)
