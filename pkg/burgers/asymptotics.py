#!/usr/bin/env python3
"""
Near-blowup asymptotics

Leading terms of the conditional mean and variance as eps = 1 - t/T -> 0 and
as x -> 0, the blow-up constant C of the p > 1 regime, and the log-log slope
test that separates blowup-like (p < 1) from decay-like (p >= 1) behaviour.

Two forms are offered wherever the printed constants disagree with the
integrals: form='derived' (the default, the leading term of the u-integrals)
and form='printed'.
"""

from typing import List, NamedTuple, Optional, Sequence

import logging
import math

import numpy as np

from errors import OutOfRegime, UndefinedAtP1, UnsupportedParameters
from extrapolation import fit_loglog_slope, richardson_limit
from model import (
    InitialDistribution,
    ModelParams,
    UniformBox,
    VectorLike,
    as_vector,
    critical_time,
    drift_denominator,
    noise_time,
    time_from_epsilon,
    velocity_growth,
)
from moments import QuadratureSpec, conditional_mean
from specfun import gamma_ratio, sphere_area

logger = logging.getLogger(__name__)

SUBCRITICAL = 'subcritical'
CRITICAL = 'critical'
SUPERCRITICAL = 'supercritical'

DERIVED = 'derived'
PRINTED = 'printed'

BLOWUP_LIKE = 'blowup-like'
DECAY_LIKE = 'decay-like'
INCONCLUSIVE = 'inconclusive'

THRESHOLD_EPSILONS = (0.04, 0.02, 0.01, 0.005)


class AsymptoticCoefficients(NamedTuple):
    """Constants of the near-blowup expansions for one parameter set"""

    C_blowup: Optional[float]
    C_blowup_printed: Optional[float]
    F_variance: Optional[float]
    F_variance_printed: Optional[float]
    regime: str


class VarianceAsymptote(NamedTuple):
    """Leading variance value, or the eps exponent of its divergence"""

    value: Optional[float]
    exponent: Optional[float]


def regime_of(p: float) -> str:
    if p < 1.0:
        return SUBCRITICAL
    if p == 1.0:
        return CRITICAL
    return SUPERCRITICAL


def _check_form(form: str):
    if form not in (DERIVED, PRINTED):
        raise ValueError(f"form must be '{DERIVED}' or '{PRINTED}', got '{form}'")


def _noise_time_at_blowup(params: ModelParams) -> float:
    T = critical_time(params)
    if not math.isfinite(T):
        raise UnsupportedParameters(f"no blow-up for alpha={params.alpha}, beta={params.beta}")
    return noise_time(params, T)


def blowup_coefficient(params: ModelParams, form: str = DERIVED) -> float:
    """
    Constant C of mean ~ -C eps x |x|^(2(1-p)/p) for p > 1

    derived: (T/(n sigma^2 S_T)) (1/(2 sigma^2 S_T))^((1-p)/p)
             * Gamma((n+2)(p-1)/(2p)) / Gamma(n(p-1)/(2p)),   S_T = S(T)
    printed: -(1/alpha) (sqrt(-alpha/(2 sigma^2)))^((1-p)/(2p)) * same Gamma ratio
    """
    _check_form(form)
    p, n, sigma = params.p, params.n, params.sigma
    if p == 1.0:
        raise UndefinedAtP1("Gamma(0) pole: the p = 1 mean is linear in eps with its own slope")
    if p < 1.0:
        raise OutOfRegime(f"blow-up constant needs p > 1, got {p}")
    ratio = gamma_ratio((n + 2.0) * (p - 1.0) / (2.0 * p), n * (p - 1.0) / (2.0 * p))
    if form == PRINTED:
        if params.beta != 0.0:
            raise UnsupportedParameters("printed constant is stated for beta = 0")
        base = math.sqrt(-params.alpha / (2.0 * sigma**2))
        return -(1.0 / params.alpha) * base ** ((1.0 - p) / (2.0 * p)) * ratio
    T = critical_time(params)
    spread = sigma**2 * _noise_time_at_blowup(params)
    return T / (n * spread) * (1.0 / (2.0 * spread)) ** ((1.0 - p) / p) * ratio


def variance_coefficient(params: ModelParams, form: str = DERIVED) -> float:
    """
    F with variance ~ F |x|^(2/p) as eps -> 0

    derived: (1/(2 sigma^2 S_T))^(1/p) Gamma((n(p-1)-2)/(2p)) / Gamma(n(p-1)/(2p)),
             finite for p > 1 + 2/n
    printed: the same with 4 sigma^2 S_T, stated for p > 1 + 4/n
    """
    _check_form(form)
    p, n = params.p, params.n
    threshold = 1.0 + (4.0 if form == PRINTED else 2.0) / n
    if p <= threshold:
        raise OutOfRegime(f"variance coefficient needs p > {threshold:g}, got {p}")
    spread = params.sigma**2 * _noise_time_at_blowup(params)
    width = 4.0 * spread if form == PRINTED else 2.0 * spread
    ratio = gamma_ratio((n * (p - 1.0) - 2.0) / (2.0 * p), n * (p - 1.0) / (2.0 * p))
    return (1.0 / width) ** (1.0 / p) * ratio


def coefficients(params: ModelParams) -> AsymptoticCoefficients:
    """Collect every constant that is defined for these parameters"""

    def defined(function, form):
        try:
            return function(params, form)
        except (OutOfRegime, UndefinedAtP1, UnsupportedParameters):
            return None

    return AsymptoticCoefficients(
        C_blowup=defined(blowup_coefficient, DERIVED),
        C_blowup_printed=defined(blowup_coefficient, PRINTED),
        F_variance=defined(variance_coefficient, DERIVED),
        F_variance_printed=defined(variance_coefficient, PRINTED),
        regime=regime_of(params.p),
    )


def predicted_mean_near_T(
    params: ModelParams, eps: float, x: VectorLike, form: str = DERIVED
) -> np.ndarray:
    """
    Leading term of the mean as eps -> 0

    p < 1:  x / D(t), which is alpha x / eps for beta = 0
    p = 1:  D(t) x / (n sigma^2 S(t)) (derived), eps x / alpha (printed)
    p > 1:  -C eps x |x|^(2(1-p)/p)
    """
    _check_form(form)
    x = as_vector(x, params.n)
    t = time_from_epsilon(params, eps)
    p = params.p
    if p < 1.0:
        return x / drift_denominator(params, t)
    if p == 1.0:
        if form == PRINTED:
            return eps * x / params.alpha
        spread = params.sigma**2 * noise_time(params, t)
        return drift_denominator(params, t) * x / (params.n * spread)
    xi = float(np.linalg.norm(x))
    C = blowup_coefficient(params, form)
    return -C * eps * x * xi ** (2.0 * (1.0 - p) / p)


def predicted_mean_near_origin(
    params: ModelParams, eps: float, x: VectorLike, form: str = DERIVED
) -> np.ndarray:
    """
    Leading term of the mean as x -> 0 at fixed eps

    x / D(t) for p != 1: alpha x / eps when beta = 0 and
    beta x / ((beta/alpha + 1)^eps - 1) when beta > 0. At p = 1 the slope
    is D/(n sigma^2 S) instead; form='printed' keeps x / D(t) there too.
    """
    _check_form(form)
    x = as_vector(x, params.n)
    alpha, beta = params.alpha, params.beta
    if params.p == 1.0 and form == DERIVED:
        t = time_from_epsilon(params, eps)
        D = drift_denominator(params, t)
        return D * x / (params.n * params.sigma**2 * noise_time(params, t))
    if beta == 0.0:
        return alpha / eps * x
    return beta / ((beta / alpha + 1.0) ** eps - 1.0) * x


def variance_asymptote(
    params: ModelParams, eps: float, x: VectorLike, form: str = DERIVED
) -> VarianceAsymptote:
    """
    Leading behaviour of the variance as eps -> 0

    p > 1 + 2/n (printed: 1 + 4/n): value F |x|^(2/p); the printed form
    also carries its first-order factor (1 - (n(p-1) - (p+2)) eps/(2p)).
    p < 1: the variance diverges like eps^e with e = -2/(1-p); the printed
    exponent -4m/(2m-1) is stated for p = 1/m only.
    """
    _check_form(form)
    x = as_vector(x, params.n)
    p, n = params.p, params.n
    if p < 1.0:
        if form == DERIVED:
            return VarianceAsymptote(None, -2.0 / (1.0 - p))
        m = 1.0 / p if p > 0.0 else math.inf
        if not math.isfinite(m) or abs(m - round(m)) > 1e-12:
            raise OutOfRegime(f"printed divergence rate needs p = 1/m, got {p}")
        m = round(m)
        return VarianceAsymptote(None, -4.0 * m / (2.0 * m - 1.0))
    F = variance_coefficient(params, form)
    xi = float(np.linalg.norm(x))
    value = F * xi ** (2.0 / p)
    if form == PRINTED:
        value *= 1.0 - (n * (p - 1.0) - (p + 2.0)) / (2.0 * p) * eps
    return VarianceAsymptote(value, None)


def variance_near_origin(params: ModelParams, eps: float, form: str = DERIVED) -> float:
    """
    Variance at x -> 0 for fixed eps, p > 1

    derived: (2 sigma^2 S / D^2)^(1/(1-p)) Gamma(n/2 + 1/(1-p)) / Gamma(n/2),
             finite for p > 1 + 2/n
    printed: Gamma((n(p-1)-2)/(2p)) / Gamma(n/2) (-eps^2/(4 alpha sigma^2 (1-eps)))^(1/(p-1))
    """
    _check_form(form)
    p, n, sigma = params.p, params.n, params.sigma
    if p <= 1.0 + 2.0 / n:
        raise OutOfRegime(f"near-origin variance needs p > {1.0 + 2.0 / n:g}, got {p}")
    if form == PRINTED:
        base = -(eps**2) / (4.0 * params.alpha * sigma**2 * (1.0 - eps))
        ratio = gamma_ratio((n * (p - 1.0) - 2.0) / (2.0 * p), n / 2.0)
        return ratio * base ** (1.0 / (p - 1.0))
    t = time_from_epsilon(params, eps)
    D = drift_denominator(params, t)
    spread = sigma**2 * noise_time(params, t)
    ratio = gamma_ratio(n / 2.0 + 1.0 / (1.0 - p), n / 2.0)
    return (2.0 * spread / D**2) ** (1.0 / (1.0 - p)) * ratio


def observable_density_near_origin(
    params: ModelParams, dist: UniformBox, eps: float, form: str = DERIVED
) -> float:
    """
    u-marginal at x = 0 for a uniform box in the L -> infinity limit

    derived: f_L (g/(|alpha||D|))^n omega_n pi^(-n/2) Gamma(n/2) / (2|1-p|), exact at x = 0
    printed: f_L (eps^2 pi)^(-n/2) Gamma(n/2) / (2|p-1|)
    """
    _check_form(form)
    p, n = params.p, params.n
    if p == 1.0:
        raise UndefinedAtP1("the u-marginal at x = 0 diverges logarithmically for p = 1")
    f_L = math.exp(dist.log_normalization(n))
    gamma_half = math.gamma(n / 2.0)
    if form == PRINTED:
        return f_L * (eps**2 * math.pi) ** (-n / 2.0) * gamma_half / (2.0 * abs(p - 1.0))
    t = time_from_epsilon(params, eps)
    scale = velocity_growth(params, t) / (abs(params.alpha) * abs(drift_denominator(params, t)))
    return (
        f_L * scale**n * sphere_area(n) * math.pi ** (-n / 2.0) * gamma_half / (2.0 * abs(1.0 - p))
    )


def calibrate_blowup_coefficient(
    params: ModelParams,
    dist: Optional[InitialDistribution] = None,
    x: float = 1.0,
    eps_values: Sequence[float] = (1e-2, 1e-3),
    spec: Optional[QuadratureSpec] = None,
) -> float:
    """
    Fit C from quadrature of the mean at small eps

    Each eps gives -mean / (eps x |x|^(2(1-p)/p)); the values are extrapolated
    to eps -> 0 assuming a correction linear in eps.
    """
    if params.p <= 1.0:
        raise OutOfRegime(f"blow-up constant needs p > 1, got {params.p}")
    dist = dist or UniformBox(1.0)
    vector = np.zeros(params.n)
    vector[0] = x
    power = abs(x) ** (2.0 * (1.0 - params.p) / params.p)
    estimates = []
    for eps in eps_values:
        t = time_from_epsilon(params, eps)
        mean = conditional_mean(params, dist, t, vector, spec).value[0]
        estimates.append(-mean / (eps * x * power))
        logger.debug(f"C estimate at eps={eps:g}: {estimates[-1]:.8g}")
    if len(estimates) == 1:
        return estimates[0]
    ratio = eps_values[0] / eps_values[1]
    return richardson_limit(ratio, estimates)


def mean_epsilon_slope(
    params: ModelParams,
    dist: InitialDistribution,
    x: float = 1.0,
    eps_values: Sequence[float] = THRESHOLD_EPSILONS,
    spec: Optional[QuadratureSpec] = None,
) -> float:
    """Fitted slope of log|mean(eps, x)| against log eps"""
    vector = np.zeros(params.n)
    vector[0] = x
    means: List[float] = []
    for eps in eps_values:
        t = time_from_epsilon(params, eps)
        means.append(float(conditional_mean(params, dist, t, vector, spec).value[0]))
    slope, _ = fit_loglog_slope(eps_values, means)
    return slope


def threshold_verdict(slope: float, tolerance: float = 0.25) -> str:
    """blowup-like for slopes near -1, decay-like near +1"""
    if abs(slope + 1.0) <= tolerance:
        return BLOWUP_LIKE
    if abs(slope - 1.0) <= tolerance:
        return DECAY_LIKE
    return INCONCLUSIVE
