#!/usr/bin/env python3
"""
Special functions

Gamma, log-Gamma, modified Bessel functions with real order and Tricomi U, wrapped from
scipy.special with argument checks and an attached relative error estimate.
"""

from typing import NamedTuple

import math

import numpy as np
from scipy import special

from errors import NonPositiveArgument, PoleArgument, SpecialFunctionOverflow

GAMMA_MAX_ARGUMENT = 170.0

# Documented accuracy of the cephes/AMOS routines behind scipy.special,
# padded by two orders of magnitude.
_GAMMA_REL_ERROR = 1e-13
_BESSEL_REL_ERROR = 1e-12
# e^(-z) I_nu(z) comes from its large-argument series above this value.
I_ASYMPTOTIC_MIN = 1e5


class SpecFunResult(NamedTuple):
    """Special function value with an estimated relative error"""

    value: float
    est_rel_error: float


def _check_pole(z: float):
    if z <= 0.0 and float(z).is_integer():
        raise PoleArgument(f"Gamma has a pole at z = {z}")


def gamma(z: float) -> SpecFunResult:
    """Gamma(z) for real z off the poles; negative z via scipy's reflection"""
    _check_pole(z)
    if z > GAMMA_MAX_ARGUMENT:
        raise SpecialFunctionOverflow(f"Gamma({z}) overflows, use log_gamma")
    # Reflection loses a little accuracy on the negative axis.
    error = _GAMMA_REL_ERROR if z > 0.0 else 10.0 * _GAMMA_REL_ERROR
    return SpecFunResult(float(special.gamma(z)), error)


def log_gamma(z: float) -> SpecFunResult:
    """log|Gamma(z)|, usable where Gamma itself overflows"""
    _check_pole(z)
    return SpecFunResult(float(special.gammaln(z)), _GAMMA_REL_ERROR)


def gamma_ratio(a: float, b: float) -> float:
    """Gamma(a)/Gamma(b) through log-Gamma, keeping the sign"""
    _check_pole(a)
    _check_pole(b)
    sign = float(special.gammasgn(a) * special.gammasgn(b))
    return sign * math.exp(special.gammaln(a) - special.gammaln(b))


def bessel_k(nu: float, z: float) -> SpecFunResult:
    """Modified Bessel function of the second kind K_nu(z), z > 0, nu >= 0"""
    _check_k_arguments(nu, z)
    value = float(special.kv(nu, z))
    if math.isinf(value):
        raise SpecialFunctionOverflow(f"K_{nu}({z}) overflows")
    return SpecFunResult(value, _BESSEL_REL_ERROR)


def bessel_k_ratio(nu_top: float, nu_bottom: float, z: float) -> float:
    """K_nu_top(z)/K_nu_bottom(z) through the exponentially scaled form"""
    _check_k_arguments(min(nu_top, nu_bottom), z)
    return float(special.kve(nu_top, z) / special.kve(nu_bottom, z))


def _check_k_arguments(nu: float, z: float):
    if not z > 0.0:
        raise NonPositiveArgument(f"K_nu needs z > 0, got {z}")
    if not nu >= 0.0:
        raise NonPositiveArgument(f"K_nu needs nu >= 0, got {nu}")


def _ive_series(nu: float, z):
    """sqrt(2 pi z) e^(-z) I_nu(z) to O(z^-4) for large z"""
    mu = 4.0 * nu * nu
    a1 = (mu - 1.0) / 8.0
    a2 = a1 * (mu - 9.0) / 16.0
    a3 = a2 * (mu - 25.0) / 24.0
    return 1.0 - a1 / z + a2 / z**2 - a3 / z**3


def _split_large(z):
    """Argument copies for the direct and the large-z branches, and the branch mask"""
    z = np.asarray(z, dtype=float)
    large = z > I_ASYMPTOTIC_MIN
    return np.where(large, 1.0, z), np.where(large, z, I_ASYMPTOTIC_MIN), large


def bessel_i_scaled(nu: float, z):
    """e^(-|z|) I_nu(z), vectorised, z >= 0"""
    direct_z, large_z, large = _split_large(z)
    with np.errstate(all='ignore'):
        asymptotic = _ive_series(nu, large_z) / np.sqrt(2.0 * math.pi * large_z)
        return np.where(large, asymptotic, special.ive(nu, direct_z))


def log_bessel_i_scaled(nu: float, z):
    """log(e^(-z) I_nu(z)), vectorised, z >= 0"""
    direct_z, large_z, large = _split_large(z)
    with np.errstate(all='ignore'):
        asymptotic = -0.5 * np.log(2.0 * math.pi * large_z) + np.log(_ive_series(nu, large_z))
        return np.where(large, asymptotic, np.log(special.ive(nu, direct_z)))


def bessel_i_ratio(nu_top: float, nu_bottom: float, z):
    """I_nu_top(z)/I_nu_bottom(z), vectorised, z >= 0"""
    direct_z, large_z, large = _split_large(z)
    with np.errstate(all='ignore'):
        asymptotic = _ive_series(nu_top, large_z) / _ive_series(nu_bottom, large_z)
        direct = special.ive(nu_top, direct_z) / special.ive(nu_bottom, direct_z)
        return np.where(large, asymptotic, direct)


def tricomi_u(a: float, b: float, z: float) -> float:
    """Confluent hypergeometric function U(a, b, z) of the second kind, z > 0"""
    if not z > 0.0:
        raise NonPositiveArgument(f"U(a, b, z) needs z > 0, got {z}")
    value = float(special.hyperu(a, b, z))
    if not math.isfinite(value):
        raise SpecialFunctionOverflow(f"U({a}, {b}, {z}) is not finite")
    return value


def sphere_area(n: int) -> float:
    """Area of the unit sphere in R^n: 2, 2*pi, 4*pi, ..."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)
