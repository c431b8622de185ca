#!/usr/bin/env python3
"""
Induced velocity of the observable density (n = 1)

The u-marginal rho obeys a continuity equation whose flux defines the induced
velocity

    v(t, x) = -(int_0^x d/dt rho(t, y) dy) / rho(t, x),

which splits into the conditional mean and a correction, v = mean + v1, with
v1 = -(sigma^2/2) int |u|^(2p) dP/dx du / rho = (x - D mean) / (2 S).
For an even f the primitive is odd, so the integral starts at 0.
"""

from typing import Optional

import logging
import math

import numpy as np
from scipy import integrate

from errors import UnsupportedDimension, ZeroDensity
from extrapolation import richardson_limit
from model import (
    InitialDistribution,
    ModelParams,
    VectorLike,
    as_vector,
    critical_time,
)
from moments import (
    QUADRATURE,
    MomentEstimate,
    QuadratureSpec,
    noise_gradient_moment,
    observable_density,
)

logger = logging.getLogger(__name__)

# Relative step of the time difference, applied to min(t, T - t).
_RELATIVE_STEP = 1e-3
_INNER_REL_TOL = 1e-11


def _require_line(params: ModelParams):
    if params.n != 1:
        raise UnsupportedDimension(f"induced velocity is defined for n = 1, got n = {params.n}")


def _inner_spec(spec: QuadratureSpec) -> QuadratureSpec:
    """The time difference divides by h, so rho is integrated more tightly"""
    return spec.replace(rel_tol=min(spec.rel_tol, _INNER_REL_TOL), abs_tol=0.0)


def _mass_to(params, dist, t, x, spec):
    """int_0^x rho(t, y) dy with its error estimate"""

    def rho(y):
        return observable_density(params, dist, t, y, spec).scalar()

    value, error = integrate.quad(
        rho, 0.0, x, epsabs=0.0, epsrel=spec.rel_tol, limit=spec.max_subdivisions
    )
    return value, error


def _time_derivative(params, dist, t, x, spec, h):
    """Central differences of the mass at steps h and h/2, Richardson-combined"""
    rates, noise = [], 0.0
    for step in (h, 0.5 * h):
        ahead, ahead_error = _mass_to(params, dist, t + step, x, spec)
        behind, behind_error = _mass_to(params, dist, t - step, x, spec)
        rates.append((ahead - behind) / (2.0 * step))
        noise = max(noise, (ahead_error + behind_error) / (2.0 * step))
    limit = richardson_limit(2.0, rates, order=2, order_step=2)
    return limit, abs(limit - rates[-1]) + noise


def induced_velocity(
    params: ModelParams,
    dist: InitialDistribution,
    t: float,
    x: VectorLike,
    spec: Optional[QuadratureSpec] = None,
) -> MomentEstimate:
    """
    Induced velocity v(t, x) reconstructed from the observable density

    Args:
        params: model parameters with n = 1
        dist: even initial distribution
        t: time strictly before T
        x: position
        spec: quadrature settings of the u-integrals

    Returns:
        MomentEstimate holding a length-1 vector
    """
    _require_line(params)
    spec = spec or QuadratureSpec()
    x = as_vector(x, 1)
    T = critical_time(params)
    if x[0] == 0.0:
        return MomentEstimate(np.zeros(1), 0.0, QUADRATURE, True)

    inner = _inner_spec(spec)
    density = observable_density(params, dist, t, x, inner)
    if density.scalar() <= 0.0 or not math.isfinite(density.scalar()):
        raise ZeroDensity(f"observable density underflows at t={t}, x={x[0]}")

    h = _RELATIVE_STEP * min(t, T - t)
    if not h > 0.0:
        raise ZeroDensity(f"no room for a time difference at t={t} (T={T})")
    rate, rate_error = _time_derivative(params, dist, t, float(x[0]), inner, h)
    rho = density.scalar()
    value = -rate / rho
    error = rate_error / rho + abs(value) * density.error_bound / rho
    logger.debug(f"induced velocity at t={t}, x={x[0]}: {value:.10g} (+/- {error:.2g})")
    return MomentEstimate(np.array([value]), error, QUADRATURE, density.converged)


def v1_correction(
    params: ModelParams,
    dist: InitialDistribution,
    t: float,
    x: VectorLike,
    spec: Optional[QuadratureSpec] = None,
) -> MomentEstimate:
    """Correction v1 = v - mean, from the analytic x-derivative of P"""
    _require_line(params)
    return noise_gradient_moment(params, dist, t, x, spec)
