#!/usr/bin/env python3
"""
Phase-space density of the Burgers medium

Closed-form density P(t, x, u) of particles at position x with velocity u,
for the linear initial profile u0 = alpha*x and the noise sigma*|U|^p dW on
the positions, together with a finite-difference check of the Fokker-Planck
equation it solves.

For every beta >= 0, with g = e^(beta t), D = D(t) and S = S(t) from model.py,

    P = f(u g/alpha) g^n |alpha|^-n (2 pi sigma^2 S)^(-n/2) |u|^(-p n)
        * exp(-|u D - x|^2 / (2 sigma^2 S |u|^(2p)))

which reduces to the beta = 0 form when g = 1, D = 1/alpha + t and S = t.
"""

from typing import NamedTuple

import logging
import math

import numpy as np

from errors import NonPositiveTime, NonSmoothPoint, ZeroVelocityWithPositiveP
from model import (
    InitialDistribution,
    ModelParams,
    UniformBox,
    VectorLike,
    as_vector,
    drift_denominator,
    noise_time,
    velocity_growth,
)

logger = logging.getLogger(__name__)


class DensityValue(NamedTuple):
    """Density value with its natural logarithm"""

    value: float
    log_value: float


def log_phase_density_rows(
    params: ModelParams,
    dist: InitialDistribution,
    t: float,
    x: VectorLike,
    u_rows: np.ndarray,
) -> np.ndarray:
    """
    log P(t, x, u) for many velocities at once

    Args:
        u_rows: array of shape (m, n); rows with u = 0 give -inf when p > 0

    Returns:
        array of shape (m,), -inf where f vanishes
    """
    if not t > 0.0:
        raise NonPositiveTime(f"phase density needs t > 0, got {t}")
    n = params.n
    x = as_vector(x, n)
    u_rows = np.asarray(u_rows, dtype=float).reshape(-1, n)

    g = velocity_growth(params, t)
    D = drift_denominator(params, t)
    spread = params.sigma**2 * noise_time(params, t)

    gap = u_rows * D - x
    gap_squared = np.sum(gap * gap, axis=-1)
    log_value = (
        dist.log_density(u_rows * g / params.alpha)
        + n * (math.log(g) - math.log(abs(params.alpha)))
        - 0.5 * n * math.log(2.0 * math.pi * spread)
    )
    if params.p > 0.0:
        speed_squared = np.sum(u_rows * u_rows, axis=-1)
        with np.errstate(divide='ignore', invalid='ignore'):
            log_speed = 0.5 * np.log(speed_squared)
            exponent = gap_squared / (2.0 * spread * speed_squared**params.p)
            log_value = log_value - params.p * n * log_speed - exponent
        log_value = np.where(speed_squared > 0.0, log_value, -np.inf)
    else:
        log_value = log_value - gap_squared / (2.0 * spread)
    return np.where(np.isnan(log_value), -np.inf, log_value)


def log_phase_density(
    params: ModelParams,
    dist: InitialDistribution,
    t: float,
    x: VectorLike,
    u: VectorLike,
) -> float:
    """log P(t, x, u); -inf where f vanishes"""
    u = as_vector(u, params.n)
    if params.p > 0.0 and not np.any(u):
        raise ZeroVelocityWithPositiveP(f"u = 0 is singular for p = {params.p}")
    return float(log_phase_density_rows(params, dist, t, x, u[np.newaxis, :])[0])


def phase_density(
    params: ModelParams,
    dist: InitialDistribution,
    t: float,
    x: VectorLike,
    u: VectorLike,
) -> DensityValue:
    """
    Evaluate the phase-space density P(t, x, u)

    Args:
        params: model parameters
        dist: initial particle distribution f
        t: time, t > 0
        x: position vector of length n
        u: velocity vector of length n, nonzero when p > 0

    Returns:
        DensityValue with the density and its logarithm
    """
    log_value = log_phase_density(params, dist, t, x, u)
    return DensityValue(math.exp(log_value), log_value)


def _check_stencil(params, dist, t, u, h):
    if not t > h:
        raise NonPositiveTime(f"stencil t - h must stay positive (t={t}, h={h})")
    if params.p > 0.0 and float(np.linalg.norm(u)) <= 2.0 * h:
        raise NonSmoothPoint(f"stencil reaches u = 0 (|u| <= 2h, h={h})")
    if isinstance(dist, UniformBox):
        g_now = velocity_growth(params, t) / abs(params.alpha)
        g_next = velocity_growth(params, t + h) / abs(params.alpha)
        initial = np.abs(u) * g_now
        margin = 2.0 * h * g_next + np.abs(u) * (g_next - g_now)
        if np.any(np.abs(initial - dist.L) <= margin):
            raise NonSmoothPoint(f"u/alpha within {h} of the box boundary L={dist.L}")


def fp_residual(
    params: ModelParams,
    dist: InitialDistribution,
    t: float,
    x: VectorLike,
    u: VectorLike,
    h: float = 1e-3,
) -> float:
    """
    Relative residual of the Fokker-Planck equation at a smooth point

        P_t = -u . grad_x P + beta (u . grad_u P + n P) + (sigma^2/2) |u|^(2p) lap_x P

    Derivatives are central differences of step h. The residual is
    |lhs - rhs| divided by the largest magnitude among the four terms.
    """
    n = params.n
    x = as_vector(x, n)
    u = as_vector(u, n)
    _check_stencil(params, dist, t, u, h)

    def density(tt, xx, uu):
        return phase_density(params, dist, tt, xx, uu).value

    centre = density(t, x, u)
    time_rate = (density(t + h, x, u) - density(t - h, x, u)) / (2.0 * h)
    transport = 0.0
    friction_flux = 0.0
    laplacian = 0.0
    for axis in range(n):
        step = np.zeros(n)
        step[axis] = h
        forward_x = density(t, x + step, u)
        backward_x = density(t, x - step, u)
        transport -= u[axis] * (forward_x - backward_x) / (2.0 * h)
        laplacian += (forward_x - 2.0 * centre + backward_x) / (h * h)
        forward_u = density(t, x, u + step)
        backward_u = density(t, x, u - step)
        friction_flux += u[axis] * (forward_u - backward_u) / (2.0 * h)

    friction = params.beta * (friction_flux + n * centre)
    speed = float(np.linalg.norm(u))
    diffusion = 0.5 * params.sigma**2 * speed ** (2.0 * params.p) * laplacian

    terms = [abs(time_rate), abs(transport), abs(friction), abs(diffusion)]
    scale = max(terms)
    if scale == 0.0:
        return 0.0
    residual = abs(time_rate - (transport + friction + diffusion)) / scale
    logger.debug(f"FP residual at t={t}, x={x}, u={u}: {residual:.3e}")
    return residual
