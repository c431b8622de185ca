#!/usr/bin/env python3
"""
Model parameters and the noise-free Burgers medium

Parameter records for the stochastic particle system, the critical time of
the linear velocity profile u0(x) = alpha*x, the exact inviscid solution and
the three initial particle distributions (uniform box, Gaussian, power law).
"""

from typing import Any, Dict, Optional, Sequence, Tuple, Union

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import special

from errors import (
    ConfigInvalid,
    DimensionMismatch,
    EvaluationAtOrPastBlowup,
    UnsupportedDimension,
    UnsupportedParameters,
)

# Returned by critical_time when the profile never steepens into a shock.
NO_BLOWUP = math.inf

VectorLike = Union[float, Sequence[float], np.ndarray]


@dataclass(frozen=True)
class ModelParams:
    """Physical and stochastic parameters of the particle system"""

    alpha: float
    beta: float = 0.0
    sigma: float = 1.0
    p: float = 0.0
    n: int = 1

    def __post_init__(self):
        if not math.isfinite(self.alpha) or self.alpha == 0.0:
            raise ConfigInvalid('alpha', f"must be finite and nonzero, got {self.alpha}")
        if not self.beta >= 0.0:
            raise ConfigInvalid('beta', f"must be >= 0, got {self.beta}")
        if not self.sigma > 0.0:
            raise ConfigInvalid('sigma', f"must be > 0, got {self.sigma}")
        if not self.p >= 0.0:
            raise ConfigInvalid('p', f"must be >= 0, got {self.p}")
        if int(self.n) != self.n or self.n < 1:
            raise ConfigInvalid('n', f"must be an integer >= 1, got {self.n}")

    def replace(self, **changes) -> 'ModelParams':
        """Copy with some fields changed"""
        values = asdict(self)
        values.update(changes)
        return ModelParams(**values)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class InitialDistribution:
    """Even initial particle density f(x)"""

    kind = 'abstract'

    @property
    def support_radius(self) -> float:
        return math.inf

    def log_normalization(self, n: int) -> float:
        raise NotImplementedError

    def log_profile(self, radius):
        """log f as a function of |x|, without the support cut"""
        raise NotImplementedError

    def radial_tail_slope(self) -> Optional[float]:
        """
        Growth rate of log f in log|x| as |x| -> infinity

        None means faster than any power (Gaussian decay).
        """
        raise NotImplementedError

    def check_dimension(self, n: int):
        pass

    def log_density(self, points: np.ndarray) -> np.ndarray:
        """log f at points of shape (..., n); -inf outside the support"""
        points = np.asarray(points, dtype=float)
        n = points.shape[-1]
        self.check_dimension(n)
        radius = np.sqrt(np.sum(points * points, axis=-1))
        return self.log_normalization(n) + self.log_profile(radius)

    def sample(self, uniforms: np.ndarray) -> np.ndarray:
        """Map uniforms in (0, 1) of shape (count, n) to draws from f"""
        raise NotImplementedError

    def to_dict(self) -> Dict[str, Any]:
        raise NotImplementedError


@dataclass(frozen=True)
class UniformBox(InitialDistribution):
    """f_L = 1/(2L)^n on the cube [-L, L]^n"""

    L: float = 1.0
    kind = 'uniform'

    def __post_init__(self):
        if not self.L > 0.0:
            raise ConfigInvalid('distribution.L', f"must be > 0, got {self.L}")

    @property
    def support_radius(self) -> float:
        return self.L

    def log_normalization(self, n: int) -> float:
        return -n * math.log(2.0 * self.L)

    def log_profile(self, radius):
        return np.zeros_like(np.asarray(radius, dtype=float))

    def radial_tail_slope(self) -> Optional[float]:
        return 0.0

    def log_density(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        inside = np.all(np.abs(points) <= self.L, axis=-1)
        return np.where(inside, self.log_normalization(points.shape[-1]), -np.inf)

    def sample(self, uniforms: np.ndarray) -> np.ndarray:
        return self.L * (2.0 * np.asarray(uniforms) - 1.0)

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'L': self.L}


@dataclass(frozen=True)
class GaussianDistribution(InitialDistribution):
    """f = (k/sqrt(pi))^n exp(-k^2 |x|^2)"""

    k: float = 1.0
    kind = 'gaussian'

    def __post_init__(self):
        if not self.k > 0.0:
            raise ConfigInvalid('distribution.k', f"must be > 0, got {self.k}")

    def log_normalization(self, n: int) -> float:
        return n * (math.log(self.k) - 0.5 * math.log(math.pi))

    def log_profile(self, radius):
        radius = np.asarray(radius, dtype=float)
        return -((self.k * radius) ** 2)

    def radial_tail_slope(self) -> Optional[float]:
        return None

    def sample(self, uniforms: np.ndarray) -> np.ndarray:
        return special.ndtri(np.asarray(uniforms)) / (self.k * math.sqrt(2.0))

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'k': self.k}


@dataclass(frozen=True)
class PowerLaw(InitialDistribution):
    """
    f = c / (1 + k^2 x^2)^s on the line

    For s > 1/2 the constant c = k*Gamma(s)/(sqrt(pi)*Gamma(s - 1/2)) makes f a
    probability density. For s <= 1/2 the profile is not integrable; c = k is
    used and only ratios of integrals (conditional moments) are meaningful.
    """

    s: float = 2.0
    k: float = 1.0
    kind = 'powerlaw'

    def __post_init__(self):
        if not self.s > 0.0:
            raise ConfigInvalid('distribution.s', f"must be > 0, got {self.s}")
        if not self.k > 0.0:
            raise ConfigInvalid('distribution.k', f"must be > 0, got {self.k}")

    @property
    def normalizable(self) -> bool:
        return self.s > 0.5

    def check_dimension(self, n: int):
        if n != 1:
            raise UnsupportedDimension(f"power-law distribution needs n = 1, got {n}")

    def log_normalization(self, n: int) -> float:
        self.check_dimension(n)
        if not self.normalizable:
            return math.log(self.k)
        return (
            math.log(self.k)
            + special.gammaln(self.s)
            - 0.5 * math.log(math.pi)
            - special.gammaln(self.s - 0.5)
        )

    def log_profile(self, radius):
        radius = np.asarray(radius, dtype=float)
        return -self.s * np.log1p((self.k * radius) ** 2)

    def radial_tail_slope(self) -> Optional[float]:
        return -2.0 * self.s

    def sample(self, uniforms: np.ndarray) -> np.ndarray:
        if not self.normalizable:
            raise UnsupportedParameters(
                f"cannot sample a non-normalizable power law (s = {self.s})"
            )
        uniforms = np.asarray(uniforms)
        if uniforms.shape[-1] != 1:
            raise UnsupportedDimension("power-law sampling needs n = 1")
        # |kx|^2 / (1 + |kx|^2) follows Beta(1/2, s - 1/2)
        q = 2.0 * uniforms - 1.0
        ratio = special.betaincinv(0.5, self.s - 0.5, np.abs(q))
        ratio = np.minimum(ratio, 1.0 - np.finfo(float).eps)
        return np.sign(q) * np.sqrt(ratio / (1.0 - ratio)) / self.k

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 's': self.s, 'k': self.k}


def distribution_from_dict(data: Dict[str, Any]) -> InitialDistribution:
    """Build an InitialDistribution from its to_dict() form"""
    kind = data.get('kind', 'uniform')
    if kind == 'uniform':
        return UniformBox(L=float(data.get('L', 1.0)))
    if kind == 'gaussian':
        return GaussianDistribution(k=float(data.get('k', 1.0)))
    if kind == 'powerlaw':
        return PowerLaw(s=float(data.get('s', 2.0)), k=float(data.get('k', 1.0)))
    raise ConfigInvalid('distribution.kind', f"unknown distribution '{kind}'")


def as_vector(x: VectorLike, n: int) -> np.ndarray:
    """Return x as a float vector of length n"""
    vector = np.atleast_1d(np.asarray(x, dtype=float))
    if vector.shape != (n,):
        raise DimensionMismatch(f"expected a vector of length {n}, got shape {vector.shape}")
    return vector


def velocity_growth(params: ModelParams, t: float) -> float:
    """g(t) = e^(beta t); U(t) = u0 / g(t)"""
    return math.exp(params.beta * t)


def drift_denominator(params: ModelParams, t: float) -> float:
    """D(t), the factor with X(t) = x0 + u0*(...) = u(t)*D(t) along characteristics"""
    if params.beta == 0.0:
        return 1.0 / params.alpha + t
    beta = params.beta
    return math.exp(beta * t) / params.alpha + math.expm1(beta * t) / beta


def noise_time(params: ModelParams, t: float) -> float:
    """S(t) = (e^(2 p beta t) - 1) / (2 p beta), with limit t"""
    rate = 2.0 * params.p * params.beta
    if rate == 0.0:
        return t
    return math.expm1(rate * t) / rate


def sampling_noise_time(params: ModelParams, t: float) -> float:
    """tau_p(t) = (1 - e^(-2 p beta t)) / (2 p beta), with limit t"""
    rate = 2.0 * params.p * params.beta
    if rate == 0.0:
        return t
    return -math.expm1(-rate * t) / rate


def critical_time(params: ModelParams) -> float:
    """Blow-up time T of the linear profile, or NO_BLOWUP"""
    alpha, beta = params.alpha, params.beta
    if beta == 0.0:
        return -1.0 / alpha if alpha < 0.0 else NO_BLOWUP
    if alpha >= -beta:
        return NO_BLOWUP
    # ln(alpha / (alpha + beta)) / beta, written to stay accurate as beta -> 0
    return -math.log1p(beta / alpha) / beta


def has_blowup(params: ModelParams) -> bool:
    return critical_time(params) != NO_BLOWUP


def time_from_epsilon(params: ModelParams, eps: float) -> float:
    """t = T (1 - eps)"""
    T = critical_time(params)
    if T == NO_BLOWUP:
        raise UnsupportedParameters(
            f"no critical time for alpha={params.alpha}, beta={params.beta}"
        )
    return T * (1.0 - eps)


def epsilon_from_time(params: ModelParams, t: float) -> Optional[float]:
    """eps = 1 - t/T, or None when there is no blow-up"""
    T = critical_time(params)
    if T == NO_BLOWUP:
        return None
    return 1.0 - t / T


@dataclass(frozen=True)
class EvalPoint:
    """An evaluation point (t, x) with its distance eps to the blow-up"""

    t: float
    x: Tuple[float, ...]
    epsilon: Optional[float] = None

    @classmethod
    def at(cls, params: ModelParams, t: float, x: VectorLike) -> 'EvalPoint':
        vector = as_vector(x, params.n)
        return cls(t=t, x=tuple(vector.tolist()), epsilon=epsilon_from_time(params, t))

    @classmethod
    def near_blowup(cls, params: ModelParams, eps: float, x: VectorLike) -> 'EvalPoint':
        vector = as_vector(x, params.n)
        return cls(t=time_from_epsilon(params, eps), x=tuple(vector.tolist()), epsilon=eps)

    @property
    def before_blowup(self) -> bool:
        return self.epsilon is None or 0.0 < self.epsilon <= 1.0


def burgers_exact(params: ModelParams, t: float, x: VectorLike) -> np.ndarray:
    """
    Inviscid Burgers velocity for u0(x) = alpha*x with linear friction

    Args:
        params: model parameters (sigma and p are not used)
        t: time, strictly before the critical time
        x: position vector

    Returns:
        velocity vector x / D(t)
    """
    T = critical_time(params)
    if t >= T:
        raise EvaluationAtOrPastBlowup(f"t = {t} is not before T = {T}")
    return as_vector(x, params.n) / drift_denominator(params, t)


def initial_density(dist: InitialDistribution, x: VectorLike) -> float:
    """Evaluate f(x); the dimension is the length of x"""
    vector = np.atleast_1d(np.asarray(x, dtype=float))
    dist.check_dimension(vector.shape[0])
    return float(np.exp(dist.log_density(vector)))
