#!/usr/bin/env python3
"""
Conditional velocity moments by quadrature

The conditional mean, conditional variance and observable (u-marginal)
density of the phase-space density P(t, x, u), together with the L -> infinity
limit of truncated moment ratios.

The u-integrals are reduced to one radial integral for every dimension. Writing
u = r*omega with omega on the unit sphere and xi = |x|, the angular integral of
the exponential is a modified Bessel function:

    int exp(kappa cos(theta)) d omega = 2 pi^(n/2) (2/|kappa|)^nu I_nu(|kappa|),

with nu = n/2 - 1 and kappa = D xi r^(1-2p) / (sigma^2 S). The mean direction
is x/|x| and the angular average of cos(theta) is sign(D) I_(nu+1)/I_nu. The
radial integral runs in w = log r, where the essential singularity at r = 0
and the slowly decaying tails become well-behaved.
"""

from typing import Callable, Dict, NamedTuple, Optional, Tuple, Union

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import integrate, special

from errors import (
    ConfigInvalid,
    DivergentIntegral,
    EvaluationAtOrPastBlowup,
    NonPositiveTime,
    RatioNotConverged,
    SingularDenominator,
)
from extrapolation import has_settled, is_growing_without_bound, relative_change
from model import (
    InitialDistribution,
    ModelParams,
    VectorLike,
    as_vector,
    critical_time,
    drift_denominator,
    noise_time,
    velocity_growth,
)
from specfun import bessel_i_ratio, log_bessel_i_scaled

logger = logging.getLogger(__name__)

TAIL = 'tail'
SUPPORT = 'support'

QUADRATURE = 'quadrature'
CLOSED_FORM = 'closed-form'
MONTE_CARLO = 'monte-carlo'
ASYMPTOTIC = 'asymptotic'

# Radial grid in w = log r used to locate the mass of an integrand.
_GRID_HALF_WIDTH = 40.0
_GRID_STEP = 0.02
_GRID_EXTENSIONS = 6
# Points below peak + log(tail_target) - _CUT_MARGIN are treated as negligible.
_CUT_MARGIN = 12.0
_KAPPA_SMALL = 1e-12
_LOG_KAPPA_MAX = math.log(1e300)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and truncation policy for the u-integrals"""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    truncation: str = TAIL
    tail_target: float = 1e-12
    l_start: int = 3
    l_stop: int = 20
    ratio_tol: float = 1e-6

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise ConfigInvalid('quadrature.rel_tol', f"must be > 0, got {self.rel_tol}")
        if not self.abs_tol >= 0.0:
            raise ConfigInvalid('quadrature.abs_tol', f"must be >= 0, got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise ConfigInvalid('quadrature.max_subdivisions', "must be >= 1")
        if self.truncation not in (TAIL, SUPPORT):
            raise ConfigInvalid(
                'quadrature.truncation', f"must be '{TAIL}' or '{SUPPORT}', got '{self.truncation}'"
            )
        if not 0.0 < self.tail_target < 1.0:
            raise ConfigInvalid('quadrature.tail_target', "must lie in (0, 1)")
        if self.l_stop <= self.l_start:
            raise ConfigInvalid('quadrature.l_stop', "L sequence must be strictly increasing")
        if not self.ratio_tol > 0.0:
            raise ConfigInvalid('quadrature.ratio_tol', "must be > 0")

    def l_values(self) -> np.ndarray:
        """Truncation half-widths L_j = 2^j"""
        return 2.0 ** np.arange(self.l_start, self.l_stop + 1)

    def replace(self, **changes) -> 'QuadratureSpec':
        values = asdict(self)
        values.update(changes)
        return QuadratureSpec(**values)

    def to_dict(self) -> Dict[str, Union[float, int, str]]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Optional[dict]) -> 'QuadratureSpec':
        data = dict(data or {})
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigInvalid('quadrature', f"unknown keys {sorted(unknown)}")
        return cls(**data)


@dataclass
class MomentEstimate:
    """A moment value with its error bound and the method that produced it"""

    value: Union[float, np.ndarray]
    error_bound: float
    method: str = QUADRATURE
    converged: bool = True

    def scalar(self) -> float:
        """Value of a scalar estimate, or the first component of a vector one"""
        return float(np.atleast_1d(self.value)[0])


class IntegralValue(NamedTuple):
    value: float
    error: float
    converged: bool


class RadialIntegrand:
    """
    Radially reduced u-integrands of P(t, x, u) at a fixed (t, x)

    Kinds of integrand (angular averages, times the radial weight):
        'density'  1
        'first'    r <cos theta>          (projection of u on x/|x|)
        'second'   r^2
        'centred'  r^2 - 2 m r <cos theta> + m^2, the squared distance to m x/|x|
        'gap'      D r <cos theta> - |x|  (projection of |u|^(2p) c grad_x log P)

    All integrals are returned scaled by exp(-shift); ratios are unaffected
    and observable_density multiplies the shift back.
    """

    def __init__(
        self,
        params: ModelParams,
        dist: InitialDistribution,
        t: float,
        x: np.ndarray,
        spec: QuadratureSpec,
    ):
        self.params = params
        self.dist = dist
        self.spec = spec
        self.n = params.n
        self.p = params.p
        self.growth = velocity_growth(params, t)
        self.D = drift_denominator(params, t)
        self.spread = params.sigma**2 * noise_time(params, t)
        self.xi = float(np.linalg.norm(x))
        self.nu = 0.5 * self.n - 1.0
        self.radius_scale = self.growth / abs(params.alpha)

        self.log_const = (
            dist.log_normalization(self.n)
            + self.n * math.log(self.radius_scale)
            - 0.5 * self.n * math.log(2.0 * math.pi * self.spread)
            + math.log(2.0)
            + 0.5 * self.n * math.log(math.pi)
        )

        self.w_cap = None
        if spec.truncation == SUPPORT and math.isfinite(dist.support_radius):
            self.w_cap = self.log_radius_for(dist.support_radius)
        elif self.diverges('density', 'upper'):
            self.w_cap = self.log_radius_for(float(spec.l_values()[-1]))
        self.shift = 0.0
        grid, logs = self._mass_grid('density', None, self.w_cap)
        finite = logs[np.isfinite(logs)]
        if finite.size:
            self.shift = float(np.max(finite))
        logger.debug(
            f"radial integrand: D={self.D:.6g}, S-spread={self.spread:.6g}, "
            f"xi={self.xi:.6g}, shift={self.shift:.6g}"
        )

    def log_radius_for(self, L: float) -> float:
        """w = log r of the u-ball that the box half-width L maps to"""
        return math.log(L / self.radius_scale)

    def log_weight(self, w):
        """log of the angular-integrated density in w = log r"""
        w = np.asarray(w, dtype=float)
        n, p = self.n, self.p
        with np.errstate(all='ignore'):
            radius = np.exp(w)
            log_kappa = self._log_kappa(w)
            if log_kappa is None:
                log_angular = np.full_like(w, -special.gammaln(self.nu + 1.0))
            else:
                log_kappa = np.minimum(log_kappa, _LOG_KAPPA_MAX)
                kappa = np.exp(log_kappa)
                log_angular = np.where(
                    kappa < _KAPPA_SMALL,
                    -special.gammaln(self.nu + 1.0),
                    self.nu * (math.log(2.0) - log_kappa)
                    + log_bessel_i_scaled(self.nu, np.maximum(kappa, _KAPPA_SMALL)),
                )
            gap = np.zeros_like(w)
            if self.D != 0.0:
                gap = gap + abs(self.D) * np.exp((1.0 - p) * w)
            if self.xi > 0.0:
                gap = gap - self.xi * np.exp(-p * w)
            logs = (
                self.log_const
                + n * (1.0 - p) * w
                + self.dist.log_profile(radius * self.radius_scale)
                + log_angular
                - gap * gap / (2.0 * self.spread)
            )
        return np.where(np.isnan(logs), -np.inf, logs)

    def _log_kappa(self, w):
        if self.D == 0.0 or self.xi == 0.0:
            return None
        return (
            math.log(abs(self.D))
            + math.log(self.xi)
            + (1.0 - 2.0 * self.p) * w
            - math.log(self.spread)
        )

    def mean_cosine(self, w):
        """Angular average of cos(theta) between u and x"""
        w = np.asarray(w, dtype=float)
        log_kappa = self._log_kappa(w)
        if log_kappa is None:
            return np.zeros_like(w)
        with np.errstate(all='ignore'):
            kappa = np.exp(np.minimum(log_kappa, _LOG_KAPPA_MAX))
            safe = np.maximum(kappa, _KAPPA_SMALL)
            ratio = bessel_i_ratio(self.nu + 1.0, self.nu, safe)
            ratio = np.where(kappa < _KAPPA_SMALL, kappa / self.n, ratio)
        return math.copysign(1.0, self.D) * ratio

    def factor(self, kind: str, w, centre: float = 0.0):
        w = np.asarray(w, dtype=float)
        if kind == 'density':
            return np.ones_like(w)
        radius = np.exp(w)
        if kind == 'first':
            return radius * self.mean_cosine(w)
        if kind == 'second':
            return radius * radius
        if kind == 'centred':
            return radius * radius - 2.0 * centre * radius * self.mean_cosine(w) + centre**2
        if kind == 'gap':
            return self.D * radius * self.mean_cosine(w) - self.xi
        raise ValueError(f"unknown integrand kind '{kind}'")

    def evaluate(self, kind: str, w, centre: float = 0.0):
        """Scaled integrand exp(log_weight - shift) * factor"""
        with np.errstate(all='ignore'):
            value = np.exp(self.log_weight(w) - self.shift) * self.factor(kind, w, centre)
        return np.where(np.isnan(value), 0.0, value)

    def _log_magnitude(self, kind, w, centre):
        with np.errstate(all='ignore'):
            logs = self.log_weight(w) + np.log(np.abs(self.factor(kind, w, centre)))
        return np.where(np.isnan(logs), -np.inf, logs)

    def _radial_power(self, kind: str, end: str) -> Optional[float]:
        """Power of r the factor contributes at r -> infinity or r -> 0"""
        p = self.p
        if kind in ('density',):
            return 0.0
        if kind in ('second',):
            return 2.0
        if kind == 'centred':
            return 2.0 if end == 'upper' else 0.0
        if kind == 'first':
            if self.D == 0.0 or self.xi == 0.0:
                return None
            if end == 'upper':
                return 2.0 - 2.0 * p if p > 0.5 else 1.0
            return 2.0 - 2.0 * p if p < 0.5 else 1.0
        if kind == 'gap':
            if self.xi == 0.0:
                return None
            return 0.0
        raise ValueError(f"unknown integrand kind '{kind}'")

    def tail_rate(self, kind: str, end: str) -> Optional[float]:
        """
        Exponential rate of the integrand in w at one end of the w axis

        None means the integrand decays faster than any exponential there
        (or vanishes identically). Upper rates >= 0 and lower rates <= 0
        mean the integral diverges at that end.
        """
        power = self._radial_power(kind, end)
        if power is None:
            return None
        n, p = self.n, self.p
        if end == 'upper':
            if self.w_cap is not None and self.spec.truncation == SUPPORT:
                return None
            f_slope = self.dist.radial_tail_slope()
            if f_slope is None or (p < 1.0 and self.D != 0.0):
                return None
            return n * (1.0 - p) + f_slope + power
        if self.xi > 0.0 and p > 0.0:
            return None
        if self.xi == 0.0 and p > 1.0 and self.D != 0.0:
            return None
        return n * (1.0 - p) + power

    def diverges(self, kind: str, end: Optional[str] = None) -> bool:
        ends = (end,) if end else ('lower', 'upper')
        for side in ends:
            rate = self.tail_rate(kind, side)
            if rate is None:
                continue
            if side == 'upper' and rate >= 0.0:
                return True
            if side == 'lower' and rate <= 0.0:
                return True
        return False

    def _mass_grid(self, kind, centre, w_top, w_bottom=None):
        """Grid covering the bulk of an integrand, extended until the peak is interior"""
        low = -_GRID_HALF_WIDTH if w_bottom is None else w_bottom
        high = _GRID_HALF_WIDTH if w_top is None else w_top
        if w_top is not None and low >= high:
            low = high - 2.0 * _GRID_HALF_WIDTH
        for _ in range(_GRID_EXTENSIONS):
            count = max(int((high - low) / _GRID_STEP) + 1, 3)
            grid = np.linspace(low, high, count)
            logs = self._log_magnitude(kind, grid, centre or 0.0)
            if not np.any(np.isfinite(logs)):
                return grid, logs
            peak = int(np.argmax(logs))
            grown = False
            if peak == 0 and w_bottom is None and logs[0] > logs[1]:
                low -= _GRID_HALF_WIDTH
                grown = True
            if peak == count - 1 and w_top is None and logs[-1] > logs[-2]:
                high += _GRID_HALF_WIDTH
                grown = True
            if not grown:
                break
        return grid, logs

    def _quad(self, kind, a, b, centre, abs_tol, points=None):
        func = lambda w: float(self.evaluate(kind, w, centre))  # noqa: E731
        kwargs = dict(
            epsabs=abs_tol,
            epsrel=self.spec.rel_tol,
            limit=self.spec.max_subdivisions,
            full_output=1,
        )
        if points and math.isfinite(a) and math.isfinite(b):
            inner = [q for q in points if a < q < b]
            if inner:
                kwargs['points'] = inner
        result = integrate.quad(func, a, b, **kwargs)
        converged = len(result) == 3
        if not converged:
            logger.warning(f"quadrature of '{kind}' on [{a:.3g}, {b:.3g}]: {result[-1]}")
        return result[0], result[1], converged

    def integrate(
        self,
        kind: str,
        w_top: Optional[float] = None,
        centre: float = 0.0,
        w_bottom: Optional[float] = None,
    ) -> IntegralValue:
        """
        Scaled integral of one kind over w in (w_bottom, w_top)

        The bulk is integrated over the grid cells that carry mass; a tail
        integral to +-infinity is added when the integrand is still above the
        cut at an open end of the grid.
        """
        if w_top is None:
            w_top = self.w_cap
        grid, logs = self._mass_grid(kind, centre, w_top, w_bottom)
        if not np.any(np.isfinite(logs)):
            return IntegralValue(0.0, 0.0, True)

        peak_index = int(np.argmax(logs))
        peak_log = float(logs[peak_index])
        cut = peak_log + math.log(self.spec.tail_target) - _CUT_MARGIN
        abs_tol = self.spec.abs_tol * math.exp(min(peak_log - self.shift, 700.0))

        above = np.nonzero(logs >= cut)[0]
        if above.size == 0:
            above = np.array([peak_index])
        first = max(int(above[0]) - 1, 0)
        last = min(int(above[-1]) + 1, grid.size - 1)
        a, b = float(grid[first]), float(grid[last])
        peak = float(grid[peak_index])

        value, error, converged = self._quad(kind, a, b, centre, abs_tol, points=[peak])
        if first == 0 and w_bottom is None:
            tail, tail_error, ok = self._quad(kind, -math.inf, a, centre, abs_tol)
            value, error, converged = value + tail, error + tail_error, converged and ok
        if last == grid.size - 1 and w_top is None:
            tail, tail_error, ok = self._quad(kind, b, math.inf, centre, abs_tol)
            value, error, converged = value + tail, error + tail_error, converged and ok
        # Mass dropped outside [a, b] is below exp(cut) per unit w.
        error += self.spec.tail_target * abs(value)
        return IntegralValue(value, error, converged)


class TruncatedIntegral:
    """
    One member of the L-indexed family int_{|u g/alpha| <= L} (...) du

    Calls with increasing L reuse the previous value and add the shell
    between the two radii, so differences between successive members are
    computed directly.
    """

    def __init__(self, integrand: RadialIntegrand, kind: str, centre: float = 0.0):
        self.integrand = integrand
        self.kind = kind
        self.centre = centre
        self._top = None
        self._total = 0.0

    def __call__(self, L: float) -> float:
        w_top = self.integrand.log_radius_for(L)
        if self._top is None or w_top < self._top:
            self._total = self.integrand.integrate(self.kind, w_top, self.centre).value
        elif w_top > self._top:
            shell = self.integrand.integrate(
                self.kind, w_top, self.centre, w_bottom=self._top
            ).value
            self._total += shell
        self._top = w_top
        return self._total


def truncated_integrals(
    params: ModelParams,
    dist: InitialDistribution,
    t: float,
    x: VectorLike,
    spec: Optional[QuadratureSpec] = None,
    kind: str = 'first',
) -> Tuple[TruncatedIntegral, TruncatedIntegral]:
    """
    Numerator and denominator families of the truncated moment ratio

    The numerator integrates the projection of u on x/|x| (kind 'first') or
    another integrand kind; the denominator is the u-marginal. Both are
    callables of the box half-width L.
    """
    spec = spec or QuadratureSpec()
    x = as_vector(x, params.n)
    _check_time(params, t)
    integrand = RadialIntegrand(params, dist, t, x, spec)
    return TruncatedIntegral(integrand, kind), TruncatedIntegral(integrand, 'density')


def truncated_ratio_limit(
    numerator_integral: Callable[[float], float],
    denominator_integral: Callable[[float], float],
    spec: Optional[QuadratureSpec] = None,
) -> MomentEstimate:
    """
    Limit of N(L)/D(L) along L_j = 2^j

    Plain ratios are used while they settle. When the denominator grows
    without bound the ratio of increments (N(L_j+1) - N(L_j)) / (D(L_j+1) - D(L_j))
    is tracked as well; it converges to the same limit as the plain ratio,
    much faster when the integrals diverge logarithmically.
    """
    spec = spec or QuadratureSpec()
    numerators, denominators, ratios, increment_ratios = [], [], [], []
    floor = spec.abs_tol

    for L in spec.l_values():
        numerators.append(float(numerator_integral(L)))
        denominators.append(float(denominator_integral(L)))
        if denominators[-1] == 0.0:
            continue
        ratios.append(numerators[-1] / denominators[-1])
        if has_settled(ratios, spec.ratio_tol, floor):
            error = abs(ratios[-1] - ratios[-2])
            logger.debug(f"ratio settled at L={L:g}: {ratios[-1]:.12g}")
            return MomentEstimate(ratios[-1], error, QUADRATURE, True)

        if len(denominators) >= 3 and is_growing_without_bound(denominators):
            step = denominators[-1] - denominators[-2]
            increment_ratios.append((numerators[-1] - numerators[-2]) / step)
            if has_settled(increment_ratios, spec.ratio_tol, floor):
                error = abs(increment_ratios[-1] - increment_ratios[-2])
                logger.debug(f"increment ratio settled at L={L:g}: {increment_ratios[-1]:.12g}")
                return MomentEstimate(increment_ratios[-1], error, QUADRATURE, True)
        else:
            increment_ratios = []

    history = increment_ratios or ratios
    change = relative_change(history[-2], history[-1], floor) if len(history) > 1 else math.inf
    raise RatioNotConverged(
        f"ratio did not settle up to L={spec.l_values()[-1]:g} (last relative change {change:.3g})",
        history,
    )


def _check_time(params: ModelParams, t: float):
    if not t > 0.0:
        raise NonPositiveTime(f"moments need t > 0, got {t}")
    T = critical_time(params)
    if t > T:
        raise EvaluationAtOrPastBlowup(f"t = {t} is past T = {T}")


def _ratio(numerator: IntegralValue, denominator: IntegralValue) -> Tuple[float, float, bool]:
    if denominator.value <= 0.0:
        raise SingularDenominator("u-marginal underflows to zero")
    value = numerator.value / denominator.value
    error = abs(numerator.error / denominator.value) + abs(value) * (
        denominator.error / denominator.value
    )
    return value, error, numerator.converged and denominator.converged


def _projected_moment(integrand: RadialIntegrand, kind: str) -> Tuple[float, float, bool]:
    """<factor> under the u-marginal, through the ratio limit when needed"""
    if integrand.diverges('density', 'lower') or integrand.diverges(kind, 'lower'):
        raise DivergentIntegral(f"'{kind}' moment diverges at u = 0")
    if integrand.diverges('density', 'upper'):
        estimate = truncated_ratio_limit(
            TruncatedIntegral(integrand, kind),
            TruncatedIntegral(integrand, 'density'),
            integrand.spec,
        )
        return float(estimate.value), estimate.error_bound, estimate.converged
    if integrand.diverges(kind, 'upper'):
        raise DivergentIntegral(f"'{kind}' moment diverges as |u| -> infinity")
    return _ratio(integrand.integrate(kind), integrand.integrate('density'))


def _estimate(value, error, converged, spec: QuadratureSpec) -> MomentEstimate:
    magnitude = float(np.max(np.abs(np.atleast_1d(value))))
    tolerance = max(spec.rel_tol * magnitude, spec.abs_tol, spec.ratio_tol * magnitude)
    return MomentEstimate(value, error, QUADRATURE, converged and error <= tolerance)


def conditional_mean(
    params: ModelParams,
    dist: InitialDistribution,
    t: float,
    x: VectorLike,
    spec: Optional[QuadratureSpec] = None,
) -> MomentEstimate:
    """
    Conditional mean velocity at position x

    Args:
        params: model parameters
        dist: even initial distribution
        t: time in (0, T]
        x: position vector
        spec: quadrature settings

    Returns:
        MomentEstimate whose value is a vector parallel to x
    """
    spec = spec or QuadratureSpec()
    x = as_vector(x, params.n)
    _check_time(params, t)
    xi = float(np.linalg.norm(x))
    if xi == 0.0:
        return MomentEstimate(np.zeros(params.n), 0.0, QUADRATURE, True)
    integrand = RadialIntegrand(params, dist, t, x, spec)
    projection, error, converged = _projected_moment(integrand, 'first')
    return _estimate(projection * x / xi, error, converged, spec)


def conditional_variance(
    params: ModelParams,
    dist: InitialDistribution,
    t: float,
    x: VectorLike,
    spec: Optional[QuadratureSpec] = None,
) -> MomentEstimate:
    """Total conditional variance E|u - mean|^2 at position x"""
    spec = spec or QuadratureSpec()
    x = as_vector(x, params.n)
    _check_time(params, t)
    integrand = RadialIntegrand(params, dist, t, x, spec)
    for end in ('lower', 'upper'):
        if integrand.diverges('second', end):
            raise DivergentIntegral(f"second moment diverges at the {end} end for p={params.p}")
    centre, centre_error, centre_ok = 0.0, 0.0, True
    if integrand.xi > 0.0:
        centre, centre_error, centre_ok = _projected_moment(integrand, 'first')
    value, error, converged = _ratio(
        integrand.integrate('centred', centre=centre), integrand.integrate('density')
    )
    error += 2.0 * abs(centre) * centre_error
    return _estimate(max(value, 0.0), error, converged and centre_ok, spec)


def observable_density(
    params: ModelParams,
    dist: InitialDistribution,
    t: float,
    x: VectorLike,
    spec: Optional[QuadratureSpec] = None,
) -> MomentEstimate:
    """u-marginal rho(t, x) of the phase-space density"""
    spec = spec or QuadratureSpec()
    x = as_vector(x, params.n)
    _check_time(params, t)
    integrand = RadialIntegrand(params, dist, t, x, spec)
    if integrand.diverges('density'):
        raise DivergentIntegral(
            f"u-marginal diverges for p={params.p}, |x|={integrand.xi:g}, t={t:g}"
        )
    result = integrand.integrate('density')
    scale = math.exp(integrand.shift)
    value = result.value * scale
    return _estimate(value, result.error * scale, result.converged, spec)


def noise_gradient_moment(
    params: ModelParams,
    dist: InitialDistribution,
    t: float,
    x: VectorLike,
    spec: Optional[QuadratureSpec] = None,
) -> MomentEstimate:
    """
    -(sigma^2/2) int |u|^(2p) grad_x P du / int P du, a vector along x

    grad_x P is taken analytically: |u|^(2p) grad_x P = (u D - x) P / (sigma^2 S).
    """
    spec = spec or QuadratureSpec()
    x = as_vector(x, params.n)
    _check_time(params, t)
    xi = float(np.linalg.norm(x))
    if xi == 0.0:
        return MomentEstimate(np.zeros(params.n), 0.0, QUADRATURE, True)
    integrand = RadialIntegrand(params, dist, t, x, spec)
    projection, error, converged = _projected_moment(integrand, 'gap')
    factor = -0.5 / noise_time(params, t)
    return _estimate(factor * projection * x / xi, abs(factor) * error, converged, spec)
