#!/usr/bin/env python3
"""
Exact Monte Carlo sampling and kernel estimates of conditional moments

The velocity obeys dU = -beta U dt without noise, so U(t) = u0 e^(-beta t)
is deterministic given x0, and X(t) is Gaussian given x0:

    X(t) = x0 + u0 (1 - e^(-beta t))/beta + sigma |u0|^p sqrt(tau_p(t)) Z.

No time stepping is needed. Every sample draws its uniforms from its own
block of a Philox counter-based stream keyed by the seed, so the output does
not depend on how the work is split into chunks or threads.
"""

from typing import Any, Dict, Optional, Tuple

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import special

from errors import ConfigInvalid, InsufficientLocalMass, LabError
from model import (
    InitialDistribution,
    ModelParams,
    VectorLike,
    as_vector,
    distribution_from_dict,
    sampling_noise_time,
)
from moments import MONTE_CARLO, MomentEstimate

logger = logging.getLogger(__name__)

_WORDS_PER_COUNTER = 4
_UNIFORM_SCALE = 2.0**-53
_BINARY_MAGIC = b'BURGERSMC1\n'


@dataclass
class SampleSet:
    """Draws of (X(t), U(t)) together with everything needed to reproduce them"""

    t: float
    X: np.ndarray
    U: np.ndarray
    seed: int
    params: ModelParams
    dist: InitialDistribution
    noise_free: bool = False

    @property
    def count(self) -> int:
        return int(self.X.shape[0])

    def header(self) -> Dict[str, Any]:
        return {
            'params': self.params.to_dict(),
            'distribution': self.dist.to_dict(),
            't': self.t,
            'seed': self.seed,
            'count': self.count,
            'noise_free': self.noise_free,
        }


@dataclass(frozen=True)
class KernelSpec:
    """Gaussian kernel settings; bandwidth None selects Silverman's rule per axis"""

    bandwidth: Optional[float] = None
    min_effective_samples: int = 100
    local_linear: bool = False

    def __post_init__(self):
        if self.bandwidth is not None and not self.bandwidth > 0.0:
            raise ConfigInvalid('mc.bandwidth', f"must be > 0, got {self.bandwidth}")
        if self.min_effective_samples < 1:
            raise ConfigInvalid('mc.min_effective_samples', "must be >= 1")

    def resolve(self, samples: SampleSet) -> np.ndarray:
        """Bandwidth per axis"""
        if self.bandwidth is not None:
            return np.full(samples.X.shape[1], float(self.bandwidth))
        spread = np.std(samples.X, axis=0)
        return 1.06 * spread * samples.count ** (-0.2)


def _blocks_per_sample(n: int) -> int:
    return math.ceil(2 * n / _WORDS_PER_COUNTER)


def _uniforms(seed: int, start: int, stop: int, n: int) -> np.ndarray:
    """2n uniforms in (0, 1) for each sample index in [start, stop)"""
    blocks = _blocks_per_sample(n)
    generator = np.random.Philox(key=seed, counter=start * blocks)
    raw = generator.random_raw((stop - start) * blocks * _WORDS_PER_COUNTER)
    raw = raw.reshape(stop - start, blocks * _WORDS_PER_COUNTER)[:, : 2 * n]
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _UNIFORM_SCALE


def _draw_chunk(params, dist, t, seed, start, stop, noise_free):
    n = params.n
    uniforms = _uniforms(seed, start, stop, n)
    x0 = dist.sample(uniforms[:, :n])
    u0 = params.alpha * x0
    beta = params.beta
    if beta == 0.0:
        travel = t
        decay = 1.0
    else:
        travel = -math.expm1(-beta * t) / beta
        decay = math.exp(-beta * t)
    X = x0 + u0 * travel
    if not noise_free:
        normals = special.ndtri(uniforms[:, n:])
        speed = np.linalg.norm(u0, axis=1, keepdims=True)
        amplitude = params.sigma * speed**params.p * math.sqrt(sampling_noise_time(params, t))
        X = X + amplitude * normals
    return X, u0 * decay


def sample_paths(
    params: ModelParams,
    dist: InitialDistribution,
    t: float,
    count: int,
    seed: int,
    chunks: int = 1,
    threads: int = 1,
    noise_free: bool = False,
) -> SampleSet:
    """
    Draw count exact samples of (X(t), U(t))

    Args:
        params: model parameters
        dist: initial distribution of x0; u0 = alpha x0
        t: time
        count: number of samples
        seed: key of the counter-based stream
        chunks: number of index ranges generated independently
        threads: worker threads used for the chunks
        noise_free: drop the sigma term (deterministic characteristics)

    Returns:
        SampleSet, bit-identical for every chunks/threads choice
    """
    if count < 1:
        raise ConfigInvalid('mc.count', f"must be >= 1, got {count}")
    if not t >= 0.0:
        raise ConfigInvalid('t', f"must be >= 0, got {t}")
    chunks = max(1, min(int(chunks), count))
    bounds = np.linspace(0, count, chunks + 1).astype(int)
    ranges = list(zip(bounds[:-1], bounds[1:]))

    def work(span: Tuple[int, int]):
        return _draw_chunk(params, dist, t, seed, int(span[0]), int(span[1]), noise_free)

    if threads > 1 and chunks > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            parts = list(executor.map(work, ranges))
    else:
        parts = [work(span) for span in ranges]

    X = np.concatenate([part[0] for part in parts])
    U = np.concatenate([part[1] for part in parts])
    logger.debug(f"drew {count} samples at t={t} in {chunks} chunk(s) with seed {seed}")
    return SampleSet(t=t, X=X, U=U, seed=seed, params=params, dist=dist, noise_free=noise_free)


def _local_weights(samples: SampleSet, x: np.ndarray, kspec: KernelSpec):
    if samples.count == 0:
        raise InsufficientLocalMass("empty sample set")
    h = kspec.resolve(samples)
    scaled = (samples.X - x) / h
    with np.errstate(under='ignore'):
        weights = np.exp(-0.5 * np.sum(scaled * scaled, axis=1))
    total = float(np.sum(weights))
    if total == 0.0 or not math.isfinite(total):
        raise InsufficientLocalMass(f"no kernel mass near x={x} (bandwidth {h})")
    keep = weights > 0.0
    return weights[keep], samples.X[keep] - x, samples.U[keep]


def _effective_size(weights: np.ndarray) -> float:
    return float(np.sum(weights) ** 2 / np.sum(weights * weights))


def _local_fit(weights, offsets, U, local_linear: bool):
    """Weighted constant or linear fit of U around x; returns level and residuals"""
    if not local_linear:
        level = weights @ U / np.sum(weights)
        return level, U - level
    design = np.hstack([np.ones((offsets.shape[0], 1)), offsets])
    root = np.sqrt(weights)[:, np.newaxis]
    theta, *_ = np.linalg.lstsq(design * root, U * root, rcond=None)
    return theta[0], U - design @ theta


def kernel_conditional_mean(
    samples: SampleSet, x: VectorLike, kspec: Optional[KernelSpec] = None
) -> MomentEstimate:
    """Nadaraya-Watson (or local-linear) estimate of E[U | X = x] with its standard error"""
    kspec = kspec or KernelSpec()
    x = as_vector(x, samples.params.n)
    weights, offsets, U = _local_weights(samples, x, kspec)
    level, residuals = _local_fit(weights, offsets, U, kspec.local_linear)
    total = np.sum(weights)
    error = float(np.max(np.sqrt((weights * weights) @ (residuals * residuals)) / total))
    n_eff = _effective_size(weights)
    converged = n_eff >= kspec.min_effective_samples
    if not converged:
        logger.warning(f"effective sample size {n_eff:.1f} below {kspec.min_effective_samples}")
    return MomentEstimate(np.asarray(level, dtype=float), error, MONTE_CARLO, converged)


def kernel_conditional_variance(
    samples: SampleSet, x: VectorLike, kspec: Optional[KernelSpec] = None
) -> MomentEstimate:
    """
    Kernel estimate of the total conditional variance at x

    Residuals are taken about a local-linear fit, which removes the
    h^2 |dm/dx|^2 smoothing bias of the plain weighted second moment.
    """
    kspec = kspec or KernelSpec()
    x = as_vector(x, samples.params.n)
    weights, offsets, U = _local_weights(samples, x, kspec)
    _, residuals = _local_fit(weights, offsets, U, local_linear=True)
    squared = np.sum(residuals * residuals, axis=1)
    total = np.sum(weights)
    value = max(float(weights @ squared / total), 0.0)
    error = float(np.sqrt((weights * weights) @ (squared - value) ** 2) / total)
    n_eff = _effective_size(weights)
    converged = n_eff >= kspec.min_effective_samples
    if not converged:
        logger.warning(f"effective sample size {n_eff:.1f} below {kspec.min_effective_samples}")
    return MomentEstimate(value, error, MONTE_CARLO, converged)


def save_samples(samples: SampleSet, path: str, binary: bool = False):
    """
    Write a SampleSet to CSV or to the little-endian binary layout

    Binary layout: magic line, 8-byte little-endian header length, JSON
    header, then count rows of 2n '<f8' values (X components, U components).
    """
    header = json.dumps(samples.header(), sort_keys=True)
    rows = np.hstack([samples.X, samples.U]).astype('<f8')
    if binary:
        payload = header.encode('utf-8')
        with open(path, 'wb') as f:
            f.write(_BINARY_MAGIC)
            f.write(len(payload).to_bytes(8, 'little'))
            f.write(payload)
            f.write(np.ascontiguousarray(rows).tobytes())
        return
    n = samples.params.n
    names = [f"x{i + 1}" for i in range(n)] + [f"u{i + 1}" for i in range(n)]
    with open(path, 'w', encoding='utf-8') as f:
        f.write(f"# {header}\n")
        f.write(','.join(names) + '\n')
        for row in rows:
            f.write(','.join(f"{value:.17e}" for value in row) + '\n')


def load_samples(path: str) -> SampleSet:
    """Read a SampleSet written by save_samples (format detected from the file)"""
    with open(path, 'rb') as f:
        start = f.read(len(_BINARY_MAGIC))
        if start == _BINARY_MAGIC:
            size = int.from_bytes(f.read(8), 'little')
            header = json.loads(f.read(size).decode('utf-8'))
            rows = np.frombuffer(f.read(), dtype='<f8')
        else:
            header, rows = None, None
    if header is None:
        with open(path, 'r', encoding='utf-8') as f:
            first = f.readline()
            if not first.startswith('# '):
                raise LabError(f"{path} is not a sample file")
            header = json.loads(first[2:])
        rows = np.loadtxt(path, delimiter=',', comments='#', skiprows=2, ndmin=2)
    params = ModelParams(**header['params'])
    rows = np.asarray(rows, dtype=float).reshape(int(header['count']), 2 * params.n)
    return SampleSet(
        t=float(header['t']),
        X=rows[:, : params.n].copy(),
        U=rows[:, params.n :].copy(),
        seed=int(header['seed']),
        params=params,
        dist=distribution_from_dict(header['distribution']),
        noise_free=bool(header.get('noise_free', False)),
    )
