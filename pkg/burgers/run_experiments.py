#!/usr/bin/env python3
"""
Burgers Medium Experiment Runner

This script evaluates the laboratory on a grid and writes one CSV per run:
1. Builds the model, distribution and numerical settings from a JSON config
2. Evaluates the chosen experiment at every grid point (optionally threaded)
3. Writes the result table with '#' provenance lines, atomically

Re-running an echoed configuration reproduces its CSV byte for byte.
"""

from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import argparse
import json
import logging
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from asymptotics import (
    THRESHOLD_EPSILONS,
    blowup_coefficient,
    calibrate_blowup_coefficient,
    coefficients,
    observable_density_near_origin,
    predicted_mean_near_T,
    regime_of,
    threshold_verdict,
    variance_asymptote,
)
from closedform import (
    mean_p0_gaussian,
    mean_p0_uniform,
    mean_p1_uniform,
    mean_phalf_uniform,
    observable_density_p0_uniform,
    powerlaw_origin_slope,
    variance_p0_gaussian,
    variance_p0_uniform,
    variance_phalf_uniform,
    viscous_residual,
)
from config import EXPERIMENTS, LabConfig, load_config
from errors import (
    ConfigInvalid,
    DivergentIntegral,
    GridPointError,
    LabError,
    OutOfRegime,
    RatioNotConverged,
    UndefinedAtP1,
    UnsupportedDimension,
    UnsupportedParameters,
)
from extrapolation import fit_loglog_slope
from induced import induced_velocity, v1_correction
from model import (
    GaussianDistribution,
    PowerLaw,
    UniformBox,
    burgers_exact,
    drift_denominator,
    epsilon_from_time,
    time_from_epsilon,
)
from moments import (
    ASYMPTOTIC,
    CLOSED_FORM,
    QUADRATURE,
    TAIL,
    MomentEstimate,
    conditional_mean,
    conditional_variance,
    observable_density,
)
from montecarlo import kernel_conditional_mean, kernel_conditional_variance, sample_paths

# Set up logging
logging.basicConfig(
    level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

LAB_VERSION = '1.0.0'

COLUMNS = (
    'p',
    'parameter',
    'epsilon',
    't',
    'x',
    'value',
    'error_bound',
    'method',
    'regime',
    'prediction',
    'ratio_to_prediction',
    'converged',
    'note',
)

# Step of the finite-difference slope at the origin.
ORIGIN_STEP = 1e-3
# Relative distance within which a p < 1 Gaussian-f mean tracks the p = 0 one.
TRACKING_TOLERANCE = 0.1

CONFIG_KEYS_HELP = """
configuration keys (JSON file, see create_config.py):
  experiment            one of: {experiments}
  alpha, beta, sigma    initial velocity slope, friction, noise amplitude
  p, n                  diffusion exponent, space dimension
  distribution          {{"kind": "uniform", "L": ...}} | {{"kind": "gaussian", "k": ...}}
                        | {{"kind": "powerlaw", "s": ..., "k": ...}}
  t_values              times of the grid (exclusive with epsilon_values)
  epsilon_values        distances to blow-up, eps = 1 - t/T in (0, 1]
  x_values              positions (first coordinate when n > 1)
  p_values              exponents of threshold-sweep and gaussian-f
  s_values              power-law exponents of powerlaw-f
  nu_values             viscosities of viscous-residual
  quadrature            rel_tol, abs_tol, max_subdivisions, truncation ("tail" | "support"),
                        tail_target, l_start, l_stop, ratio_tol
  mc                    count, seed, bandwidth (null: Silverman), min_effective_samples,
                        chunks, local_linear
  output_path           CSV written by the run
  threads               worker threads for the grid points

exit codes: 0 success, 1 numerical error, 2 configuration error,
            3 rows that did not converge (CSV kept, rows flagged)
""".format(
    experiments=', '.join(EXPERIMENTS)
)


def _format(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.16e}"
    return str(value)


@dataclass
class ResultTable:
    """Rows of one experiment run with the provenance lines that reproduce it"""

    experiment: str
    provenance: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)

    def extend(self, rows: Sequence[Dict[str, Any]]):
        self.rows.extend(rows)

    def column(self, name: str) -> List[Any]:
        return [row.get(name) for row in self.rows]

    @property
    def unconverged(self) -> int:
        return sum(1 for row in self.rows if row.get('converged') is False)

    def to_csv(self) -> str:
        lines = [f"# {line}" for line in self.provenance]
        lines.append(','.join(COLUMNS))
        for row in self.rows:
            lines.append(','.join(_format(row.get(column)) for column in COLUMNS))
        return '\n'.join(lines) + '\n'

    def write_csv(self, path: str):
        """Write through a temporary file in the target directory, then rename"""
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with tempfile.NamedTemporaryFile(
            'w', dir=directory, suffix='.tmp', delete=False, encoding='utf-8', newline=''
        ) as f:
            f.write(self.to_csv())
            temp_path = f.name
        os.replace(temp_path, path)


def make_row(
    p: float,
    eps: Optional[float],
    t: Optional[float],
    x: Optional[float],
    value: float,
    error_bound: Optional[float],
    method: str,
    prediction: Optional[float] = None,
    converged: bool = True,
    note: str = '',
    parameter: Optional[float] = None,
) -> Dict[str, Any]:
    ratio = None
    if prediction is not None and prediction != 0.0 and math.isfinite(prediction):
        ratio = float(value) / float(prediction)
    return {
        'p': float(p),
        'parameter': None if parameter is None else float(parameter),
        'epsilon': None if eps is None else float(eps),
        't': None if t is None else float(t),
        'x': None if x is None else float(x),
        'value': float(value),
        'error_bound': None if error_bound is None else float(error_bound),
        'method': method,
        'regime': regime_of(p),
        'prediction': None if prediction is None else float(prediction),
        'ratio_to_prediction': ratio,
        'converged': bool(converged),
        'note': note,
    }


def _position(x: float, n: int) -> np.ndarray:
    vector = np.zeros(n)
    vector[0] = x
    return vector


def _optional(function: Callable[[], Any]) -> Optional[Any]:
    """Value of a prediction, or None outside the formula's domain"""
    try:
        return function()
    except (OutOfRegime, UndefinedAtP1, UnsupportedParameters, UnsupportedDimension):
        return None
    except (DivergentIntegral, RatioNotConverged) as e:
        logger.debug(f"no reference value: {e}")
        return None


class ExperimentRunner:
    """Evaluates one configured experiment over its grid"""

    def __init__(self, config: LabConfig):
        self.config = config
        self.params = config.params()
        self.dist = config.initial_distribution()
        self.spec = config.quadrature_spec()
        self.kspec = config.kernel_spec()
        self.threads = int(config.threads)

    # Grid helpers

    def times(self, params=None) -> List[Tuple[Optional[float], float]]:
        """(eps, t) pairs of the time grid"""
        params = params or self.params
        if self.config.uses_epsilon():
            return [(eps, time_from_epsilon(params, eps)) for eps in self.config.epsilon_values]
        return [(epsilon_from_time(params, t), t) for t in self.config.t_values]

    def sweep_epsilons(self) -> List[float]:
        return list(self.config.epsilon_values or THRESHOLD_EPSILONS)

    def grid(self) -> List[Tuple[Optional[float], float, float]]:
        return [(eps, t, x) for eps, t in self.times() for x in self.config.x_values]

    def map(self, function: Callable, items: Sequence) -> List[List[Dict[str, Any]]]:
        """Apply function to every item; results come back in grid order"""
        if self.threads > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                return list(executor.map(function, items))
        return [function(item) for item in items]

    def guarded(self, point: Dict[str, Any], function: Callable[[], List[Dict[str, Any]]]):
        """Run one grid point, attaching the point to any module error"""
        try:
            return function()
        except ConfigInvalid:
            raise
        except RatioNotConverged as e:
            logger.warning(f"ratio did not converge at {point}")
            last = e.history[-1] if e.history else math.nan
            return [
                make_row(
                    point.get('p', self.params.p),
                    point.get('epsilon'),
                    point.get('t'),
                    point.get('x'),
                    last,
                    None,
                    QUADRATURE,
                    converged=False,
                    note='ratio-not-converged',
                )
            ]
        except DivergentIntegral as e:
            logger.info(f"divergent moment at {point}: {e}")
            return [
                make_row(
                    point.get('p', self.params.p),
                    point.get('epsilon'),
                    point.get('t'),
                    point.get('x'),
                    math.inf,
                    None,
                    QUADRATURE,
                    note='divergent',
                )
            ]
        except LabError as e:
            logger.error(f"grid point {point} failed: {e}")
            raise GridPointError(point, e) from e

    def on_grid(self, evaluate: Callable[[Optional[float], float, float], List[Dict[str, Any]]]):
        def work(item):
            eps, t, x = item
            point = {'p': self.params.p, 'epsilon': eps, 't': t, 'x': x}
            return self.guarded(point, lambda: evaluate(eps, t, x))

        rows = []
        for chunk in self.map(work, self.grid()):
            rows.extend(chunk)
        return rows

    def uniform_limit(self) -> bool:
        """Closed forms for a uniform box hold in the L -> infinity (tail) reading"""
        return isinstance(self.dist, UniformBox) and self.spec.truncation == TAIL

    def gaussian_k(self) -> float:
        return self.dist.k if isinstance(self.dist, GaussianDistribution) else 1.0

    def quadrature_row(self, eps, t, x, estimate: MomentEstimate, prediction, note, p=None):
        return make_row(
            self.params.p if p is None else p,
            eps,
            t,
            x,
            estimate.scalar(),
            estimate.error_bound,
            estimate.method,
            prediction=prediction,
            converged=estimate.converged,
            note=note,
        )

    # Experiments

    def run_exact(self):
        def evaluate(eps, t, x):
            value = burgers_exact(self.params, t, _position(x, self.params.n))[0]
            return [make_row(self.params.p, eps, t, x, value, 0.0, CLOSED_FORM)]

        return self.on_grid(evaluate)

    def run_density(self):
        params, dist = self.params, self.dist

        def reference(eps, t, x):
            if not self.uniform_limit():
                return None
            if params.p == 0.0:
                return observable_density_p0_uniform(params, dist, t)
            if x == 0.0 and eps is not None:
                return observable_density_near_origin(params, dist, eps)
            return None

        def evaluate(eps, t, x):
            estimate = observable_density(params, dist, t, _position(x, params.n), self.spec)
            prediction = _optional(lambda: reference(eps, t, x))
            return [self.quadrature_row(eps, t, x, estimate, prediction, 'density')]

        return self.on_grid(evaluate)

    def reference_mean(self, eps, t, position) -> Tuple[Optional[float], str]:
        params = self.params
        if self.uniform_limit():
            closed = {0.0: mean_p0_uniform, 1.0: mean_p1_uniform, 0.5: mean_phalf_uniform}
            if params.p in closed:
                value = _optional(lambda: closed[params.p](params, t, position)[0])
                return value, CLOSED_FORM
            if eps is not None:
                value = _optional(lambda: predicted_mean_near_T(params, eps, position)[0])
                return value, ASYMPTOTIC
        if isinstance(self.dist, GaussianDistribution) and params.p == 0.0:
            k = self.dist.k
            return _optional(lambda: mean_p0_gaussian(params, k, t, position)[0]), CLOSED_FORM
        return None, ''

    def run_mean(self):
        def evaluate(eps, t, x):
            position = _position(x, self.params.n)
            estimate = conditional_mean(self.params, self.dist, t, position, self.spec)
            prediction, source = self.reference_mean(eps, t, position)
            note = f"mean vs {source}" if prediction is not None else 'mean'
            return [self.quadrature_row(eps, t, x, estimate, prediction, note)]

        return self.on_grid(evaluate)

    def reference_variance(self, eps, t, position) -> Optional[float]:
        params = self.params
        if self.uniform_limit():
            if params.p == 0.0:
                return _optional(lambda: variance_p0_uniform(params, t))
            if params.p == 0.5:
                return _optional(lambda: variance_phalf_uniform(params, t, position))
            if eps is not None and params.p > 1.0:
                return _optional(lambda: variance_asymptote(params, eps, position).value)
        if isinstance(self.dist, GaussianDistribution) and params.p == 0.0:
            return _optional(lambda: variance_p0_gaussian(params, self.dist.k, t, position))
        return None

    def run_variance(self):
        def evaluate(eps, t, x):
            position = _position(x, self.params.n)
            estimate = conditional_variance(self.params, self.dist, t, position, self.spec)
            prediction = self.reference_variance(eps, t, position)
            return [self.quadrature_row(eps, t, x, estimate, prediction, 'variance')]

        return self.on_grid(evaluate)

    def run_mc(self):
        mc = self.config.mc
        params, dist = self.params, self.dist
        rows = []
        for eps, t in self.times():
            samples = sample_paths(
                params,
                dist,
                t,
                int(mc['count']),
                int(mc['seed']),
                chunks=int(mc['chunks']),
                threads=self.threads,
            )
            logger.info(f"sampled {samples.count} paths at t={t:g}")

            def evaluate(x, eps=eps, t=t, samples=samples):
                point = {'p': params.p, 'epsilon': eps, 't': t, 'x': x}

                def compute():
                    position = _position(x, params.n)
                    mean = kernel_conditional_mean(samples, position, self.kspec)
                    variance = kernel_conditional_variance(samples, position, self.kspec)
                    quad_mean = _optional(
                        lambda: conditional_mean(params, dist, t, position, self.spec).scalar()
                    )
                    quad_variance = _optional(
                        lambda: conditional_variance(params, dist, t, position, self.spec).scalar()
                    )
                    return [
                        self.quadrature_row(eps, t, x, mean, quad_mean, 'mean'),
                        self.quadrature_row(eps, t, x, variance, quad_variance, 'variance'),
                    ]

                return self.guarded(point, compute)

            for chunk in self.map(evaluate, list(self.config.x_values)):
                rows.extend(chunk)
        return rows

    def run_asymptotics(self):
        params, dist = self.params, self.dist
        rows = []
        constants = coefficients(params)
        for name in ('C_blowup', 'F_variance'):
            derived = getattr(constants, name)
            printed = getattr(constants, f"{name}_printed")
            if derived is not None:
                rows.append(
                    make_row(
                        params.p, None, None, None, derived, 0.0, ASYMPTOTIC, printed, note=name
                    )
                )
        if params.p > 1.0 and isinstance(dist, UniformBox):
            x = float(self.config.x_values[0])
            point = {'p': params.p, 'x': x, 'note': 'C_calibrated'}

            def calibrated():
                value = calibrate_blowup_coefficient(params, dist, x, spec=self.spec)
                prediction = blowup_coefficient(params)
                return [
                    make_row(
                        params.p, None, None, x, value, None, QUADRATURE, prediction,
                        note='C_calibrated',
                    )
                ]

            rows.extend(self.guarded(point, calibrated))

        def evaluate(eps, t, x):
            position = _position(x, params.n)
            estimate = conditional_mean(params, dist, t, position, self.spec)
            prediction = None
            if eps is not None:
                prediction = _optional(lambda: predicted_mean_near_T(params, eps, position)[0])
            return [self.quadrature_row(eps, t, x, estimate, prediction, 'mean near T')]

        rows.extend(self.on_grid(evaluate))
        return rows

    def slope_rows(self, params, dist, x: float) -> List[Dict[str, Any]]:
        """Means along the eps sweep and the fitted log-log slope with its verdict"""
        rows, means = [], []
        eps_values = self.sweep_epsilons()
        position = _position(x, params.n)
        converged = True
        for eps in eps_values:
            t = time_from_epsilon(params, eps)
            estimate = conditional_mean(params, dist, t, position, self.spec)
            means.append(estimate.scalar())
            converged = converged and estimate.converged
            rows.append(self.quadrature_row(eps, t, x, estimate, None, 'mean', p=params.p))
        slope, _ = fit_loglog_slope(eps_values, means)
        expected = -1.0 if params.p < 1.0 else 1.0
        verdict = threshold_verdict(slope)
        logger.info(f"p={params.p:g}: slope {slope:.4f} ({verdict})")
        rows.append(
            make_row(
                params.p, None, None, x, slope, None, QUADRATURE, expected, converged, verdict
            )
        )
        return rows

    def run_threshold_sweep(self):
        x = float(self.config.x_values[0])

        def evaluate(p):
            params = self.params.replace(p=float(p))
            point = {'p': p, 'x': x}
            return self.guarded(point, lambda: self.slope_rows(params, self.dist, x))

        rows = []
        for chunk in self.map(evaluate, list(self.config.p_values)):
            rows.extend(chunk)
        return rows

    def run_gaussian_f(self):
        k = self.gaussian_k()
        dist = GaussianDistribution(k)
        baseline = self.params.replace(p=0.0)

        def tracking_rows(params):
            rows = []
            for eps, t, x in self.grid():
                position = _position(x, params.n)
                estimate = conditional_mean(params, dist, t, position, self.spec)
                prediction = _optional(lambda: mean_p0_gaussian(baseline, k, t, position)[0])
                note = 'mean'
                if prediction is not None and prediction != 0.0:
                    close = abs(estimate.scalar() / prediction - 1.0) <= TRACKING_TOLERANCE
                    note = 'tracks-p0' if close else 'differs-from-p0'
                rows.append(self.quadrature_row(eps, t, x, estimate, prediction, note, p=params.p))
            return rows

        def evaluate(p):
            params = self.params.replace(p=float(p))
            point = {'p': p}
            if params.p < 1.0:
                return self.guarded(point, lambda: tracking_rows(params))
            x = float(self.config.x_values[0])
            return self.guarded(point, lambda: self.slope_rows(params, dist, x))

        rows = []
        for chunk in self.map(evaluate, list(self.config.p_values)):
            rows.extend(chunk)
        return rows

    @staticmethod
    def powerlaw_class(s: float) -> Tuple[float, str]:
        """Exponent of (1 + alpha t) in the origin slope as t -> T, and its label"""
        if s > 1.5:
            return 1.0, 's>3/2'
        if s > 0.5:
            return 2.0 * s - 2.0, '1/2<s<=3/2'
        return -1.0, 's<=1/2'

    def run_powerlaw_f(self):
        params = self.params
        k = self.dist.k if isinstance(self.dist, PowerLaw) else 1.0
        position = _position(ORIGIN_STEP, params.n)

        def evaluate(s):
            dist = PowerLaw(s=float(s), k=k)
            point = {'p': params.p, 'parameter': s}

            def compute():
                rows, factors, slopes = [], [], []
                for eps, t in self.times():
                    estimate = conditional_mean(params, dist, t, position, self.spec)
                    slope = estimate.scalar() / ORIGIN_STEP
                    prediction = _optional(lambda: powerlaw_origin_slope(params, s, k, t))
                    factors.append(abs(params.alpha * drift_denominator(params, t)))
                    slopes.append(slope)
                    rows.append(
                        make_row(
                            params.p,
                            eps,
                            t,
                            ORIGIN_STEP,
                            slope,
                            estimate.error_bound / ORIGIN_STEP,
                            QUADRATURE,
                            prediction,
                            estimate.converged,
                            'origin-slope',
                            parameter=s,
                        )
                    )
                if len(slopes) > 1:
                    exponent, _ = fit_loglog_slope(factors, slopes)
                    expected, label = self.powerlaw_class(float(s))
                    rows.append(
                        make_row(
                            params.p, None, None, None, exponent, None, QUADRATURE, expected,
                            note=f"exponent {label}", parameter=s,
                        )
                    )
                return rows

            return self.guarded(point, compute)

        rows = []
        for chunk in self.map(evaluate, list(self.config.s_values)):
            rows.extend(chunk)
        return rows

    def run_viscous_residual(self):
        params = self.params.replace(p=0.0)
        k = self.gaussian_k()
        rows, maxima = [], []
        for nu in self.config.nu_values:
            point = {'parameter': nu}

            def worst(nu=nu):
                return max(
                    abs(viscous_residual(params, k, t, x, nu)) for eps, t, x in self.grid()
                )

            try:
                value = worst()
            except ConfigInvalid:
                raise
            except LabError as e:
                raise GridPointError(point, e) from e
            maxima.append(value)
            rows.append(
                make_row(
                    0.0, None, None, None, value, 0.0, CLOSED_FORM,
                    note='max-residual', parameter=nu,
                )
            )
        best = min(maxima)
        rows.append(
            make_row(0.0, None, None, None, best, 0.0, CLOSED_FORM, note='min-over-nu')
        )
        logger.info(f"viscous residual min over nu: {best:.6g}")
        return rows

    def run_induced(self):
        params, dist = self.params, self.dist

        def evaluate(eps, t, x):
            position = _position(x, params.n)
            v = induced_velocity(params, dist, t, position, self.spec)
            v1 = v1_correction(params, dist, t, position, self.spec)
            mean = conditional_mean(params, dist, t, position, self.spec)
            converged = v.converged and v1.converged and mean.converged
            rows = [
                make_row(
                    params.p,
                    eps,
                    t,
                    x,
                    v.scalar(),
                    v.error_bound + v1.error_bound + mean.error_bound,
                    QUADRATURE,
                    mean.scalar() + v1.scalar(),
                    converged,
                    'induced vs mean+v1',
                ),
                self.quadrature_row(eps, t, x, v1, None, 'v1'),
            ]
            if eps is not None:
                rows.append(
                    make_row(
                        params.p, eps, t, x, v1.scalar() / eps, v1.error_bound / eps,
                        QUADRATURE, None, v1.converged, 'v1/eps',
                    )
                )
            return rows

        return self.on_grid(evaluate)

    def provenance(self) -> List[str]:
        echo = self.config.to_dict()
        # The thread count does not change the output.
        echo.pop('threads', None)
        return [
            f"burgers-lab {LAB_VERSION}",
            f"experiment: {self.config.experiment}",
            f"seed: {self.config.mc.get('seed')}",
            f"config: {json.dumps(echo, sort_keys=True)}",
        ]

    def run(self) -> ResultTable:
        runners = {
            'exact': self.run_exact,
            'density': self.run_density,
            'mean': self.run_mean,
            'variance': self.run_variance,
            'mc': self.run_mc,
            'asymptotics': self.run_asymptotics,
            'threshold-sweep': self.run_threshold_sweep,
            'gaussian-f': self.run_gaussian_f,
            'powerlaw-f': self.run_powerlaw_f,
            'viscous-residual': self.run_viscous_residual,
            'induced': self.run_induced,
        }
        logger.info(f"running '{self.config.experiment}' with {self.threads} thread(s)")
        table = ResultTable(self.config.experiment, self.provenance())
        table.extend(runners[self.config.experiment]())
        return table


def run_experiment(config: LabConfig, write: bool = True) -> ResultTable:
    """
    Validate a configuration, evaluate its experiment and persist the CSV

    Args:
        config: experiment configuration
        write: write the table to config.output_path

    Returns:
        ResultTable in grid order
    """
    config.validate()
    table = ExperimentRunner(config).run()
    if write:
        table.write_csv(config.output_path)
        logger.info(f"wrote {len(table.rows)} rows to {config.output_path}")
    return table


def _load(config_arg: Optional[str]) -> LabConfig:
    if config_arg and os.path.exists(config_arg):
        return LabConfig(config_arg)
    if config_arg and config_arg.endswith('.json'):
        raise ConfigInvalid('config', f"file {config_arg} not found")
    return load_config(config_arg or 'default')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--config', '-c', help='Configuration file or name (default: default)'
    )
    common.add_argument('--out', '-o', help='CSV output path (overrides output_path)')
    common.add_argument('--seed', type=int, help='Monte Carlo seed (overrides mc.seed)')
    common.add_argument('--threads', '-t', type=int, help='Worker threads (overrides threads)')
    common.add_argument('--verbose', '-v', action='store_true', help='Debug logging')
    common.add_argument('--quiet', '-q', action='store_true', help='Warnings and errors only')

    parser = argparse.ArgumentParser(
        description='Run Burgers medium experiments and export CSV',
        epilog=CONFIG_KEYS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest='command', metavar='experiment')
    commands.required = True
    for name in EXPERIMENTS:
        commands.add_parser(
            name,
            parents=[common],
            help=f"run the {name} experiment",
            epilog=CONFIG_KEYS_HELP,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main function with command line argument support"""
    args = build_parser().parse_args(argv)

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.quiet:
        logging.getLogger().setLevel(logging.WARNING)

    try:
        config = _load(args.config)
        config.experiment = args.command
        if args.out:
            config.output_path = args.out
        if args.seed is not None:
            config.mc['seed'] = args.seed
        if args.threads is not None:
            config.threads = args.threads
        table = run_experiment(config)
    except ConfigInvalid as e:
        print(f"❌ Invalid configuration: {e}")
        return 2
    except GridPointError as e:
        if isinstance(e.cause, ConfigInvalid):
            print(f"❌ Invalid configuration: {e}")
            return 2
        print(f"❌ {e}")
        return 1
    except LabError as e:
        print(f"❌ {e}")
        return 1

    print(f"✅ {config.experiment}: {len(table.rows)} rows")
    print(f"📁 {config.output_path}")
    if table.unconverged:
        print(f"❌ {table.unconverged} row(s) did not converge (flagged in the CSV)")
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
