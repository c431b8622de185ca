#!/usr/bin/env python3
"""
Configuration for the Burgers medium experiments

This module holds the experiment settings: model parameters, initial
distribution, evaluation grid, quadrature and Monte Carlo settings.
Different experiments live in different config_<name>.json files.
"""

from typing import Any, Dict, List, Optional

import json
import math
import os

from errors import ConfigInvalid, UnsupportedDimension
from model import InitialDistribution, ModelParams, critical_time, distribution_from_dict
from moments import QuadratureSpec
from montecarlo import KernelSpec

EXPERIMENTS = (
    'exact',
    'density',
    'mean',
    'variance',
    'mc',
    'asymptotics',
    'threshold-sweep',
    'gaussian-f',
    'powerlaw-f',
    'viscous-residual',
    'induced',
)

CONFIG_DIR = os.path.dirname(os.path.abspath(__file__))

_DEFAULT_MC = {
    'count': 1000000,
    'seed': 12345,
    'bandwidth': None,
    'min_effective_samples': 100,
    'chunks': 16,
    'local_linear': False,
}


class LabConfig:
    """Configuration class for one laboratory experiment"""

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize configuration from file or use defaults

        Args:
            config_file: Path to JSON configuration file
        """
        if config_file and os.path.exists(config_file):
            self.load_from_file(config_file)
        else:
            self.set_defaults()

    def set_defaults(self):
        """Set default configuration values"""
        self.experiment = 'mean'

        # Model parameters
        self.alpha = -1.0
        self.beta = 0.0
        self.sigma = 1.0
        self.p = 0.0
        self.n = 1
        self.distribution = {'kind': 'uniform', 'L': 1.0}

        # Evaluation grid
        self.t_values: List[float] = []
        self.epsilon_values = [0.5, 0.1]
        self.x_values = [0.5, 1.0]
        self.p_values = [0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0]
        self.s_values = [0.4, 0.75, 2.0]
        self.nu_values = [0.01, 0.1, 1.0]

        # Numerical settings
        self.quadrature: Dict[str, Any] = {}
        self.mc = dict(_DEFAULT_MC)

        self.output_path = 'results.csv'
        self.threads = 1

    def load_from_file(self, config_file: str):
        """Load configuration from JSON file"""
        with open(config_file, 'r', encoding='utf-8') as f:
            try:
                config_data = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigInvalid('file', f"{config_file} is not valid JSON ({e})")

        self.set_defaults()
        unknown = set(config_data) - set(self.to_dict())
        if unknown:
            raise ConfigInvalid(sorted(unknown)[0], "unknown configuration key")

        self.experiment = config_data.get('experiment', self.experiment)
        self.alpha = config_data.get('alpha', self.alpha)
        self.beta = config_data.get('beta', self.beta)
        self.sigma = config_data.get('sigma', self.sigma)
        self.p = config_data.get('p', self.p)
        self.n = config_data.get('n', self.n)
        self.distribution = config_data.get('distribution', self.distribution)

        self.t_values = config_data.get('t_values', self.t_values)
        self.epsilon_values = config_data.get(
            'epsilon_values', [] if self.t_values else self.epsilon_values
        )
        self.x_values = config_data.get('x_values', self.x_values)
        self.p_values = config_data.get('p_values', self.p_values)
        self.s_values = config_data.get('s_values', self.s_values)
        self.nu_values = config_data.get('nu_values', self.nu_values)

        self.quadrature = config_data.get('quadrature', self.quadrature)
        self.mc = {**_DEFAULT_MC, **config_data.get('mc', {})}

        self.output_path = config_data.get('output_path', self.output_path)
        self.threads = config_data.get('threads', self.threads)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'experiment': self.experiment,
            'alpha': self.alpha,
            'beta': self.beta,
            'sigma': self.sigma,
            'p': self.p,
            'n': self.n,
            'distribution': self.distribution,
            't_values': self.t_values,
            'epsilon_values': self.epsilon_values,
            'x_values': self.x_values,
            'p_values': self.p_values,
            's_values': self.s_values,
            'nu_values': self.nu_values,
            'quadrature': self.quadrature,
            'mc': self.mc,
            'output_path': self.output_path,
            'threads': self.threads,
        }

    def save_to_file(self, config_file: str):
        """Save current configuration to JSON file"""
        with open(config_file, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, indent=2, ensure_ascii=False)

    def params(self) -> ModelParams:
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise ConfigInvalid('n', f"must be an integer >= 1, got {self.n}")
        return ModelParams(
            alpha=float(self.alpha),
            beta=float(self.beta),
            sigma=float(self.sigma),
            p=float(self.p),
            n=int(self.n),
        )

    def initial_distribution(self) -> InitialDistribution:
        if not isinstance(self.distribution, dict):
            raise ConfigInvalid('distribution', "must be an object with a 'kind' key")
        return distribution_from_dict(self.distribution)

    def quadrature_spec(self) -> QuadratureSpec:
        return QuadratureSpec.from_dict(self.quadrature)

    def kernel_spec(self) -> KernelSpec:
        return KernelSpec(
            bandwidth=self.mc.get('bandwidth'),
            min_effective_samples=int(self.mc.get('min_effective_samples', 100)),
            local_linear=bool(self.mc.get('local_linear', False)),
        )

    def uses_epsilon(self) -> bool:
        return bool(self.epsilon_values)

    def validate(self):
        """Raise ConfigInvalid naming the first bad field"""
        if self.experiment not in EXPERIMENTS:
            raise ConfigInvalid(
                'experiment', f"'{self.experiment}' is not one of {', '.join(EXPERIMENTS)}"
            )
        params = self.params()
        dist = self.initial_distribution()
        try:
            dist.check_dimension(params.n)
        except UnsupportedDimension as e:
            raise ConfigInvalid('n', str(e))
        self.quadrature_spec()
        self.kernel_spec()

        if self.t_values and self.epsilon_values:
            raise ConfigInvalid('t_values', "give either t_values or epsilon_values, not both")
        if not self.t_values and not self.epsilon_values:
            raise ConfigInvalid('epsilon_values', "the time grid is empty")
        for eps in self.epsilon_values:
            if not 0.0 < eps <= 1.0:
                raise ConfigInvalid('epsilon_values', f"{eps} is outside (0, 1]")
        if self.epsilon_values and math.isinf(critical_time(params)):
            raise ConfigInvalid('epsilon_values', "no blow-up for these alpha and beta")
        for t in self.t_values:
            if not t > 0.0:
                raise ConfigInvalid('t_values', f"{t} is not positive")
        if not self.x_values:
            raise ConfigInvalid('x_values', "the position grid is empty")

        for key in ('p_values', 's_values', 'nu_values'):
            if not getattr(self, key):
                raise ConfigInvalid(key, "must not be empty")
        if int(self.mc.get('count', 0)) < 1:
            raise ConfigInvalid('mc.count', "must be >= 1")
        if int(self.mc.get('chunks', 0)) < 1:
            raise ConfigInvalid('mc.chunks', "must be >= 1")
        if int(self.threads) < 1:
            raise ConfigInvalid('threads', "must be >= 1")
        if not self.output_path:
            raise ConfigInvalid('output_path', "must not be empty")


def load_config(config_name: str = "default") -> LabConfig:
    """
    Load a named configuration

    Args:
        config_name: Name of the configuration (e.g., 'default', 'threshold')

    Returns:
        LabConfig instance, with defaults when config_<name>.json is missing
    """
    config_file = os.path.join(CONFIG_DIR, f"config_{config_name}.json")
    if not os.path.exists(config_file):
        config_file = f"config_{config_name}.json"
    return LabConfig(config_file)
