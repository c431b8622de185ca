#!/usr/bin/env python3
"""
Configuration Creator for the Burgers medium experiments

This script writes preset configuration files and lists the existing ones.
"""

from typing import Optional

import argparse
import os

from asymptotics import THRESHOLD_EPSILONS
from config import CONFIG_DIR, EXPERIMENTS, LabConfig
from moments import SUPPORT


def _preset_default(config: LabConfig):
    config.experiment = 'mean'


def _preset_threshold(config: LabConfig):
    config.experiment = 'threshold-sweep'
    config.epsilon_values = list(THRESHOLD_EPSILONS)
    config.x_values = [1.0]
    config.output_path = 'threshold.csv'


def _preset_montecarlo(config: LabConfig):
    config.experiment = 'mc'
    config.p = 2.0
    config.distribution = {'kind': 'uniform', 'L': 1.0}
    config.quadrature = {'truncation': SUPPORT}
    config.mc['local_linear'] = True
    config.output_path = 'montecarlo.csv'


PRESETS = {
    'default': _preset_default,
    'threshold': _preset_threshold,
    'montecarlo': _preset_montecarlo,
}


def create_config(
    name: str,
    experiment: Optional[str] = None,
    p: Optional[float] = None,
    output_path: Optional[str] = None,
    directory: str = CONFIG_DIR,
) -> str:
    """
    Create a configuration file from a preset

    Args:
        name: preset name, or a new name built on the default preset
        experiment: experiment tag overriding the preset
        p: diffusion exponent overriding the preset
        output_path: CSV path overriding the preset
        directory: where config_<name>.json is written

    Returns:
        path of the written file
    """
    config = LabConfig()
    PRESETS.get(name, _preset_default)(config)

    if experiment:
        config.experiment = experiment
    if p is not None:
        config.p = p
    if output_path:
        config.output_path = output_path
    config.validate()

    config_file = os.path.join(directory, f"config_{name}.json")
    config.save_to_file(config_file)

    print(f"✅ Created configuration file: {config_file}")
    print(f"Experiment: {config.experiment}")
    print(f"Parameters: alpha={config.alpha}, beta={config.beta}, sigma={config.sigma}")
    print(f"Exponent: p={config.p}, dimension: n={config.n}")
    print(f"Output: {config.output_path}")
    print()
    print("To use this configuration:")
    print(f"  python run_experiments.py {config.experiment} --config {config_file}")
    return config_file


def list_configs(directory: str = CONFIG_DIR):
    """List all available configuration files"""
    config_files = sorted(
        f for f in os.listdir(directory) if f.startswith('config_') and f.endswith('.json')
    )

    if not config_files:
        print("No configuration files found.")
        return

    print("Available configurations:")
    for config_file in config_files:
        config_name = config_file.replace('config_', '').replace('.json', '')
        config = LabConfig(os.path.join(directory, config_file))
        print(f"  - {config_name}: {config.experiment} (p={config.p}, n={config.n})")


def main():
    """Main function"""
    parser = argparse.ArgumentParser(
        description='Create configuration files for Burgers medium experiments'
    )
    parser.add_argument('name', nargs='?', help=f"Preset or new name ({', '.join(PRESETS)})")
    parser.add_argument('--experiment', '-e', choices=EXPERIMENTS, help='Experiment to run')
    parser.add_argument('--p', type=float, help='Diffusion exponent')
    parser.add_argument('--output-path', '-o', help='CSV output path')
    parser.add_argument('--dir', default=CONFIG_DIR, help='Directory for the config file')
    parser.add_argument(
        '--list', '-l', action='store_true', help='List existing configurations'
    )

    args = parser.parse_args()

    if args.list:
        list_configs(args.dir)
        return

    if not args.name:
        parser.print_help()
        return

    create_config(
        name=args.name,
        experiment=args.experiment,
        p=args.p,
        output_path=args.output_path,
        directory=args.dir,
    )


if __name__ == "__main__":
    main()
