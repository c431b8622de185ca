#!/usr/bin/env python3
"""
Limits and slopes of numerical sequences

Richardson extrapolation for step-size sequences, convergence tests for
sequences indexed by a growing truncation, and log-log slope fits used to
extract exponents of asymptotic laws.
"""

from typing import Sequence, Tuple

import numpy as np


def richardson_limit(
    step_ratio: float, values: Sequence[float], order: int = 1, order_step: int = 1
) -> float:
    """
    Extrapolate values computed at steps h, h/r, h/r^2, ... to h -> 0

    Args:
        step_ratio: r, the factor between consecutive steps
        values: estimates ordered from the coarsest to the finest step
        order: leading power of h in the error
        order_step: spacing of the following powers (2 for central differences)
    """
    n_steps = len(values)
    if n_steps == 1:
        return float(values[0])

    last_level = [float(v) for v in values]
    for m in range(1, n_steps):
        mult = step_ratio ** (order + (m - 1) * order_step)
        factor = 1.0 / (mult - 1.0)
        last_level = [
            factor * (mult * last_level[i + 1] - last_level[i])
            for i in range(n_steps - m)
        ]
    return last_level[0]


def relative_change(previous: float, current: float, floor: float = 0.0) -> float:
    """|current - previous| relative to max(|current|, floor)"""
    scale = max(abs(current), abs(previous), floor)
    if scale == 0.0:
        return 0.0
    return abs(current - previous) / scale


def has_settled(values: Sequence[float], rel_tol: float, floor: float = 0.0) -> bool:
    """True when the last two entries agree to rel_tol"""
    if len(values) < 2:
        return False
    return relative_change(values[-2], values[-1], floor) < rel_tol


def increments(values: Sequence[float]) -> np.ndarray:
    return np.diff(np.asarray(values, dtype=float))


def is_growing_without_bound(values: Sequence[float], tolerance: float = 1e-3) -> bool:
    """
    True when a geometric truncation sequence looks divergent

    The increments of a divergent sequence over doubling truncations are
    positive and do not shrink: successive increment ratios stay >= 1 - tolerance.
    A convergent sequence has increments decaying geometrically.
    """
    steps = increments(values)
    if len(steps) < 2 or np.any(steps[-2:] <= 0.0):
        return False
    return steps[-1] / steps[-2] >= 1.0 - tolerance


def fit_loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float]:
    """Least-squares slope and intercept of log|y| against log|x|"""
    log_x = np.log(np.abs(np.asarray(xs, dtype=float)))
    log_y = np.log(np.abs(np.asarray(ys, dtype=float)))
    slope, intercept = np.polyfit(log_x, log_y, 1)
    return float(slope), float(intercept)
