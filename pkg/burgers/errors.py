#!/usr/bin/env python3
"""
Errors raised by the Burgers medium laboratory

Every failure the laboratory reports is a LabError subclass, so callers can
catch the whole family with one except clause. NoBlowup is not an error; it
lives in model.py as a sentinel value.
"""

from typing import Optional, Sequence


class LabError(Exception):
    """Base class for all laboratory errors"""


class ConfigInvalid(LabError):
    """A configuration field failed validation"""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class DimensionMismatch(LabError):
    """A position or velocity vector does not have n components"""


class EvaluationAtOrPastBlowup(LabError):
    """Requested time is at or beyond the critical time T"""


class UnsupportedDimension(LabError):
    """Operation is only defined for particular space dimensions"""


class UnsupportedParameters(LabError):
    """Parameter combination outside the domain of a formula"""


class WrongExponent(UnsupportedParameters):
    """Closed form requested for a diffusion exponent it does not cover"""


class UndefinedAtP1(UnsupportedParameters):
    """The blow-up constant has a Gamma pole at p = 1"""


class OutOfRegime(UnsupportedParameters):
    """Asymptotic formula requested outside its regime of validity"""


class PoleArgument(LabError):
    """Gamma evaluated at a nonpositive integer"""


class SpecialFunctionOverflow(LabError):
    """Special function value exceeds the double range"""


class NonPositiveArgument(LabError):
    """Bessel K evaluated at z <= 0 or with negative order"""


class ZeroVelocityWithPositiveP(LabError):
    """Phase density evaluated at u = 0 while p > 0"""


class NonPositiveTime(LabError):
    """Phase density evaluated at t <= 0"""


class NonSmoothPoint(LabError):
    """Finite-difference stencil straddles a discontinuity of f"""


class RatioNotConverged(LabError):
    """Truncated moment ratio did not settle along the L sequence"""

    def __init__(self, message: str, history: Optional[Sequence[float]] = None):
        self.history = list(history) if history is not None else []
        super().__init__(message)


class SingularDenominator(LabError):
    """The u-marginal underflows to zero at the requested point"""


class DivergentIntegral(LabError):
    """A moment integral diverges for the requested parameters"""


class InsufficientLocalMass(LabError):
    """No Monte Carlo samples carry kernel weight near the query point"""


class ZeroDensity(LabError):
    """Observable density underflows at the requested point"""


class GridPointError(LabError):
    """Wraps a module error together with the grid point that raised it"""

    def __init__(self, point: dict, cause: Exception):
        self.point = point
        self.cause = cause
        super().__init__(f"{type(cause).__name__} at {point}: {cause}")
