"""Numerical workbench for theta-series kernels, xi(s) and windowed Fourier transforms."""

__version__ = "0.1.0"

from .claims_verifier import ClaimResult
from .errors import (
    BranchLost,
    ConfigError,
    ConsistencyError,
    DomainError,
    NoCrossing,
    NoSignChange,
    ToleranceUnreachable,
    XilabError,
)
from .fourier_engine import WindowParams, ep_omega, f_omega, fr_convolution, g1r, gr, gr_partials
from .quadrature import QuadratureResult
from .theta_core import StripPoint, TruncatedSum, de0_dt, e0, ep, theta_w
from .xi_oracle import find_critical_zero, xi_critical_line, xi_direct
from .zero_tracker import CrossingRecord, StepControl, continue_crossing, first_crossing, podd, solve_quarter_period

__all__ = [
    "BranchLost", "ClaimResult", "ConfigError", "ConsistencyError", "CrossingRecord", "DomainError",
    "NoCrossing", "NoSignChange", "QuadratureResult", "StepControl", "StripPoint", "ToleranceUnreachable",
    "TruncatedSum", "WindowParams", "XilabError", "continue_crossing", "de0_dt", "e0", "ep", "ep_omega",
    "f_omega", "find_critical_zero", "first_crossing", "fr_convolution", "g1r", "gr", "gr_partials", "podd",
    "solve_quarter_period", "theta_w", "xi_critical_line", "xi_direct",
]
