"""Direct evaluation of xi(s) from the theta integral, and critical-line zeros.

With x = e^{2t} the representation becomes

    xi(s) = 1/2 + s (s - 1) int_0^inf (e^{s t} + e^{(1 - s) t}) w(e^{2t}) dt,

whose integrand decays like exp(-pi e^{2t}), so a short finite interval suffices.
"""
from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .errors import ConsistencyError, DomainError, NoSignChange
from .quadrature import QuadratureResult, adaptive

DEFAULT_TOL = 1e-12
X_MAX_MIN = 30.0


def _cutoff(s, threshold):
    """Smallest t = log(x)/2 beyond which the integrand majorant drops below threshold."""
    c = max(s.real, 1.0 - s.real)
    t = 0.5 * math.log(X_MAX_MIN)
    while True:
        x = math.exp(2.0 * t)
        # w(x) <= e^{-pi x} / (1 - e^{-pi}); the two exponentials add at most 2 e^{c t}
        log_bound = math.log(2.0 / (1.0 - math.exp(-math.pi))) + c * t - math.pi * x
        if log_bound < math.log(threshold):
            return t
        t += 0.05


def xi_direct(s: complex, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """xi(s) with an absolute error estimate."""
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError("s must be finite")
    pref = s * (s - 1.0)
    if pref == 0:
        return QuadratureResult(complex(0.5), 0.0, 0)
    scale = abs(pref)
    t_max = _cutoff(s, tol * 1e-2 / scale)
    one_minus = 1.0 - s

    def integrand(t):
        return (np.exp(s * t) + np.exp(one_minus * t)) * _kernels.theta_w_array(np.exp(2.0 * t))

    width = min(0.25, math.pi / (2.0 * max(abs(s.imag), 1.0)))
    inner = adaptive(integrand, 0.0, t_max, tol / scale, max_width=width)
    value = 0.5 + pref * complex(inner.value)
    return QuadratureResult(value, inner.err_estimate * scale + tol * 1e-2, inner.panels)


def xi_functional_residual(s: complex, tol: float = DEFAULT_TOL) -> float:
    s = complex(s)
    return abs(xi_direct(s, tol).value - xi_direct(1.0 - s, tol).value)


def xi_critical_line(omega: float, tol: float = DEFAULT_TOL, imag_tol: float = 1e-10) -> float:
    """Re xi(1/2 + i omega); the imaginary part must vanish."""
    v = xi_direct(complex(0.5, omega), tol).value
    if abs(v.imag) >= imag_tol:
        raise ConsistencyError(f"Im xi(1/2 + {omega}i) = {v.imag:.3g} is not negligible")
    return v.real


def find_critical_zero(bracket_lo: float, bracket_hi: float, tol: float = 1e-10) -> float:
    """Bisection for a sign change of xi on the critical line."""
    lo, hi = float(bracket_lo), float(bracket_hi)
    flo, fhi = xi_critical_line(lo), xi_critical_line(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise NoSignChange(f"xi(1/2 + i w) keeps its sign on [{lo}, {hi}]")
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = xi_critical_line(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return lo if abs(flo) <= abs(fhi) else hi
