"""Fourier-side objects built on the E0 kernel.

Conventions: transforms are F(w) = int f(t) e^{-i w t} dt.  A window is fixed by
(sigma, t2, t0) and the shifted difference is D(x) = E0(x - t2) - E0(x + t2).
Every integral over a half line is reduced to a finite union of intervals
around the centres of the shifted E0 bumps, using the certified majorant of E0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import theta_core as tc
from ._kernels import de0_array, e0_array
from .errors import ConsistencyError, DomainError
from .quadrature import (
    CheckedResult,
    QuadratureResult,
    TrigGrid,
    adaptive,
    integrate_union,
    merge_intervals,
    trig_transform,
)
from .theta_core import StripPoint

DEFAULT_TOL = 1e-12
# accuracy floor relative to int |integrand|; matters only for heavily weighted windows
SCALE_RTOL = 1e-14
BASE_WIDTH = 0.125


@dataclass(frozen=True)
class WindowParams:
    sigma: float
    t2: float
    t0: float

    def __post_init__(self):
        if not 0.0 < self.sigma < 0.5:
            raise DomainError(f"window needs 0 < sigma < 1/2, got {self.sigma}")
        if not (math.isfinite(self.t2) and math.isfinite(self.t0)):
            raise DomainError("window shifts must be finite")

    @property
    def degenerate(self) -> bool:
        """t2 = 0 makes every window function vanish identically."""
        return self.t2 == 0.0

    def with_t0(self, t0):
        return WindowParams(self.sigma, self.t2, t0)


# ------------------------------------------------------------------ helpers

def _panel_width(omega):
    omega = abs(omega)
    return BASE_WIDTH if omega == 0 else min(BASE_WIDTH, math.pi / (2.0 * omega))


def _support(centers, tol, log_weight, growth, hi=math.inf, lo=-math.inf):
    """Intervals outside which every shifted bump, times its weight, is below tol * 1e-3."""
    radius = tc.e0_support_radius(math.log(tol * 1e-3) - log_weight, growth)
    return merge_intervals([(c - radius, c + radius) for c in centers], lo, hi)


def _window_support(w, tol, hi=0.0):
    s, t2, t0 = w.sigma, abs(w.t2), abs(w.t0)
    centers = [a + b for a in (t0, -t0) for b in (t2, -t2)]
    # worst case of e^{+-2 sigma t0} e^{-2 sigma tau} over the bumps, plus the
    # kernel's own exp(2 sigma |tau|) growth away from each centre
    log_weight = 2.0 * s * (2.0 * t0 + t2) + math.log(4.0)
    return _support(centers, tol, log_weight, 2.0 * s, hi=hi)


def shift_diff_array(x, t2):
    """D(x) = E0(x - t2) - E0(x + t2) on an array."""
    return e0_array(x - t2) - e0_array(x + t2)


def _dshift_array(x, t2):
    return de0_array(x - t2) - de0_array(x + t2)


def _g1r_kernel(tau, s, t2, t0):
    # E0'(tau + t0) e^{-2 sigma tau} + E0n'(tau - t0), with E0n'(u) = E0'(-u)
    return shift_diff_array(tau + t0, t2) * np.exp(-2.0 * s * tau) + shift_diff_array(t0 - tau, t2)


def _gr_kernel(tau, s, t2, t0):
    # same object as e^{-2 s t0} G1R(t0) + e^{2 s t0} G1R(-t0) after using D(-x) = -D(x)
    return (shift_diff_array(tau + t0, t2) * (np.exp(-2.0 * s * (tau + t0)) - math.exp(2.0 * s * t0))
            + shift_diff_array(tau - t0, t2) * (np.exp(-2.0 * s * (tau - t0)) - math.exp(-2.0 * s * t0)))


def _cos_integral(kernel, intervals, omega, tol):
    if omega == 0:
        f = kernel
    else:
        f = lambda tau: kernel(tau) * np.cos(omega * tau)
    return integrate_union(f, intervals, tol, max_width=_panel_width(omega), srtol=SCALE_RTOL)


# ------------------------------------------------------------- strip side

def _ep_array(t, sigma):
    return e0_array(t) * np.exp(-sigma * t)


def _ep_support(sigma, tol, centers=(0.0,), log_weight=0.0):
    return _support(centers, tol, log_weight + abs(sigma) * max(abs(c) for c in centers), abs(sigma))


def ep_omega(p: StripPoint, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """E_p transform int E0(t) e^{-sigma t} e^{-i omega t} dt, i.e. xi(1/2 + sigma + i omega)."""
    s, om = p.sigma, p.omega
    (a, b), = _ep_support(s, tol)
    if om == 0:
        f = lambda t: _ep_array(t, s)
    else:
        f = lambda t: _ep_array(t, s) * np.exp(-1j * om * t)
    res = adaptive(f, a, b, tol, max_width=_panel_width(om))
    return QuadratureResult(complex(res.value), res.err_estimate, res.panels)


def ep_omega_many(sigma: float, omegas, tol: float = DEFAULT_TOL):
    """ep_omega on an omega grid through one shared panel grid; returns (values, errors)."""
    StripPoint(sigma, 0.0)
    intervals = _ep_support(sigma, tol)
    kern = lambda t: _ep_array(t, sigma)
    re, ere = trig_transform(kern, intervals, omegas, tol / 2)
    im, eim = trig_transform(kern, intervals, omegas, tol / 2, use_sin=True)
    return re - 1j * im, ere + eim


def _bracket_factor(sigma, omega, t2):
    return complex(math.exp(-sigma * t2) * np.exp(-1j * omega * t2)
                   - math.exp(sigma * t2) * np.exp(1j * omega * t2))


def ep_prime_omega(p: StripPoint, t2: float, tol: float = DEFAULT_TOL) -> CheckedResult:
    """Transform of E_p(t - t2) e^{-sigma t2} - E_p(t + t2) e^{sigma t2}.

    The product of E_p's transform with the shift bracket is returned; a direct
    quadrature of the shifted difference must agree with it.
    """
    if t2 == 0:
        return CheckedResult(0j, 0.0, 0, 0.0)
    s, om = p.sigma, p.omega
    base = ep_omega(p, tol)
    fac = _bracket_factor(s, om, t2)
    product = base.value * fac
    prod_err = base.err_estimate * abs(fac)

    def direct(t):
        d = _ep_array(t - t2, s) * math.exp(-s * t2) - _ep_array(t + t2, s) * math.exp(s * t2)
        return d * np.exp(-1j * om * t) if om else d

    intervals = _ep_support(s, tol, centers=(t2, -t2), log_weight=abs(s * t2) + math.log(2.0))
    alt = integrate_union(direct, intervals, tol, max_width=_panel_width(om))
    gap = abs(product - complex(alt.value))
    allowed = 10.0 * (prod_err + alt.err_estimate) + 1e-15
    if gap > allowed:
        raise ConsistencyError(f"shifted transform routes differ by {gap:.3g} (allowed {allowed:.3g})")
    return CheckedResult(product, prod_err, base.panels + alt.panels, gap)


def h_omega(omega: float, sigma: float) -> float:
    """Transform of the two-sided window h(t) = e^{-sigma |t|}."""
    if not 0.0 < sigma < 0.5:
        raise DomainError(f"h_omega needs 0 < sigma < 1/2, got {sigma}")
    return 2.0 * sigma / (sigma * sigma + omega * omega)


def f_omega(omega: float, w: WindowParams, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """Transform F of the window function f."""
    if w.degenerate:
        return QuadratureResult(0j, 0.0, 0)
    s, t0 = w.sigma, w.t0
    e = ep_prime_omega(StripPoint(s, omega), w.t2, tol)
    fac = complex(math.exp(-s * t0) * np.exp(1j * omega * t0) + math.exp(s * t0) * np.exp(-1j * omega * t0))
    return QuadratureResult(e.value * fac, e.err_estimate * abs(fac), e.panels)


# ---------------------------------------------------------- time domain

def _ep_prime_time(t, s, t2):
    return _ep_array(t - t2, s) * math.exp(-s * t2) - _ep_array(t + t2, s) * math.exp(s * t2)


def f_time(t, w: WindowParams):
    """f = f1 + f2 with f1 = e^{-sigma t0} E_p'(t + t0), f2 = e^{sigma t0} E_p'(t - t0)."""
    t = np.asarray(t, dtype=float)
    s, t2, t0 = w.sigma, w.t2, w.t0
    return math.exp(-s * t0) * _ep_prime_time(t + t0, s, t2) + math.exp(s * t0) * _ep_prime_time(t - t0, s, t2)


def g_time(t, w: WindowParams):
    """g = f e^{-sigma t} for t < 0 and f e^{sigma t} for t > 0, i.e. f e^{sigma |t|}."""
    t = np.asarray(t, dtype=float)
    return f_time(t, w) * np.exp(w.sigma * np.abs(t))


def f_at_zero_closed_form(w: WindowParams) -> float:
    s, t2, t0 = w.sigma, w.t2, w.t0
    return -2.0 * math.sinh(2.0 * s * t0) * (tc.e0(t0 - t2).value - tc.e0(t0 + t2).value)


# ------------------------------------------------------------- G side

def g1r(omega: float, w: WindowParams, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """G1R: int_{-inf}^0 [E0'(tau + t0) e^{-2 sigma tau} + E0n'(tau - t0)] cos(omega tau) dtau."""
    if w.degenerate:
        return QuadratureResult(0.0, 0.0, 0)
    s, t2, t0 = w.sigma, w.t2, w.t0
    return _cos_integral(lambda tau: _g1r_kernel(tau, s, t2, t0), _window_support(w, tol), omega, tol)


def gr(omega: float, w: WindowParams, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """G_R = e^{-2 sigma t0} G1R(t0) + e^{2 sigma t0} G1R(-t0), as one quadrature."""
    if w.degenerate:
        return QuadratureResult(0.0, 0.0, 0)
    s, t2, t0 = w.sigma, w.t2, w.t0
    return _cos_integral(lambda tau: _gr_kernel(tau, s, t2, t0), _window_support(w, tol), omega, tol)


def gr_many(omegas, w: WindowParams, tol: float = DEFAULT_TOL):
    """G_R on a frequency grid through one shared panel grid; returns (values, errors)."""
    omegas = np.asarray(omegas, dtype=float)
    if w.degenerate:
        return np.zeros(omegas.shape), np.zeros(omegas.shape)
    s, t2, t0 = w.sigma, w.t2, w.t0
    return trig_transform(lambda tau: _gr_kernel(tau, s, t2, t0), _window_support(w, tol), omegas, tol,
                          srtol=SCALE_RTOL)


def gr_edge_slope(w: WindowParams) -> float:
    """K'(0-) for the G_R kernel K; G_R(omega) ~ K'(0-) / omega^2 for large omega."""
    return 4.0 * w.sigma * math.sinh(2.0 * w.sigma * w.t0) * (
        tc.e0(w.t0 - w.t2).value - tc.e0(w.t0 + w.t2).value)


def _tail_convolution(omega, sigma, a, big, tol):
    # int_big^inf a/x^2 [L(omega - x) + L(omega + x)] dx with u = 1/x
    def f(u):
        return a * (u * u / (sigma * sigma * u * u + (omega * u - 1.0) ** 2)
                    + u * u / (sigma * sigma * u * u + (omega * u + 1.0) ** 2))
    return adaptive(f, 0.0, 1.0 / big, tol)


def fr_convolution(omega: float, w: WindowParams, tol: float = 1e-10) -> QuadratureResult:
    """Re F from G_R through the Lorentzian convolution with H.

    The frequency integral runs over [0, big] numerically; beyond ``big`` G_R is
    replaced by its a / omega^2 envelope, integrated exactly against the
    Lorentzians, and the envelope misfit is charged to the error estimate.
    """
    if w.degenerate:
        return QuadratureResult(0.0, 0.0, 0)
    s = w.sigma
    omega = abs(omega)
    a = gr_edge_slope(w)
    big = 40.0 + 2.0 * omega
    while True:
        g_tol = tol * 0.1
        intervals = _window_support(w, g_tol)
        kern = lambda tau: _gr_kernel(tau, s, w.t2, w.t0)
        probe = np.linspace(0.5 * big, big, 9)
        g_probe, _ = trig_transform(kern, intervals, probe, g_tol)
        misfit = float(np.max(np.abs(g_probe - a / probe ** 2) * probe ** 4))
        # |G_R - a/x^2| <= misfit / x^4 beyond big; Lorentzians <= 2/(x - omega)^2 there
        tail_err = (s / math.pi) * misfit * 2.0 / (big - omega) ** 2 / (3.0 * big ** 3)
        if tail_err < 0.25 * tol or big > 2000:
            break
        big *= 2.0
    width = min(BASE_WIDTH, math.pi / (2.0 * big))
    grid = TrigGrid.build(kern, intervals, width)

    def outer(x):
        g, _ = grid.transform(x)
        return g * (1.0 / (s * s + (omega - x) ** 2) + 1.0 / (s * s + (omega + x) ** 2))

    _, grid_err = grid.transform(np.linspace(0.0, big, 33))
    body = adaptive(outer, 0.0, big, 0.5 * tol * math.pi / s, max_width=max(s, 0.05),
                    breakpoints=(omega,))
    tail = _tail_convolution(omega, s, a, big, 0.1 * tol * math.pi / s)
    value = (s / math.pi) * (body.value + tail.value)
    err = (s / math.pi) * (body.err_estimate + tail.err_estimate) + tail_err + 2.0 * float(np.max(grid_err))
    return QuadratureResult(float(value), float(err), body.panels + tail.panels)


# ----------------------------------------------------------- partials

def _k1_parts(tau, s, t2, t0):
    """G1R kernel at shift t0 and its t0 / t2 derivatives."""
    ew = np.exp(-2.0 * s * tau)
    k = shift_diff_array(tau + t0, t2) * ew + shift_diff_array(t0 - tau, t2)
    dk0 = _dshift_array(tau + t0, t2) * ew + _dshift_array(t0 - tau, t2)
    dk2 = (-(de0_array(tau + t0 - t2) + de0_array(tau + t0 + t2)) * ew
           - (de0_array(t0 - tau - t2) + de0_array(t0 - tau + t2)))
    return k, dk0, dk2


PARTIALS = ("domega", "domega2", "dt0", "dt2")


def gr_partials(omega: float, w: WindowParams, which: str, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """Analytic partial derivatives of G_R, each evaluated as a single quadrature."""
    if which not in PARTIALS:
        raise DomainError(f"unknown partial {which!r}; expected one of {PARTIALS}")
    if w.degenerate:
        return QuadratureResult(0.0, 0.0, 0)
    s, t2, t0 = w.sigma, w.t2, w.t0
    em, ep_ = math.exp(-2.0 * s * t0), math.exp(2.0 * s * t0)

    if which in ("domega", "domega2"):
        def kern(tau):
            kp = _k1_parts(tau, s, t2, t0)[0]
            km = _k1_parts(tau, s, t2, -t0)[0]
            return em * kp + ep_ * km
        if which == "domega":
            if omega == 0:
                return QuadratureResult(0.0, 0.0, 0)
            f = lambda tau: -tau * kern(tau) * np.sin(omega * tau)
        else:
            f = lambda tau: -tau * tau * kern(tau) * np.cos(omega * tau)
        return integrate_union(f, _window_support(w, tol), tol, max_width=_panel_width(omega), srtol=SCALE_RTOL)

    if which == "dt0":
        def kern(tau):
            kp, dkp, _ = _k1_parts(tau, s, t2, t0)
            km, dkm, _ = _k1_parts(tau, s, t2, -t0)
            # d/dt0 of k1(tau; -t0) is minus the t0-derivative evaluated at -t0
            return -2.0 * s * em * kp + em * dkp + 2.0 * s * ep_ * km - ep_ * dkm
    else:
        def kern(tau):
            _, _, d2p = _k1_parts(tau, s, t2, t0)
            _, _, d2m = _k1_parts(tau, s, t2, -t0)
            return em * d2p + ep_ * d2m
    return _cos_integral(kern, _window_support(w, tol), omega, tol)
