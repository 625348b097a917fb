"""Named groups of claims run by ``xilab verify``.

Each suite is a function of its primary tolerance.  Secondary tolerances in a
suite scale with the primary one, so a tampered configuration value tightens
every comparison in that suite.
"""
from __future__ import annotations

import math

import numpy as np

from . import claims_verifier as cv
from . import theta_core as tc
from .claims_verifier import INFO, ClaimResult, bound_claim, failed_claim, value_claim
from .errors import XilabError
from .fourier_engine import WindowParams, ep_omega, f_omega, fr_convolution, gr, gr_partials
from .theta_core import StripPoint
from .xi_oracle import find_critical_zero, xi_direct, xi_functional_residual
from .zero_tracker import first_crossing, podd, solve_quarter_period

SEED = 20240611
QUAD_TOL = 1e-13


def _guard(claim_id, fn, tolerance=math.nan):
    try:
        out = fn()
    except XilabError as exc:
        return [failed_claim(claim_id, exc, tolerance)]
    return out if isinstance(out, list) else [out]


def _windows(rng, n, t0_max=1.2):
    out = []
    for _ in range(n):
        sigma = float(rng.uniform(0.05, 0.45))
        t2 = float(rng.uniform(0.3, 2.0))
        t0 = float(rng.uniform(-t0_max, t0_max))
        out.append(WindowParams(sigma, t2, t0))
    return out


def _wid(w):
    return f"sigma={w.sigma:.4g},t2={w.t2:.4g},t0={w.t0:.4g}"


# ------------------------------------------------------------------- suites

def identities(tol=1e-12):
    out = [value_claim("theta_delta_identity", tc.theta_delta_identity(), -0.5, tol)]
    for x in (0.1, 0.5, 1.0, 2.0, 10.0):
        out.append(value_claim(f"jacobi_residual(x={x:g})", tc.jacobi_identity_residual(x), 0.0, tol,
                               scale=1.0 / math.sqrt(x)))
    for s in (0.0, 1.0):
        out += _guard(f"xi({s:g})", lambda s=s: value_claim(
            f"xi({s:g})", complex(xi_direct(complex(s, 0.0)).value).real, 0.5, 0.1 * tol))
    worst = 0.0
    for sg in (0.0, 0.2, -0.2, 0.4, -0.4):
        for om in (0.0, 2.0, 5.0, 10.0, 20.0):
            worst = max(worst, xi_functional_residual(complex(0.5 + sg, om)))
    out.append(value_claim("xi_functional_residual", worst, 0.0, 100.0 * tol, "max over the 5x5 strip grid"))
    return out


def oracle(tol=1e-8):
    worst, where = 0.0, None
    for sg in (0.0, 0.1, 0.25, 0.4):
        for om in np.arange(0.0, 30.0 + 1e-9, 0.5):
            a = complex(ep_omega(StripPoint(sg, float(om))).value)
            b = complex(xi_direct(complex(0.5 + sg, float(om))).value)
            if abs(a - b) >= worst:
                worst, where = abs(a - b), (sg, float(om))
    return [value_claim("ep_omega_vs_xi_direct", worst, 0.0, tol,
                        f"max over 4 x 61 grid, attained at sigma={where[0]:g}, omega={where[1]:g}")]


def zeros(tol=1e-6):
    out = []
    for cid, (lo, hi), ref in (("xi_zero_1", (14.0, 15.0), 14.134725141746),
                               ("xi_zero_2", (21.0, 21.5), 21.022039638774)):
        out += _guard(cid, lambda lo=lo, hi=hi, cid=cid, ref=ref: value_claim(
            cid, find_critical_zero(lo, hi, tol=1e-10), ref, tol, "bisection on the critical line"), tol)
    return out


def kernel(tol=1e-10):
    out = cv.positivity_evenness()
    out.append(cv.strict_decrease_scan())
    out.append(cv.reflected_increase_scan())
    out += cv.a_of_y_claims(tol)
    out += cv.bound_chain_check()
    y, h = 3.0, 1e-5
    fd = (cv.a_of_y(y + h).value - cv.a_of_y(y - h).value) / (2.0 * h)
    an = cv.da_dy(y).value
    out.append(value_claim("da_dy.fd_consistency", abs(an - fd) / abs(an), 0.0, 1e4 * tol, "y=3, step 1e-5"))
    for t0c in (0.1, 0.5, 1.0, 2.0, 5.0):
        out.append(cv.shifted_gap_positivity(t0c))
    for sigma, t0, t2 in ((0.25, 1.0, 1.0), (0.25, 0.5, 1.0), (0.4, -0.7, 1.5), (0.1, 2.0, 0.5)):
        out.append(cv.f_at_zero_nonvanishing(sigma, t0, t2))
    return out


def contradiction(tol=1e-12):
    out = []
    for sigma in (0.05, 0.1, 0.25, 0.4, 0.49):
        for t0c in (0.1, 0.25, 0.5, 1.0, 2.0):
            cid = f"contradiction(sigma={sigma:g},t0c={t0c:g})"

            def run(sigma=sigma, t0c=t0c, cid=cid):
                r = cv.contradiction_integral(sigma, t0c)
                ok = r.value > 0 and r.value > 10.0 * r.err_estimate
                scaled, log_scale = cv.contradiction_integral_scaled(sigma, t0c)
                ok = ok and scaled.value > 10.0 * scaled.err_estimate
                return ClaimResult(cid, float(r.value), "positive", 10.0 * r.err_estimate,
                                   "pass" if ok else "fail", "sign",
                                   f"err_estimate {r.err_estimate:.3g}; scaled by exp({log_scale:.6g}): "
                                   f"{scaled.value:.6g} +- {scaled.err_estimate:.3g}")
            out += _guard(cid, run)
    for t0c in (0.1, 0.5, 2.0):
        cid = f"contradiction(sigma=0,t0c={t0c:g})"
        out += _guard(cid, lambda t0c=t0c, cid=cid: value_claim(
            cid, cv.contradiction_integral(0.0, t0c).value, 0.0, tol), tol)
    return out


def convolution(tol=1e-5):
    rng = np.random.default_rng(SEED)
    out = []
    for w in _windows(rng, 10):
        worst = 0.0
        for om in (0.5, 1.0, 2.0, 4.0, 7.0):
            a = fr_convolution(om, w).value
            b = complex(f_omega(om, w).value).real
            worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
        out.append(value_claim(f"convolution({_wid(w)})", worst, 0.0, tol,
                               "max relative gap over omega in {0.5, 1, 2, 4, 7}"))
    return out


def decomposition(tol=1e-6):
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for w in _windows(rng, 20):
        om = float(rng.uniform(0.0, 10.0))
        total = podd(om, w).value + podd(om, w.with_t0(-w.t0)).value
        ref = gr(om, w).value
        worst = max(worst, abs(total - ref) / max(abs(ref), 1e-12))
    return [value_claim("podd_decomposition", worst, 0.0, tol, "max relative gap over 20 random points")]


def _fd(fun, x, h, order):
    if order == 1:
        return (fun(x + h) - fun(x - h)) / (2.0 * h)
    return (fun(x + h) - 2.0 * fun(x) + fun(x - h)) / (h * h)


def partials(tol=1e-5):
    rng = np.random.default_rng(SEED + 2)
    out = []
    for w in _windows(rng, 10):
        om = float(rng.uniform(0.5, 5.0))
        g = lambda f: gr(f, w, QUAD_TOL).value
        fds = {
            "domega": _fd(g, om, 1e-4, 1),
            "domega2": _fd(g, om, 1e-3, 2),
            "dt0": _fd(lambda t: gr(om, w.with_t0(t), QUAD_TOL).value, w.t0, 1e-4, 1),
            "dt2": _fd(lambda t: gr(om, WindowParams(w.sigma, t, w.t0), QUAD_TOL).value, w.t2, 1e-4, 1),
        }
        for which, fd in fds.items():
            an = gr_partials(om, w, which, 1e-12).value
            rel = abs(an - fd) / max(abs(an), 1e-8)
            lim = 10.0 * tol if which == "domega2" else tol
            out.append(value_claim(f"partial.{which}({_wid(w)},omega={om:.4g})", rel, 0.0, lim,
                                   f"analytic {an:.10g} against finite difference {fd:.10g}"))
    return out


def falloff(tol=0.0):
    return _guard("falloff", cv.falloff_fit)


def order_constants(tol=0.0):
    return _guard("order_constants", cv.order_constants)


def crossings(tol=1e-10):
    out = []
    w = WindowParams(0.25, 1.0, 0.5)
    rec = first_crossing(w, omega_max=40.0, step=0.05)
    if rec is None:
        out.append(ClaimResult("crossing.representative", math.nan, "n/a", 0.0, INFO, "info", "no crossing found"))
    else:
        resid = gr(rec.omega_z, w).value
        out.append(value_claim("crossing.representative_residual", resid, 0.0, tol,
                               f"omega_z={rec.omega_z:.12g}, slope={rec.slope:.6g}"))
        mirror = first_crossing(w.with_t0(-w.t0), omega_max=40.0, step=0.05)
        out.append(value_claim("crossing.t0_evenness", mirror.omega_z if mirror else math.nan, rec.omega_z,
                               100.0 * tol))
    for sigma in (0.05, 0.25, 0.49):
        res = solve_quarter_period(sigma, t0_range=(0.05, 4.0), n_samples=40)
        peak = max((p for _, _, p in res.samples), default=math.nan)
        detail = "no bracket of pi/2" if res.root is None else f"root t0c={res.root[0]:.10g}"
        out.append(bound_claim(f"quarter_period.max_product(sigma={sigma:g})", peak, math.pi / 2, "ge",
                               informational=True, detail=f"{detail}; {len(res.samples)} continuation samples"))
    return out


SUITES = {
    "identities": identities,
    "oracle": oracle,
    "zeros": zeros,
    "kernel": kernel,
    "contradiction": contradiction,
    "convolution": convolution,
    "decomposition": decomposition,
    "partials": partials,
    "falloff": falloff,
    "order_constants": order_constants,
    "crossings": crossings,
}

# suites whose checks are pure bounds take no tolerance
DEFAULT_TOLERANCES = {name: fn.__defaults__[0] for name, fn in SUITES.items() if fn.__defaults__[0] > 0}


def run_suite(name: str, tol: float | None = None) -> list[ClaimResult]:
    fn = SUITES[name]
    return fn() if tol is None else fn(tol)
