"""Numeric checks of the quantitative statements about E0, A(y) and the window integrals."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import theta_core as tc
from ._kernels import e0_array
from .errors import DomainError, XilabError
from .fourier_engine import WindowParams, f_at_zero_closed_form, f_time
from .quadrature import QuadratureResult, adaptive
from .xi_oracle import xi_critical_line

PASS, FAIL, INFO = "pass", "fail", "informational"
E8 = math.exp(8.0)


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    measured: float
    expected: float | str
    tolerance: float
    status: str
    kind: str = "value"  # value | lt | gt | ge | sign | info
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self):
        d = asdict(self)
        for key in ("measured", "expected", "tolerance"):
            v = d[key]
            if isinstance(v, float) and not math.isfinite(v):
                d[key] = repr(v)
        return d


def _resolution_note(measured, expected, tolerance, scale=None):
    if scale is None:
        scale = max(abs(measured), abs(expected) if isinstance(expected, (int, float)) else 0.0, 1.0)
    if tolerance < 4.0 * np.finfo(float).eps * scale:
        return f"tolerance-unreachable: {tolerance:.3g} is below double resolution at magnitude {scale:.3g}"
    return ""


def value_claim(claim_id, measured, expected, tolerance, detail="", scale=None):
    """Pass iff |measured - expected| <= tolerance.

    ``scale`` is the magnitude of the quantities that produced ``measured``;
    a failure with a tolerance below double resolution at that scale is
    labelled tolerance-unreachable.
    """
    measured = float(measured)
    ok = abs(measured - expected) <= tolerance
    note = "" if ok else _resolution_note(measured, expected, tolerance, scale)
    return ClaimResult(claim_id, measured, float(expected), float(tolerance), PASS if ok else FAIL, "value",
                       "; ".join(x for x in (detail, note) if x))


def bound_claim(claim_id, measured, bound, kind, detail="", informational=False):
    """measured < bound (lt), measured > bound (gt) or measured >= bound (ge)."""
    measured = float(measured)
    ok = {"lt": measured < bound, "gt": measured > bound, "ge": measured >= bound, "le": measured <= bound}[kind]
    status = INFO if informational else (PASS if ok else FAIL)
    if informational:
        detail = "; ".join(x for x in (detail, "satisfied" if ok else "not satisfied") if x)
    return ClaimResult(claim_id, measured, float(bound), 0.0, status, kind, detail)


def failed_claim(claim_id, exc, tolerance=math.nan):
    tag = "tolerance-unreachable" if type(exc).__name__ == "ToleranceUnreachable" else type(exc).__name__
    return ClaimResult(claim_id, math.nan, "n/a", tolerance, FAIL, "error", f"{tag}: {exc}")


# ------------------------------------------------------ contradiction integral

def _cosh_gap(sigma, t0c, tau):
    # cosh(2 sigma t0c) - cosh(2 sigma tau) as a product, exact near tau = t0c
    return 2.0 * np.sinh(sigma * (t0c + tau)) * np.sinh(sigma * (t0c - tau))


def contradiction_integrand(tau, sigma, t0c):
    tau = np.asarray(tau, dtype=float)
    t2c = 2.0 * t0c
    gap = e0_array(tau - t2c) - e0_array(tau + t2c)
    return gap * _cosh_gap(sigma, t0c, tau) * np.sin(math.pi * tau / (2.0 * t0c))


def contradiction_integral(sigma: float, t0c: float, tol: float = 1e-10) -> QuadratureResult:
    """int_0^{t0c} [E0(tau - 2 t0c) - E0(tau + 2 t0c)] (cosh 2 sigma t0c - cosh 2 sigma tau) sin(pi tau / 2 t0c).

    ``tol`` is relative: the integrand can be as small as 1e-70 for wide windows.
    """
    if not (0.0 <= sigma < 0.5):
        raise DomainError(f"sigma must lie in [0, 1/2), got {sigma}")
    if not t0c > 0:
        raise DomainError("t0c must be positive")
    return adaptive(lambda x: contradiction_integrand(x, sigma, t0c), 0.0, t0c, 1e-300, rtol=tol,
                    max_width=t0c / 8.0)


def _scaled_e0(x, ref):
    """E0(x) / E0(ref) on an array."""
    flat = [math.exp(tc.log_e0_ratio(float(v), ref)) for v in np.ravel(x)]
    return np.array(flat).reshape(np.shape(x))


def contradiction_integral_scaled(sigma: float, t0c: float, tol: float = 1e-10) -> tuple[QuadratureResult, float]:
    """(I e^{-L}, L) with L = log E0(t0c), the largest value of the shifted kernel on the range.

    For t0c beyond about 2.9 the integral itself underflows to 0 in double
    precision; the scaled form keeps its sign and relative accuracy.
    """
    if not (0.0 <= sigma < 0.5):
        raise DomainError(f"sigma must lie in [0, 1/2), got {sigma}")
    if not t0c > 0:
        raise DomainError("t0c must be positive")
    t2c = 2.0 * t0c
    scale = tc.log_e0(t0c)

    def f(tau):
        gap = _scaled_e0(tau - t2c, t0c) - _scaled_e0(tau + t2c, t0c)
        return gap * _cosh_gap(sigma, t0c, tau) * np.sin(math.pi * tau / (2.0 * t0c))

    # the integrand lives within a few decay lengths E0/|E0'| of tau = t0c;
    # breakpoints on that scale keep the quadrature nodes where the mass is
    _, log_slope = tc.de0_sign_log(t0c)
    width = math.exp(scale - log_slope)
    cuts = [t0c - width * 2.0 ** k for k in range(16) if width * 2.0 ** k < t0c]
    return adaptive(f, 0.0, t0c, 1e-300, rtol=tol, max_width=t0c / 8.0, breakpoints=cuts), scale


# ------------------------------------------------------------- A(y) family

def _y_check(y):
    if not y > 0:
        raise DomainError(f"y must be positive, got {y}")


def b_quadratic(y: float, n: int) -> float:
    return -4.0 * n ** 4 * y * y + 15.0 * n * n * y - 7.5


def a_of_y(y: float, tol: float = 1e-16) -> tc.TruncatedSum:
    """A(y) = sum n^2 e^{-n^2 y} (-4 n^4 y^2 + 15 n^2 y - 15/2)."""
    _y_check(y)
    return tc.certified_sum(
        lambda n: n * n * math.exp(-n * n * y) * b_quadratic(y, n),
        lambda m: m * m * math.exp(-m * m * y) * (4.0 * m ** 4 * y * y + 15.0 * m * m * y + 7.5),
        lambda m: ((m + 1) / m) ** 6 * math.exp(-(2 * m + 1) * y),
        tol,
    )


def da_dy(y: float, tol: float = 1e-16) -> tc.TruncatedSum:
    """dA/dy = sum n^4 e^{-n^2 y} (4 n^4 y^2 - 23 n^2 y + 45/2)."""
    _y_check(y)
    return tc.certified_sum(
        lambda n: n ** 4 * math.exp(-n * n * y) * (4.0 * n ** 4 * y * y - 23.0 * n * n * y + 22.5),
        lambda m: m ** 4 * math.exp(-m * m * y) * (4.0 * m ** 4 * y * y + 23.0 * m * m * y + 22.5),
        lambda m: ((m + 1) / m) ** 8 * math.exp(-(2 * m + 1) * y),
        tol,
    )


def quadratic_roots(n: int) -> tuple[float, float]:
    """Roots in y of -4 n^4 y^2 + 15 n^2 y - 15/2."""
    if n < 1:
        raise DomainError("n must be a positive integer")
    r = math.sqrt(105.0)
    return (15.0 - r) / (8.0 * n * n), (15.0 + r) / (8.0 * n * n)


def bound_chain_rhs() -> float:
    return -E8 + 1.0 + 40.0 * math.exp(-1.0) * 256.0 / 6.0


def bound_chain_check(tol: float = 1e-16, samples: int = 200) -> list[ClaimResult]:
    out = [value_claim("bound_chain.rhs", bound_chain_rhs(), -2352.0, 1.0,
                       "-e^8 + 1 + 40 e^-1 256/6")]
    ys = np.linspace(math.pi, 3.16, samples)
    scaled = [math.exp(3.0) * da_dy(float(y), tol).value * (E8 - 1.0) / 6.0 for y in ys]
    out.append(bound_claim("bound_chain.scaled_dA_dy_sup", max(scaled), 0.0, "lt",
                           f"sup over {samples} points of e^3 dA/dy (e^8-1)/6 on [pi, 3.16]"))
    lhs = math.fsum(40.0 * n ** 8 * math.exp(3.0 - 3.0 * n * n) for n in range(2, 40))
    rhs = 40.0 * 2 ** 8 * math.exp(-1.0) / (E8 - 1.0)
    out.append(bound_claim("bound_chain.majorant", lhs, rhs, "lt",
                           "sum_{n>=2} 40 n^8 e^{3-3n^2} against 40 2^8 e^-1/(e^8-1)"))
    return out


def a_of_y_claims(tol: float = 1e-10, samples: int = 50) -> list[ClaimResult]:
    out = [value_claim("a_of_y.at_pi", a_of_y(math.pi).value, 0.0, tol)]
    ys = np.linspace(math.pi, 3.16, samples + 1)[1:]
    worst = max(a_of_y(float(y)).value for y in ys)
    out.append(bound_claim("a_of_y.negative_band", worst, 0.0, "lt", f"max of A over {samples} points in (pi, 3.16]"))
    ys = np.linspace(math.pi, 10.0, 400)[1:]
    out.append(bound_claim("a_of_y.negative_to_10", max(a_of_y(float(y)).value for y in ys), 0.0, "lt"))
    out.append(bound_claim("a_of_y.positive_at_2", a_of_y(2.0).value, 0.0, "gt"))
    lo, hi = quadratic_roots(1)
    out.append(value_claim("b_quadratic.root_residual", max(abs(b_quadratic(lo, 1)), abs(b_quadratic(hi, 1))),
                           0.0, 1e-10))
    out.append(bound_claim("b_quadratic.upper_root_vs_3.16", hi, 3.16, "gt", informational=True,
                           detail=f"(15+sqrt 105)/8 = {hi:.6f}"))
    # the substitution y = pi e^{2t} links A to the derivative of E0
    worst = 0.0
    for t in np.linspace(-1.0, 1.5, 51):
        d = tc.de0_dt(float(t)) / 2.0
        bridge = math.pi * math.exp(2.5 * t) * a_of_y(math.pi * math.exp(2.0 * t)).value
        if abs(d) > 1e-300:
            worst = max(worst, abs(d - bridge) / abs(d))
    out.append(value_claim("a_of_y.derivative_bridge", worst, 0.0, 1e-8, "max relative gap over t in [-1, 1.5]"))
    return out


# ------------------------------------------------------------ E0 properties

def grid_points(start, stop, step):
    n = int(round((stop - start) / step))
    return start + step * np.arange(n + 1)


def strict_decrease_scan(t_grid=None) -> ClaimResult:
    """Sign of dE0/dt (in log space, so no underflow) and ordering of E0 on the grid."""
    grid = grid_points(0.01, 10.0, 0.01) if t_grid is None else np.asarray(t_grid, dtype=float)
    if np.any(grid <= 0):
        raise DomainError("scan grid must lie in t > 0")
    signs = [tc.de0_sign_log(float(t))[0] for t in grid]
    logs = np.array([tc.log_e0(float(t)) for t in grid])
    bad = sum(1 for s in signs if s >= 0) + int(np.sum(np.diff(logs) >= 0))
    return ClaimResult("e0.strict_decrease", float(bad), 0.0, 0.0, PASS if bad == 0 else FAIL, "value",
                       f"{grid.size} points in [{grid[0]:.3g}, {grid[-1]:.3g}]; count of non-negative slopes or non-decreasing steps")


def reflected_increase_scan(t_grid=None) -> ClaimResult:
    grid = -grid_points(0.01, 10.0, 0.01) if t_grid is None else np.asarray(t_grid, dtype=float)
    bad = sum(1 for t in grid if tc.de0_sign_log(float(t))[0] <= 0)
    return ClaimResult("e0.reflected_increase", float(bad), 0.0, 0.0, PASS if bad == 0 else FAIL, "value",
                       "count of t < 0 grid points where dE0/dt is not positive")


def positivity_evenness(t_grid=None) -> list[ClaimResult]:
    grid = grid_points(-10.0, 10.0, 0.01) if t_grid is None else np.asarray(t_grid, dtype=float)
    logs = [tc.log_e0(float(t)) for t in grid]
    nonpos = sum(1 for v in logs if not math.isfinite(v))
    vals = e0_array(grid)
    nonpos += int(np.sum(vals < 0))
    asym = max(abs(tc.e0(float(t)).value - tc.e0(float(-t)).value) for t in grid)
    raw_grid = grid_points(-8.0, -0.01, 0.01)
    raw_gap = max(abs(tc.e0_raw_series(float(t)) - tc.e0(float(t)).value) for t in raw_grid)
    return [
        ClaimResult("e0.positivity", float(nonpos), 0.0, 0.0, PASS if nonpos == 0 else FAIL, "value",
                    "count of grid points where log E0 is not finite or E0 < 0"),
        value_claim("e0.evenness", asym, 0.0, 0.0, "max |E0(t) - E0(-t)| on the grid"),
        value_claim("e0.raw_series_evenness", raw_gap, 0.0, 1e-12,
                    "literal series at t in [-8, 0) against the reflected evaluation"),
    ]


def shifted_gap_positivity(t0c: float, grid=None) -> ClaimResult:
    """E0(t - 2 t0c) - E0(t + 2 t0c) > 0 on (0, t0c] and = 0 at t = 0."""
    t2c = 2.0 * t0c
    pts = np.linspace(0.0, t0c, 101)[1:] if grid is None else np.asarray(grid, dtype=float)
    # compare in log space so wide windows do not underflow to 0 - 0
    margins = [tc.log_e0(float(t) - t2c) - tc.log_e0(float(t) + t2c) for t in pts]
    at_zero = tc.e0(-t2c).value - tc.e0(t2c).value
    ok = min(margins) > 0 and at_zero == 0.0
    return ClaimResult(f"shifted_gap.t0c={t0c:g}", float(min(margins)), "positive", 0.0, PASS if ok else FAIL, "sign",
                       f"min log-ratio over {len(pts)} interior points; gap at t=0 is {at_zero:g}")


# -------------------------------------------------------------- fall-off fits

def _slope(x, y):
    return float(np.polyfit(np.asarray(x, dtype=float), np.asarray(y, dtype=float), 1)[0])


def envelope_maxima(omega_range=(15.0, 40.0), step=0.02):
    ws = grid_points(omega_range[0], omega_range[1], step)
    vals = np.abs([xi_critical_line(float(w)) for w in ws])
    idx = [i for i in range(1, ws.size - 1) if vals[i] > vals[i - 1] and vals[i] >= vals[i + 1]]
    return ws[idx], vals[idx]


def falloff_fit(t_range=(3.0, 8.0), omega_range=(15.0, 40.0), sigma: float = 0.25) -> list[ClaimResult]:
    ts = grid_points(t_range[0], t_range[1], 0.01)
    logs = np.array([tc.log_e0(float(t)) for t in ts])
    if not np.all(np.isfinite(logs)):
        raise XilabError("fit-degenerate: log E0 not finite on the fit range")
    out = [bound_claim("falloff.e0_slope", _slope(ts, logs), -1.5, "le",
                       f"least-squares slope of log E0 on [{t_range[0]:g}, {t_range[1]:g}]")]
    tilted = _slope(ts, logs - 2.0 * sigma * ts)
    out.append(bound_claim("falloff.tilted_slope", tilted, -(1.5 - 2.0 * sigma), "le",
                           f"slope of log(E0 e^(-2 sigma t)) at sigma={sigma:g}"))
    out.append(bound_claim("falloff.tilted_slope_floor", tilted, -(1.5 + 2.0 * sigma) - 0.05, "ge", informational=True,
                           detail="a lower bound on the slope cannot hold: the decay is faster than any exponential"))
    wm, vm = envelope_maxima(omega_range)
    if wm.size < 3:
        raise XilabError("fit-degenerate: too few envelope maxima")
    out.append(bound_claim("falloff.xi_envelope_slope", _slope(wm, np.log(vm)), -math.pi / 4 + 0.1, "le",
                           f"{wm.size} local maxima of |xi(1/2 + i w)| on [{omega_range[0]:g}, {omega_range[1]:g}]"))
    return out


# -------------------------------------------------------- order constants

def a_of_t0(t0: float, sigma: float, k: float, tol: float = 1e-12) -> QuadratureResult:
    """int_{-inf}^{3 t0} E0(t) e^{-2 sigma t} cos(k t / t0) dt."""
    om = k / t0
    radius = tc.e0_support_radius(math.log(tol * 1e-3), 2.0 * sigma)
    hi = min(3.0 * t0, radius)
    lo = -radius
    if hi <= lo:
        return QuadratureResult(0.0, 0.0, 0)
    return adaptive(lambda t: e0_array(t) * np.exp(-2.0 * sigma * t) * np.cos(om * t), lo, hi, tol,
                    max_width=min(0.125, math.pi / (2.0 * om)) if om else 0.125)


def order_constants(sigma: float = 0.25, t3: float = 10.0, t0s=(20.0, 40.0, 80.0),
                    ks=(0.25, 0.5, 1.0, 1.5)) -> list[ClaimResult]:
    k00 = 2.0 * adaptive(lambda t: e0_array(t) * np.exp(-t), 0.0, t3, 1e-14, max_width=0.125).value
    out = [bound_claim("order.K00", k00, 0.42, "ge", f"2 int_0^{t3:g} E0(t) e^-t dt")]
    log_k1 = tc.log_e0(t3)
    k1 = math.exp(log_k1)
    k2 = 2.0 * math.exp(log_k1 + t3)
    out.append(bound_claim("order.K1", k1, 1e-6, "lt", f"E0({t3:g}), log value {log_k1:.6g}"))
    out.append(bound_claim("order.K2", k2, 1e-6, "lt", f"2 E0({t3:g}) e^{t3:g}"))
    for t0 in t0s:
        vals = {k: float(a_of_t0(t0, sigma, k).value) for k in ks}
        kmin = min(vals, key=vals.get)
        out.append(bound_claim(f"order.A(t0={t0:g})", vals[kmin], 0.21, "gt", informational=True,
                               detail=f"minimum over K in {list(ks)} at K={kmin:g}, sigma={sigma:g}"))
        r = math.cos(3.0 * kmin) * vals[kmin]
        out.append(ClaimResult(f"order.R(t0={t0:g})", r, "n/a", 0.0, INFO, "info",
                               f"cos(3K) A(t0) at K={kmin:g}; Q(t0) ~ -e^(sigma t0) R = {-math.exp(sigma * t0) * r:.6g}"))
    return out


# --------------------------------------------------------------- f(0)

def f_at_zero_nonvanishing(sigma: float, t0: float, t2: float) -> ClaimResult:
    cid = f"f_at_zero(sigma={sigma:g},t0={t0:g},t2={t2:g})"
    if sigma == 0.0 or t0 == 0.0:
        closed = -2.0 * math.sinh(2.0 * sigma * t0) * (tc.e0(t0 - t2).value - tc.e0(t0 + t2).value)
        return value_claim(cid, closed, 0.0, 0.0, "boundary case: closed form vanishes")
    w = WindowParams(sigma, t2, t0)
    closed = f_at_zero_closed_form(w)
    direct = float(f_time(np.array([0.0]), w)[0])
    gap = abs(closed - direct)
    ok = gap <= 1e-10 and abs(closed) > 0
    return ClaimResult(cid, closed, "nonzero", 1e-10, PASS if ok else FAIL, "sign",
                       f"direct assembly {direct:.17g}, gap {gap:.3g}")
