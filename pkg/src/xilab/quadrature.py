"""Adaptive 7/15-point Gauss-Kronrod quadrature on vectorised integrands.

Integrands take a 1-d float array and return an array of the same length
(real or complex).  Panels are refined in batches so each refinement round is
a single integrand call.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DomainError, ToleranceUnreachable

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[-2::-1]])
KRONROD = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[-2::-1]])
GAUSS = np.zeros(15)
GAUSS[1:7:2] = _WG[:3]
GAUSS[7] = _WG[3]
GAUSS[13:7:-2] = _WG[:3]

EPS = np.finfo(float).eps
ROUNDOFF = 5.0 * EPS
DEFAULT_MAX_PANELS = 20000


@dataclass(frozen=True)
class QuadratureResult:
    value: float | complex
    err_estimate: float
    panels: int

    def __add__(self, other):
        return QuadratureResult(self.value + other.value, self.err_estimate + other.err_estimate,
                                self.panels + other.panels)

    def scaled(self, c):
        return QuadratureResult(self.value * c, self.err_estimate * abs(c), self.panels)


@dataclass(frozen=True)
class CheckedResult(QuadratureResult):
    """A value confirmed by a second, independent evaluation route."""
    discrepancy: float = 0.0


ZERO = QuadratureResult(0.0, 0.0, 0)


def _eval_panels(f, a, b):
    """Kronrod sum, |K - G| and roundoff floor for each panel [a_i, b_i]."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = (c[:, None] + h[:, None] * NODES[None, :]).ravel()
    fx = np.asarray(f(x)).reshape(a.size, 15)
    k = (fx @ KRONROD) * h
    g = (fx @ GAUSS) * h
    floor = ROUNDOFF * (np.abs(fx) @ KRONROD) * np.abs(h)
    return k, np.abs(k - g), floor


def split_interval(a, b, max_width):
    n = max(1, int(math.ceil(abs(b - a) / max_width))) if max_width else 1
    edges = np.linspace(a, b, n + 1)
    return edges[:-1], edges[1:]


def adaptive(f, a, b, atol, rtol=0.0, max_width=None, breakpoints=(), max_panels=DEFAULT_MAX_PANELS,
             srtol=0.0):
    """Integrate ``f`` over the finite interval [a, b].

    Accepts once the error estimate is below atol, rtol * |value| or
    srtol * int |f|, whichever is largest.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("adaptive() needs finite limits; use integrate_decaying")
    if not (atol > 0 or rtol > 0):
        raise DomainError("need a positive tolerance")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    cuts = sorted({a, b, *[p for p in breakpoints if min(a, b) < p < max(a, b)]}, reverse=bool(b < a))
    los, his = [], []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        l, h = split_interval(lo, hi, max_width)
        los.append(l)
        his.append(h)
    lo = np.concatenate(los)
    hi = np.concatenate(his)
    val, err, floor = _eval_panels(f, lo, hi)
    done_val = 0.0
    done_err = 0.0
    done_abs = 0.0
    done_n = 0
    span = abs(b - a)
    while True:
        eff = np.maximum(err, floor)
        total = done_val + val.sum()
        total_err = done_err + eff.sum()
        target = max(atol, rtol * abs(total), srtol * (done_abs + floor.sum() / ROUNDOFF))
        if total_err <= target:
            return QuadratureResult(total, float(total_err), done_n + lo.size)
        # a panel stays put if it is already at roundoff or meets its share
        width = np.abs(hi - lo)
        share = target * width / span
        active = (err > floor) & (err > share) & (width > 1e-13 * span)
        if not active.any():
            raise ToleranceUnreachable(
                f"quadrature stalled at err={total_err:.3g} > target {target:.3g} (roundoff floor)")
        if done_n + lo.size + active.sum() > max_panels:
            raise ToleranceUnreachable(
                f"panel cap {max_panels} reached with err={total_err:.3g} > target {target:.3g}")
        keep = ~active
        done_val += val[keep].sum()
        done_err += eff[keep].sum()
        done_abs += floor[keep].sum() / ROUNDOFF
        done_n += int(keep.sum())
        mid = 0.5 * (lo[active] + hi[active])
        lo = np.concatenate([lo[active], mid])
        hi = np.concatenate([mid, hi[active]])
        val, err, floor = _eval_panels(f, lo, hi)


def _truncate(f, start, direction, threshold, majorant):
    """First point past ``start`` (in ``direction``) where the decay bound drops below threshold."""
    step = 1.0
    x = start
    for _ in range(200):
        if majorant is not None:
            if majorant(x) < threshold:
                return x
        else:
            probe = np.abs(np.asarray(f(np.array([x, x + direction * 0.5, x + direction]))))
            if np.all(probe < threshold):
                return x
        x += direction * step
        step *= 1.5
    raise ToleranceUnreachable("integrand does not decay toward the infinite endpoint")


def integrate_decaying(f, a, b, tol, majorant=None, max_width=None, rtol=0.0, breakpoints=()):
    """Integrate over a possibly infinite interval.

    Infinite endpoints are cut where ``majorant`` (a bound on |f| beyond the
    point) falls below ``tol * 1e-3``.  Without a majorant the integrand itself
    is probed, which is only safe for monotone tails.
    """
    threshold = tol * 1e-3
    if math.isinf(a) and math.isinf(b):
        lo = _truncate(f, 0.0, -1.0, threshold, majorant)
        hi = _truncate(f, 0.0, 1.0, threshold, majorant)
    elif math.isinf(a):
        hi = b
        lo = _truncate(f, min(b, 0.0), -1.0, threshold, majorant)
    elif math.isinf(b):
        lo = a
        hi = _truncate(f, max(a, 0.0), 1.0, threshold, majorant)
    else:
        lo, hi = a, b
    return adaptive(f, lo, hi, tol, rtol=rtol, max_width=max_width, breakpoints=breakpoints)


def merge_intervals(intervals, lo=-math.inf, hi=math.inf):
    """Clip to [lo, hi] and merge overlapping (a, b) pairs."""
    clipped = sorted((max(a, lo), min(b, hi)) for a, b in intervals if min(b, hi) > max(a, lo))
    out = []
    for a, b in clipped:
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def integrate_union(f, intervals, atol, rtol=0.0, max_width=None, srtol=0.0):
    """Sum of adaptive integrals over disjoint intervals sharing one tolerance budget."""
    if not intervals:
        return QuadratureResult(0.0, 0.0, 0)
    total_len = sum(b - a for a, b in intervals)
    res = ZERO
    for a, b in intervals:
        share = atol * (b - a) / total_len
        res = res + adaptive(f, a, b, share, rtol=rtol, max_width=max_width, srtol=srtol)
    return res


@dataclass
class TrigGrid:
    """Fixed panel grid for evaluating one kernel's cos/sin transform at many frequencies."""
    nodes: np.ndarray
    wk: np.ndarray
    wg: np.ndarray
    roundoff: float = field(default=0.0)

    @classmethod
    def build(cls, kernel, intervals, max_width):
        xs, wks, wgs = [], [], []
        for a, b in intervals:
            lo, hi = split_interval(a, b, max_width)
            c = 0.5 * (lo + hi)
            h = 0.5 * (hi - lo)
            xs.append((c[:, None] + h[:, None] * NODES).ravel())
            wks.append((h[:, None] * KRONROD).ravel())
            wgs.append((h[:, None] * GAUSS).ravel())
        x = np.concatenate(xs) if xs else np.zeros(0)
        fx = np.asarray(kernel(x), dtype=float) if x.size else x
        wk = np.concatenate(wks) * fx if xs else x
        wg = np.concatenate(wgs) * fx if xs else x
        return cls(x, wk, wg, float(ROUNDOFF * np.abs(wk).sum()))

    def transform(self, omegas, use_sin=False):
        omegas = np.asarray(omegas, dtype=float)
        if self.nodes.size == 0:
            return np.zeros(omegas.shape), np.zeros(omegas.shape)
        val, err = _kernels.panel_trig(self.nodes, self.wk, self.wg, omegas.ravel(), use_sin)
        return val.reshape(omegas.shape), (err + self.roundoff).reshape(omegas.shape)


def trig_transform(kernel, intervals, omegas, tol, use_sin=False, base_width=0.125, max_rounds=6, srtol=0.0):
    """Evaluate sum over intervals of int kernel(t) cos(omega t) dt (or sin) on an omega grid.

    The panel width starts at a quarter period of the largest frequency and is
    halved until every frequency meets ``tol`` (or ``srtol`` times int |kernel|).
    """
    omegas = np.asarray(omegas, dtype=float)
    wmax = float(np.max(np.abs(omegas))) if omegas.size else 0.0
    width = base_width if wmax == 0 else min(base_width, math.pi / (2.0 * wmax))
    for _ in range(max_rounds):
        grid = TrigGrid.build(kernel, intervals, width)
        val, err = grid.transform(omegas, use_sin)
        if np.all(err <= max(tol, srtol * grid.roundoff / ROUNDOFF)):
            return val, err
        width *= 0.5
    raise ToleranceUnreachable(f"grid transform error {float(np.max(err)):.3g} exceeds tol {tol:.3g}")
