"""First zero crossing of G_R in omega, its continuation in (t0, t2), and P_odd."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import BranchLost, NoCrossing, NoSignChange
from .fourier_engine import (
    DEFAULT_TOL,
    SCALE_RTOL,
    WindowParams,
    _panel_width,
    _support,
    gr,
    gr_many,
    gr_partials,
    shift_diff_array,
)
from .quadrature import QuadratureResult, integrate_union

OMEGA_FLOOR = 1e-3
PLATEAU = 1e-12


class StepTooCoarseWarning(UserWarning):
    """More than one crossing fell inside a single scan step."""


@dataclass(frozen=True)
class CrossingRecord:
    sigma: float
    t2: float
    t0: float
    omega_z: float
    slope: float
    bracket: tuple[float, float]
    status: str = "ok"  # ok | degenerate | branch_lost

    def as_row(self):
        return [self.sigma, self.t2, self.t0, self.omega_z, self.slope, self.bracket[0], self.bracket[1], self.status]


ROW_HEADER = ["sigma", "t2", "t0", "omega_z", "slope", "bracket_lo", "bracket_hi", "status"]


@dataclass(frozen=True)
class StepControl:
    initial_step: float = 0.05
    min_step: float = 1e-5
    max_step: float = 0.25
    trust_factor: float = 4.0
    min_window: float = 0.05
    continuity_tol: float = 0.1
    slope_floor: float = 1e-8
    bracket_tol: float = 1e-10
    quad_tol: float = 1e-13


def _sign(v):
    if abs(v) < PLATEAU:
        return 0
    return 1 if v > 0 else -1


def _sign_changes(values):
    """Index pairs (i, j), j > i, of consecutive non-plateau samples with opposite signs."""
    out = []
    last = None
    for k, v in enumerate(values):
        sg = _sign(v)
        if sg == 0:
            continue
        if last is not None and sg != last[1]:
            out.append((last[0], k))
        last = (k, sg)
    return out


def _bisect(w, lo, hi, glo, ghi, bracket_tol, quad_tol):
    while hi - lo >= bracket_tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        gm = gr(mid, w, quad_tol).value
        if gm == 0.0:
            return mid, (lo, hi), gm
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi, ghi = mid, gm
    if abs(glo) <= abs(ghi):
        return lo, (lo, hi), glo
    return hi, (lo, hi), ghi


def _refine(w, lo, hi, ctl):
    glo = gr(lo, w, ctl.quad_tol).value
    ghi = gr(hi, w, ctl.quad_tol).value
    if _sign(glo) * _sign(ghi) >= 0:
        raise NoSignChange(f"G_R has no sign change on [{lo}, {hi}]")
    omega, bracket, _ = _bisect(w, lo, hi, glo, ghi, ctl.bracket_tol, ctl.quad_tol)
    slope = gr_partials(omega, w, "domega", max(ctl.quad_tol, 1e-10)).value
    status = "degenerate" if abs(slope) < ctl.slope_floor else "ok"
    return CrossingRecord(w.sigma, w.t2, w.t0, omega, float(slope), bracket, status)


def first_crossing(w: WindowParams, omega_max: float = 50.0, step: float = 0.05,
                   tol: float = 1e-10, omega_floor: float = OMEGA_FLOOR,
                   control: StepControl | None = None) -> CrossingRecord | None:
    """Smallest omega > omega_floor where G_R changes sign, or None if there is none."""
    if w.degenerate:
        return None
    ctl = control or StepControl(bracket_tol=tol)
    grid = np.arange(omega_floor, omega_max + 0.5 * step, step)
    vals, _ = gr_many(grid, w, ctl.quad_tol)
    changes = _sign_changes(vals)
    if not changes:
        return None
    i, j = changes[0]
    lo, hi = grid[i], grid[j]
    sub = np.linspace(lo, hi, 17)
    sub_vals, _ = gr_many(sub, w, ctl.quad_tol)
    sub_changes = _sign_changes(sub_vals)
    if len(sub_changes) > 1:
        warnings.warn(f"{len(sub_changes)} crossings inside one scan step near omega={lo:.4g}",
                      StepTooCoarseWarning, stacklevel=2)
    if sub_changes:
        a, b = sub_changes[0]
        lo, hi = sub[a], sub[b]
    return _refine(w, float(lo), float(hi), ctl)


# ------------------------------------------------------------ continuation

def _corrector(w, predicted, half_width, ctl, omega_floor=OMEGA_FLOOR):
    lo = max(omega_floor, predicted - half_width)
    hi = predicted + half_width
    grid = np.linspace(lo, hi, 17)
    vals, _ = gr_many(grid, w, ctl.quad_tol)
    changes = _sign_changes(vals)
    if not changes:
        return None
    # the sign change nearest the prediction belongs to the tracked branch
    i, j = min(changes, key=lambda ij: abs(0.5 * (grid[ij[0]] + grid[ij[1]]) - predicted))
    try:
        return _refine(w, float(grid[i]), float(grid[j]), ctl)
    except NoSignChange:
        return None


def _lost_marker(w):
    return CrossingRecord(w.sigma, w.t2, w.t0, math.nan, math.nan, (math.nan, math.nan), "branch_lost")


def continue_crossing(w0: WindowParams, path, step_control: StepControl | None = None,
                      start: CrossingRecord | None = None, omega_max: float = 50.0) -> list[CrossingRecord]:
    """Track the first crossing of ``w0`` along a polyline of (t0, t2) vertices.

    One record is returned per vertex.  If the crossing disappears the list ends
    with a ``branch_lost`` marker.
    """
    ctl = step_control or StepControl()
    path = [(float(a), float(b)) for a, b in path]
    if not path:
        return []
    sigma = w0.sigma
    w = WindowParams(sigma, path[0][1], path[0][0])
    rec = start or first_crossing(w, omega_max=omega_max, tol=ctl.bracket_tol, control=ctl)
    if rec is None:
        raise NoCrossing(f"no sign change of G_R on (0, {omega_max}] at t0={w.t0}, t2={w.t2}")
    records = [rec]
    here = np.array(path[0])
    prev = None  # (position along path, omega) of the previously accepted point
    pos = 0.0
    for vertex in path[1:]:
        target = np.array(vertex)
        seg = float(np.hypot(*(target - here)))
        if seg == 0.0:
            records.append(CrossingRecord(sigma, vertex[1], vertex[0], rec.omega_z, rec.slope, rec.bracket, rec.status))
            continue
        done = 0.0
        h = min(ctl.initial_step, seg)
        while done < seg:
            h = min(h, seg - done)
            frac = (done + h) / seg
            pt = here + frac * (target - here)
            if done + h >= seg:
                pt = target
            wn = WindowParams(sigma, float(pt[1]), float(pt[0]))
            rate = 0.0 if prev is None else (rec.omega_z - prev[1]) / (pos - prev[0])
            change = rate * h
            predicted = rec.omega_z + change
            half = max(ctl.trust_factor * abs(change), ctl.min_window)
            new = _corrector(wn, predicted, half, ctl)
            ok = new is not None and abs(new.omega_z - rec.omega_z) < ctl.continuity_tol * (1.0 + abs(change))
            if not ok:
                h *= 0.5
                if h < ctl.min_step:
                    records.append(_lost_marker(wn))
                    return records
                continue
            prev = (pos, rec.omega_z)
            pos += h
            done += h
            rec = new
            h = min(2.0 * h, ctl.max_step)
        here = target
        records.append(rec)
    return records


@dataclass(frozen=True)
class QuarterPeriodResult:
    root: tuple[float, float] | None
    samples: list = field(default_factory=list)  # (t0, omega_z, omega_z * t0)


def solve_quarter_period(sigma: float, t0_range=(0.1, 2.0), tol: float = 1e-10,
                         n_samples: int = 20, step_control: StepControl | None = None,
                         omega_max: float = 50.0) -> QuarterPeriodResult:
    """Find t0c with omega_z(2 t0c, t0c) t0c = pi/2 along the ray t2 = 2 t0."""
    ctl = step_control or StepControl()
    t0s = np.linspace(t0_range[0], t0_range[1], n_samples)
    w = WindowParams(sigma, 2.0 * t0s[0], t0s[0])
    start = first_crossing(w, omega_max=omega_max, tol=ctl.bracket_tol, control=ctl)
    if start is None:
        return QuarterPeriodResult(None, [])
    recs = continue_crossing(w, [(t, 2.0 * t) for t in t0s], ctl, start=start)
    samples = [(r.t0, r.omega_z, r.omega_z * r.t0) for r in recs if r.status != "branch_lost"]
    target = 0.5 * math.pi
    for (ta, oa, pa), (tb, ob, pb), ra in zip(samples, samples[1:], recs):
        if (pa - target) * (pb - target) > 0:
            continue
        lo, hi, rec_lo = ta, tb, ra
        plo = pa
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            seg = continue_crossing(w, [(lo, 2.0 * lo), (mid, 2.0 * mid)], ctl, start=rec_lo)
            rm = seg[-1]
            if rm.status == "branch_lost":
                raise BranchLost(f"crossing lost at t0={mid} during quarter-period bisection")
            pm = rm.omega_z * mid
            if abs(pm - target) < tol or hi - lo < tol * 1e-2:
                return QuarterPeriodResult((mid, rm.omega_z), samples)
            if (pm - target) * (plo - target) > 0:
                lo, plo, rec_lo = mid, pm, rm
            else:
                hi = mid
        return QuarterPeriodResult((mid, rm.omega_z), samples)
    return QuarterPeriodResult(None, samples)


# ------------------------------------------------------------------ P_odd

def podd(omega: float, w: WindowParams, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """P_odd at shift t0 in its expanded form.

    P_odd = cos(omega t0) C + sin(omega t0) S, where C + i S is
    int_{-inf}^{t0} [E0'(u) e^{-2 sigma u} + e^{2 sigma t0} E0n'(u)] e^{i omega u} du.
    """
    if w.degenerate:
        return QuadratureResult(0.0, 0.0, 0)
    s, t2, t0 = w.sigma, w.t2, w.t0
    lift = math.exp(2.0 * s * t0)

    def f(u):
        k = shift_diff_array(u, t2) * np.exp(-2.0 * s * u) + lift * shift_diff_array(-u, t2)
        return k * np.exp(1j * omega * u) if omega else k

    log_weight = 2.0 * s * (abs(t0) + abs(t2)) + math.log(4.0)
    intervals = _support((t2, -t2), tol, log_weight, 2.0 * s, hi=t0)
    res = integrate_union(f, intervals, tol, max_width=_panel_width(omega), srtol=SCALE_RTOL)
    cs = complex(res.value)
    value = math.cos(omega * t0) * cs.real + math.sin(omega * t0) * cs.imag
    return QuadratureResult(float(value), res.err_estimate, res.panels)
