"""Array kernels for the theta-type series and panel trigonometric sums.

Each kernel exists twice: an explicit-loop version compiled by numba and a
broadcasting numpy version.  ``_accel.USE_NUMBA`` picks which one the public
names below point at.  Both are exposed through ``IMPLEMENTATIONS`` so the
benchmark and the parity tests can call either directly.
"""
import math

import numpy as np

from . import _accel

PI = math.pi
# E0(t) underflows to exactly zero well before |t| = 20 (the leading factor is
# exp(-pi e^{2|t|})); clipping keeps e^{4|t|} finite.
T_CLIP = 20.0
_NP_TERMS = 8


# ---------------------------------------------------------------- numpy path

def _e0_numpy(t):
    t = np.asarray(t, dtype=np.float64)
    a = np.minimum(np.abs(t), T_CLIP)
    y = np.exp(2.0 * a)
    n2 = (np.arange(1, _NP_TERMS + 1, dtype=np.float64) ** 2).reshape((-1,) + (1,) * a.ndim)
    z = PI * n2 * y
    terms = (4.0 * z * z - 6.0 * z) * np.exp(-z)
    out = terms.sum(axis=0) * np.exp(0.5 * a)
    return np.where(np.abs(t) > T_CLIP, 0.0, out)


def _de0_numpy(t):
    t = np.asarray(t, dtype=np.float64)
    a = np.minimum(np.abs(t), T_CLIP)
    y = np.exp(2.0 * a)
    n2 = (np.arange(1, _NP_TERMS + 1, dtype=np.float64) ** 2).reshape((-1,) + (1,) * a.ndim)
    z = PI * n2 * y
    terms = z * np.exp(-z) * ((-4.0 * z + 15.0) * z - 7.5)
    out = 2.0 * terms.sum(axis=0) * np.exp(0.5 * a)
    out = np.where(np.abs(t) > T_CLIP, 0.0, out)
    return np.where(t < 0.0, -out, out)


def _theta_w_numpy(x):
    x = np.asarray(x, dtype=np.float64)
    xmin = float(np.min(x)) if x.size else 1.0
    nmax = int(math.ceil(math.sqrt(45.0 / (PI * xmin)))) + 1
    n2 = (np.arange(1, nmax + 1, dtype=np.float64) ** 2).reshape((-1,) + (1,) * x.ndim)
    return np.exp(-PI * n2 * x).sum(axis=0)


def _panel_trig_numpy(x, fwk, fwg, omegas, use_sin):
    npan = x.size // 15
    out = np.empty(omegas.size)
    err = np.empty(omegas.size)
    chunk = max(1, 2_000_000 // max(x.size, 1))
    trig = np.sin if use_sin else np.cos
    for lo in range(0, omegas.size, chunk):
        om = omegas[lo:lo + chunk]
        c = trig(np.multiply.outer(om, x))
        sk = (c * fwk).reshape(om.size, npan, 15).sum(axis=2)
        sg = (c * fwg).reshape(om.size, npan, 15).sum(axis=2)
        out[lo:lo + chunk] = sk.sum(axis=1)
        err[lo:lo + chunk] = np.abs(sk - sg).sum(axis=1)
    return out, err


# ---------------------------------------------------------------- loop path

def _e0_loop(t):
    out = np.empty(t.size)
    for i in range(t.size):
        a = abs(t[i])
        if a > T_CLIP:
            out[i] = 0.0
            continue
        y = math.exp(2.0 * a)
        s = 0.0
        for n in range(1, 64):
            z = PI * n * n * y
            term = (4.0 * z * z - 6.0 * z) * math.exp(-z)
            s += term
            if n > 1 and term <= 1e-18 * s:
                break
        out[i] = s * math.exp(0.5 * a)
    return out


def _de0_loop(t):
    out = np.empty(t.size)
    for i in range(t.size):
        a = abs(t[i])
        if a > T_CLIP:
            out[i] = 0.0
            continue
        y = math.exp(2.0 * a)
        s = 0.0
        for n in range(1, 64):
            z = PI * n * n * y
            term = z * math.exp(-z) * ((-4.0 * z + 15.0) * z - 7.5)
            s += term
            if n > 2 and abs(term) <= 1e-18 * abs(s):
                break
        v = 2.0 * s * math.exp(0.5 * a)
        out[i] = -v if t[i] < 0.0 else v
    return out


def _theta_w_loop(x):
    out = np.empty(x.size)
    for i in range(x.size):
        s = 0.0
        for n in range(1, 100000):
            term = math.exp(-PI * n * n * x[i])
            s += term
            if term <= 1e-18 * s:
                break
        out[i] = s
    return out


def _panel_trig_loop(x, fwk, fwg, omegas, use_sin):
    npan = x.size // 15
    out = np.empty(omegas.size)
    err = np.empty(omegas.size)
    for j in range(omegas.size):
        w = omegas[j]
        tot = 0.0
        e = 0.0
        for p in range(npan):
            sk = 0.0
            sg = 0.0
            for i in range(15):
                k = p * 15 + i
                c = math.sin(w * x[k]) if use_sin else math.cos(w * x[k])
                sk += fwk[k] * c
                sg += fwg[k] * c
            tot += sk
            e += abs(sk - sg)
        out[j] = tot
        err[j] = e
    return out, err


_e0_nb = _accel.njit(_e0_loop)
_de0_nb = _accel.njit(_de0_loop)
_theta_w_nb = _accel.njit(_theta_w_loop)
_panel_trig_nb = _accel.njit(_panel_trig_loop)


def _flat(fn):
    def wrapped(v):
        v = np.asarray(v, dtype=np.float64)
        return fn(np.ascontiguousarray(v.ravel())).reshape(v.shape)
    wrapped.__name__ = fn.__name__ if hasattr(fn, "__name__") else "kernel"
    return wrapped


def _flat_trig(fn):
    def wrapped(x, fwk, fwg, omegas, use_sin=False):
        arrs = [np.ascontiguousarray(np.asarray(v, dtype=np.float64).ravel()) for v in (x, fwk, fwg, omegas)]
        return fn(*arrs, bool(use_sin))
    return wrapped


IMPLEMENTATIONS = {
    "numpy": {
        "e0": _e0_numpy,
        "de0": _de0_numpy,
        "theta_w": _theta_w_numpy,
        "panel_trig": _flat_trig(_panel_trig_numpy),
    },
}
if _accel.NUMBA_AVAILABLE:
    IMPLEMENTATIONS["numba"] = {
        "e0": _flat(_e0_nb),
        "de0": _flat(_de0_nb),
        "theta_w": _flat(_theta_w_nb),
        "panel_trig": _flat_trig(_panel_trig_nb),
    }

_active = IMPLEMENTATIONS[_accel.backend_name()]
e0_array = _active["e0"]
de0_array = _active["de0"]
theta_w_array = _active["theta_w"]
panel_trig = _active["panel_trig"]
