"""Independent high-precision references built on mpmath and scipy."""
import math

import mpmath as mp
from scipy.integrate import quad

mp.mp.dps = 30


def theta_w(x):
    return float(mp.nsum(lambda n: mp.e ** (-mp.pi * n * n * x), [1, mp.inf]))


def e0_mp(t):
    a = abs(mp.mpf(t))
    y = mp.e ** (2 * a)
    s = mp.nsum(lambda n: (4 * (mp.pi * n * n * y) ** 2 - 6 * mp.pi * n * n * y) * mp.e ** (-mp.pi * n * n * y),
                [1, mp.inf])
    return s * mp.e ** (a / 2)


def e0(t):
    return float(e0_mp(t))


def de0(t):
    return float(mp.diff(e0_mp, t))


def xi(s):
    s = mp.mpc(s)
    return complex(0.5 * s * (s - 1) * mp.pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s))


def g_window(t, sigma, t2, t0):
    """Two-sided re-weighted window, assembled from its definition."""
    ep = lambda u: e0(u) * math.exp(-sigma * u)
    shifted = lambda u: ep(u - t2) * math.exp(-sigma * t2) - ep(u + t2) * math.exp(sigma * t2)
    f = math.exp(-sigma * t0) * shifted(t + t0) + math.exp(sigma * t0) * shifted(t - t0)
    return f * math.exp(sigma * abs(t))


def gr_definition(omega, sigma, t2, t0, span=12.0):
    kinks = sorted({-abs(t0) - abs(t2), -abs(t0) + abs(t2), abs(t0) - abs(t2), abs(t0) + abs(t2)})
    f = lambda t: g_window(t, sigma, t2, t0) * math.cos(omega * t)
    lo = quad(f, -span, 0.0, points=[p for p in kinks if p < 0] or None, limit=400, epsabs=1e-14, epsrel=1e-13)[0]
    hi = quad(f, 0.0, span, points=[p for p in kinks if p > 0] or None, limit=400, epsabs=1e-14, epsrel=1e-13)[0]
    return lo + hi
