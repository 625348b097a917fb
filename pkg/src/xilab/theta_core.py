"""Theta series w(x), the kernel E0(t), its tilt E_p and derivatives.

Every scalar series is summed with ``math.fsum`` and stopped only once a
geometric majorant certifies the dropped remainder.  The array versions used
inside quadratures live in ``_kernels``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, ToleranceUnreachable

PI = math.pi
TERM_CAP = 200
DEFAULT_TOL = 1e-15


@dataclass(frozen=True)
class TruncatedSum:
    value: float
    tail_bound: float
    terms_used: int

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class StripPoint:
    sigma: float
    omega: float

    def __post_init__(self):
        if not abs(self.sigma) < 0.5:
            raise DomainError(f"sigma={self.sigma} outside the strip |sigma| < 1/2")
        if not (math.isfinite(self.sigma) and math.isfinite(self.omega)):
            raise DomainError("strip point must be finite")

    @property
    def s(self) -> complex:
        return complex(0.5 + self.sigma, self.omega)


def certified_sum(term, bound, ratio, tol, cap=TERM_CAP):
    """Sum ``term(n)`` for n = 1, 2, ... until the remainder is certified below tol.

    ``bound(m)`` must dominate |term(m)| and ``ratio(m)`` must dominate
    bound(n+1)/bound(n) for every n >= m, so the remainder after n terms is at
    most bound(n+1)/(1 - ratio(n+1)).
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    terms = []
    for n in range(1, cap + 1):
        terms.append(term(n))
        r = ratio(n + 1)
        if r < 1.0:
            tail = bound(n + 1) / (1.0 - r)
            if tail <= tol:
                return TruncatedSum(float(math.fsum(terms)), float(tail), n)
    raise ToleranceUnreachable(f"series did not reach tol={tol:g} within {cap} terms")


def theta_w(x: float, tol: float = DEFAULT_TOL) -> TruncatedSum:
    """w(x) = sum_{n>=1} exp(-pi n^2 x)."""
    if not x > 0:
        raise DomainError(f"theta_w needs x > 0, got {x}")
    return certified_sum(
        lambda n: math.exp(-PI * n * n * x),
        lambda m: math.exp(-PI * m * m * x),
        lambda m: math.exp(-PI * m * x),
        tol,
    )


def jacobi_identity_residual(x: float, tol: float = 1e-17) -> float:
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    lhs = 1.0 + 2.0 * theta_w(x, tol).value
    rhs = (1.0 + 2.0 * theta_w(1.0 / x, tol).value) / math.sqrt(x)
    return lhs - rhs


def _e0_parts(a):
    y = math.exp(2.0 * a)
    half = math.exp(0.5 * a)
    return y, half


def e0(t: float, tol: float = DEFAULT_TOL) -> TruncatedSum:
    """E0(t) from its theta-derivative series, evaluated at |t|."""
    if not math.isfinite(t):
        raise DomainError("t must be finite")
    a = abs(t)
    if a > _kernels.T_CLIP:
        return TruncatedSum(0.0, 0.0, 1)
    y, half = _e0_parts(a)

    def term(n):
        z = PI * n * n * y
        return (4.0 * z * z - 6.0 * z) * math.exp(-z) * half

    def bound(m):
        z = PI * m * m * y
        return 4.0 * z * z * math.exp(-z) * half

    def ratio(m):
        return ((m + 1) / m) ** 4 * math.exp(-PI * (2 * m + 1) * y)

    return certified_sum(term, bound, ratio, tol)


def de0_dt_sum(t: float, tol: float = DEFAULT_TOL) -> TruncatedSum:
    """Term-wise derivative of E0; odd in t."""
    if not math.isfinite(t):
        raise DomainError("t must be finite")
    a = abs(t)
    if a > _kernels.T_CLIP:
        return TruncatedSum(0.0, 0.0, 1)
    y, half = _e0_parts(a)
    sgn = -1.0 if t < 0 else 1.0

    def term(n):
        z = PI * n * n * y
        return sgn * 2.0 * z * math.exp(-z) * ((-4.0 * z + 15.0) * z - 7.5) * half

    def bound(m):
        z = PI * m * m * y
        return 2.0 * z * ((4.0 * z + 15.0) * z + 7.5) * math.exp(-z) * half

    def ratio(m):
        return ((m + 1) / m) ** 6 * math.exp(-PI * (2 * m + 1) * y)

    return certified_sum(term, bound, ratio, tol)


def de0_dt(t: float, tol: float = DEFAULT_TOL) -> float:
    if t == 0.0:
        return 0.0  # odd function; the summed series only reaches roundoff here
    return de0_dt_sum(t, tol).value


def ep(t: float, sigma: float, tol: float = DEFAULT_TOL) -> float:
    """E_p(t) = E0(t) exp(-sigma t)."""
    if not abs(sigma) < 0.5:
        raise DomainError(f"sigma={sigma} outside |sigma| < 1/2")
    return e0(t, tol).value * math.exp(-sigma * t)


def e0_shift_diff(t: float, t2: float, tol: float = DEFAULT_TOL, reflected: bool = False) -> float:
    """E0(t - t2) - E0(t + t2); with ``reflected`` the same at -t."""
    if reflected:
        t = -t
    return e0(t - t2, tol).value - e0(t + t2, tol).value


def theta_delta_identity(tol: float = 1e-16) -> float:
    """sum_{n>=1} exp(-pi n^2) (1 - 4 pi n^2), which equals -1/2."""
    res = certified_sum(
        lambda n: math.exp(-PI * n * n) * (1.0 - 4.0 * PI * n * n),
        lambda m: math.exp(-PI * m * m) * (1.0 + 4.0 * PI * m * m),
        lambda m: ((m + 1) / m) ** 2 * math.exp(-PI * (2 * m + 1)),
        tol,
    )
    return res.value


# ------------------------------------------------------------ log-space views

def _logsumexp(logs):
    if not logs:
        return -math.inf
    m = max(logs)
    if m == -math.inf:
        return m
    return m + math.log(math.fsum(math.exp(v - m) for v in logs))


def _log_z_terms(a, nmax=12):
    # log z_n = log(pi n^2) + 2a, exact even when z itself would overflow
    return [(n, math.log(PI * n * n) + 2.0 * a) for n in range(1, nmax + 1)]


def log_e0(t: float) -> float:
    """log E0(t), finite far beyond the range where E0 underflows."""
    a = abs(t)
    logs = []
    for _, lz in _log_z_terms(a):
        z = math.exp(lz)
        if z > 1e300:
            if logs:
                break
            return -math.inf
        logs.append(lz + math.log(4.0 * z - 6.0) - z + 0.5 * a)
        if len(logs) > 1 and logs[-1] < logs[0] - 80.0:
            break
    return _logsumexp(logs)


def de0_sign_log(t: float) -> tuple[int, float]:
    """(sign, log|dE0/dt|) without underflow."""
    if t == 0.0:
        return 0, -math.inf
    a = abs(t)
    pos, neg = [], []
    for _, lz in _log_z_terms(a):
        z = math.exp(lz)
        if z > 1e150:
            break
        p = (-4.0 * z + 15.0) * z - 7.5
        if p == 0.0:
            continue
        lt = math.log(2.0) + lz - z + 0.5 * a + math.log(abs(p))
        (pos if p > 0 else neg).append(lt)
        if lt < max(pos + neg) - 80.0:
            break
    lp, ln = _logsumexp(pos), _logsumexp(neg)
    if lp == ln:
        return 0, -math.inf
    big, small, sgn = (lp, ln, 1) if lp > ln else (ln, lp, -1)
    mag = big + math.log1p(-math.exp(small - big))
    if t < 0:
        sgn = -sgn
    return sgn, mag


def _log_rest(a):
    # log of sum_n z_n (4 z_n - 6) e^{-(z_n - z_1)} at |t| = a, with z_n = pi n^2 e^{2a}
    z1 = PI * math.exp(2.0 * a)
    terms = []
    for n in range(1, 13):
        zn = z1 * n * n
        w = zn * (4.0 * zn - 6.0) * math.exp(-(n * n - 1) * z1)
        terms.append(w)
        if n > 1 and abs(w) < 1e-18 * abs(terms[0]):
            break
    return math.log(math.fsum(terms))


def log_e0_ratio(u: float, t: float) -> float:
    """log E0(u) - log E0(t) without the cancellation of two huge logarithms."""
    a, b = abs(u), abs(t)
    gap = PI * math.exp(2.0 * b) * math.expm1(2.0 * (a - b))
    return -gap + 0.5 * (a - b) + _log_rest(a) - _log_rest(b)


def log_e0_majorant(t: float) -> float:
    """Upper bound for log E0(t) from the leading term of the series."""
    a = abs(t)
    lz = math.log(PI) + 2.0 * a
    z = math.exp(lz)
    if z > 1e300:
        return -math.inf
    # 4 z^2 e^{-z} e^{a/2} dominates the n = 1 term; the rest add < 1 %
    return math.log(4.04) + 2.0 * lz - z + 0.5 * a


def e0_support_radius(log_threshold: float, growth: float = 0.0) -> float:
    """Smallest L >= 0 with log majorant(L) + growth * L below ``log_threshold``.

    ``growth`` accounts for an exponential weight exp(growth |t|) multiplying E0.
    """
    lo, hi = 0.0, 1.0
    while log_e0_majorant(hi) + growth * hi >= log_threshold:
        hi *= 2.0
        if hi > 64:
            raise ToleranceUnreachable("kernel support search diverged")
    if log_e0_majorant(lo) + growth * lo < log_threshold:
        return lo
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if log_e0_majorant(mid) + growth * mid >= log_threshold:
            lo = mid
        else:
            hi = mid
    return hi


def e0_array(t) -> np.ndarray:
    return _kernels.e0_array(t)


def de0_array(t) -> np.ndarray:
    return _kernels.de0_array(t)


def e0_raw_series(t: float) -> float:
    """E0 summed literally from its series at the given t, without reflecting to |t|.

    For t < 0 the terms decay slowly and cancel heavily; agreement with ``e0``
    there is a non-trivial consequence of the theta functional equation.
    """
    y = math.exp(2.0 * t)
    nmax = int(math.ceil(math.sqrt(60.0 / (PI * y)))) + 2
    n2 = np.arange(1, nmax + 1, dtype=np.float64) ** 2
    z = PI * n2 * y
    terms = (4.0 * z * z - 6.0 * z) * np.exp(-z)
    return math.fsum(terms.tolist()) * math.exp(0.5 * t)
