import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from xilab import fourier_engine as fe
from xilab import theta_core as tc
from xilab.errors import DomainError
from xilab.quadrature import adaptive
from xilab.theta_core import StripPoint
from xilab.xi_oracle import xi_direct

from . import oracles

W = fe.WindowParams(0.25, 1.0, 0.5)

# cosine transform of the two-sided window assembled from its definition
# (mpmath kernel, scipy quad), frozen
GR_DEFINITION = {
    (1.0, 0.25, 1.0, 0.5): -0.360124347511909,
    (0.0, 0.25, 1.0, 0.0): -0.6544797143206447,
    (2.0, 0.3, 1.3, -0.7): -0.043241850068514276,
    (4.0, 0.1, 0.6, 0.9): -0.030679143050150737,
}


def test_window_params_validation():
    for bad in ((0.0, 1.0, 0.0), (0.5, 1.0, 0.0), (0.2, math.inf, 0.0), (0.2, 1.0, math.nan)):
        with pytest.raises(DomainError):
            fe.WindowParams(*bad)
    assert fe.WindowParams(0.2, 0.0, 1.0).degenerate


def test_ep_omega_examples():
    v = complex(fe.ep_omega(StripPoint(0.0, 0.0)).value)
    assert v.real > 0 and abs(v.real - 0.49712077818831411) < 1e-13
    v = complex(fe.ep_omega(StripPoint(0.25, 0.0)).value)
    assert v.real > 0 and abs(v.imag) < 1e-15
    assert abs(complex(fe.ep_omega(StripPoint(0.0, 14.134725)).value)) < 1e-6


@given(st.floats(-0.45, 0.45), st.floats(0.0, 30.0))
def test_ep_omega_matches_xi_direct(sigma, omega):
    a = complex(fe.ep_omega(StripPoint(sigma, omega)).value)
    b = complex(xi_direct(complex(0.5 + sigma, omega)).value)
    assert abs(a - b) < 1e-8


def test_ep_omega_many_matches_pointwise():
    om = np.arange(0.0, 30.0, 1.5)
    vals, errs = fe.ep_omega_many(0.3, om)
    for w, v in zip(om, vals):
        assert abs(v - complex(fe.ep_omega(StripPoint(0.3, float(w))).value)) < 1e-12
    assert np.all(errs < 1e-11)


def test_ep_prime_omega_examples():
    assert fe.ep_prime_omega(StripPoint(0.25, 3.0), 0.0).value == 0
    r = fe.ep_prime_omega(StripPoint(0.25, 0.0), 1.0)
    base = complex(fe.ep_omega(StripPoint(0.25, 0.0)).value)
    ref = base * (math.exp(-0.25) - math.exp(0.25))
    assert abs(complex(r.value) - ref) < 1e-14 and complex(r.value).real < 0
    assert r.discrepancy < 1e-11
    r = fe.ep_prime_omega(StripPoint(0.0, 1.0), 1.0)
    ref = complex(fe.ep_omega(StripPoint(0.0, 1.0)).value) * (-2j * math.sin(1.0))
    assert abs(complex(r.value) - ref) < 1e-13


def test_h_omega():
    assert fe.h_omega(0.0, 0.25) == 8.0
    assert fe.h_omega(0.3, 0.3) == pytest.approx(1 / 0.3, rel=1e-15)
    assert fe.h_omega(2.0, 0.1) == fe.h_omega(-2.0, 0.1) > 0
    # int H = 2 pi h(0) = 2 pi: integrate in u = atan(omega / sigma)
    s = 0.25
    total = adaptive(lambda u: np.array([fe.h_omega(s * math.tan(x), s) for x in u]) * s / np.cos(u) ** 2,
                     -math.pi / 2 + 1e-12, math.pi / 2 - 1e-12, 1e-10).value
    assert total == pytest.approx(2 * math.pi, rel=1e-9)
    with pytest.raises(DomainError):
        fe.h_omega(1.0, 0.0)


@pytest.mark.parametrize("key, ref", GR_DEFINITION.items())
def test_gr_matches_definition(key, ref):
    om, s, t2, t0 = key
    assert abs(fe.gr(om, fe.WindowParams(s, t2, t0)).value - ref) < 1e-10


def test_gr_matches_live_definition_oracle():
    om, s, t2, t0 = 1.7, 0.35, 0.8, 0.3
    assert abs(fe.gr(om, fe.WindowParams(s, t2, t0)).value - oracles.gr_definition(om, s, t2, t0)) < 1e-10


def test_g1r_combination():
    for om in (0.0, 1.0, 3.5):
        direct = fe.gr(om, W).value
        combo = (math.exp(-2 * W.sigma * W.t0) * fe.g1r(om, W).value
                 + math.exp(2 * W.sigma * W.t0) * fe.g1r(om, W.with_t0(-W.t0)).value)
        assert abs(direct - combo) < 1e-12


def test_g1r_at_origin_against_second_integrator():
    w = fe.WindowParams(0.25, 1.0, 0.0)
    k = lambda t: (tc.e0_shift_diff(t, 1.0) * math.exp(-0.5 * t) + tc.e0_shift_diff(-t, 1.0))
    ref = quad(k, -12.0, 0.0, points=[-1.0], limit=200, epsabs=1e-14)[0]
    assert abs(fe.g1r(0.0, w, 1e-13).value - ref) < 1e-12


def test_degenerate_window_vanishes():
    w = fe.WindowParams(0.25, 0.0, 0.7)
    assert fe.g1r(1.0, w).value == fe.gr(1.0, w).value == fe.fr_convolution(1.0, w).value == 0.0
    assert fe.f_omega(1.0, w).value == 0


@given(st.floats(0.05, 0.45), st.floats(0.2, 2.0), st.floats(-1.5, 1.5), st.floats(0.0, 15.0))
def test_gr_even_in_omega_and_t0(s, t2, t0, om):
    w = fe.WindowParams(s, t2, t0)
    g = fe.gr(om, w).value
    assert abs(g - fe.gr(-om, w).value) < 1e-10
    assert abs(g - fe.gr(om, w.with_t0(-t0)).value) < 1e-10


def test_gr_many_matches_pointwise():
    om = np.linspace(0.0, 20.0, 41)
    vals, _ = fe.gr_many(om, W, 1e-13)
    assert max(abs(v - fe.gr(float(o), W).value) for o, v in zip(om, vals)) < 1e-12


def test_fr_convolution_matches_product_formula():
    a = fe.fr_convolution(2.0, W)
    b = complex(fe.f_omega(2.0, W).value).real
    assert abs(a.value - b) / abs(b) < 1e-5
    assert a.value == fe.fr_convolution(-2.0, W).value


def test_f_omega_at_zero_shift():
    w = fe.WindowParams(0.3, 0.9, 0.0)
    e = complex(fe.ep_prime_omega(StripPoint(0.3, 1.2), 0.9).value)
    assert abs(complex(fe.f_omega(1.2, w).value) - 2 * e) < 1e-15


def test_f_at_zero_by_transform_inversion():
    w = fe.WindowParams(0.25, 1.0, 0.5)
    closed = fe.f_at_zero_closed_form(w)
    ref = -2 * math.sinh(0.25) * (tc.e0(-0.5).value - tc.e0(1.5).value)
    assert closed == ref
    assert abs(float(fe.f_time(np.array([0.0]), w)[0]) - closed) < 1e-14
    inv = adaptive(lambda x: np.array([complex(fe.f_omega(float(o), w).value).real for o in x]),
                   -60.0, 60.0, 1e-9, max_width=1.0).value / (2 * math.pi)
    assert abs(inv - closed) < 1e-8


@given(st.floats(0.05, 0.45), st.floats(0.3, 2.0), st.floats(-1.2, 1.2), st.floats(0.0, 8.0))
def test_even_and_odd_parts(s, t2, t0, om):
    w = fe.WindowParams(s, t2, t0)
    g = lambda t: fe.g_time(t, w)
    lim = abs(t0) + abs(t2) + 8.0
    even = adaptive(lambda t: 0.5 * (g(t) + g(-t)) * np.cos(om * t), -lim, lim, 1e-13, max_width=0.1,
                    breakpoints=(0.0,)).value
    odd = adaptive(lambda t: 0.5 * (g(t) - g(-t)) * np.cos(om * t), -lim, lim, 1e-13, max_width=0.1,
                   breakpoints=(0.0,)).value
    assert abs(even - fe.gr(om, w).value) < 1e-10
    assert abs(odd) < 1e-10


@pytest.mark.parametrize("w", [W, fe.WindowParams(0.4, 1.5, -0.9), fe.WindowParams(0.1, 0.5, 1.2)])
def test_gr_falls_off_like_inverse_square(w):
    om = np.linspace(50.0, 200.0, 31)
    vals, _ = fe.gr_many(om, w, 1e-13)
    a = fe.gr_edge_slope(w)
    assert np.max(np.abs(vals * om ** 2)) <= 1.1 * abs(a)
    assert vals[-1] * om[-1] ** 2 == pytest.approx(a, rel=0.05)


def test_partials_examples():
    assert fe.gr_partials(0.0, W, "domega").value == 0.0
    h = 1e-4
    fd = (fe.gr(1.0, W.with_t0(0.5 + h), 1e-13).value - fe.gr(1.0, W.with_t0(0.5 - h), 1e-13).value) / (2 * h)
    an = fe.gr_partials(1.0, W, "dt0", 1e-12).value
    assert abs(an - fd) / abs(an) < 1e-5
    h = 1e-3
    g = lambda o: fe.gr(o, W, 1e-13).value
    fd2 = (g(1.0 + h) - 2 * g(1.0) + g(1.0 - h)) / h ** 2
    an2 = fe.gr_partials(1.0, W, "domega2", 1e-12).value
    assert abs(an2 - fd2) / abs(an2) < 1e-4
    with pytest.raises(DomainError):
        fe.gr_partials(1.0, W, "dsigma")


@given(st.floats(0.05, 0.45), st.floats(0.3, 2.0), st.floats(-1.2, 1.2), st.floats(0.5, 6.0))
def test_partials_match_finite_differences(s, t2, t0, om):
    w = fe.WindowParams(s, t2, t0)
    h = 1e-4
    cases = {
        "domega": lambda x: fe.gr(om + x, w, 1e-13).value,
        "dt0": lambda x: fe.gr(om, w.with_t0(t0 + x), 1e-13).value,
        "dt2": lambda x: fe.gr(om, fe.WindowParams(s, t2 + x, t0), 1e-13).value,
    }
    for which, fun in cases.items():
        an = fe.gr_partials(om, w, which, 1e-12).value
        fd = (fun(h) - fun(-h)) / (2 * h)
        if abs(an) > 1e-4:
            assert abs(an - fd) / abs(an) < 1e-5, which
