import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from xilab import xi_oracle as xo
from xilab.errors import NoSignChange

from . import oracles

# 0.5 s (s-1) pi^{-s/2} Gamma(s/2) zeta(s) via mpmath at 40 digits, frozen
XI = {
    0.5: 0.49712077818831410991,
    0.75 + 3j: 0.40352492697554134807 + 0.014199307890322673386j,
    0.6 + 10j: 0.037921639437018244103 + 0.0022447398107200815348j,
    0.5 + 25j: 1.3824572165098989757e-8,
    0.9 + 17.5j: -0.00041025371411357935749 - 0.00010017974462350429107j,
    0.3 + 8j: 0.10308145104818558641 - 0.0087035514642383194928j,
}
ZEROS = (14.134725141734693790, 21.022039638771554993)


@pytest.mark.parametrize("s, ref", XI.items())
def test_xi_direct_frozen(s, ref):
    r = xo.xi_direct(complex(s))
    assert abs(complex(r.value) - ref) < 1e-12
    assert r.err_estimate < 1e-11


def test_xi_at_zero_and_one():
    for s in (0.0, 1.0):
        assert abs(complex(xo.xi_direct(s).value) - 0.5) < 1e-13


def test_xi_half_positive_real():
    v = complex(xo.xi_direct(0.5).value)
    assert v.real > 0 and v.imag == 0


@pytest.mark.parametrize("sigma", [0.0, 0.2, -0.2, 0.4, -0.4])
@pytest.mark.parametrize("omega", [0.0, 2.0, 5.0, 10.0, 20.0])
def test_functional_equation_grid(sigma, omega):
    assert xo.xi_functional_residual(complex(0.5 + sigma, omega)) < 1e-10


def test_critical_line_real():
    assert xo.xi_critical_line(14.0) > 0 > xo.xi_critical_line(14.5)


@pytest.mark.parametrize("lo, hi, ref", [(14.0, 15.0, ZEROS[0]), (21.0, 21.5, ZEROS[1])])
def test_zeros(lo, hi, ref):
    assert abs(xo.find_critical_zero(lo, hi) - ref) < 1e-6


def test_no_sign_change():
    with pytest.raises(NoSignChange):
        xo.find_critical_zero(15.0, 20.0)


@given(st.floats(-0.45, 0.45), st.floats(0.0, 30.0))
def test_matches_live_mpmath(sigma, omega):
    s = complex(0.5 + sigma, omega)
    assert abs(complex(xo.xi_direct(s).value) - oracles.xi(s)) < 1e-11


@given(st.floats(-0.45, 0.45), st.floats(-30.0, 30.0))
def test_conjugate_symmetry(sigma, omega):
    s = complex(0.5 + sigma, omega)
    assert abs(complex(xo.xi_direct(s).value) - complex(xo.xi_direct(s.conjugate()).value).conjugate()) < 1e-12
