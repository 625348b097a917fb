import os
import subprocess
import sys

import numpy as np
import pytest

from xilab import _accel, _kernels
from xilab import theta_core as tc

pytestmark = pytest.mark.skipif(not _accel.NUMBA_AVAILABLE, reason="numba not installed")

NP, NB = _kernels.IMPLEMENTATIONS["numpy"], _kernels.IMPLEMENTATIONS["numba"]


def test_e0_parity():
    t = np.linspace(-12.0, 12.0, 2001)
    a, b = NP["e0"](t), NB["e0"](t)
    assert np.max(np.abs(a - b)) < 1e-15
    ref = np.array([tc.e0(float(x)).value for x in t[::50]])
    assert np.max(np.abs(a[::50] - ref)) < 1e-15


def test_de0_parity():
    t = np.linspace(-6.0, 6.0, 1201)
    a, b = NP["de0"](t), NB["de0"](t)
    assert np.max(np.abs(a - b)) < 2e-15
    ref = np.array([tc.de0_dt(float(x)) for x in t[::40]])
    assert np.max(np.abs(b[::40] - ref)) < 2e-15


def test_theta_parity():
    x = np.linspace(0.05, 20.0, 400)
    assert np.max(np.abs(NP["theta_w"](x) - NB["theta_w"](x))) < 1e-15


def test_panel_trig_parity():
    rng = np.random.default_rng(7)
    x = rng.uniform(-3, 3, 15 * 40)
    wk, wg = rng.normal(size=x.size), rng.normal(size=x.size)
    om = np.linspace(0, 9, 13)
    for use_sin in (False, True):
        va, ea = NP["panel_trig"](x, wk, wg, om, use_sin)
        vb, eb = NB["panel_trig"](x, wk, wg, om, use_sin)
        assert np.max(np.abs(va - vb)) < 1e-12
        assert np.max(np.abs(ea - eb)) < 1e-12


def test_env_flag_selects_numpy():
    code = "from xilab import _accel, _kernels; print(_accel.backend_name(), _kernels.e0_array is _kernels.IMPLEMENTATIONS['numpy']['e0'])"
    env = dict(os.environ, XILAB_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "True"]


def test_results_agree_across_backends():
    code = ("from xilab import gr, WindowParams, xi_direct; "
            "print(repr(float(gr(1.3, WindowParams(0.3, 1.1, 0.4)).value)), repr(complex(xi_direct(0.6+9j).value)).replace(\" \", \"\"))")
    outs = []
    for flag in ("0", "1"):
        env = dict(os.environ, XILAB_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        outs.append([complex(v) for v in res.stdout.split()])
    for a, b in zip(*outs):
        assert abs(a - b) < 1e-14
