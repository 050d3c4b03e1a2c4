import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fdradius import _core_py, kernels
from fdradius.engine import sphere_samples
from fdradius.gauge import custom, power

from conftest import random_matrix

_core = pytest.importorskip("fdradius._core")


def test_compiled_backend_selected():
    assert kernels.BACKEND == "compiled"


def _problem(seed, n, d):
    rng = np.random.default_rng(seed)
    return np.array([random_matrix(rng, d) for _ in range(n)])


@settings(max_examples=20)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3), st.integers(1, 5))
def test_moduli_agree(seed, n, d):
    mats = _problem(seed, n, d)
    X = sphere_samples(d, 500, seed)
    fp, vp = _core_py.moduli(mats, X)
    fc, vc = _core.moduli(mats, X)
    assert np.allclose(fp, fc, atol=1e-12) and np.allclose(vp, vc, atol=1e-12)


@settings(max_examples=20)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3), st.integers(2, 4), st.sampled_from([1.0, 2.0, 3.0]),
       st.sampled_from([_core_py.FORM, _core_py.VECTOR]), st.floats(0.0, 0.8))
def test_ascent_agrees(seed, n, d, p, obj, frac):
    mats = _problem(seed, n, d)
    X0 = sphere_samples(d, 8, seed)
    norms = np.linalg.norm(mats, ord=2, axis=(1, 2))
    level_c = frac * np.sum(norms ** p) / n
    args = (mats, X0, obj, level_c, 200, 0.1, 1e-9, 1e-12)
    Xp, phip, itp, cvp, okp = _core_py.ascend(*args, p=p)
    Xc, phic, itc, cvc, okc = _core.ascend(*args, p)
    assert np.array_equal(okp, okc)
    both = okp & okc
    # identical step sequences up to floating-point reassociation
    assert np.allclose(phip[both], phic[both], atol=1e-9, rtol=1e-9)


def test_custom_gauge_uses_fallback():
    mats = _problem(1, 2, 3)
    X0 = sphere_samples(3, 8, 0)
    g = custom("sq", lambda t: t * t, np.sqrt, lambda t: 2 * t)
    _, phi_g, *_ = kernels.ascend(mats, X0, kernels.FORM, 0.0, g, 200, 0.1, 1e-9, 1e-12)
    _, phi_p, *_ = kernels.ascend(mats, X0, kernels.FORM, 0.0, power(2), 200, 0.1, 1e-9, 1e-12)
    assert np.allclose(phi_g, phi_p, atol=1e-9)


def test_pure_python_switch():
    code = ("from fdradius import kernels, engine, tuples, gauge;"
            "print(kernels.BACKEND);"
            "print(repr(engine.f_delta_radius(tuples.pauli_tuple(3), gauge.power(2), 0.5).value))")
    env = dict(os.environ, FDR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, value = out.stdout.split()
    assert backend == "python"
    from fdradius import engine, gauge, tuples
    compiled = engine.f_delta_radius(tuples.pauli_tuple(3), gauge.power(2), 0.5).value
    assert float(value) == pytest.approx(compiled, abs=1e-9)


def test_read_only_scalar_input():
    # a 1x1 real plane is already contiguous, so it must still be copied before use
    mats = np.array([[[2.0 + 1.0j]]])
    mats.setflags(write=False)
    X = np.array([[1.0 + 0.0j]])
    X.setflags(write=False)
    f, v = _core.moduli(mats, X)
    assert f[0, 0] == pytest.approx(np.sqrt(5)) and v[0, 0] == pytest.approx(np.sqrt(5))
    _core.ascend(mats, X, _core_py.FORM, 0.0, 10, 0.1, 1e-9, 1e-12, 1.0)
