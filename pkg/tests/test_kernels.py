"""The compiled and pure-Python kernels must agree bit for bit."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from orlicz_cosine import _kernels_py, _scalar, kernels

compiled = pytest.importorskip("orlicz_cosine._kernels")

KINDS = [(_scalar.ENTROPY, 0.0), (_scalar.EXP, 0.0), (_scalar.POWER, 3.0),
         (_scalar.POWER, 1.5), (_scalar.SQUARE, 0.0), (_scalar.QSQUARE, 0.0)]

amplitudes = st.lists(st.floats(1e-6, 1.0), min_size=1, max_size=12).map(
    lambda xs: np.ascontiguousarray(np.array(xs) / max(xs)))


def test_default_backend_is_compiled():
    assert kernels.BACKEND == "cython"


def test_pure_backend_forced_by_environment():
    env = dict(os.environ, ORLICZ_COSINE_PURE="1")
    out = subprocess.run([sys.executable, "-c",
                          "import orlicz_cosine as o; print(o.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@given(a=amplitudes, kp=st.sampled_from(KINDS), scale=st.floats(0.01, 100))
def test_modular_agrees(a, kp, scale):
    assert compiled.modular(*kp, a, scale) == _kernels_py.modular(*kp, a, scale)


@given(a=amplitudes, kp=st.sampled_from(KINDS))
def test_luxemburg_agrees(a, kp):
    assert compiled.luxemburg(*kp, a) == _kernels_py.luxemburg(*kp, a)


@given(a=amplitudes, kp=st.sampled_from(KINDS))
def test_amemiya_agrees(a, kp):
    assert compiled.amemiya(*kp, a) == _kernels_py.amemiya(*kp, a)


@given(a=amplitudes, kp=st.sampled_from([(_scalar.EXP, 0.0), (_scalar.QSQUARE, 0.0),
                                         (_scalar.POWER, 1.5)]),
       seed=st.integers(0, 1000))
def test_dual_ascent_agrees(a, kp, seed):
    nu0 = np.random.default_rng(seed).uniform(0.05, 1.0, len(a))
    v1, nu1 = compiled.dual_ascent(*kp, a, nu0, 20)
    v2, nu2 = _kernels_py.dual_ascent(*kp, a, nu0, 20)
    assert v1 == pytest.approx(v2, rel=1e-12)
    np.testing.assert_allclose(nu1, nu2, rtol=1e-10, atol=1e-14)


@pytest.mark.parametrize("kind, p", KINDS)
def test_scalar_series_branch_is_continuous(kind, p):
    cut = _scalar.SERIES_CUTOFF
    below = _scalar.phi(kind, p, np.nextafter(cut, 0))
    above = _scalar.phi(kind, p, cut)
    assert above == pytest.approx(below, rel=1e-13)
