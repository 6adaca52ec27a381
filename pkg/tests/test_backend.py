import cmath
import math
import os
import subprocess
import sys

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from selberglab import _backend, _kernels_py

try:
    from selberglab import _kernels as compiled
except ImportError:  # pragma: no cover - build without a compiler
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def _backend_in_subprocess(env_value):
    env = dict(os.environ)
    env.pop("SELBERGLAB_PURE_PYTHON", None)
    if env_value is not None:
        env["SELBERGLAB_PURE_PYTHON"] = env_value
    out = subprocess.run([sys.executable, "-c", "from selberglab import _backend; print(_backend.BACKEND)"], env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_env_forces_fallback():
    assert _backend_in_subprocess("1") == "python"
    assert _backend_in_subprocess("0") == ("cython" if compiled else "python")
    assert _backend_in_subprocess(None) == ("cython" if compiled else "python")


def test_backend_exports():
    for name in ("loggamma", "rgamma_real", "qseries_sum", "mittag_leffler_sum"):
        assert callable(getattr(_backend, name))


def _loggamma_close(a, b):
    # compare modulo 2 pi i so branch choices do not matter
    d = a - b
    return abs(d.real) <= 1e-12 * max(1.0, abs(b)) and abs(math.remainder(d.imag, 2 * math.pi)) <= 1e-12 * max(1.0, abs(b))


@needs_compiled
@given(st.complex_numbers(max_magnitude=60, allow_nan=False, allow_infinity=False).filter(lambda z: z.real > -30 and abs(z - round(z.real)) > 1e-3))
def test_loggamma_agree(z):
    assert _loggamma_close(compiled.loggamma(z), _kernels_py.loggamma(z))


@pytest.mark.parametrize("z", [0.5, 3 + 4j, -2.5 + 0.1j, 10 - 20j, 0.1 + 50j])
def test_loggamma_against_mpmath(z):
    ref = complex(mpmath.loggamma(z))
    assert _loggamma_close(_kernels_py.loggamma(z), ref)
    if compiled:
        assert _loggamma_close(compiled.loggamma(z), ref)


@needs_compiled
def test_rgamma_agree():
    for x in (-3.5, -2.0, 0.0, 0.25, 1.0, 7.5, 30.0):
        a, b = compiled.rgamma_real(x), _kernels_py.rgamma_real(x)
        assert a == pytest.approx(b, rel=1e-13, abs=1e-300)


@needs_compiled
def test_qseries_agree():
    coeffs = [complex(math.sin(n), math.cos(3 * n)) for n in range(1, 101)]
    for z in (1j, 0.3 + 0.2j):
        a, b = compiled.qseries_sum(coeffs, z, 100), _kernels_py.qseries_sum(coeffs, z, 100)
        assert abs(a - b) <= 1e-13 * max(1.0, abs(b))


@needs_compiled
def test_mittag_leffler_agree():
    for beta in (-5.0, -0.5, 0.5, 2.0):
        for w in (0.3 + 0.1j, -4 + 2j, 5j):
            va, na = compiled.mittag_leffler_sum(beta, w, 1e-17, 400)
            vb, nb = _kernels_py.mittag_leffler_sum(beta, w, 1e-17, 400)
            assert abs(va - vb) <= 1e-12 * max(1.0, abs(vb))
            assert abs(na - nb) <= 1


def test_pure_python_suite_subset():
    env = dict(os.environ, SELBERGLAB_PURE_PYTHON="1")
    code = (
        "from selberglab import _backend; assert _backend.BACKEND == 'python';"
        "from selberglab.catalog import load_entry;"
        "from selberglab.sfunction import reflection_residual;"
        "g = load_entry('maass(1,3)').gamma; assert abs(reflection_residual(g, -0.7+5j)) < 1e-10"
    )
    subprocess.run([sys.executable, "-c", code], env=env, check=True)
