"""Pure-Python numeric kernels (fallback for the compiled ``_kernels`` module).

The compiled module in ``_kernels.pyx`` implements exactly these functions
with the same signatures; ``selberglab._backend`` picks one at import time.
"""
from __future__ import annotations

import cmath
import math

from .errors import PoleError

# Lanczos approximation, g = 671/128, 14 terms.
_LANCZOS_G = 5.24218750000000000
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005
_LOG_PI = 1.1447298858494002
_TWO_PI = 2.0 * math.pi


def _loggamma_right(z: complex) -> complex:
    # valid for Re(z) >= 1/2
    y = z
    tmp = z + _LANCZOS_G
    tmp = (z + 0.5) * cmath.log(tmp) - tmp
    ser = _LANCZOS_C0
    for c in _LANCZOS:
        y += 1.0
        ser += c / y
    return tmp + cmath.log(_SQRT_2PI * ser / z)


def _log_sin_pi(z: complex) -> complex:
    # log(sin(pi z)) without overflow for large |Im z|
    x, y = z.real, z.imag
    if abs(y) < 20.0:
        return cmath.log(cmath.sin(math.pi * z))
    # sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i; keep the dominant exponential
    if y > 0:
        # dominant: -e^{-i pi z}/(2i) = (i/2) e^{-i pi z}
        lead = -1j * math.pi * z + cmath.log(0.5j)
        corr = 1.0 - cmath.exp(2j * math.pi * z)
    else:
        lead = 1j * math.pi * z + cmath.log(-0.5j)
        corr = 1.0 - cmath.exp(-2j * math.pi * z)
    return lead + cmath.log(corr)


def loggamma(z) -> complex:
    """Principal branch of log Gamma(z) for complex z."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real >= 0.5:
        return _loggamma_right(z)
    w = 1.0 - z
    val = _LOG_PI - _log_sin_pi(z) - _loggamma_right(w)
    # Fix the 2*pi*k branch offset using the upward recurrence's argument sum.
    n = int(math.ceil(0.5 - z.real))
    arg_sum = 0.0
    for k in range(n):
        arg_sum += cmath.phase(z + k)
    target_im = _loggamma_right(z + n).imag - arg_sum
    k = round((target_im - val.imag) / _TWO_PI)
    return complex(val.real, val.imag + _TWO_PI * k)


def rgamma_real(x: float) -> float:
    """1/Gamma(x) for real x; zero at the poles."""
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    if x < 171.0:
        return 1.0 / math.gamma(x)
    return math.exp(-math.lgamma(x))


def qseries_sum(coeffs, z: complex, n_terms: int) -> complex:
    """sum_{n=1}^{n_terms} coeffs[n-1] * exp(2 pi i n z)."""
    z = complex(z)
    total = 0j
    for n in range(1, n_terms + 1):
        total += complex(coeffs[n - 1]) * cmath.exp(_TWO_PI * 1j * n * z)
    return total


def mittag_leffler_sum(beta: float, w: complex, rel_tol: float, max_terms: int):
    """sum_{l>=0} (-w)^l / Gamma(l + beta); returns (value, terms_used)."""
    w = complex(w)
    beta = float(beta)
    total = 0j
    running_max = 0.0
    power = 1.0 + 0j
    aw = abs(w)
    for ell in range(max_terms):
        term = power * rgamma_real(ell + beta)
        total += term
        running_max = max(running_max, abs(total))
        # only stop once terms are monotonically shrinking
        if ell > aw and ell + beta > 1.0 and abs(term) <= rel_tol * running_max:
            return total, ell + 1
        power *= -w
    return total, max_terms
