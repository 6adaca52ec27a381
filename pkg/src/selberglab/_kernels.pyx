# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels; mirrors ``selberglab._kernels_py`` exactly."""

from libc.math cimport floor, ceil, fabs, exp, tgamma, lgamma, M_PI, round as cround

from selberglab.errors import PoleError

cdef extern from "complex.h" nogil:
    double complex clog(double complex)
    double complex cexp(double complex)
    double complex csin(double complex)
    double creal(double complex)
    double cimag(double complex)
    double carg(double complex)
    double cabs(double complex)

cdef double _G = 5.24218750000000000
cdef double _C0 = 0.999999999999997092
cdef double[14] _LZ = [
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
]
cdef double _SQRT_2PI = 2.5066282746310005
cdef double _LOG_PI = 1.1447298858494002
cdef double _TWO_PI = 2.0 * M_PI
cdef double complex _I = 1j


cdef double complex _lg_right(double complex z) noexcept nogil:
    cdef double complex y = z
    cdef double complex tmp = z + _G
    cdef double complex ser = _C0
    cdef int j
    tmp = (z + 0.5) * clog(tmp) - tmp
    for j in range(14):
        y = y + 1.0
        ser = ser + _LZ[j] / y
    return tmp + clog(_SQRT_2PI * ser / z)


cdef double complex _log_sin_pi(double complex z) noexcept nogil:
    cdef double yv = cimag(z)
    cdef double complex lead, corr
    if fabs(yv) < 20.0:
        return clog(csin(M_PI * z))
    if yv > 0:
        lead = -_I * M_PI * z + clog(0.5 * _I)
        corr = 1.0 - cexp(2.0 * _I * M_PI * z)
    else:
        lead = _I * M_PI * z + clog(-0.5 * _I)
        corr = 1.0 - cexp(-2.0 * _I * M_PI * z)
    return lead + clog(corr)


def loggamma(z):
    """Principal branch of log Gamma(z) for complex z."""
    cdef double complex zz = complex(z)
    cdef double complex val
    cdef double arg_sum = 0.0
    cdef double target_im
    cdef int n, k
    cdef double kk
    if cimag(zz) == 0.0 and creal(zz) <= 0.0 and creal(zz) == floor(creal(zz)):
        raise PoleError(f"Gamma has a pole at {creal(zz):g}")
    if creal(zz) >= 0.5:
        return _lg_right(zz)
    val = _LOG_PI - _log_sin_pi(zz) - _lg_right(1.0 - zz)
    n = <int>ceil(0.5 - creal(zz))
    for k in range(n):
        arg_sum += carg(zz + k)
    target_im = cimag(_lg_right(zz + n)) - arg_sum
    kk = cround((target_im - cimag(val)) / _TWO_PI)
    return complex(creal(val), cimag(val) + _TWO_PI * kk)


cdef double _rgamma_real(double x) noexcept nogil:
    if x <= 0.0 and x == floor(x):
        return 0.0
    if x < 171.0:
        return 1.0 / tgamma(x)
    return exp(-lgamma(x))


def rgamma_real(double x):
    """1/Gamma(x) for real x; zero at the poles."""
    return _rgamma_real(x)


def qseries_sum(coeffs, z, int n_terms):
    """sum_{n=1}^{n_terms} coeffs[n-1] * exp(2 pi i n z)."""
    cdef double complex zz = complex(z)
    cdef double complex total = 0
    cdef double complex c
    cdef int n
    for n in range(1, n_terms + 1):
        c = complex(coeffs[n - 1])
        total = total + c * cexp(_TWO_PI * _I * n * zz)
    return total


def mittag_leffler_sum(double beta, w, double rel_tol, int max_terms):
    """sum_{l>=0} (-w)^l / Gamma(l + beta); returns (value, terms_used)."""
    cdef double complex ww = complex(w)
    cdef double complex total = 0
    cdef double complex power = 1.0
    cdef double complex term
    cdef double running_max = 0.0
    cdef double aw = cabs(ww)
    cdef int ell
    for ell in range(max_terms):
        term = power * _rgamma_real(ell + beta)
        total = total + term
        if cabs(total) > running_max:
            running_max = cabs(total)
        if ell > aw and ell + beta > 1.0 and cabs(term) <= rel_tol * running_max:
            return complex(total), ell + 1
        power = power * (-ww)
    return complex(total), max_terms
