"""Special-function kernel: Bernoulli numbers and polynomials, log-Gamma,
half-integer Gamma values, generalized binomials, Mittag-Leffler series.

Exact inputs (``int``, ``Fraction``, ``GaussianRational``) give exact outputs;
anything else goes through double precision.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction

from . import _backend
from .exact import ExactScalar, GaussianRational, is_exact

__all__ = [
    "bernoulli_numbers",
    "bernoulli_number",
    "bernoulli_polynomial",
    "bernoulli_poly_coefficients",
    "log_gamma",
    "gamma_half_integer",
    "generalized_binomial",
    "eval_mittag_leffler",
    "ML_REL_TOL",
    "ML_MAX_TERMS",
]

ML_REL_TOL = 1e-16
ML_MAX_TERMS = 500

_BERN_LOCK = threading.Lock()
_BERN: list[Fraction] = []


def _akiyama_tanigawa(n: int) -> list[Fraction]:
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n >= 1:
        # the algorithm yields B_1 = +1/2; we use B_1 = B_1(0) = -1/2
        out[1] = -out[1]
    return out


def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """B_0..B_n (B_1 = -1/2). The table is built once and extended on demand."""
    global _BERN
    if n >= len(_BERN):
        with _BERN_LOCK:
            if n >= len(_BERN):
                _BERN = _akiyama_tanigawa(max(n, 40))
    return tuple(_BERN[: n + 1])


def bernoulli_number(n: int) -> Fraction:
    return bernoulli_numbers(n)[n]


bernoulli_numbers(40)


def bernoulli_poly_coefficients(n: int) -> list[Fraction]:
    """Coefficients c_0..c_n of B_n(x) = sum c_k x^k."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    b = bernoulli_numbers(n)
    return [math.comb(n, k) * b[n - k] for k in range(n + 1)]


def bernoulli_polynomial(n: int, x):
    """B_n(x); exact when x is exact."""
    coeffs = bernoulli_poly_coefficients(n)
    if is_exact(x):
        x = GaussianRational.coerce(x) if isinstance(x, GaussianRational) else Fraction(x)
        acc = Fraction(0) if isinstance(x, Fraction) else GaussianRational(0)
    else:
        x = complex(x)
        acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    if isinstance(acc, GaussianRational) and acc.is_real():
        return acc.re
    return acc


def log_gamma(s) -> complex:
    """Principal branch of log Gamma(s); raises PoleError at s = 0, -1, -2, ..."""
    return _backend.loggamma(complex(s))


def gamma_half_integer(n: int) -> ExactScalar:
    """Gamma(n + 1/2) as an exact rational multiple of sqrt(pi) (grade 1/2)."""
    if n >= 0:
        c = Fraction(math.factorial(2 * n), 4**n * math.factorial(n))
    else:
        m = -n
        # Gamma(1/2 - m) = (-4)^m m! / (2m)! * sqrt(pi)
        c = Fraction((-4) ** m * math.factorial(m), math.factorial(2 * m))
    return ExactScalar(c, Fraction(1, 2))


def generalized_binomial(x, n: int):
    """x(x-1)...(x-n+1)/n!; exact when x is exact."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if is_exact(x):
        acc = Fraction(1) if not isinstance(x, GaussianRational) else GaussianRational(1)
        for j in range(n):
            acc = acc * (x - j)
        out = acc / math.factorial(n)
        if isinstance(out, GaussianRational) and out.is_real():
            return out.re
        return out
    x = complex(x) if isinstance(x, complex) else float(x)
    acc = 1.0
    for j in range(n):
        acc *= (x - j) / (j + 1)
    return acc


def eval_mittag_leffler(beta: float, w, rel_tol: float = ML_REL_TOL, max_terms: int = ML_MAX_TERMS) -> complex:
    """E_beta(w) = sum_{l>=0} (-w)^l / Gamma(l + beta)."""
    value, _ = _backend.mittag_leffler_sum(float(beta), complex(w), rel_tol, max_terms)
    return value
