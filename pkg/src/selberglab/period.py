"""q-expansions, period functions and the three-term relation.

f(z) = sum_n c(n) e(nz) with c(n) = a(n) n^lambda, and
psi(z) = f(z) - z^{-2 lambda - 1} f(-1/z) on the upper half-plane.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _backend
from .errors import DataError, DomainError, InsufficientCoefficientsError

__all__ = [
    "QExpansion",
    "PeriodPoint",
    "delta_tau",
    "divisor_counts",
    "euler_product_coefficients",
    "eval_f",
    "f_point",
    "eval_psi",
    "power_principal",
    "branch_defect",
    "three_term_residual",
    "three_term_check",
    "growth_profile",
    "coefficient_root_test",
    "TAIL_RTOL",
    "DEFAULT_C_GROWTH",
]

TAIL_RTOL = 1e-12
DEFAULT_C_GROWTH = 6.0


# ---------------------------------------------------------------------------
# coefficient generators


def euler_product_coefficients(n_max: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n) up to q^{n_max} (pentagonal numbers)."""
    out = [0] * (n_max + 1)
    k = 0
    while True:
        hit = False
        for j in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2) if k else (0,):
            if j <= n_max:
                out[j] = -1 if k % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return out


def _mul_trunc(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j in range(n + 1 - i):
                out[i + j] += x * b[j]
    return out


def delta_tau(n_max: int) -> list[int]:
    """tau(1..n_max) from q prod (1 - q^n)^24 (squaring ladder 1, 2, 3, 6, 12, 24)."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    m = n_max - 1
    p1 = euler_product_coefficients(m)
    p2 = _mul_trunc(p1, p1, m)
    p3 = _mul_trunc(p2, p1, m)
    p6 = _mul_trunc(p3, p3, m)
    p12 = _mul_trunc(p6, p6, m)
    p24 = _mul_trunc(p12, p12, m)
    return p24[: m + 1]


def divisor_counts(n_max: int) -> list[int]:
    """d(1..n_max)."""
    d = [0] * (n_max + 1)
    for k in range(1, n_max + 1):
        for j in range(k, n_max + 1, k):
            d[j] += 1
    return d[1:]


# ---------------------------------------------------------------------------
# q-expansions


@dataclass(frozen=True)
class QExpansion:
    """Effective coefficients c(1..n_max) of f(z) = sum c(n) e(nz) and the exponent lambda.

    With ``finite`` the expansion is the stated polynomial in e(z) (c(n) = 0
    past n_max), so evaluation is exact up to rounding.
    """

    c: tuple
    lam: complex = 0j
    c_growth: float = DEFAULT_C_GROWTH
    finite: bool = False

    def __post_init__(self):
        if not self.c:
            raise DataError("empty coefficient list")
        vals = tuple(complex(x) for x in self.c)
        for n, v in enumerate(vals, 1):
            if not cmath.isfinite(v):
                raise DataError(f"c({n}) is not finite")
            if abs(v) > n ** self.c_growth * (1 + 1e-12):
                raise DataError(f"|c({n})| = {abs(v):.3e} exceeds n^{self.c_growth}")
        object.__setattr__(self, "c", vals)
        object.__setattr__(self, "lam", complex(self.lam))

    @classmethod
    def from_dirichlet(cls, a: Sequence, lam, c_growth: float = DEFAULT_C_GROWTH, finite: bool = False) -> "QExpansion":
        """c(n) = a(n) n^lambda."""
        lam_c = complex(lam)
        return cls(tuple(complex(x) * cmath.exp(lam_c * math.log(n)) for n, x in enumerate(a, 1)), lam_c, c_growth, finite)

    @property
    def n_max(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class PeriodPoint:
    z: complex
    value: complex
    n_terms: int
    tail_bound: float


def _tail_bound(N: int, c: float, r: float) -> float:
    """Bound for sum_{n>N} n^c r^n (geometric majorant from n = N+1)."""
    rho = ((N + 2) / (N + 1)) ** c * r
    if rho >= 1:
        return math.inf
    return (N + 1) ** c * r ** (N + 1) / (1 - rho)


def f_point(q: QExpansion, z) -> PeriodPoint:
    """f(z) with the shortest certified truncation."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("z must lie in the upper half-plane")
    if q.finite:
        return PeriodPoint(z, _backend.qseries_sum(q.c, z, q.n_max), q.n_max, 0.0)
    r = math.exp(-2 * math.pi * z.imag)
    partial = 0j
    for N in range(1, q.n_max + 1):
        partial += q.c[N - 1] * cmath.exp(2j * math.pi * N * z)
        bound = _tail_bound(N, q.c_growth, r)
        if bound <= TAIL_RTOL * abs(partial):
            value = _backend.qseries_sum(q.c, z, N)
            return PeriodPoint(z, value, N, bound)
    need = q.n_max
    target = TAIL_RTOL * max(abs(partial), 1e-300)
    while _tail_bound(need, q.c_growth, r) > target and need < 10**7:
        need += 1
    raise InsufficientCoefficientsError(need)


def eval_f(q: QExpansion, z) -> complex:
    return f_point(q, z).value


def power_principal(z: complex, e: complex) -> complex:
    """z^e on the principal branch."""
    return cmath.exp(e * cmath.log(z))


def eval_psi(q: QExpansion, z) -> complex:
    """psi(z) = f(z) - z^{-2 lambda - 1} f(-1/z)."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("z must lie in the upper half-plane")
    return eval_f(q, z) - power_principal(z, -2 * q.lam - 1) * eval_f(q, -1 / z)


def branch_defect(lam, z) -> complex:
    """z^{-2l-1} - (z+1)^{-2l-1} (z/(z+1))^{-2l-1}; zero on the upper half-plane."""
    z = complex(z)
    e = -2 * complex(lam) - 1
    return power_principal(z, e) - power_principal(z + 1, e) * power_principal(z / (z + 1), e)


def three_term_check(q: QExpansion, z, lam=None) -> tuple[complex, float]:
    """(residual, scale) for psi(z) - psi(z+1) - (z+1)^{-2l-1} psi(z/(z+1)).

    ``scale`` is the largest of |f(z)| and the three psi terms.
    """
    z = complex(z)
    if lam is not None and complex(lam) != q.lam:
        q = QExpansion(q.c, complex(lam), q.c_growth, q.finite)
    e = -2 * q.lam - 1
    p0 = eval_psi(q, z)
    p1 = eval_psi(q, z + 1)
    p2 = power_principal(z + 1, e) * eval_psi(q, z / (z + 1))
    scale = max(abs(eval_f(q, z)), abs(p0), abs(p1), abs(p2))
    return p0 - p1 - p2, scale


def three_term_residual(q: QExpansion, lam, z) -> complex:
    return three_term_check(q, z, lam)[0]


def growth_profile(q: QExpansion, ys: Sequence[float] = (0.5, 0.25, 0.125)) -> tuple[list[float], bool]:
    """|f(iy)| along decreasing y and whether it increases monotonically."""
    vals = [abs(eval_f(q, complex(0, y))) for y in ys]
    return vals, all(b > a for a, b in zip(vals, vals[1:]))


def coefficient_root_test(q: QExpansion, start: int | None = None) -> float:
    """max |c(n)|^{1/n} over the upper half of the stored prefix.

    A value near 1 (not exponentially small) means the q-series has radius of
    convergence 1, so f does not continue across the real line.
    """
    n0 = start or max(1, q.n_max // 2)
    best = 0.0
    for n in range(n0, q.n_max + 1):
        v = abs(q.c[n - 1])
        if v > 0:
            best = max(best, math.exp(math.log(v) / n))
    return best
