"""Structural invariants d_l of the h-function expansion and their constraints.

Three independent routes to d_l are provided:

* :func:`structural_invariants` -- Stirling coefficients r_nu from the H
  invariants, exponentiated to V_h and re-expanded in inverse falling
  factorials of z = 1/2 - 2s;
* :func:`recursive_d` -- the universal quadratic forms solved for d_N given d_1;
* :func:`oracle_structural_fit` -- a high-precision numerical fit of
  h_gamma(s) sqrt(2 pi) (4 pi)^{1-2s} = sum_l d_l Gamma(3/2 - 2s - l).
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

import mpmath

from .core import EXACT, GammaFactor, InvariantSet, LFunctionData, compute_invariants, simplify
from .errors import DomainError, IllConditionedError, SpectrumError
from .exact import ExactScalar, GaussianRational, conj
from .specfun import bernoulli_polynomial, gamma_half_integer, generalized_binomial

__all__ = [
    "StructuralSequence",
    "SPoly",
    "QuadraticForm",
    "akn_table",
    "stirling_r",
    "v_coefficients",
    "v_coefficients_multinomial",
    "factorial_series",
    "structural_invariants",
    "oracle_structural_fit",
    "A_coefficient",
    "B_poly",
    "WmTables",
    "wm_tables",
    "s_point",
    "quadratic_form",
    "quadratic_residual",
    "constraint_residual",
    "recursive_d",
    "twist_residue",
    "DEFAULT_L_MAX",
    "DEFAULT_M_MAX",
]

DEFAULT_L_MAX = 8
DEFAULT_M_MAX = 16
FLOAT_RESIDUAL_RTOL = 1e-8


@dataclass(frozen=True)
class StructuralSequence:
    """d_0..d_L with a provenance tag; ``errors`` holds per-l estimates for fits."""

    values: tuple
    provenance: str
    errors: tuple = ()
    flags: tuple = ()

    def __getitem__(self, l):
        return self.values[l]

    def __len__(self):
        return len(self.values)

    @property
    def l_max(self) -> int:
        return len(self.values) - 1


# ---------------------------------------------------------------------------
# exact polynomials in s


class SPoly:
    """Polynomial in s times a fixed power of pi: pi^grade * sum c_k s^k.

    Coefficients are Gaussian rationals, so evaluation at rational s is an
    exact single-graded :class:`ExactScalar`.
    """

    __slots__ = ("grade", "coeffs")

    def __init__(self, coeffs: Sequence, grade=0):
        cs = [GaussianRational.coerce(c) if not isinstance(c, GaussianRational) else c for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.grade = Fraction(grade)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, s):
        if isinstance(s, (int, Fraction, GaussianRational)):
            acc = GaussianRational(0)
            for c in reversed(self.coeffs):
                acc = acc * s + c
            return ExactScalar(acc, self.grade)
        s = complex(s)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * s + complex(c)
        return acc * math.pi ** float(self.grade)

    def __repr__(self):
        return f"SPoly({[str(c) for c in self.coeffs]}, grade={self.grade})"


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _binom_poly(const: Fraction, slope: Fraction, n: int) -> list:
    """Coefficients in s of C(const + slope*s, n)."""
    p = [Fraction(1)]
    for j in range(n):
        p = _poly_mul(p, [const - j, slope])
    f = math.factorial(n)
    return [c / f for c in p]


# ---------------------------------------------------------------------------
# coefficient tables


@lru_cache(maxsize=None)
def _akn_rows(k_max: int) -> tuple:
    base = [Fraction(0)] * (k_max + 1)
    for k in range(3, k_max + 1):
        base[k] = generalized_binomial(Fraction(1, 2), k)
    rows = []
    p = [Fraction(1)] + [Fraction(0)] * k_max
    for _nu in range(k_max // 3 + 1):
        rows.append(tuple(p))
        nxt = [Fraction(0)] * (k_max + 1)
        for a, x in enumerate(p):
            if x:
                for b in range(3, k_max + 1 - a):
                    nxt[a + b] += x * base[b]
        p = nxt
    return tuple(rows)


def akn_table(k_max: int) -> dict:
    """{(k, nu): a_{k,nu}} from (sum_{k>=3} C(1/2,k) x^k)^nu, for k <= k_max."""
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    rows = _akn_rows(k_max)
    return {(k, nu): rows[nu][k] for nu in range(len(rows)) for k in range(k_max + 1)}


def _akn(k: int, nu: int) -> Fraction:
    if k < 3 * nu:
        return Fraction(0)
    return _akn_rows(max(k, 3))[nu][k]


_I_POW = (GaussianRational(1), GaussianRational(0, 1), GaussianRational(-1), GaussianRational(0, -1))


def A_coefficient(nu: int, mu: int, k: int, l: int, h: int) -> ExactScalar:
    """A(nu, mu, k, l, h) as an exact pi-graded Gaussian rational (zero unless 2 | mu+k)."""
    if (mu + k) % 2:
        return ExactScalar(0)
    m2 = (mu + k) // 2
    gamma = gamma_half_integer(m2)  # rational * sqrt(pi); the 1/sqrt(pi) prefactor cancels it
    coeff = (
        GaussianRational(Fraction(1, math.factorial(nu)))
        * GaussianRational(0, -2) ** m2
        * Fraction(-1, 2) ** h
        * Fraction(4) ** (nu - l)
        * _akn(k, nu)
        * _I_POW[(nu + l) % 4]
    )
    return ExactScalar(coeff, nu - l - m2) * gamma * ExactScalar(1, Fraction(-1, 2))


@lru_cache(maxsize=None)
def B_poly(m: int, l: int, h: int) -> SPoly:
    """B_m(s, l, h) as an exact polynomial in s (single pi-grade -(m-h)/2)."""
    R = m - (2 * l + h)
    grade = Fraction(-(m - h), 2)
    if R < 0 or R % 2:
        return SPoly([], grade)
    total = [GaussianRational(0)]
    for nu in range(R + 1):
        for mu in range(R + 1 - nu):
            b = R - nu - mu
            a = A_coefficient(nu, mu, 3 * nu + b, l, h)
            if a.is_zero():
                continue
            g, c = a.single_grade()
            assert g == grade
            p1 = _binom_poly(Fraction(-1, 4) - Fraction(l, 2), Fraction(-1), mu)
            p2 = _binom_poly(Fraction(1, 2) - nu - mu - b - l, Fraction(-2), h)
            prod = _poly_mul(p1, p2)
            if len(prod) > len(total):
                total += [GaussianRational(0)] * (len(prod) - len(total))
            for i, x in enumerate(prod):
                total[i] = total[i] + c * x
    return SPoly(total, grade)


def s_point(M: int) -> Fraction:
    """s_M = 3/4 - M/2."""
    return Fraction(3, 4) - Fraction(M, 2)


class WmTables:
    """All B_m(s, l, h) for m <= m_max, with the W_m(s, alpha) evaluator."""

    def __init__(self, m_max: int):
        if m_max < 0:
            raise ValueError("m_max must be nonnegative")
        self.m_max = m_max
        # eager construction: the table is immutable afterwards
        self.B = {
            (m, l, h): B_poly(m, l, h)
            for m in range(m_max + 1)
            for l in range(m // 2 + 1)
            for h in range(m - 2 * l + 1)
        }

    def W(self, m: int, s, alpha, d: Sequence):
        """W_m(s, alpha) = sum_{2l+h <= m} B_m(s, l, h) d_l alpha^h."""
        exact = all(isinstance(x, (int, Fraction, GaussianRational)) for x in (s, alpha, *d[: m // 2 + 1]))
        acc = ExactScalar(0) if exact else 0j
        for l in range(m // 2 + 1):
            for h in range(m - 2 * l + 1):
                if l >= len(d):
                    raise IndexError(f"d_{l} needed for W_{m}")
                b = self.B[(m, l, h)](s if exact else complex(s))
                if exact:
                    acc = acc + b * ExactScalar(GaussianRational.coerce(d[l]) * Fraction(alpha) ** h)
                else:
                    acc += complex(b) * complex(d[l]) * complex(alpha) ** h
        return acc


_TABLE_LOCK = threading.Lock()
_TABLES: dict = {}


def wm_tables(m_max: int = DEFAULT_M_MAX) -> WmTables:
    with _TABLE_LOCK:
        t = _TABLES.get(m_max)
        if t is None:
            t = _TABLES[m_max] = WmTables(m_max)
    return t


# ---------------------------------------------------------------------------
# the Stirling pipeline


def stirling_r(inv: InvariantSet, nu: int):
    """r_nu = B_{nu+1}(3/2)/2^nu - (1/2){sum_k C(nu+1,k) conj H(k) + (-1)^{nu+1} H(nu+1)}."""
    if nu + 1 not in inv.H:
        raise KeyError(f"H({nu + 1}) missing from the invariant table")
    exact = inv.mode == EXACT
    acc = GaussianRational(0) if exact else 0j
    for k in range(nu + 2):
        hk = inv.H[k]
        acc = acc + math.comb(nu + 1, k) * (conj(hk) if exact else complex(hk).conjugate())
    acc = acc + (-1) ** (nu + 1) * (inv.H[nu + 1] if exact else complex(inv.H[nu + 1]))
    lead = bernoulli_polynomial(nu + 1, Fraction(3, 2)) / Fraction(2) ** nu
    if exact:
        return simplify(lead - acc / 2)
    return float(lead) - acc / 2


def v_coefficients(r_values: Sequence, h_max: int) -> list:
    """V_1..V_{h_max} from exp(sum_nu r_nu/(nu(nu+1)) x^nu) = 1 + sum V_h x^h.

    ``r_values[nu-1]`` is r_nu.  Uses the recurrence n V_n = sum_k k c_k V_{n-k}.
    """
    if len(r_values) < h_max:
        raise ValueError("r_values must cover nu <= h_max")
    c = [0] + [r_values[nu - 1] / (nu * (nu + 1)) for nu in range(1, h_max + 1)]
    V = [Fraction(1)] + [Fraction(0)] * h_max
    for n in range(1, h_max + 1):
        acc = 0
        for k in range(1, n + 1):
            acc = acc + k * c[k] * V[n - k]
        V[n] = simplify(acc / n) if not isinstance(acc, (complex, float)) else acc / n
    return V[1:]


def _compositions(h: int, m: int):
    if m == 1:
        yield (h,)
        return
    for first in range(1, h - m + 2):
        for rest in _compositions(h - first, m - 1):
            yield (first,) + rest


def v_coefficients_multinomial(r_values: Sequence, h_max: int) -> list:
    """Same as :func:`v_coefficients` by the explicit sum over compositions of h."""
    out = []
    for h in range(1, h_max + 1):
        total = Fraction(0)
        for m in range(1, h + 1):
            inner = Fraction(0)
            for comp in _compositions(h, m):
                p = Fraction(1)
                for nu in comp:
                    p = p * r_values[nu - 1] / (nu * (nu + 1))
                inner = inner + p
            total = total + inner / math.factorial(m)
        out.append(simplify(total) if not isinstance(total, (complex, float)) else total)
    return out


@lru_cache(maxsize=None)
def _factorial_series(L: int) -> dict:
    K = L  # series in u = 1/z kept through u^L

    def inv_falling(l: int) -> list:
        # 1/(z(z-1)...(z-l+1)) = u^l prod_{i<l} 1/(1 - i u)
        p = [Fraction(1)] + [Fraction(0)] * K
        for i in range(l):
            q = [Fraction(0)] * (K + 1)
            for a in range(K + 1):
                q[a] = p[a] + (i * q[a - 1] if a else 0)
            p = q
        return [p[a - l] if a >= l else Fraction(0) for a in range(K + 1)]

    def inv_s_power(h: int) -> list:
        # s = (1 - 2z)/4... 1/s^h = (-4/(2z))^h (1 - 1/(2z))^{-h} = (-2u)^h sum_j C(h+j-1, j) (u/2)^j
        out = [Fraction(0)] * (K + 1)
        for j in range(K + 1 - h):
            out[h + j] = Fraction(-2) ** h * math.comb(h + j - 1, j) / Fraction(2) ** j
        return out

    falling = {l: inv_falling(l) for l in range(1, L + 1)}
    A = {}
    for h in range(1, L + 1):
        rem = inv_s_power(h)
        for l in range(1, L + 1):
            if l < h:
                A[(h, l)] = Fraction(0)
                continue
            A[(h, l)] = rem[l]
            f = falling[l]
            rem = [rem[a] - A[(h, l)] * f[a] for a in range(K + 1)]
    return A


def factorial_series(h_max: int, l_max: int) -> dict:
    """{(h, l): A_{h,l}} with 1/s^h = sum_{l>=h} A_{h,l} / (z)_l,  z = 1/2 - 2s."""
    if not 1 <= h_max <= l_max:
        raise ValueError("need 1 <= h_max <= l_max")
    full = _factorial_series(l_max)
    return {(h, l): full[(h, l)] for h in range(1, h_max + 1) for l in range(1, l_max + 1)}


def _require_normalized(inv: InvariantSet) -> None:
    if inv.mode == EXACT:
        ok = inv.d == 2 and inv.q.is_one() and inv.theta == 0
    else:
        ok = abs(inv.d - 2) < 1e-9 and abs(inv.q - 1) < 1e-9 and abs(inv.theta) < 1e-9
    if not ok:
        raise DomainError(f"structural invariants need normalized degree-2 conductor-1 data (d={inv.d}, q={inv.q}, theta={inv.theta})")


def structural_invariants(source, l_max: int = DEFAULT_L_MAX) -> StructuralSequence:
    """d_0..d_{l_max} from the H invariants (exact when the data are exact)."""
    if isinstance(source, LFunctionData):
        source = source.gamma
    inv = compute_invariants(source, l_max + 1) if isinstance(source, GammaFactor) else source
    _require_normalized(inv)
    if l_max == 0:
        return StructuralSequence((Fraction(1),), "pipeline")
    r = [stirling_r(inv, nu) for nu in range(1, l_max + 1)]
    V = v_coefficients(r, l_max)
    A = _factorial_series(l_max)
    d = [Fraction(1)]
    for l in range(1, l_max + 1):
        acc = 0
        for h in range(1, l + 1):
            acc = acc + A[(h, l)] * V[h - 1]
        d.append(simplify(acc) if inv.mode == EXACT else complex(acc))
    return StructuralSequence(tuple(d), "pipeline")


# ---------------------------------------------------------------------------
# numerical oracle


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, GaussianRational):
        return mpmath.mpc(_mp(x.re), _mp(x.im))
    if isinstance(x, int):
        return mpmath.mpf(x)
    return mpmath.mpmathify(x)


def _mp_pos(x):
    """A positive exact or float real as an mpf."""
    from .core import PowerProduct

    if isinstance(x, PowerProduct):
        v = mpmath.pi ** _mp(x.pi_exp)
        for p, e in x.primes.items():
            v *= mpmath.mpf(p) ** _mp(e)
        return v
    return _mp(x)


def _mp_h_times_norm(g: GammaFactor, s):
    """h_gamma(s) sqrt(2 pi) (4 pi)^{1-2s} / Gamma(3/2 - 2s) at working precision."""
    Q = _mp_pos(g.Q)
    logv = (1 - 2 * s) * mpmath.log(Q) - g.r * mpmath.log(2 * mpmath.pi)
    for lam, mu in g.factors:
        lam = _mp(lam)
        mu = _mp(mu) if not isinstance(mu, complex) else mpmath.mpc(mu.real, mu.imag)
        logv += 2j * mpmath.im(mu) * mpmath.log(lam)
        logv += mpmath.loggamma(lam * (1 - s) + mpmath.conj(mu)) + mpmath.loggamma(1 - lam * s - mu)
    logv += mpmath.log(mpmath.sqrt(2 * mpmath.pi)) + (1 - 2 * s) * mpmath.log(4 * mpmath.pi)
    logv -= mpmath.loggamma(mpmath.mpf(3) / 2 - 2 * s)
    return mpmath.exp(logv)


def _falling(z, l: int):
    p = mpmath.mpf(1)
    for i in range(l):
        p *= z - i
    return p


def _extrapolate(values, ws, idx):
    n = len(idx)
    M = mpmath.matrix([[1 / ws[i] ** k for k in range(n)] for i in idx])
    c = mpmath.lu_solve(M, mpmath.matrix([values[i] for i in idx]))
    return c[0]


def oracle_structural_fit(
    gamma: GammaFactor,
    l_max: int = 4,
    T: float = 20.0,
    sigma0: float = -1.0,
    points: int = 15,
    dps: int = 50,
    strict: bool = False,
) -> StructuralSequence:
    """Fit d_l from h_gamma on the ray s = sigma0 + i t, t in [T, 4T].

    The samples are t_i = T 4^{i/(points-1)} (so T, 2T and 4T are included for
    odd ``points``).  For each l the remainder
    e_l(z) = (G(z) - sum_{j<l} d_j/(z)_j) (z)_l is extrapolated to |z| = oo by
    a polynomial in 1/(z-l); the spread against a fit on every other point is
    the error estimate.
    """
    if isinstance(gamma, LFunctionData):
        gamma = gamma.gamma
    if T < 10:
        raise ValueError("T must be at least 10")
    if points < 3:
        raise ValueError("need at least 3 sample points")
    with mpmath.workdps(dps):
        ts = [mpmath.mpf(T) * mpmath.mpf(4) ** (mpmath.mpf(i) / (points - 1)) for i in range(points)]
        ss = [mpmath.mpc(sigma0, t) for t in ts]
        zs = [mpmath.mpf(1) / 2 - 2 * s for s in ss]
        Gs = [_mp_h_times_norm(gamma, s) for s in ss]
        all_idx = list(range(points))
        half_idx = list(range(0, points, 2))
        d_hat = []
        errors = []
        flags = []
        for l in range(l_max + 1):
            e = []
            for G, z in zip(Gs, zs):
                partial = sum((d_hat[j] / _falling(z, j) for j in range(l)), mpmath.mpf(0))
                e.append((G - partial) * _falling(z, l))
            ws = [z - l for z in zs]
            full = _extrapolate(e, ws, all_idx)
            coarse = _extrapolate(e, ws, half_idx)
            d_hat.append(full)
            spread = abs(full - coarse)
            rel = spread / abs(full) if full != 0 else spread
            errors.append(float(rel))
            if rel > 0.1:
                flags.append(l)
        values = tuple(complex(v) for v in d_hat)
    if flags and strict:
        raise IllConditionedError(f"oracle spread above 10% for l in {flags}")
    return StructuralSequence(values, "oracle", tuple(errors), tuple(flags))


# ---------------------------------------------------------------------------
# quadratic forms


@dataclass(frozen=True)
class QuadraticForm:
    """Q_N(X) = sum_{l+h<=N} alpha_{l,h} X_l X_h, normalized so alpha_{0,N} + alpha_{N,0} = 1."""

    N: int
    alpha: dict
    raw: dict
    normalizer: ExactScalar

    def __call__(self, d: Sequence):
        exact = all(isinstance(x, (int, Fraction, GaussianRational)) for x in d[: self.N + 1])
        acc = Fraction(0) if exact else 0j
        for (l, h), a in self.alpha.items():
            acc = acc + a * d[l] * d[h] if exact else acc + float(a) * complex(d[l]) * complex(d[h])
        return simplify(acc) if exact else acc

    def terms(self, d: Sequence) -> list:
        return [float(a) * complex(d[l]) * complex(d[h]) for (l, h), a in self.alpha.items()]


@lru_cache(maxsize=None)
def quadratic_form(N: int) -> QuadraticForm:
    """Normalized coefficients alpha_{l,h} = (-2 pi i)^{-h} B_{2N-h}(s_{2N}, l, h) / normalizer."""
    if N < 2:
        raise DomainError("quadratic forms are defined for N >= 2")
    s = s_point(2 * N)
    raw = {}
    for l in range(N + 1):
        for h in range(N - l + 1):
            b = B_poly(2 * N - h, l, h)(s)
            raw[(l, h)] = ExactScalar(GaussianRational(0, -2) ** (-h), -h) * b
    normalizer = ExactScalar(GaussianRational(0, -4) ** (-N), -N) * (1 + (-1) ** N * math.comb(2 * N - 1, N))
    alpha = {}
    for key, v in raw.items():
        q = v / normalizer
        if q.is_zero():
            alpha[key] = Fraction(0)
            continue
        g, c = q.single_grade()
        if g != 0 or not c.is_real():
            raise ArithmeticError(f"alpha{key} is not a real rational: grade {g}, value {c}")
        alpha[key] = c.re
    return QuadraticForm(N, alpha, raw, normalizer)


def quadratic_residual(N: int, d: Sequence):
    """(value, scale): Q_N(d) and the largest |term| (scale 0 for exact zero)."""
    Q = quadratic_form(N)
    val = Q(d)
    scale = max(abs(t) for t in Q.terms(d))
    return val, scale


def constraint_residual(d: Sequence, M: int, p: int, mode: str = EXACT):
    """sum_{h} sum_{l} (-2 pi i)^{-h} B_{M-h}(s_M, l, p+h-M) d_l d_h.

    Exact mode returns an :class:`ExactScalar`; float mode a complex number.
    """
    if M < 1 or not 1 <= p <= 2 * M:
        raise IndexError(f"need M >= 1 and 1 <= p <= 2M, got M={M}, p={p}")
    if len(d) <= M:
        raise IndexError(f"d must cover l <= {M}")
    sM = s_point(M)
    exact = mode == EXACT
    acc = ExactScalar(0) if exact else 0j
    h_lo = max(M - p, 0)
    h_hi = (2 * M - p) // 2  # floor(M - p/2)
    for h in range(h_lo, h_hi + 1):
        l_hi = (2 * (M - h) - p) // 2
        pref = ExactScalar(GaussianRational(0, -2) ** (-h), -h)
        for l in range(l_hi + 1):
            b = B_poly(M - h, l, p + h - M)
            if exact:
                acc = acc + pref * b(sM) * ExactScalar(GaussianRational.coerce(d[l]) * GaussianRational.coerce(d[h]))
            else:
                acc += complex(pref) * complex(b(sM)) * complex(d[l]) * complex(d[h])
    return acc


def recursive_d(d1, l_max: int) -> StructuralSequence:
    """d_0 = 1, d_1 given, d_N from Q_N(d_0..d_N) = 0 for N = 2..l_max."""
    if l_max < 1:
        raise ValueError("l_max must be at least 1")
    exact = isinstance(d1, (int, Fraction, GaussianRational))
    d = [Fraction(1), simplify(d1) if exact else complex(d1)]
    for N in range(2, l_max + 1):
        Q = quadratic_form(N)
        rest = Fraction(0) if exact else 0j
        for (l, h), a in Q.alpha.items():
            if (l, h) in ((0, N), (N, 0)):
                continue
            rest = rest + (a * d[l] * d[h] if exact else float(a) * d[l] * d[h])
        # the d_N coefficient is (alpha_{0,N} + alpha_{N,0}) d_0 = 1
        d.append(simplify(-rest) if exact else -rest)
    return StructuralSequence(tuple(d), "recursion")


# ---------------------------------------------------------------------------
# standard-twist residues


def twist_residue(F: LFunctionData, alpha, l: int, d: Sequence | None = None) -> complex:
    """rho_l(alpha) = e^{i pi/4} a(alpha^2/4)/sqrt(alpha) d_l (-2 pi i alpha)^{-l}."""
    n_alpha = alpha * alpha / 4 if isinstance(alpha, (int, Fraction)) else float(alpha) ** 2 / 4
    if isinstance(n_alpha, Fraction):
        if n_alpha.denominator != 1:
            raise SpectrumError(f"alpha^2/4 = {n_alpha} is not an integer")
        n = int(n_alpha)
    else:
        n = round(n_alpha)
        if abs(n_alpha - n) > 1e-9 * max(1.0, n_alpha):
            raise SpectrumError(f"alpha^2/4 = {n_alpha} is not an integer")
    if n < 1:
        raise SpectrumError("alpha must be positive")
    if n > F.coefficients.n_max:
        raise SpectrumError(f"a({n}) is beyond the stored coefficient prefix")
    a = F.coefficients.value(n)
    if a == 0:
        raise SpectrumError(f"a({n}) = 0, so alpha = {alpha} is not in the spectrum")
    if d is None:
        d = structural_invariants(F.gamma, l).values
    al = float(alpha)
    return complex(math.cos(math.pi / 4), math.sin(math.pi / 4)) * a / math.sqrt(al) * complex(d[l]) * (-2j * math.pi * al) ** (-l)
