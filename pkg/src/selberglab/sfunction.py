"""S-function expansions and h-function evaluation.

S(s) = 2^r prod_j sin(pi(lambda_j s + mu_j)) is expanded as
sum_j a_j e^{i pi nu_j s}; each factor contributes
e^{i pi (lambda s + mu - 1/2)} + e^{-i pi (lambda s + mu - 1/2)}, so in exact
mode every coefficient is a :class:`PhaseSum` of unit exponentials.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .core import EXACT, GammaFactor, compute_invariants
from .errors import PoleError, RangeError, SingularPointError
from .exact import GaussianRational, PhaseSum
from .specfun import log_gamma

__all__ = [
    "SFunctionExpansion",
    "HFunctionHandle",
    "s_expansion",
    "s_product",
    "eval_h",
    "log_h",
    "log_gamma_factor",
    "reflection_residual",
    "r_ratio",
    "DecayReport",
    "decay_diagnostic",
    "IM_S_LIMIT",
]

IM_S_LIMIT = 50.0
FLOAT_MERGE_TOL = 1e-12
NUMERIC_ZERO_TOL = 1e-14
_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SFunctionExpansion:
    """sum_j a_j e^{i pi nu_j s} with strictly increasing frequencies nu_j."""

    terms: tuple
    mode: str
    merges: int = 0

    @property
    def frequencies(self) -> list:
        return [f for f, _ in self.terms]

    @property
    def coefficients(self) -> list:
        return [c for _, c in self.terms]

    @property
    def N(self) -> int:
        return len(self.terms) - 1

    def __call__(self, s) -> complex:
        s = complex(s)
        return sum(complex(c) * cmath.exp(1j * math.pi * float(f) * s) for f, c in self.terms)

    def scale_at(self, s) -> float:
        """sum_j |a_j e^{i pi nu_j s}|, the size against which cancellation is judged."""
        s = complex(s)
        return sum(abs(complex(c)) * math.exp(-math.pi * float(f) * s.imag) for f, c in self.terms)

    def endpoint_coefficients(self):
        return self.terms[0][1], self.terms[-1][1]

    def is_symmetric(self, tol: float = FLOAT_MERGE_TOL) -> bool:
        f = self.frequencies
        if self.mode == EXACT:
            return all(a == -b for a, b in zip(f, reversed(f)))
        return all(abs(a + b) <= tol for a, b in zip(f, reversed(f)))

    def same_terms(self, other: "SFunctionExpansion", tol: float = 1e-12) -> bool:
        if len(self.terms) != len(other.terms):
            return False
        for (f1, c1), (f2, c2) in zip(self.terms, other.terms):
            if self.mode == EXACT and other.mode == EXACT:
                if f1 != f2 or not _phase_equal(c1, c2):
                    return False
            elif abs(float(f1) - float(f2)) > tol or abs(complex(c1) - complex(c2)) > tol * max(1.0, abs(complex(c1))):
                return False
        return True


def _phase_equal(a: PhaseSum, b: PhaseSum) -> bool:
    if a == b:
        return True
    diff = a + (-b)
    return abs(complex(diff)) <= NUMERIC_ZERO_TOL * max(1.0, diff.magnitude_scale())


def s_expansion(g: GammaFactor) -> SFunctionExpansion:
    """Expand 2^r prod sin(pi(lambda_j s + mu_j)) into exponentials."""
    if g.mode == EXACT:
        acc = {Fraction(0): PhaseSum.unit(0, 1)}
        for lam, mu in g.factors:
            w = mu - _HALF
            nxt: dict = {}
            for f, c in acc.items():
                for sign in (1, -1):
                    key = f + sign * lam
                    term = c * PhaseSum.unit(w if sign > 0 else -w, 1)
                    nxt[key] = nxt[key] + term if key in nxt else term
            acc = nxt
        terms = []
        for f in sorted(acc):
            c = acc[f]
            if c.is_zero():
                continue
            # cyclotomic relations are not canonicalised; fall back to a numeric zero test
            if abs(complex(c)) <= NUMERIC_ZERO_TOL * c.magnitude_scale():
                continue
            terms.append((f, c))
        return SFunctionExpansion(tuple(terms), EXACT)

    acc_f: list = [(0.0, 1.0 + 0j)]
    for lam, mu in g.factors:
        w = complex(mu) - 0.5
        e_plus = cmath.exp(1j * math.pi * w)
        e_minus = cmath.exp(-1j * math.pi * w)
        acc_f = [(f + lam, c * e_plus) for f, c in acc_f] + [(f - lam, c * e_minus) for f, c in acc_f]
    acc_f.sort(key=lambda t: t[0])
    merged: list = []
    merges = 0
    for f, c in acc_f:
        if merged and abs(f - merged[-1][0]) <= FLOAT_MERGE_TOL:
            merged[-1] = (merged[-1][0], merged[-1][1] + c)
            merges += 1
        else:
            merged.append((f, c))
    scale = max(abs(c) for _, c in acc_f)
    terms = tuple((f, c) for f, c in merged if abs(c) > NUMERIC_ZERO_TOL * scale * len(acc_f))
    return SFunctionExpansion(terms, g.mode, merges)


def s_product(g: GammaFactor, s) -> complex:
    """2^r prod_j sin(pi(lambda_j s + mu_j)) evaluated directly."""
    s = complex(s)
    out = 1.0 + 0j
    for lam, mu in g.factors:
        out *= 2 * cmath.sin(math.pi * (float(lam) * s + complex(mu)))
    return out


@dataclass(frozen=True)
class HFunctionHandle:
    gamma: GammaFactor
    with_root_number: bool = False


def _check_range(s: complex) -> None:
    if abs(s.imag) > IM_S_LIMIT:
        raise RangeError(f"|Im s| = {abs(s.imag):g} exceeds {IM_S_LIMIT:g}")


def log_h(g: GammaFactor, s) -> complex:
    """log h_gamma(s) (any branch)."""
    s = complex(s)
    _check_range(s)
    logq = math.log(float(g.Q))
    acc = (1 - 2 * s) * logq - g.r * math.log(2 * math.pi)
    for j, (lam, mu) in enumerate(g.factors):
        lam = float(lam)
        mu = complex(mu)
        acc += 2j * mu.imag * math.log(lam)
        try:
            acc += log_gamma(lam * (1 - s) + mu.conjugate()) + log_gamma(1 - lam * s - mu)
        except PoleError as exc:
            raise PoleError(f"factor {j}: {exc}", factor_index=j) from None
    return acc


def eval_h(handle, s) -> complex:
    """h_gamma(s), or h_F(s) = omega_F h_gamma(s) when the handle asks for it."""
    if isinstance(handle, GammaFactor):
        handle = HFunctionHandle(handle)
    val = cmath.exp(log_h(handle.gamma, s))
    if handle.with_root_number:
        val *= complex(compute_invariants(handle.gamma, 2).omega_F)
    return val


def log_gamma_factor(g: GammaFactor, s, conjugate_data: bool = False) -> complex:
    """log of Q^s prod Gamma(lambda_j s + mu_j); with ``conjugate_data`` uses conj(mu_j)."""
    s = complex(s)
    acc = s * math.log(float(g.Q))
    for j, (lam, mu) in enumerate(g.factors):
        mu = complex(mu)
        if conjugate_data:
            mu = mu.conjugate()
        try:
            acc += log_gamma(float(lam) * s + mu)
        except PoleError as exc:
            raise PoleError(f"factor {j}: {exc}", factor_index=j) from None
    return acc


def reflection_residual(g: GammaFactor, s) -> complex:
    """h_gamma(s) S_gamma(s) gamma(s) / (c * conj-gamma(1-s)) - 1,  c = prod lambda_j^{2 i Im mu_j}.

    For self-conjugate data with c = 1 (all virtual and catalog factors) this
    is h S gamma(s)/gamma(1-s) - 1.
    """
    s = complex(s)
    log_c = sum(2j * complex(mu).imag * math.log(float(lam)) for lam, mu in g.factors)
    logv = log_h(g, s) + log_gamma_factor(g, s) - log_gamma_factor(g, 1 - s, conjugate_data=True) - log_c
    return cmath.exp(logv) * s_product(g, s) - 1


def r_ratio(F_exp: SFunctionExpansion, gamma_exp: SFunctionExpansion, s) -> complex:
    """R(s) = S_F(s) / S_gamma(s)."""
    den = gamma_exp(s)
    if abs(den) <= NUMERIC_ZERO_TOL * max(gamma_exp.scale_at(s), 1e-300):
        raise SingularPointError(f"S_gamma vanishes at s = {s}")
    return F_exp(s) / den


@dataclass(frozen=True)
class DecayReport:
    sigma: float
    t: tuple
    log_abs: tuple
    slope: float
    intercept: float
    flag: str
    monotone_fraction: float

    @property
    def decays(self) -> bool:
        return self.flag == "exponential decay"


def decay_diagnostic(F_exp, gamma_exp, sigma: float, t_grid: Sequence[float]) -> DecayReport:
    """Sample log|R(sigma+it) - 1| and fit a straight line in t."""
    ts = [float(t) for t in t_grid]
    if any(b <= a for a, b in zip(ts, ts[1:])) or ts[0] <= 0:
        raise ValueError("t_grid must be positive and increasing")
    logs = []
    for t in ts:
        dev = abs(r_ratio(F_exp, gamma_exp, complex(sigma, t)) - 1)
        logs.append(math.log(dev) if dev > 0 else -math.inf)
    finite = [(t, y) for t, y in zip(ts, logs) if math.isfinite(y)]
    if not finite:
        return DecayReport(sigma, tuple(ts), tuple(logs), -math.inf, -math.inf, "identically 1", 1.0)
    if len(finite) < 2:
        return DecayReport(sigma, tuple(ts), tuple(logs), math.nan, finite[0][1], "insufficient data", 0.0)
    n = len(finite)
    mt = sum(t for t, _ in finite) / n
    my = sum(y for _, y in finite) / n
    sxx = sum((t - mt) ** 2 for t, _ in finite)
    slope = sum((t - mt) * (y - my) for t, y in finite) / sxx
    intercept = my - slope * mt
    drops = sum(1 for (_, a), (_, b) in zip(finite, finite[1:]) if b < a)
    mono = drops / (n - 1)
    flag = "exponential decay" if slope <= -0.1 and mono >= 0.8 else "no decay"
    return DecayReport(sigma, tuple(ts), tuple(logs), slope, intercept, flag, mono)
