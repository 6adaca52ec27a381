"""Virtual gamma-factors and the weight/eigenvalue classification of degree-2 data."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .core import (
    EXACT,
    GammaFactor,
    LFunctionData,
    PowerProduct,
    UnitPhase,
    compute_invariants,
    is_conductor_one,
    is_degree_two,
    make_gamma,
    validate_normalized,
)
from .errors import DomainError, SelbergLabError
from .exact import GaussianRational
from .sfunction import eval_h

__all__ = [
    "VirtualGammaFactor",
    "Diagnostic",
    "Classification",
    "associate_virtual",
    "virtual_to_gamma",
    "classify",
    "HOLO",
    "ZETA2",
    "MAASS",
    "CHI_ZERO_TOL",
    "K_TOL",
    "H_MATCH_RTOL",
]

HOLO = "HoloCuspForm"
ZETA2 = "ZetaSquared"
MAASS = "MaassForm"

CHI_ZERO_TOL = 1e-9
K_TOL = 1e-6
OMEGA_TOL = 1e-9
H_MATCH_RTOL = 1e-9
_H_PROBES = (complex(0.3, 5.0), complex(-1.0, 2.5), complex(2.0, -7.0), complex(0.5, 12.0))


def _exact_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _sqrt(x):
    if isinstance(x, Fraction):
        r = _exact_sqrt(x)
        if r is not None:
            return r
    return math.sqrt(float(x))


@dataclass(frozen=True)
class VirtualGammaFactor:
    """Hecke (2 pi)^{-s} Gamma(s + mu) or Maass pi^{-s} Gamma((s+eps+i kappa)/2) Gamma((s+eps-i kappa)/2)."""

    kind: str
    mu: Any = None
    epsilon: int | None = None
    kappa: Any = None

    def __post_init__(self):
        if self.kind == "hecke":
            if self.mu is None or not self.mu > 0:
                raise DomainError("Hecke virtual factor needs mu > 0")
        elif self.kind == "maass":
            if self.epsilon not in (0, 1):
                raise DomainError("Maass parity must be 0 or 1")
            if self.kappa is None or self.kappa < 0:
                raise DomainError("Maass virtual factor needs kappa >= 0")
        else:
            raise DomainError(f"unknown virtual factor kind {self.kind!r}")

    @classmethod
    def hecke(cls, mu) -> "VirtualGammaFactor":
        return cls("hecke", mu=mu)

    @classmethod
    def maass(cls, epsilon: int, kappa) -> "VirtualGammaFactor":
        return cls("maass", epsilon=epsilon, kappa=kappa)

    @property
    def chi(self):
        """2 mu^2 (Hecke) or -2 kappa^2 (Maass)."""
        if self.kind == "hecke":
            return 2 * self.mu * self.mu
        return -2 * self.kappa * self.kappa

    def as_dict(self) -> dict:
        if self.kind == "hecke":
            return {"kind": "hecke", "mu": str(self.mu)}
        return {"kind": "maass", "epsilon": self.epsilon, "kappa": str(self.kappa)}


@dataclass(frozen=True)
class Diagnostic:
    name: str
    status: str  # "pass" | "fail" | "not verifiable"
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class Classification:
    verdict: str
    chi: Any
    omega_F: Any
    virtual: VirtualGammaFactor
    k: Any = None
    eigenvalue: Any = None
    parity: int | None = None
    diagnostics: list = field(default_factory=list)

    def diagnostic(self, name: str) -> Diagnostic:
        for d in self.diagnostics:
            if d.name == name:
                return d
        raise KeyError(name)

    @property
    def failures(self) -> list:
        return [d.name for d in self.diagnostics if d.status == "fail"]

    @property
    def consistent(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "chi": str(self.chi),
            "omega_F": str(self.omega_F),
            "virtual": self.virtual.as_dict(),
            "diagnostics": [{"name": d.name, "status": d.status, "detail": d.detail} for d in self.diagnostics],
        }
        if self.verdict == HOLO:
            out["k"] = str(self.k)
        if self.verdict == MAASS:
            out["eigenvalue"] = str(self.eigenvalue)
            out["parity"] = self.parity
        return out


def _omega_sign(omega) -> int | None:
    """+1 / -1 when omega is (numerically) real unit, else None."""
    if isinstance(omega, UnitPhase):
        if omega == 1:
            return 1
        if omega == -1:
            return -1
        return None
    w = complex(omega)
    if abs(w - 1) <= OMEGA_TOL:
        return 1
    if abs(w + 1) <= OMEGA_TOL:
        return -1
    return None


def _real_chi(chi):
    if isinstance(chi, GaussianRational):
        if chi.im != 0:
            raise DomainError(f"chi = {chi} is not real")
        return chi.re
    if isinstance(chi, (int, Fraction)):
        return Fraction(chi)
    c = complex(chi)
    if abs(c.imag) > CHI_ZERO_TOL * max(1.0, abs(c)):
        raise DomainError(f"chi = {chi} is not real")
    return c.real


def associate_virtual(chi, omega_F) -> VirtualGammaFactor:
    """The virtual factor with the same chi; the Maass parity comes from omega_F."""
    chi = _real_chi(chi)
    if abs(abs(complex(omega_F)) - 1) > OMEGA_TOL:
        raise DomainError(f"|omega_F| = {abs(complex(omega_F))} is not 1")
    if chi > 0:
        return VirtualGammaFactor.hecke(_sqrt(chi / 2))
    sign = _omega_sign(omega_F)
    if sign is None:
        raise DomainError(f"omega_F = {omega_F} must be +1 or -1 to fix the Maass parity")
    return VirtualGammaFactor.maass((1 - sign) // 2, _sqrt(-chi / 2))


def virtual_to_gamma(v: VirtualGammaFactor, omega=None) -> GammaFactor:
    """The gamma-factor of ``v``; omega defaults to 1."""
    if omega is None:
        omega = 1
    if v.kind == "hecke":
        if isinstance(v.mu, Fraction):
            return make_gamma(PowerProduct.from_parts(1, -1, -1), omega, [(1, v.mu)])
        return make_gamma(1 / (2 * math.pi), complex(omega), [(1.0, complex(v.mu))])
    eps, kap = v.epsilon, v.kappa
    if isinstance(kap, (int, Fraction)):
        half = Fraction(1, 2)
        mu_p = GaussianRational(half * eps, half * kap)
        return make_gamma(PowerProduct.from_parts(1, 0, -1), omega, [(half, mu_p), (half, mu_p.conjugate())])
    mu_p = complex(eps / 2, float(kap) / 2)
    return make_gamma(1 / math.pi, complex(omega), [(0.5, mu_p), (0.5, mu_p.conjugate())])


def _h_match(g: GammaFactor, g_virtual: GammaFactor) -> Diagnostic:
    worst = 0.0
    try:
        for s in _H_PROBES:
            a, b = eval_h(g, s), eval_h(g_virtual, s)
            worst = max(worst, abs(a - b) / abs(b))
    except SelbergLabError as exc:
        return Diagnostic("h_function_match", "fail", str(exc))
    return Diagnostic("h_function_match", "pass" if worst <= H_MATCH_RTOL else "fail", f"max rel diff {worst:.3e}")


def classify(F) -> Classification:
    """Verdict from (chi_F, omega_F) plus consistency diagnostics.

    Raises DomainError for data that are not degree 2, conductor 1 with
    theta = 0 (run :func:`normalize` first).  Validation failures and
    inconsistencies are reported as diagnostics, never raised.
    """
    data = F if isinstance(F, LFunctionData) else None
    g = F.gamma if data is not None else F
    inv = compute_invariants(g, 6)
    if not is_degree_two(inv):
        raise DomainError(f"degree {inv.d} is not 2")
    if not is_conductor_one(inv):
        raise DomainError(f"conductor {inv.q} is not 1")
    theta_ok = inv.theta == 0 if inv.mode == EXACT else abs(inv.theta) < 1e-9
    if not theta_ok:
        raise DomainError(f"theta = {inv.theta}; normalize the data first")
    chi = _real_chi(inv.chi)
    omega_F = inv.omega_F
    if abs(abs(complex(omega_F)) - 1) > OMEGA_TOL:
        raise DomainError(f"|omega_F| = {abs(complex(omega_F))} is not 1")
    sign = _omega_sign(omega_F)
    exact = isinstance(chi, Fraction)

    diags: list = []
    if data is not None:
        rep = validate_normalized(data)
        for name, ok, detail in rep.checks:
            diags.append(Diagnostic(f"normalized:{name}", "pass" if ok else "fail", detail))

    is_zero = chi == 0 if exact else abs(chi) < CHI_ZERO_TOL
    if chi > 0 and not is_zero:
        v = VirtualGammaFactor.hecke(_sqrt(chi / 2))
        k = 1 + _sqrt(2 * chi)
        k_int = round(float(k))
        even = abs(float(k) - k_int) <= K_TOL and k_int % 2 == 0 and k_int >= 12
        diags.append(Diagnostic("k_even_at_least_12", "pass" if even else "fail", f"k={k}"))
        if abs(float(k) - k_int) <= K_TOL and k_int % 2 == 0:
            want = (-1) ** (k_int // 2)
            ok = sign == want
            diags.append(Diagnostic("omega_matches_weight", "pass" if ok else "fail", f"omega_F={omega_F}, (-1)^(k/2)={want}"))
        else:
            diags.append(Diagnostic("omega_matches_weight", "fail", f"(-1)^(k/2) undefined for k={k}"))
        out = Classification(HOLO, chi, omega_F, v, k=k, diagnostics=diags)
        g_virtual = virtual_to_gamma(v, omega_F)
    else:
        if sign is None:
            raise DomainError(f"omega_F = {omega_F} must be +1 or -1 when chi <= 0")
        kappa = Fraction(0) if (is_zero and exact) else (0.0 if is_zero else _sqrt(-chi / 2))
        eps = (1 - sign) // 2
        v = VirtualGammaFactor.maass(eps, kappa)
        g_virtual = virtual_to_gamma(v, omega_F)
        if is_zero:
            diags.append(Diagnostic("omega_zeta_squared", "pass" if sign == 1 else "fail", f"omega_F={omega_F}"))
            out = Classification(ZETA2, chi, omega_F, v, diagnostics=diags)
        else:
            eig = (1 - 2 * chi) / 4
            diags.append(Diagnostic("omega_matches_parity", "pass" if sign == (-1) ** eps else "fail", f"omega_F={omega_F}, eps={eps}"))
            diags.append(Diagnostic("eigenvalue_at_least_quarter", "pass" if eig >= Fraction(1, 4) else "fail", f"eigenvalue={eig}"))
            diags.append(Diagnostic("eigenvalue_in_spectrum", "not verifiable", "Laplace spectrum membership cannot be checked from the data"))
            out = Classification(MAASS, chi, omega_F, v, eigenvalue=eig, parity=eps, diagnostics=diags)
    out.diagnostics.append(_h_match(g, g_virtual))
    return out
