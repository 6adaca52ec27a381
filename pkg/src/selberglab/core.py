"""Gamma-factor data, basic invariants, normalization and representation changes.

Exact mode keeps every quantity symbolic: ``Q`` and the conductor are
:class:`PowerProduct` values (products of prime powers and a power of pi with
rational exponents), root numbers are :class:`UnitPhase` values, and the
gamma data are Fractions / Gaussian rationals.  Float mode uses Python floats
and complex numbers throughout.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import DataError, DomainError
from .exact import GaussianRational, parse_rational
from .specfun import bernoulli_polynomial

__all__ = [
    "EXACT",
    "FLOAT",
    "FLOAT_RTOL",
    "PowerProduct",
    "UnitPhase",
    "GammaFactor",
    "Coefficients",
    "LFunctionData",
    "InvariantSet",
    "NormalizationCertificate",
    "ValidationReport",
    "make_gamma",
    "compute_invariants",
    "normalize",
    "validate_normalized",
    "duplicate_factor",
    "to_float",
    "is_conductor_one",
    "is_degree_two",
    "simplify",
]

EXACT = "exact"
FLOAT = "float"
FLOAT_RTOL = 1e-9
CONJ_KEY_TOL = 1e-10

_TRIAL_LIMIT = 1_000_000


def simplify(x):
    """Collapse a real GaussianRational to a Fraction; leave anything else alone."""
    if isinstance(x, GaussianRational) and x.im == 0:
        return x.re
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def _factor_int(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n and p <= _TRIAL_LIMIT:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        # prime, or a composite beyond the trial limit kept as an opaque base
        out[n] = out.get(n, 0) + 1
    return out


def _factor_fraction(x: Fraction) -> dict[int, int]:
    if x <= 0:
        raise DomainError(f"expected a positive rational, got {x}")
    out = dict(_factor_int(x.numerator))
    for p, e in _factor_int(x.denominator).items():
        out[p] = out.get(p, 0) - e
    return {p: e for p, e in out.items() if e}


class PowerProduct:
    """Exact positive real  prod_p p^{e_p} * pi^b  with rational exponents."""

    __slots__ = ("_primes", "_pi")

    def __init__(self, primes: dict | None = None, pi_exp=0):
        clean = {}
        for p, e in (primes or {}).items():
            e = Fraction(e)
            if e and p != 1:
                clean[int(p)] = clean.get(int(p), Fraction(0)) + e
        self._primes = tuple(sorted((p, e) for p, e in clean.items() if e))
        self._pi = Fraction(pi_exp)

    @classmethod
    def from_parts(cls, rational=1, two_exp=0, pi_exp=0) -> "PowerProduct":
        r = Fraction(rational)
        primes = {p: Fraction(e) for p, e in _factor_fraction(r).items()}
        primes[2] = primes.get(2, Fraction(0)) + Fraction(two_exp)
        return cls(primes, pi_exp)

    @classmethod
    def rational(cls, x) -> "PowerProduct":
        return cls.from_parts(x)

    @property
    def pi_exp(self) -> Fraction:
        return self._pi

    @property
    def primes(self) -> dict:
        return dict(self._primes)

    def is_one(self) -> bool:
        return not self._primes and self._pi == 0

    def to_parts(self):
        """(odd rational, two_exp, pi_exp) when all exponents are integers, else None."""
        if self._pi.denominator != 1:
            return None
        r = Fraction(1)
        two = 0
        for p, e in self._primes:
            if e.denominator != 1:
                return None
            if p == 2:
                two = int(e)
            else:
                r *= Fraction(p) ** int(e)
        return r, two, int(self._pi)

    def __float__(self):
        return math.exp(self.log())

    def log(self) -> float:
        v = float(self._pi) * math.log(math.pi)
        for p, e in self._primes:
            v += float(e) * math.log(p)
        return v

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PowerProduct.rational(other)
        if not isinstance(other, PowerProduct):
            return NotImplemented
        merged = dict(self._primes)
        for p, e in other._primes:
            merged[p] = merged.get(p, Fraction(0)) + e
        return PowerProduct(merged, self._pi + other._pi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PowerProduct.rational(other)
        return self * other ** -1

    def __pow__(self, k):
        k = Fraction(k)
        return PowerProduct({p: e * k for p, e in self._primes}, self._pi * k)

    def __eq__(self, other):
        if isinstance(other, PowerProduct):
            return self._primes == other._primes and self._pi == other._pi
        if isinstance(other, (int, Fraction)) and other > 0:
            return self == PowerProduct.rational(other)
        return NotImplemented

    def __hash__(self):
        return hash((self._primes, self._pi))

    def __repr__(self):
        return f"PowerProduct({dict(self._primes)!r}, pi_exp={self._pi})"

    def __str__(self):
        parts = [f"{p}^{e}" if e != 1 else str(p) for p, e in self._primes]
        if self._pi:
            parts.append(f"pi^{self._pi}" if self._pi != 1 else "pi")
        return "*".join(parts) or "1"


_QUARTER = {
    GaussianRational(1): 0,
    GaussianRational(0, 1): 1,
    GaussianRational(-1): 2,
    GaussianRational(0, -1): 3,
}


class UnitPhase:
    """Exact unit complex number  u * e^{i pi r} * prod_p p^{i y_p}.

    ``u`` is a Gaussian rational of norm 1 rotated into the open first
    quadrant (or equal to 1), ``r`` lies in [0, 2), the ``y_p`` are rational.
    """

    __slots__ = ("_u", "_r", "_logs")

    def __init__(self, u=1, turn=0, logs: dict | None = None):
        u = GaussianRational.coerce(u) if not isinstance(u, GaussianRational) else u
        if u.norm() != 1:
            raise DomainError(f"{u} does not have modulus 1")
        r = Fraction(turn)
        # rotate u by powers of i into {1} or the open first quadrant
        for _ in range(4):
            if u == 1 or (u.re > 0 and u.im > 0):
                break
            u = u * GaussianRational(0, -1)
            r += Fraction(1, 2)
        if u in _QUARTER:
            r += Fraction(_QUARTER[u], 2)
            u = GaussianRational(1)
        r = r - 2 * math.floor(r / 2)
        clean = {}
        for p, y in (logs or {}).items():
            y = Fraction(y)
            if y and p != 1:
                clean[int(p)] = clean.get(int(p), Fraction(0)) + y
        self._u = u
        self._r = r
        self._logs = tuple(sorted((p, y) for p, y in clean.items() if y))

    @classmethod
    def one(cls) -> "UnitPhase":
        return cls()

    @classmethod
    def exp_i_pi(cls, r) -> "UnitPhase":
        """e^{i pi r} for rational r."""
        return cls(1, r)

    @classmethod
    def rational_power(cls, base: Fraction, y) -> "UnitPhase":
        """base^{i y} for positive rational base and rational y."""
        y = Fraction(y)
        return cls(1, 0, {p: e * y for p, e in _factor_fraction(Fraction(base)).items()})

    @property
    def turn(self) -> Fraction:
        return self._r

    @property
    def gaussian(self) -> GaussianRational:
        return self._u

    @property
    def logs(self) -> dict:
        return dict(self._logs)

    def as_gaussian(self) -> GaussianRational | None:
        """The value as a Gaussian rational when it is one in this representation."""
        if self._logs or (2 * self._r).denominator != 1:
            return None
        return self._u * GaussianRational(0, 1) ** int(2 * self._r)

    def is_one(self) -> bool:
        return self._u == 1 and self._r == 0 and not self._logs

    def conjugate(self) -> "UnitPhase":
        return UnitPhase(self._u.conjugate(), -self._r, {p: -y for p, y in self._logs})

    def __complex__(self):
        phase = math.pi * float(self._r)
        for p, y in self._logs:
            phase += float(y) * math.log(p)
        return complex(self._u) * cmath.exp(1j * phase)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = UnitPhase(other)
        if not isinstance(other, UnitPhase):
            return NotImplemented
        logs = dict(self._logs)
        for p, y in other._logs:
            logs[p] = logs.get(p, Fraction(0)) + y
        return UnitPhase(self._u * other._u, self._r + other._r, logs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = UnitPhase(other)
        return self * other.conjugate()

    def __neg__(self):
        return self * UnitPhase(1, 1)

    def __pow__(self, k: int):
        k = int(k)
        base = self if k >= 0 else self.conjugate()
        out = UnitPhase()
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            try:
                other = UnitPhase(other)
            except DomainError:
                return False
        if isinstance(other, UnitPhase):
            return (self._u, self._r, self._logs) == (other._u, other._r, other._logs)
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self._u, self._r, self._logs))

    def __repr__(self):
        return f"UnitPhase(u={self._u}, turn={self._r}, logs={dict(self._logs)!r})"

    def __str__(self):
        g = self.as_gaussian()
        if g is not None:
            return str(g)
        parts = []
        if self._u != 1:
            parts.append(f"({self._u})")
        if self._r:
            parts.append(f"e^(i*pi*{self._r})")
        parts += [f"{p}^(i*{y})" for p, y in self._logs]
        return "*".join(parts)


# ---------------------------------------------------------------------------
# gamma factors


def _coerce_lambda(x):
    if isinstance(x, float):
        return x
    if isinstance(x, (int, Fraction, str)) and not isinstance(x, bool):
        return parse_rational(x)
    raise DomainError(f"invalid lambda {x!r}")


def _coerce_mu(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction, str)) and not isinstance(x, bool):
        return GaussianRational(parse_rational(x))
    if isinstance(x, tuple) and len(x) == 2:
        re, im = x
        if isinstance(re, float) or isinstance(im, float):
            return complex(float(re), float(im))
        return GaussianRational(parse_rational(re), parse_rational(im))
    if isinstance(x, (float, complex)):
        return complex(x)
    raise DomainError(f"invalid mu {x!r}")


def _coerce_q(x):
    if isinstance(x, PowerProduct):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, (int, Fraction, str)):
        return PowerProduct.rational(parse_rational(x))
    raise DomainError(f"invalid Q {x!r}")


def _coerce_omega(x):
    if isinstance(x, UnitPhase):
        return x
    if isinstance(x, (int, Fraction, GaussianRational)):
        return UnitPhase(x)
    if isinstance(x, (float, complex)):
        return complex(x)
    raise DomainError(f"invalid omega {x!r}")


@dataclass(frozen=True)
class GammaFactor:
    """Q^s prod_j Gamma(lambda_j s + mu_j) together with the root omega."""

    Q: Any
    omega: Any
    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise DomainError("a gamma factor needs at least one Gamma term")
        exact = self._all_exact()
        for j, (lam, mu) in enumerate(self.factors):
            if lam <= 0:
                raise DomainError(f"factors[{j}].lambda must be positive, got {lam}")
            if (mu.re if isinstance(mu, GaussianRational) else mu.real) < 0:
                raise DomainError(f"factors[{j}].mu must have nonnegative real part, got {mu}")
        if isinstance(self.Q, float) and not self.Q > 0:
            raise DomainError(f"Q must be positive, got {self.Q}")
        if not exact:
            if abs(abs(complex(self.omega)) - 1) > 1e-12:
                raise DomainError(f"|omega| must be 1, got {abs(complex(self.omega))}")

    def _all_exact(self) -> bool:
        return (
            isinstance(self.Q, PowerProduct)
            and isinstance(self.omega, UnitPhase)
            and all(isinstance(l, Fraction) and isinstance(m, GaussianRational) for l, m in self.factors)
        )

    @property
    def mode(self) -> str:
        return EXACT if self._all_exact() else FLOAT

    @property
    def r(self) -> int:
        return len(self.factors)

    @property
    def lambdas(self):
        return [l for l, _ in self.factors]

    @property
    def mus(self):
        return [m for _, m in self.factors]

    def q_float(self) -> float:
        return float(self.Q)

    def omega_complex(self) -> complex:
        return complex(self.omega)


def make_gamma(Q, omega, factors: Iterable, mode: str | None = None) -> GammaFactor:
    """Build a GammaFactor from loosely typed input.

    Rationals may be ints, Fractions or "p/q" strings; floats force float
    mode.  ``mu`` may be a (re, im) pair.  ``mode="float"`` converts
    everything to floating point.
    """
    facs = tuple((_coerce_lambda(l), _coerce_mu(m)) for l, m in factors)
    g = GammaFactor(_coerce_q(Q), _coerce_omega(omega), facs)
    if mode == FLOAT or (mode is None and g.mode == FLOAT):
        return to_float(g)
    if mode == EXACT and g.mode != EXACT:
        raise DomainError("exact mode requested but some data are floating point")
    return g


def to_float(g: GammaFactor) -> GammaFactor:
    """Same data in floating point."""
    return GammaFactor(
        float(g.Q),
        complex(g.omega),
        tuple((float(l), complex(m)) for l, m in g.factors),
    )


def duplicate_factor(g: GammaFactor, j: int) -> GammaFactor:
    """Split Gamma(lambda s + mu) with the duplication formula.

    The factor becomes Gamma(lambda s/2 + mu/2) Gamma(lambda s/2 + (mu+1)/2)
    and Q picks up 2^lambda.  The remaining constant 2^{mu-1} pi^{-1/2} only
    changes omega through its phase: omega <- omega * 2^{-2 i Im mu}.
    """
    if not 0 <= j < g.r:
        raise IndexError(f"factor index {j} out of range for r={g.r}")
    lam, mu = g.factors[j]
    half = Fraction(1, 2) if g.mode == EXACT else 0.5
    new = (lam * half, mu * half), (lam * half, (mu + 1) * half)
    factors = g.factors[:j] + new + g.factors[j + 1:]
    if g.mode == EXACT:
        Q = g.Q * PowerProduct({2: lam})
        omega = g.omega * UnitPhase.rational_power(Fraction(2), -2 * mu.im)
    else:
        Q = g.Q * 2.0 ** lam
        omega = g.omega * cmath.exp(-2j * mu.imag * math.log(2.0))
    return GammaFactor(Q, omega, factors)


# ---------------------------------------------------------------------------
# coefficients


@dataclass(frozen=True)
class Coefficients:
    """Dirichlet coefficients a(n) = values[n-1] * n^exponent, n = 1..n_max."""

    values: tuple
    exponent: Any = Fraction(0)
    tag: str = "list"

    def __post_init__(self):
        if not self.values:
            raise DataError("empty coefficient prefix")

    @property
    def n_max(self) -> int:
        return len(self.values)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (int, Fraction, GaussianRational)) for v in self.values) and isinstance(
            self.exponent, (int, Fraction, GaussianRational)
        )

    def value(self, n: int) -> complex:
        """Numerical a(n)."""
        v = complex(self.values[n - 1])
        e = self.exponent
        if e == 0 or n == 1:
            return v
        return v * cmath.exp(complex(e) * math.log(n))

    def first_nonzero(self) -> int:
        for n, v in enumerate(self.values, start=1):
            if v != 0:
                return n
        raise DataError("all coefficients in the prefix vanish")

    def is_real(self, tol: float = 1e-12) -> bool:
        e = self.exponent
        e_im = e.im if isinstance(e, GaussianRational) else (e.imag if isinstance(e, complex) else 0)
        for v in self.values:
            if isinstance(v, GaussianRational):
                if v.im != 0:
                    return False
            elif isinstance(v, complex) and abs(v.imag) > tol * max(1.0, abs(v)):
                return False
        if e_im == 0:
            return True
        if isinstance(e_im, Fraction):
            # n^{i y} is real only at n = 1 or where the value vanishes
            return all(v == 0 for v in self.values[1:])
        return all(abs(self.value(n).imag) <= tol * max(1.0, abs(self.value(n))) for n in range(1, self.n_max + 1))

    def scaled(self, c) -> "Coefficients":
        return Coefficients(tuple(simplify(v * c) for v in self.values), self.exponent, self.tag)

    def twisted(self, y) -> "Coefficients":
        """Multiply a(n) by n^{i y}."""
        if isinstance(y, Fraction) and isinstance(self.exponent, (int, Fraction, GaussianRational)):
            e = GaussianRational.coerce(self.exponent) + GaussianRational(0, y)
            return Coefficients(self.values, simplify(e), self.tag)
        return Coefficients(self.values, complex(self.exponent) + 1j * float(y), self.tag)

    def materialized(self) -> "Coefficients":
        """Float values with the exponent applied."""
        return Coefficients(tuple(self.value(n) for n in range(1, self.n_max + 1)), Fraction(0), self.tag)


@dataclass(frozen=True)
class LFunctionData:
    gamma: GammaFactor
    coefficients: Coefficients
    pole_order: int = 0

    @property
    def mode(self) -> str:
        return self.gamma.mode


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class InvariantSet:
    d: Any
    q: Any
    omega_F: Any
    xi: Any
    eta: Any
    theta: Any
    H: dict
    chi: Any
    mode: str

    @property
    def chi_real(self) -> float:
        c = self.chi
        return float(c.re if isinstance(c, GaussianRational) else getattr(c, "real", c))


def _h_values(g: GammaFactor, n_max: int) -> dict:
    exact = g.mode == EXACT
    out = {}
    for n in range(n_max + 1):
        acc = GaussianRational(0) if exact else 0j
        for lam, mu in g.factors:
            b = bernoulli_polynomial(n, mu)
            acc = acc + b / lam ** (n - 1) if exact else acc + complex(b) / lam ** (n - 1)
        out[n] = simplify(2 * acc) if exact else 2 * acc
    return out


def _omega_F(g: GammaFactor):
    if g.mode == EXACT:
        w = g.omega
        for lam, mu in g.factors:
            if mu.im:
                w = w * UnitPhase.rational_power(lam, -2 * mu.im)
        return w
    w = complex(g.omega)
    for lam, mu in g.factors:
        w *= cmath.exp(-2j * mu.imag * math.log(lam))
    return w


def compute_invariants(g: GammaFactor, n_max_H: int = 6) -> InvariantSet:
    """Degree, conductor, root number, xi/eta/theta, H(0..n_max_H) and chi."""
    n_max_H = max(n_max_H, 2)
    exact = g.mode == EXACT
    H = _h_values(g, n_max_H)
    if exact:
        d = 2 * sum(g.lambdas, Fraction(0))
        q = PowerProduct({2: d}, d) * g.Q ** 2
        for lam in g.lambdas:
            q = q * PowerProduct.rational(lam) ** (2 * lam)
        xi = simplify(2 * sum((m - Fraction(1, 2) for m in g.mus), GaussianRational(0)))
        xi_g = GaussianRational.coerce(xi)
        eta, theta = xi_g.re, xi_g.im / d
        chi = simplify(GaussianRational.coerce(xi) + H[2] + Fraction(2, 3))
    else:
        d = 2 * math.fsum(g.lambdas)
        logq = d * math.log(2 * math.pi) + 2 * math.log(float(g.Q))
        logq += sum(2 * l * math.log(l) for l in g.lambdas)
        q = math.exp(logq)
        xi = 2 * sum(complex(m) - 0.5 for m in g.mus)
        eta, theta = xi.real, xi.imag / d
        chi = xi + H[2] + 2.0 / 3.0
    return InvariantSet(d=d, q=q, omega_F=_omega_F(g), xi=xi, eta=eta, theta=theta, H=H, chi=chi, mode=g.mode)


def is_degree_two(inv: InvariantSet) -> bool:
    if inv.mode == EXACT:
        return inv.d == 2
    return abs(inv.d - 2) <= FLOAT_RTOL * 2


def is_conductor_one(inv: InvariantSet) -> bool:
    if inv.mode == EXACT:
        return inv.q.is_one()
    return abs(inv.q - 1) <= FLOAT_RTOL


# ---------------------------------------------------------------------------
# normalization


@dataclass(frozen=True)
class NormalizationCertificate:
    """Record of what normalize() did: mu_j -> mu_j - i lambda_j shift, a(n) -> scale a(n) n^{i shift}."""

    shift: Any
    scale: Any
    first_index: int
    omega_in: Any
    omega_out: Any

    @property
    def is_identity(self) -> bool:
        return self.shift == 0 and self.scale == 1 and self.omega_in == self.omega_out


def _target_root(xi_real, exact: bool):
    # -e^{i pi xi / 2}
    if exact:
        return UnitPhase.exp_i_pi(1 + Fraction(xi_real) / 2)
    return -cmath.exp(1j * math.pi * float(xi_real) / 2)


def normalize(F: LFunctionData) -> tuple[LFunctionData, NormalizationCertificate]:
    """Shift to theta = 0, scale the first nonzero coefficient to 1 and re-derive omega."""
    g = F.gamma
    inv = compute_invariants(g, 2)
    if not is_degree_two(inv):
        raise DomainError(f"normalization needs degree 2, got {inv.d}")
    if not is_conductor_one(inv):
        raise DomainError(f"normalization needs conductor 1, got {inv.q}")
    exact = g.mode == EXACT
    theta = inv.theta
    n0 = F.coefficients.first_nonzero()

    if exact:
        factors = tuple((l, m - GaussianRational(0, l * theta)) for l, m in g.factors)
    else:
        factors = tuple((l, m - 1j * l * theta) for l, m in g.factors)
    coeffs = F.coefficients.twisted(theta) if theta != 0 else F.coefficients

    lead = coeffs.values[n0 - 1]
    if n0 == 1 or coeffs.exponent == 0:
        scale = 1 / lead if not isinstance(lead, (int, Fraction)) else Fraction(1) / lead
        coeffs = coeffs.scaled(scale)
        if isinstance(scale, GaussianRational):
            scale = simplify(scale)
    else:
        coeffs = coeffs.materialized()
        scale = 1 / coeffs.values[n0 - 1]
        coeffs = coeffs.scaled(scale)

    # omega chosen so that omega_F = -e^{i pi xi/2} holds on the output
    target = _target_root(inv.eta, exact)
    probe = GammaFactor(g.Q, UnitPhase() if exact else 1.0 + 0j, factors)
    omega = target / _omega_F(probe)
    out_gamma = GammaFactor(g.Q, omega, factors)
    cert = NormalizationCertificate(
        shift=theta, scale=scale, first_index=n0, omega_in=g.omega, omega_out=omega
    )
    return LFunctionData(out_gamma, coeffs, F.pole_order), cert


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append((name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(p for _, p, _ in self.checks)

    def failures(self) -> list:
        return [n for n, p, _ in self.checks if not p]

    def as_dict(self) -> dict:
        return {n: {"passed": p, "detail": d} for n, p, d in self.checks}

    def __getitem__(self, name):
        for n, p, _ in self.checks:
            if n == name:
                return p
        raise KeyError(name)


def _self_conjugate(g: GammaFactor) -> bool:
    if g.mode == EXACT:
        a = sorted(((l, m.re, m.im) for l, m in g.factors))
        b = sorted(((l, m.re, -m.im) for l, m in g.factors))
        return a == b
    remaining = [(l, complex(m).conjugate()) for l, m in g.factors]
    for l, m in g.factors:
        for k, (l2, m2) in enumerate(remaining):
            if abs(l - l2) <= CONJ_KEY_TOL and abs(complex(m) - m2) <= CONJ_KEY_TOL:
                del remaining[k]
                break
        else:
            return False
    return True


def validate_normalized(F: LFunctionData, n_max_H: int = 6) -> ValidationReport:
    """Check the properties every normalized degree-2 conductor-1 datum must have."""
    rep = ValidationReport()
    try:
        inv = compute_invariants(F.gamma, n_max_H)
    except Exception as exc:  # diagnostics never throw
        rep.add("invariants", False, str(exc))
        return rep
    exact = inv.mode == EXACT
    xi = inv.xi
    if exact:
        xg = GaussianRational.coerce(xi)
        even = xg.im == 0 and xg.re.denominator == 1 and xg.re.numerator % 2 == 0
        rep.add("theta_zero", inv.theta == 0, f"theta={inv.theta}")
    else:
        nearest = 2 * round(xi.real / 2)
        even = abs(xi - nearest) < 1e-9
        rep.add("theta_zero", abs(inv.theta) < 1e-9, f"theta={inv.theta}")
    rep.add("xi_even_integer", even, f"xi={xi}")

    target = _target_root(inv.eta, exact)
    if exact:
        ok = inv.omega_F == target or abs(complex(inv.omega_F) - complex(target)) < 1e-14
    else:
        ok = abs(complex(inv.omega_F) - complex(target)) < 1e-9
    rep.add("omega_identity", ok, f"omega_F={inv.omega_F}, -e^(i pi xi/2)={target}")

    if exact:
        h_real = all(not isinstance(v, GaussianRational) or v.im == 0 for v in inv.H.values())
    else:
        h_real = all(abs(complex(v).imag) <= 1e-9 * max(1.0, abs(v)) for v in inv.H.values())
    rep.add("H_real", h_real, f"n<={n_max_H}")
    rep.add("coefficients_real", F.coefficients.is_real(), f"n<={F.coefficients.n_max}")
    try:
        n0 = F.coefficients.first_nonzero()
        lead = F.coefficients.value(n0)
        rep.add("first_coefficient_one", abs(lead - 1) < 1e-12, f"a({n0})={lead}")
    except DataError as exc:
        rep.add("first_coefficient_one", False, str(exc))
    rep.add("gamma_self_conjugate", _self_conjugate(F.gamma), "")
    return rep
