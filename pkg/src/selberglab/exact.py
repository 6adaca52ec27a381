"""Exact scalar types.

``GaussianRational``
    p/q + i r/s with arbitrary-precision rationals.
``ExactScalar``
    a finite sum of Gaussian rationals times powers of pi; grades may be
    half-integers, which is how sqrt(pi) is carried.
``PhaseSum``
    a finite sum of integer multiples of exp(i*pi*w) with w Gaussian rational,
    used for the coefficients of S-function expansions.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussianRational",
    "ExactScalar",
    "PhaseSum",
    "as_fraction",
    "is_exact",
    "to_complex",
    "conj",
    "real_part",
    "imag_part",
    "parse_rational",
]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction (floats are rejected)."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if isinstance(text, str):
        s = text.strip()
        if "." in s or "e" in s.lower():
            raise ValueError(f"not a rational string: {text!r}")
        return Fraction(s)
    raise ValueError(f"not a rational: {text!r}")


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, GaussianRational) and x.im == 0:
        return x.re
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational, ExactScalar))


def to_complex(x) -> complex:
    return complex(x)


def conj(x):
    if isinstance(x, (int, Fraction, float)):
        return x
    return x.conjugate()


def real_part(x):
    if isinstance(x, (int, Fraction, float)):
        return x
    return x.real


def imag_part(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(0)
    if isinstance(x, float):
        return 0.0
    return x.imag


class GaussianRational:
    """An exact complex number re + i*im with rational parts."""

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        self._re = re if isinstance(re, Fraction) else Fraction(re)
        self._im = im if isinstance(im, Fraction) else Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {x!r} to GaussianRational")

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    real = re
    imag = im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self._re, -self._im)

    def is_real(self) -> bool:
        return self._im == 0

    def norm(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    def __complex__(self):
        return complex(float(self._re), float(self._im))

    def __float__(self):
        if self._im:
            raise TypeError("non-real GaussianRational has no float value")
        return float(self._re)

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Fraction)):
            return self._im == 0 and self._re == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __repr__(self):
        return f"GaussianRational({self._re}, {self._im})"

    def __str__(self):
        if self._im == 0:
            return str(self._re)
        sign = "+" if self._im >= 0 else "-"
        return f"{self._re}{sign}{abs(self._im)}i"

    def __neg__(self):
        return GaussianRational(-self._re, -self._im)

    def __pos__(self):
        return self

    def _other(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        return GaussianRational(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        return GaussianRational(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other - complex(self)
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        return GaussianRational(
            self._re * o._re - self._im * o._im, self._re * o._im + self._im * o._re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return self * GaussianRational(o._re / n, -o._im / n)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other / complex(self)
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return complex(self) ** n
        if n < 0:
            return GaussianRational(1) / (self ** (-n))
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


I = GaussianRational(0, 1)


class ExactScalar:
    """Finite sum of Gaussian-rational coefficients times pi**grade.

    Grades are Fractions; a half-integer grade records a sqrt(pi) factor.
    Terms with equal grade combine; distinct grades stay separate, which is
    sound because pi is transcendental.
    """

    __slots__ = ("_terms",)

    def __init__(self, coeff=0, grade=0):
        if isinstance(coeff, dict):
            items = coeff.items()
        else:
            items = [(grade, coeff)]
        terms = {}
        for g, c in items:
            g = Fraction(g)
            c = GaussianRational.coerce(c)
            if c:
                terms[g] = terms.get(g, GaussianRational(0)) + c
        self._terms = tuple(sorted((g, c) for g, c in terms.items() if c))

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        return cls(x, 0)

    @classmethod
    def pi_power(cls, grade) -> "ExactScalar":
        return cls(1, grade)

    @property
    def terms(self):
        return dict(self._terms)

    def grades(self):
        return [g for g, _ in self._terms]

    def component(self, grade) -> GaussianRational:
        return dict(self._terms).get(Fraction(grade), GaussianRational(0))

    @property
    def has_half_grade(self) -> bool:
        return any(g.denominator != 1 for g, _ in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_real(self) -> bool:
        return all(c.is_real() for _, c in self._terms)

    def single_grade(self):
        """Return (grade, coefficient) when exactly one grade is present."""
        if len(self._terms) != 1:
            raise ValueError(f"not single-graded: {self}")
        return self._terms[0]

    def conjugate(self) -> "ExactScalar":
        return ExactScalar({g: c.conjugate() for g, c in self._terms})

    def __complex__(self):
        total = 0j
        for g, c in self._terms:
            total += complex(c) * math.pi ** float(g)
        return total

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == ExactScalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        return f"ExactScalar({dict(self._terms)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for g, c in self._terms:
            parts.append(f"({c})" if g == 0 else f"({c})*pi^({g})")
        return " + ".join(parts)

    def __neg__(self):
        return ExactScalar({g: -c for g, c in self._terms})

    def __add__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) + other
        o = ExactScalar.coerce(other)
        merged = dict(self._terms)
        for g, c in o._terms:
            merged[g] = merged.get(g, GaussianRational(0)) + c
        return ExactScalar(merged)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-ExactScalar.coerce(other) if not isinstance(other, (float, complex)) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) * other
        o = ExactScalar.coerce(other)
        out = {}
        for g1, c1 in self._terms:
            for g2, c2 in o._terms:
                g = g1 + g2
                out[g] = out.get(g, GaussianRational(0)) + c1 * c2
        return ExactScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) / other
        o = ExactScalar.coerce(other)
        g, c = o.single_grade()
        return ExactScalar({g1 - g: c1 / c for g1, c1 in self._terms})

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("ExactScalar powers must be integers")
        if n < 0:
            g, c = self.single_grade()
            return ExactScalar(c ** n, g * n)
        result = ExactScalar(1)
        for _ in range(n):
            result = result * self
        return result


def _reduce_phase(w: GaussianRational, mult: int):
    """Canonical (w, mult) with 0 <= Re(w) < 1, using exp(i*pi) = -1."""
    re = w.re
    shift = math.floor(re)
    re -= shift
    if shift % 2:
        mult = -mult
    return GaussianRational(re, w.im), mult


class PhaseSum:
    """Exact value sum_k m_k * exp(i*pi*w_k), m_k integers, w_k Gaussian rational."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc = {}
        for w, m in (terms or {}).items() if isinstance(terms, dict) else (terms or ()):
            w, m = _reduce_phase(GaussianRational.coerce(w), m)
            acc[w] = acc.get(w, 0) + m
        self._terms = tuple(sorted(((w, m) for w, m in acc.items() if m), key=lambda t: (t[0].re, t[0].im)))

    @classmethod
    def unit(cls, w, mult: int = 1) -> "PhaseSum":
        return cls({GaussianRational.coerce(w): mult})

    @classmethod
    def from_unit(cls, u) -> "PhaseSum":
        """Represent one of 1, -1, i, -i exactly."""
        u = GaussianRational.coerce(u)
        table = {
            GaussianRational(1): (0, 1),
            GaussianRational(-1): (0, -1),
            GaussianRational(0, 1): (Fraction(1, 2), 1),
            GaussianRational(0, -1): (Fraction(1, 2), -1),
        }
        if u not in table:
            raise ValueError(f"{u} is not a fourth root of unity")
        w, m = table[u]
        return cls.unit(w, m)

    @property
    def terms(self):
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def magnitude_scale(self) -> float:
        return sum(abs(m) * math.exp(-math.pi * float(w.im)) for w, m in self._terms)

    def __complex__(self):
        total = 0j
        for w, m in self._terms:
            total += m * cmath.exp(1j * math.pi * complex(w))
        return total

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, PhaseSum):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            try:
                return self == PhaseSum.from_unit(other)
            except ValueError:
                return NotImplemented
        return NotImplemented

    def __hash__(self):
        return hash(self._terms)

    def __neg__(self):
        return PhaseSum({w: -m for w, m in self._terms})

    def __add__(self, other):
        if not isinstance(other, PhaseSum):
            return NotImplemented
        merged = {}
        for w, m in self._terms + other._terms:
            merged[w] = merged.get(w, 0) + m
        return PhaseSum(merged)

    def __mul__(self, other):
        if not isinstance(other, PhaseSum):
            return NotImplemented
        out = {}
        for w1, m1 in self._terms:
            for w2, m2 in other._terms:
                w, m = _reduce_phase(w1 + w2, m1 * m2)
                out[w] = out.get(w, 0) + m
        return PhaseSum(out)

    def __repr__(self):
        return f"PhaseSum({[(str(w), m) for w, m in self._terms]})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{m}*e^(i*pi*({w}))" for w, m in self._terms)
