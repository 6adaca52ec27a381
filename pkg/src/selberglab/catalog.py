"""Built-in exemplar data and the JSON document format for functional-equation data."""
from __future__ import annotations

import cmath
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from .classifier import HOLO, MAASS, ZETA2, Classification, classify
from .core import (
    EXACT,
    Coefficients,
    GammaFactor,
    InvariantSet,
    LFunctionData,
    PowerProduct,
    UnitPhase,
    compute_invariants,
    make_gamma,
)
from .errors import DataError, DomainError, SchemaError
from .exact import GaussianRational, parse_rational
from .period import delta_tau, divisor_counts

__all__ = [
    "CatalogEntry",
    "load_entry",
    "catalog_names",
    "normalized_catalog_names",
    "synthetic_decay_pair",
    "parse_gamma_json",
    "document_to_data",
    "data_to_document",
    "serialize",
    "DEFAULT_N_MAX",
]

DEFAULT_N_MAX = 400
_HALF = Fraction(1, 2)
_Q_HECKE = PowerProduct.from_parts(1, -1, -1)  # (2 pi)^{-1}
_Q_MAASS = PowerProduct.from_parts(1, 0, -1)  # pi^{-1}


@lru_cache(maxsize=8)
def _tau(n_max: int) -> tuple:
    return tuple(delta_tau(n_max))


@lru_cache(maxsize=8)
def _divisors(n_max: int) -> tuple:
    return tuple(divisor_counts(n_max))


def _generated(kind: str, n_max: int) -> Coefficients:
    if kind == "zeta_squared":
        return Coefficients(_divisors(n_max), Fraction(0), "zeta_squared")
    if kind == "ramanujan":
        return Coefficients(_tau(n_max), Fraction(-11, 2), "ramanujan")
    raise ValueError(kind)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    data: LFunctionData
    expected_chi: Any
    expected_xi: Any
    expected_omega_F: Any
    expected_verdict: str
    expected_k: Any = None
    expected_eigenvalue: Any = None
    expected_parity: int | None = None

    @property
    def gamma(self) -> GammaFactor:
        return self.data.gamma

    def invariants(self, n_max_H: int = 6) -> InvariantSet:
        return compute_invariants(self.data.gamma, n_max_H)

    def classification(self) -> Classification:
        return classify(self.data)


def _close(a, b, tol=1e-9) -> bool:
    if isinstance(a, (int, Fraction, GaussianRational, UnitPhase)) and isinstance(b, (int, Fraction, GaussianRational, UnitPhase)):
        return a == b
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))


def _self_test(e: CatalogEntry) -> CatalogEntry:
    inv = e.invariants()
    problems = []
    if not _close(inv.chi, e.expected_chi):
        problems.append(f"chi {inv.chi} != {e.expected_chi}")
    if not _close(inv.xi, e.expected_xi):
        problems.append(f"xi {inv.xi} != {e.expected_xi}")
    if not _close(inv.omega_F, e.expected_omega_F):
        problems.append(f"omega_F {inv.omega_F} != {e.expected_omega_F}")
    c = e.classification()
    if c.verdict != e.expected_verdict:
        problems.append(f"verdict {c.verdict} != {e.expected_verdict}")
    elif c.verdict == HOLO and not _close(c.k, e.expected_k):
        problems.append(f"k {c.k} != {e.expected_k}")
    elif c.verdict == MAASS and (not _close(c.eigenvalue, e.expected_eigenvalue) or c.parity != e.expected_parity):
        problems.append(f"eigenvalue/parity {c.eigenvalue}/{c.parity} != {e.expected_eigenvalue}/{e.expected_parity}")
    if problems:
        raise DataError(f"catalog entry {e.name} failed its self-test: " + "; ".join(problems))
    return e


def _param(text: str):
    text = text.strip()
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        v = float(text)
    except ValueError:
        raise DataError(f"malformed parameter {text!r}") from None
    if not math.isfinite(v):
        raise DataError(f"malformed parameter {text!r}")
    return v


def _zeta_squared(n_max: int) -> CatalogEntry:
    g = make_gamma(_Q_MAASS, 1, [(_HALF, 0), (_HALF, 0)])
    data = LFunctionData(g, _generated("zeta_squared", n_max), 2)
    return CatalogEntry("zeta_squared", data, Fraction(0), Fraction(-2), 1, ZETA2)


def _ramanujan(n_max: int) -> CatalogEntry:
    g = make_gamma(_Q_HECKE, 1, [(1, Fraction(11, 2))])
    data = LFunctionData(g, _generated("ramanujan", n_max), 0)
    return CatalogEntry("ramanujan_normalized", data, Fraction(121, 2), Fraction(10), 1, HOLO, expected_k=Fraction(12))


def _hecke(mu) -> CatalogEntry:
    if not mu > 0:
        raise DataError(f"hecke parameter must be positive, got {mu}")
    name = f"hecke({mu})"
    ones = Coefficients((Fraction(1),) if isinstance(mu, Fraction) else (1.0,))
    if isinstance(mu, Fraction):
        omega = UnitPhase.exp_i_pi(1 + mu - _HALF)  # -e^{i pi (mu - 1/2)}
        g = make_gamma(_Q_HECKE, omega, [(1, mu)])
        k = 1 + 2 * mu
    else:
        omega = -cmath.exp(1j * math.pi * (mu - 0.5))
        g = make_gamma(1 / (2 * math.pi), omega, [(1.0, complex(mu))])
        k = 1 + 2 * mu
    data = LFunctionData(g, ones, 0)
    return CatalogEntry(name, data, 2 * mu * mu, 2 * mu - 1, omega, HOLO, expected_k=k)


def _maass(eps: int, kappa) -> CatalogEntry:
    if eps not in (0, 1):
        raise DataError(f"maass parity must be 0 or 1, got {eps}")
    if kappa < 0:
        raise DataError(f"maass kappa must be nonnegative, got {kappa}")
    name = f"maass({eps},{kappa})"
    omega = (-1) ** eps
    if isinstance(kappa, Fraction):
        mu_p = GaussianRational(_HALF * eps, _HALF * kappa)
        g = make_gamma(_Q_MAASS, omega, [(_HALF, mu_p), (_HALF, mu_p.conjugate())])
        ones = Coefficients((Fraction(1),))
    else:
        mu_p = complex(eps / 2, kappa / 2)
        g = make_gamma(1 / math.pi, complex(omega), [(0.5, mu_p), (0.5, mu_p.conjugate())])
        ones = Coefficients((1.0,))
    chi = -2 * kappa * kappa
    data = LFunctionData(g, ones, 0)
    if kappa == 0:
        return CatalogEntry(name, data, chi, 2 * eps - 2, omega, ZETA2)
    eig = (1 - 2 * chi) / 4
    return CatalogEntry(name, data, chi, 2 * eps - 2, omega, MAASS, expected_eigenvalue=eig, expected_parity=eps)


_PARAM_RE = re.compile(r"^\s*(hecke|maass)\s*\((.*)\)\s*$")


def load_entry(name: str, n_max: int = DEFAULT_N_MAX) -> CatalogEntry:
    """Entry by name: zeta_squared, ramanujan_normalized, hecke(mu), maass(eps,kappa)."""
    key = name.strip()
    if key == "zeta_squared":
        return _self_test(_zeta_squared(n_max))
    if key == "ramanujan_normalized":
        return _self_test(_ramanujan(n_max))
    m = _PARAM_RE.match(key)
    if not m:
        raise DataError(f"unknown catalog entry {name!r}")
    args = [a for a in m.group(2).split(",")]
    if m.group(1) == "hecke":
        if len(args) != 1:
            raise DataError("hecke takes one parameter")
        return _self_test(_hecke(_param(args[0])))
    if len(args) != 2:
        raise DataError("maass takes two parameters (eps, kappa)")
    eps = _param(args[0])
    if eps not in (0, 1):
        raise DataError(f"maass parity must be 0 or 1, got {args[0].strip()!r}")
    return _self_test(_maass(int(eps), _param(args[1])))


def catalog_names() -> list[str]:
    return ["zeta_squared", "ramanujan_normalized", "hecke(mu)", "maass(eps,kappa)"]


def normalized_catalog_names() -> list[str]:
    """Fixed entries plus parametric ones whose data satisfy every normalization check."""
    return ["zeta_squared", "ramanujan_normalized", "hecke(11/2)", "hecke(1/2)", "maass(0,2)", "maass(1,3/2)"]


def synthetic_decay_pair() -> tuple[GammaFactor, GammaFactor]:
    """A degree-2 conductor-1 gamma-factor with S_F / S_gamma not constant, and its virtual partner.

    Factors (1/4, 1/2), (3/4, 1/2) with omega = -1 give eta = 0, omega_F = -1 and
    chi = -2/9, matching the Maass virtual factor with eps = 1, kappa = 1/3.
    """
    Q = PowerProduct({2: 1, 3: Fraction(-3, 4)}, -1)
    g = make_gamma(Q, -1, [(Fraction(1, 4), _HALF), (Fraction(3, 4), _HALF)])
    mu_p = GaussianRational(_HALF, Fraction(1, 6))
    v = make_gamma(_Q_MAASS, -1, [(_HALF, mu_p), (_HALF, mu_p.conjugate())])
    return g, v


# ---------------------------------------------------------------------------
# JSON documents


def _fail(path: str, msg: str):
    raise SchemaError(path, msg)


def _num(x, path: str):
    """Rational string / int -> Fraction, float -> float."""
    if isinstance(x, bool):
        _fail(path, "expected a number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            _fail(path, "non-finite number")
        return x
    if isinstance(x, str):
        try:
            return parse_rational(x)
        except (ValueError, ZeroDivisionError) as exc:
            _fail(path, f"not a rational string: {exc}")
    _fail(path, f"expected a rational string or number, got {type(x).__name__}")


def _int(x, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        _fail(path, "expected an integer")
    return x


def _obj(x, path: str, required: tuple, optional: tuple = ()) -> dict:
    if not isinstance(x, dict):
        _fail(path, "expected an object")
    for k in required:
        if k not in x:
            _fail(f"{path}.{k}", "missing field")
    for k in x:
        if k not in required and k not in optional:
            _fail(f"{path}.{k}", "unknown field")
    return x


def _complex(x, path: str):
    _obj(x, path, ("re", "im"))
    re_, im_ = _num(x["re"], f"{path}.re"), _num(x["im"], f"{path}.im")
    if isinstance(re_, Fraction) and isinstance(im_, Fraction):
        return GaussianRational(re_, im_)
    return complex(float(re_), float(im_))


def _parse_q(x, path: str):
    if isinstance(x, (int, float, str)) and not isinstance(x, bool):
        v = _num(x, path)
        if not v > 0:
            _fail(path, "Q must be positive")
        return v if isinstance(v, float) else PowerProduct.rational(v)
    _obj(x, path, (), ("rational", "two_exp", "pi_exp", "primes"))
    r = _num(x.get("rational", "1"), f"{path}.rational")
    if isinstance(r, float):
        _fail(f"{path}.rational", "must be an exact rational string")
    if not r > 0:
        _fail(f"{path}.rational", "must be positive")
    two = _num(x.get("two_exp", 0), f"{path}.two_exp")
    pi = _num(x.get("pi_exp", 0), f"{path}.pi_exp")
    if isinstance(two, float) or isinstance(pi, float):
        _fail(path, "exponents must be exact")
    primes = {}
    for p, e in (x.get("primes") or {}).items():
        try:
            p_int = int(p)
        except ValueError:
            _fail(f"{path}.primes.{p}", "key must be an integer")
        if p_int < 2:
            _fail(f"{path}.primes.{p}", "key must be at least 2")
        e = _num(e, f"{path}.primes.{p}")
        if isinstance(e, float):
            _fail(f"{path}.primes.{p}", "exponent must be exact")
        primes[p_int] = e
    return PowerProduct.from_parts(r, two, pi) * PowerProduct(primes)


def _parse_omega(x, path: str):
    if isinstance(x, dict) and "turn" in x:
        _obj(x, path, ("turn",), ("unit", "logs"))
        u = _complex(x["unit"], f"{path}.unit") if "unit" in x else GaussianRational(1)
        turn = _num(x["turn"], f"{path}.turn")
        logs = {}
        for p, y in (x.get("logs") or {}).items():
            logs[int(p)] = _num(y, f"{path}.logs.{p}")
        if isinstance(u, complex) or isinstance(turn, float) or any(isinstance(y, float) for y in logs.values()):
            _fail(path, "phase form must be exact")
        try:
            return UnitPhase(u, turn, logs)
        except DomainError as exc:
            _fail(f"{path}.unit", str(exc))
    w = _complex(x, path)
    if isinstance(w, GaussianRational):
        if w.norm() != 1:
            _fail(path, "|omega| must be 1")
        return UnitPhase(w)
    if abs(abs(w) - 1) > 1e-12:
        _fail(path, "|omega| must be 1")
    return w


def _parse_coefficients(x, path: str) -> Coefficients:
    _obj(x, path, ("kind",), ("values", "n_max", "exponent"))
    kind = x["kind"]
    if kind in ("zeta_squared", "ramanujan"):
        n_max = _int(x.get("n_max", DEFAULT_N_MAX), f"{path}.n_max")
        if n_max < 1:
            _fail(f"{path}.n_max", "must be at least 1")
        if "values" in x or "exponent" in x:
            _fail(path, f"kind {kind!r} generates its own values")
        return _generated(kind, n_max)
    if kind != "list":
        _fail(f"{path}.kind", f"unknown kind {kind!r}")
    vals = x.get("values")
    if not isinstance(vals, list) or not vals:
        _fail(f"{path}.values", "expected a non-empty list")
    out = []
    for i, v in enumerate(vals):
        p = f"{path}.values[{i}]"
        out.append(_complex(v, p) if isinstance(v, dict) else _num(v, p))
    out = [v.re if isinstance(v, GaussianRational) and v.is_real() else v for v in out]
    if "n_max" in x and _int(x["n_max"], f"{path}.n_max") != len(out):
        _fail(f"{path}.n_max", "does not match the number of values")
    exponent = Fraction(0)
    if "exponent" in x:
        e = x["exponent"]
        exponent = _complex(e, f"{path}.exponent") if isinstance(e, dict) else _num(e, f"{path}.exponent")
        if isinstance(exponent, GaussianRational) and exponent.is_real():
            exponent = exponent.re
    return Coefficients(tuple(out), exponent, "list")


def document_to_data(doc: Any, mode: str | None = None) -> LFunctionData:
    """Validate a decoded JSON document and build the data."""
    _obj(doc, "$", ("Q", "omega", "factors"), ("coefficients", "pole_order"))
    Q = _parse_q(doc["Q"], "$.Q")
    omega = _parse_omega(doc["omega"], "$.omega")
    facs = doc["factors"]
    if not isinstance(facs, list) or not facs:
        _fail("$.factors", "expected a non-empty list")
    factors = []
    for j, f in enumerate(facs):
        p = f"$.factors[{j}]"
        _obj(f, p, ("lambda", "mu"))
        lam = _num(f["lambda"], f"{p}.lambda")
        if not lam > 0:
            _fail(f"{p}.lambda", "lambda must be positive")
        mu = _complex(f["mu"], f"{p}.mu")
        if (mu.re if isinstance(mu, GaussianRational) else mu.real) < 0:
            _fail(f"{p}.mu.re", "Re mu must be nonnegative")
        factors.append((lam, mu))
    coeffs = _parse_coefficients(doc["coefficients"], "$.coefficients") if "coefficients" in doc else Coefficients((Fraction(1),))
    pole = _int(doc.get("pole_order", 0), "$.pole_order")
    if pole < 0:
        _fail("$.pole_order", "must be nonnegative")
    try:
        g = make_gamma(Q, omega, factors, mode=mode)
    except DomainError as exc:
        _fail("$", str(exc))
    if g.mode != EXACT or mode == "float":
        coeffs = _float_coefficients(coeffs)
    return LFunctionData(g, coeffs, pole)


def _to_float(v):
    if isinstance(v, GaussianRational):
        return complex(v)
    if isinstance(v, Fraction):
        return float(v)
    return v


def _float_coefficients(c: Coefficients) -> Coefficients:
    if c.tag != "list":
        return c
    return Coefficients(tuple(_to_float(v) for v in c.values), _to_float(c.exponent), c.tag)


def parse_gamma_json(text: str, mode: str | None = None) -> LFunctionData:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    return document_to_data(doc, mode)


def _rat(x: Fraction) -> str:
    return str(Fraction(x))


def _num_out(x):
    if isinstance(x, (int, Fraction)):
        return _rat(x)
    return float(x)


def _complex_out(x) -> dict:
    if isinstance(x, GaussianRational):
        return {"re": _rat(x.re), "im": _rat(x.im)}
    if isinstance(x, (int, Fraction)):
        return {"re": _rat(x), "im": "0"}
    x = complex(x)
    return {"re": x.real, "im": x.imag}


def _q_out(Q):
    if not isinstance(Q, PowerProduct):
        return float(Q)
    parts = Q.to_parts()
    if parts is not None:
        r, two, pi = parts
        return {"rational": _rat(r), "two_exp": two, "pi_exp": pi}
    primes = {str(p): _rat(e) for p, e in Q.primes.items()}
    return {"rational": "1", "two_exp": 0, "pi_exp": _rat(Q.pi_exp) if Q.pi_exp.denominator != 1 else int(Q.pi_exp), "primes": primes}


def _omega_out(w):
    if isinstance(w, UnitPhase):
        g = w.as_gaussian()
        if g is not None:
            return _complex_out(g)
        out = {"turn": _rat(w.turn), "unit": _complex_out(w.gaussian)}
        if w.logs:
            out["logs"] = {str(p): _rat(y) for p, y in w.logs.items()}
        return out
    return _complex_out(w)


def data_to_document(F: LFunctionData) -> dict:
    g = F.gamma
    c = F.coefficients
    if c.tag in ("zeta_squared", "ramanujan"):
        coeffs = {"kind": c.tag, "n_max": c.n_max}
    else:
        coeffs = {
            "kind": "list",
            "n_max": c.n_max,
            "values": [_complex_out(v) if isinstance(v, (GaussianRational, complex)) else _num_out(v) for v in c.values],
        }
        if c.exponent != 0:
            coeffs["exponent"] = _complex_out(c.exponent)
    return {
        "Q": _q_out(g.Q),
        "omega": _omega_out(g.omega),
        "factors": [{"lambda": _num_out(l), "mu": _complex_out(m)} for l, m in g.factors],
        "coefficients": coeffs,
        "pole_order": F.pole_order,
    }


def serialize(F: LFunctionData) -> str:
    """Canonical JSON text (sorted keys, two-space indent)."""
    return json.dumps(data_to_document(F), sort_keys=True, indent=2) + "\n"
