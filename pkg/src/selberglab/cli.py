"""Command-line front end: JSON reports over the library.

Exit status: 0 when every requested check passes, 1 when some check fails
(the report lists them under "failures"), 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any

from . import __version__
from .catalog import _float_coefficients, _param, load_entry, parse_gamma_json
from .classifier import classify
from .core import (
    EXACT,
    FLOAT,
    GammaFactor,
    LFunctionData,
    PowerProduct,
    UnitPhase,
    compute_invariants,
    duplicate_factor,
    is_conductor_one,
    is_degree_two,
    normalize,
    to_float,
    validate_normalized,
)
from .errors import SelbergLabError
from .exact import ExactScalar, GaussianRational
from .period import QExpansion, eval_f, eval_psi, three_term_check
from .sfunction import eval_h, reflection_residual, s_expansion
from .structural import oracle_structural_fit, quadratic_form, recursive_d, structural_invariants

__all__ = ["main", "build_parser", "run"]

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# JSON encoding


def jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return x if math.isfinite(x) else str(x)
    if isinstance(x, GaussianRational):
        return {"re": str(x.re), "im": str(x.im)}
    if isinstance(x, complex):
        return {"re": jsonable(x.real), "im": jsonable(x.imag)}
    if isinstance(x, (PowerProduct, UnitPhase)):
        v = complex(x)
        return {"exact": str(x), "value": jsonable(v if isinstance(x, UnitPhase) else v.real)}
    if isinstance(x, ExactScalar):
        return {"graded": {str(g): jsonable(c) for g, c in x.terms.items()}, "value": jsonable(complex(x))}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


def _rel(a, b) -> float:
    a, b = complex(a), complex(b)
    return abs(a - b) / abs(b) if b != 0 else abs(a - b)


# ---------------------------------------------------------------------------
# input handling


def _float_data(F: LFunctionData) -> LFunctionData:
    return LFunctionData(to_float(F.gamma), _float_coefficients(F.coefficients), F.pole_order)


def load_input(source: str, mode: str | None) -> LFunctionData:
    try:
        if source.endswith(".json") or os.path.exists(source):
            with open(source, encoding="utf-8") as fh:
                F = parse_gamma_json(fh.read())
        else:
            F = load_entry(source).data
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from None
    if mode == FLOAT:
        return _float_data(F)
    if mode == EXACT and F.mode != EXACT:
        raise InputError("exact mode requested but the input contains floating-point data")
    return F


def _normalized(F: LFunctionData) -> LFunctionData:
    inv = compute_invariants(F.gamma, 2)
    if not (is_degree_two(inv) and is_conductor_one(inv)):
        raise InputError(f"degree-2 conductor-1 data required (d={inv.d}, q={inv.q})")
    return normalize(F)[0]


def invariants_doc(g: GammaFactor, n_max_H: int = 6) -> dict:
    inv = compute_invariants(g, n_max_H)
    return {
        "provenance": inv.mode,
        "d": inv.d,
        "q": inv.q,
        "omega_F": inv.omega_F,
        "xi": inv.xi,
        "eta": inv.eta,
        "theta": inv.theta,
        "H": {str(k): v for k, v in inv.H.items()},
        "chi": inv.chi,
    }


# ---------------------------------------------------------------------------
# commands


class Report:
    def __init__(self):
        self.result: dict = {}
        self.checks: list = []
        self.tolerances: dict = {}

    def check(self, name: str, passed: bool, detail: Any = "") -> None:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    @property
    def failures(self) -> list:
        return [c["name"] for c in self.checks if not c["passed"]]


def cmd_invariants(args, F: LFunctionData, rep: Report) -> None:
    rep.result["invariants"] = invariants_doc(F.gamma, args.n_h)
    if args.validate:
        for name, ok, detail in validate_normalized(F, args.n_h).checks:
            rep.check(f"normalized:{name}", ok, detail)


def cmd_classify(args, F: LFunctionData, rep: Report) -> None:
    G = _normalized(F)
    c = classify(G)
    rep.result["classification"] = c.as_dict()
    for d in c.diagnostics:
        if d.status != "not verifiable":
            rep.check(d.name, d.passed, d.detail)


def cmd_structural(args, F: LFunctionData, rep: Report) -> None:
    G = _normalized(F)
    rep.tolerances.update({"oracle_rtol": args.oracle_rtol, "T": args.T, "oracle_lmax": args.oracle_lmax})
    pipe = structural_invariants(G.gamma, args.lmax)
    rec = recursive_d(pipe[1], args.lmax) if args.lmax >= 1 else pipe
    L_or = min(args.oracle_lmax, args.lmax)
    orc = oracle_structural_fit(G.gamma, L_or, T=args.T)
    exact = G.mode == EXACT
    rows = []
    for l in range(args.lmax + 1):
        row = {"l": l, "pipeline": pipe[l], "recursion": rec[l]}
        same = pipe[l] == rec[l] if exact else _rel(rec[l], pipe[l]) <= 1e-9
        row["recursion_match"] = same
        rep.check(f"recursion_d{l}", same, "")
        if l <= L_or:
            err = _rel(orc[l], pipe[l])
            row.update({"oracle": orc[l], "oracle_rel_err": err, "oracle_spread": orc.errors[l]})
            rep.check(f"oracle_d{l}", err <= args.oracle_rtol, f"rel err {err:.3e}")
        rows.append(row)
    rep.result["table"] = rows
    rep.result["ill_conditioned"] = list(orc.flags)


def _quadratic_checks(d, Ns, rep: Report, prefix: str = "", rtol: float = 1e-8) -> dict:
    out = {}
    for N in Ns:
        Q = quadratic_form(N)
        val = Q(d)
        if isinstance(val, Fraction):
            ok = val == 0
            out[str(N)] = {"residual": val, "exact": True}
        else:
            scale = max((abs(t) for t in Q.terms(d)), default=0.0)
            ok = abs(val) <= rtol * scale
            out[str(N)] = {"residual": val, "scale": scale, "exact": False}
        rep.check(f"{prefix}Q_{N}", ok, out[str(N)])
    return out


def cmd_verify_quadratic(args, F: LFunctionData, rep: Report) -> None:
    G = _normalized(F)
    Ns = args.N or [2, 3, 4]
    if min(Ns) < 2:
        raise InputError("--N must be at least 2")
    rep.tolerances["float_rtol"] = args.rtol
    d = structural_invariants(G.gamma, max(Ns)).values
    rep.result["d"] = list(d)
    rep.result["residuals"] = _quadratic_checks(d, Ns, rep, rtol=args.rtol)


def cmd_verify_identity(args, F: LFunctionData, rep: Report) -> None:
    g = F.gamma
    rep.tolerances.update({"reflection_tol": args.reflection_tol, "duplication_rtol": args.dup_rtol, "points": args.points, "seed": args.seed})
    rng = random.Random(args.seed)
    worst = 0.0
    for _ in range(args.points):
        s = complex(rng.uniform(-3, 3), rng.choice((-1, 1)) * rng.uniform(1, 20))
        worst = max(worst, abs(reflection_residual(g, s)))
    rep.result["reflection_max"] = worst
    rep.check("reflection", worst <= args.reflection_tol, f"max {worst:.3e}")

    base_inv = compute_invariants(g, 5)
    base_s = s_expansion(g)
    probes = [complex(rng.uniform(-2, 2), rng.uniform(2, 15)) for _ in range(10)]
    base_h = [eval_h(g, s) for s in probes]
    exact = g.mode == EXACT
    deg2 = is_degree_two(base_inv) and is_conductor_one(base_inv)
    base_d = structural_invariants(base_inv, 4).values if deg2 and _theta_zero(base_inv) else None
    for j in range(g.r):
        g2 = duplicate_factor(g, j)
        inv2 = compute_invariants(g2, 5)
        same = True
        for key in ("d", "q", "xi", "chi", "omega_F"):
            a, b = getattr(base_inv, key), getattr(inv2, key)
            same &= (a == b) if exact else _rel(b, a) <= args.dup_rtol
        for n in range(5):
            a, b = base_inv.H[n], inv2.H[n]
            same &= (a == b) if exact else _rel(b, a) <= args.dup_rtol or abs(complex(a) - complex(b)) <= args.dup_rtol
        rep.check(f"duplicate_{j}:invariants", same, "")
        rep.check(f"duplicate_{j}:s_expansion", s_expansion(g2).same_terms(base_s, args.dup_rtol), "")
        hmax = max(_rel(eval_h(g2, s), h) for s, h in zip(probes, base_h))
        rep.check(f"duplicate_{j}:h_values", hmax <= args.dup_rtol, f"max rel {hmax:.3e}")
        if base_d is not None:
            d2 = structural_invariants(inv2, 4).values
            ok = d2 == base_d if exact else max(_rel(a, b) if b != 0 else abs(complex(a)) for a, b in zip(d2, base_d)) <= args.dup_rtol
            rep.check(f"duplicate_{j}:structural", ok, "")
    if deg2 and validate_normalized(F).passed:
        a0, aN = base_s.endpoint_coefficients()
        target = -complex(base_inv.omega_F)
        ok = abs(complex(a0) - target) <= 1e-12 and abs(complex(aN) - target) <= 1e-12
        rep.result["endpoints"] = [complex(a0), complex(aN)]
        rep.check("endpoint_coefficients", ok, f"-omega_F={target}")


def _theta_zero(inv) -> bool:
    return inv.theta == 0 if inv.mode == EXACT else abs(inv.theta) < 1e-9


def _linspace(a: float, b: float, n: int) -> list[float]:
    return [a] if n == 1 else [a + (b - a) * i / (n - 1) for i in range(n)]


def cmd_period_check(args, F: LFunctionData, rep: Report) -> None:
    G = _normalized(F)
    c = classify(G)
    v = c.virtual
    lam = complex(float(v.mu)) if v.kind == "hecke" else complex(0, float(v.kappa))
    q = QExpansion.from_dirichlet([G.coefficients.value(n) for n in range(1, G.coefficients.n_max + 1)], lam, args.c_growth)
    modular = args.modular if args.modular is not None else G.coefficients.tag == "ramanujan"
    rep.tolerances.update({"rtol": args.rtol, "c_growth": args.c_growth})
    xs = _linspace(args.x_min, args.x_max, args.grid_n)
    ys = _linspace(args.y_min, args.y_max, args.grid_n)
    worst3, worstm = 0.0, 0.0
    for x in xs:
        for y in ys:
            z = complex(x, y)
            r, scale = three_term_check(q, z)
            worst3 = max(worst3, abs(r) / scale)
            if modular:
                worstm = max(worstm, abs(eval_psi(q, z)) / abs(eval_f(q, z)))
    rep.result["lambda"] = lam
    rep.result["three_term_max_rel"] = worst3
    rep.check("three_term", worst3 <= args.rtol, f"max rel {worst3:.3e}")
    if modular:
        rep.result["modularity_max_rel"] = worstm
        rep.check("modularity", worstm <= args.rtol, f"max |psi|/|f| {worstm:.3e}")


def parse_grid(text: str) -> list:
    """'a:b:h' (inclusive) or a comma list; exact when every token is rational."""
    text = text.strip()
    if ":" in text:
        parts = [_param(t) for t in text.split(":")]
        if len(parts) != 3:
            raise InputError("grid must be start:stop:step")
        a, b, h = parts
        if not h > 0:
            raise InputError("grid step must be positive")
        out = []
        k = 0
        while a + k * h <= b + (0 if isinstance(h, Fraction) else 1e-12):
            out.append(a + k * h)
            k += 1
    else:
        out = [_param(t) for t in text.split(",") if t.strip()]
    if not out:
        raise InputError(f"grid {text!r} is empty")
    return out


def _sweep_point(family: str, param, eps, lmax: int, rtol: float) -> dict:
    name = f"hecke({param})" if family == "hecke" else f"maass({eps},{param})"
    F = load_entry(name).data
    inv = compute_invariants(F.gamma, lmax + 1)
    sub = Report()
    d = structural_invariants(inv, lmax).values
    exact = inv.mode == EXACT
    chi = inv.chi
    ok1 = d[1] == chi - Fraction(1, 8) if exact else abs(complex(d[1]) - (complex(chi) - 0.125)) <= 1e-12 * max(1.0, abs(complex(chi)))
    sub.check("d1_identity", ok1, "")
    quad = _quadratic_checks(d, [N for N in (2, 3, 4) if N <= lmax], sub, rtol=rtol)
    return {"name": name, "chi": chi, "d": list(d), "quadratic": quad, "checks": sub.checks}


def cmd_sweep(args, rep: Report) -> None:
    params = parse_grid(args.grid)
    if not params:
        raise InputError("empty grid")
    eps_list = [0, 1] if args.eps is None else [args.eps]
    jobs = [(p, e) for p in params for e in (eps_list if args.family == "maass" else [None])]
    rep.tolerances["float_rtol"] = args.rtol
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as ex:
        rows = list(ex.map(lambda pe: _sweep_point(args.family, pe[0], pe[1], args.lmax, args.rtol), jobs))
    rows.sort(key=lambda r: r["name"])
    for r in rows:
        for c in r["checks"]:
            rep.check(f"{r['name']}:{c['name']}", c["passed"], c["detail"])
    rep.result["rows"] = rows


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[EXACT, FLOAT], default=None, help="arithmetic mode (default: $SELBERGLAB_MODE or the input's own)")
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    common.add_argument("--canonical", action="store_true", help="omit the timestamp for byte-stable reports")

    p = argparse.ArgumentParser(prog="selberglab", description="Invariants and checks for degree-2 functional equations.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(name: str, help_: str):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input", help="catalog name (zeta_squared, ramanujan_normalized, hecke(mu), maass(eps,kappa)) or JSON path")
        return sp

    sp = with_input("invariants", "degree, conductor, root number, H and chi")
    sp.add_argument("--n-h", type=int, default=6, help="largest H(n) to report")
    sp.add_argument("--validate", action="store_true", help="also run the normalization checks")

    with_input("classify", "normalize and classify")

    sp = with_input("structural", "structural invariants: pipeline, recursion and numerical oracle")
    sp.add_argument("--lmax", type=int, default=8)
    sp.add_argument("--oracle-lmax", type=int, default=4)
    sp.add_argument("--T", type=float, default=20.0)
    sp.add_argument("--oracle-rtol", type=float, default=1e-4)

    sp = with_input("verify-quadratic", "quadratic-form residuals Q_N(d)")
    sp.add_argument("--N", type=int, action="append", help="may repeat; default 2, 3, 4")
    sp.add_argument("--rtol", type=float, default=1e-8)

    sp = with_input("verify-identity", "reflection identity and duplication invariance")
    sp.add_argument("--points", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--reflection-tol", type=float, default=1e-10)
    sp.add_argument("--dup-rtol", type=float, default=1e-10)

    sp = with_input("period-check", "three-term relation and modularity on a grid")
    sp.add_argument("--grid-n", type=int, default=5)
    sp.add_argument("--x-min", type=float, default=-0.4)
    sp.add_argument("--x-max", type=float, default=0.4)
    sp.add_argument("--y-min", type=float, default=0.3)
    sp.add_argument("--y-max", type=float, default=2.0)
    sp.add_argument("--rtol", type=float, default=1e-9)
    sp.add_argument("--c-growth", type=float, default=6.0)
    sp.add_argument("--modular", dest="modular", action="store_true", default=None)
    sp.add_argument("--no-modular", dest="modular", action="store_false")

    sp = sub.add_parser("sweep", parents=[common], help="batch invariants and constraints over a family")
    sp.add_argument("--family", choices=["hecke", "maass"], required=True)
    sp.add_argument("--grid", required=True, help="start:stop:step or comma list of mu (hecke) / kappa (maass)")
    sp.add_argument("--eps", type=int, choices=[0, 1], default=None, help="maass parity (default both)")
    sp.add_argument("--lmax", type=int, default=4)
    sp.add_argument("--rtol", type=float, default=1e-8)
    sp.add_argument("--jobs", type=int, default=1)
    return p


_COMMANDS = {
    "invariants": cmd_invariants,
    "classify": cmd_classify,
    "structural": cmd_structural,
    "verify-quadratic": cmd_verify_quadratic,
    "verify-identity": cmd_verify_identity,
    "period-check": cmd_period_check,
}


def _emit(doc: dict, path: str | None) -> None:
    text = json.dumps(jsonable(doc), sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    """Parse ``argv``, execute, and return (exit status, report document)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_INPUT
        return (EXIT_OK if code == 0 else EXIT_INPUT), {}
    mode = args.mode or os.environ.get("SELBERGLAB_MODE") or None
    doc: dict = {"command": args.command, "version": __version__, "mode": mode or "auto"}
    if not args.canonical:
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    rep = Report()
    try:
        if mode not in (None, EXACT, FLOAT):
            raise InputError(f"SELBERGLAB_MODE must be exact or float, got {mode!r}")
        if args.command == "sweep":
            doc["input"] = {"family": args.family, "grid": args.grid}
            cmd_sweep(args, rep)
        else:
            doc["input"] = args.input
            F = load_input(args.input, mode)
            doc["mode"] = F.mode
            _COMMANDS[args.command](args, F, rep)
    except (InputError, SelbergLabError, ValueError) as exc:
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        path = getattr(exc, "path", None)
        if path:
            doc["error"]["path"] = path
        doc["status"] = "input-error"
        _emit(doc, args.output)
        return EXIT_INPUT, doc
    doc.update(result=rep.result, checks=rep.checks, failures=rep.failures, tolerances=rep.tolerances)
    doc["status"] = "pass" if not rep.failures else "fail"
    _emit(doc, args.output)
    return (EXIT_OK if not rep.failures else EXIT_FAIL), doc


def main(argv: list[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
