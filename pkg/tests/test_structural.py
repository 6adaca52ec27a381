import math
import threading
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from selberglab.catalog import load_entry
from selberglab.core import compute_invariants, duplicate_factor, to_float
from selberglab.errors import DomainError, SpectrumError
from selberglab.exact import ExactScalar, GaussianRational
from selberglab.specfun import generalized_binomial
from selberglab.structural import (
    A_coefficient,
    B_poly,
    akn_table,
    constraint_residual,
    factorial_series,
    oracle_structural_fit,
    quadratic_form,
    recursive_d,
    s_point,
    stirling_r,
    structural_invariants,
    twist_residue,
    v_coefficients,
    v_coefficients_multinomial,
    wm_tables,
)

from conftest import HECKE_GRID, MAASS_GRID, rel

half_rats = st.fractions(min_value=Fraction(1, 4), max_value=8, max_denominator=6)


def d_of(name, L=6):
    return structural_invariants(load_entry(name).gamma, L).values


# coefficient tables


def test_akn_examples():
    t = akn_table(12)
    assert t[(0, 0)] == 1
    assert t[(3, 1)] == Fraction(1, 16) == generalized_binomial(Fraction(1, 2), 3)
    assert all(t[(k, nu)] == 0 for (k, nu) in t if k < 3 * nu)


def test_akn_nu2_is_square_of_nu1():
    t = akn_table(12)
    for k in range(6, 13):
        assert t[(k, 2)] == sum(t[(a, 1)] * t[(k - a, 1)] for a in range(3, k - 2))


def test_stirling_r_examples():
    inv = compute_invariants(load_entry("zeta_squared").gamma, 6)
    assert stirling_r(inv, 1) == Fraction(1, 8)
    for name in ("hecke(11/2)", "maass(1,3/2)", "hecke(1/3)"):
        inv = compute_invariants(load_entry(name).gamma, 6)
        assert -stirling_r(inv, 1) == Fraction(13, 24) + inv.xi + inv.H[2]
    for mu in (Fraction(1, 2), Fraction(7, 3), Fraction(11, 2)):
        inv = compute_invariants(load_entry(f"hecke({mu})").gamma, 4)
        assert stirling_r(inv, 1) == -(2 * mu**2 - Fraction(1, 8))


def test_stirling_r_needs_h_table():
    inv = compute_invariants(load_entry("zeta_squared").gamma, 3)
    with pytest.raises(KeyError):
        stirling_r(inv, 3)


def test_v_coefficients_examples():
    r = [Fraction(3, 7), Fraction(-2, 5), Fraction(1, 3), Fraction(5)]
    V = v_coefficients(r, 4)
    assert V[0] == r[0] / 2
    assert V[1] == r[1] / 6 + r[0] ** 2 / 8
    assert v_coefficients([0] * 5, 5) == [0] * 5


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=9), min_size=6, max_size=6))
def test_v_recurrence_matches_multinomial(r):
    assert v_coefficients(r, 6) == v_coefficients_multinomial(r, 6)


def test_factorial_series_examples():
    A = factorial_series(4, 6)
    assert A[(1, 1)] == -2
    assert A[(1, 2)] == -1
    assert all(A[(h, l)] == 0 for h in range(1, 5) for l in range(1, 7) if l < h)


@pytest.mark.parametrize("h", [1, 2, 3])
def test_factorial_series_numeric(h):
    L = 6
    A = factorial_series(h, L)

    def residual(z):
        s = (Fraction(1, 2) - z) / 2
        lhs = 1 / s**h
        rhs = Fraction(0)
        fall = Fraction(1)
        for l in range(1, L + 1):
            fall *= z - (l - 1)
            rhs += A[(h, l)] / fall
        return abs(float(lhs - rhs))

    r50, r100, r200 = residual(Fraction(50)), residual(Fraction(100)), residual(Fraction(200))
    # the remainder is O(z^{-(L+1)})
    assert r100 / r50 < 2.0 ** -(L + 1) * 1.5
    assert r200 / r100 < 2.0 ** -(L + 1) * 1.5


def test_A_coefficient_grade_and_zero_parity():
    assert A_coefficient(0, 0, 0, 0, 0) == ExactScalar(1)
    assert A_coefficient(1, 1, 2, 0, 0).is_zero()
    g, _ = A_coefficient(1, 0, 4, 1, 0).single_grade()
    assert g == 1 - 1 - 2


def test_w0_is_one():
    T = wm_tables(4)
    for s in (Fraction(1, 3), Fraction(-5, 2)):
        for alpha in (1, 3):
            assert T.W(0, s, alpha, [1]) == ExactScalar(1)
    assert B_poly(0, 0, 0).coeffs == (GaussianRational(1),)


@pytest.mark.parametrize("N", range(1, 7))
def test_b_special_values(N):
    s = s_point(2 * N)
    assert B_poly(N, 0, N)(s) == ExactScalar(Fraction(1, (-2) ** N) * math.comb(2 * N - 1, N))
    assert B_poly(2 * N, N, 0)(s) == ExactScalar(GaussianRational(0, -4) ** -N, -N)


def test_b_single_grade():
    for m in range(0, 9):
        for l in range(m // 2 + 1):
            for h in range(m - 2 * l + 1):
                assert B_poly(m, l, h).grade == Fraction(-(m - h), 2)


def test_tables_thread_safe():
    out = []

    def worker():
        out.append(wm_tables(10))

    ts = [threading.Thread(target=worker) for _ in range(8)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert all(t is out[0] for t in out)


# quadratic forms


@pytest.mark.parametrize("N", range(2, 8))
def test_quadratic_normalization_and_reality(N):
    Q = quadratic_form(N)
    assert Q.alpha[(0, N)] + Q.alpha[(N, 0)] == 1
    assert all(isinstance(a, Fraction) for a in Q.alpha.values())


def test_quadratic_form_rejects_small_n():
    with pytest.raises(DomainError):
        quadratic_form(1)


def test_quadratic_form_known_q2():
    a = quadratic_form(2).alpha
    expect = {(0, 1): Fraction(3, 4), (0, 2): Fraction(3, 4), (1, 0): Fraction(-1, 4), (1, 1): Fraction(-1, 2), (2, 0): Fraction(1, 4)}
    assert {k: v for k, v in a.items() if v} == expect


@pytest.mark.parametrize("N", [2, 3, 4])
def test_quadratic_vanishes_hecke_half(N):
    assert quadratic_form(N)(d_of("hecke(1/2)")) == 0


@pytest.mark.parametrize("name", ["zeta_squared", "ramanujan_normalized", "maass(1,5/2)", "hecke(7/3)"])
def test_quadratic_vanishes_per_grade_raw(name):
    d = d_of(name)
    for N in (2, 3, 4, 5):
        Q = quadratic_form(N)
        total = ExactScalar(0)
        for (l, h), raw in Q.raw.items():
            total = total + raw * ExactScalar(GaussianRational.coerce(d[l] * d[h]))
        assert total.is_zero(), (N, total.grades())


def test_quadratic_float_mode():
    g = to_float(load_entry("maass(0,3)").gamma)
    d = structural_invariants(g, 4).values
    for N in (2, 3, 4):
        Q = quadratic_form(N)
        scale = max(abs(t) for t in Q.terms(d))
        assert abs(Q(d)) <= 1e-8 * scale


def test_constraint_reproduces_quadratic():
    d = d_of("hecke(3/2)")
    for N in (2, 3):
        Q = quadratic_form(N)
        a = constraint_residual(d, 2 * N, 2 * N)
        b = ExactScalar(0)
        for (l, h), raw in Q.raw.items():
            b = b + raw * ExactScalar(GaussianRational.coerce(d[l] * d[h]))
        assert a == b
        # random (non-solution) input too: both paths are the same bilinear form
        x = [Fraction(1), Fraction(2, 3), Fraction(-5, 7), Fraction(1, 9), Fraction(3), Fraction(-1, 2), Fraction(4)]
        a = constraint_residual(x, 2 * N, 2 * N)
        b = ExactScalar(0)
        for (l, h), raw in Q.raw.items():
            b = b + raw * ExactScalar(GaussianRational.coerce(x[l] * x[h]))
        assert a == b
        assert a / Q.normalizer == ExactScalar(Q(x))


def test_constraint_zero_d1():
    d = structural_invariants(load_entry("hecke(1/4)").gamma, 6).values
    assert compute_invariants(load_entry("hecke(1/4)").gamma).chi == Fraction(1, 8)
    assert list(d) == [1, 0, 0, 0, 0, 0, 0]
    assert constraint_residual(d, 2, 2).is_zero()


def test_constraint_all_p_on_zeta2():
    d = d_of("zeta_squared", 6)
    for M in range(1, 7):
        for p in range(1, 2 * M + 1):
            assert constraint_residual(d, M, p).is_zero(), (M, p)


def test_constraint_float_mode():
    d = d_of("maass(1,2)", 6)
    assert abs(constraint_residual([float(x) for x in d], 4, 3, mode="float")) < 1e-9


def test_constraint_index_errors():
    with pytest.raises(IndexError):
        constraint_residual([1, 0], 2, 1)
    with pytest.raises(IndexError):
        constraint_residual([1, 0, 0], 2, 5)


# pipeline values


def test_d1_examples():
    assert d_of("zeta_squared")[1] == Fraction(-1, 8)
    assert d_of("ramanujan_normalized")[1] == Fraction(483, 8)


def test_hecke_eleven_halves_sequence():
    assert d_of("hecke(11/2)", 4) == (1, Fraction(483, 8), Fraction(229425, 128), Fraction(35102025, 1024), Fraction(15269380875, 32768))


def test_maass_kappa_zero_sequence():
    assert d_of("maass(0,0)", 4) == (1, Fraction(-1, 8), Fraction(9, 128), Fraction(-75, 1024), Fraction(3675, 32768))


def test_hecke_half_sequence():
    assert d_of("hecke(1/2)", 4) == (1, Fraction(3, 8), Fraction(-15, 128), Fraction(105, 1024), Fraction(-4725, 32768))


@pytest.mark.parametrize("name", ["hecke(1/2)", "hecke(6)", "maass(0,5)", "maass(1,7/2)"])
def test_d1_is_chi_minus_eighth(name):
    g = load_entry(name).gamma
    assert structural_invariants(g, 2)[1] == compute_invariants(g).chi - Fraction(1, 8)


def test_structural_requires_normalized():
    with pytest.raises(DomainError):
        structural_invariants(load_entry("hecke(1/2)").gamma.__class__(1, 1, ((Fraction(1), GaussianRational(1)),)), 3)


@given(half_rats)
def test_d_polynomial_in_mu(mu0):
    # d_2 is a degree-4 polynomial in mu: 5 exact samples determine it
    mus = [mu0 + k for k in range(5)]
    vals = [d_of(f"hecke({m})", 2)[2] for m in mus]
    target = mu0 + Fraction(17, 3)

    def lagrange(x):
        tot = Fraction(0)
        for i, xi in enumerate(mus):
            term = Fraction(vals[i])
            for j, xj in enumerate(mus):
                if i != j:
                    term *= (x - xj) / (xi - xj)
            tot += term
        return tot

    assert lagrange(target) == d_of(f"hecke({target})", 2)[2]


def test_d_polynomial_fit_float_holdout():
    train = [0.5 + 0.75 * k for k in range(5)]
    held = [0.9, 2.6, 4.3]

    def d2(m):
        return float(d_of(f"hecke({Fraction(m).limit_denominator(100)})", 2)[2])

    vals = [d2(m) for m in train]

    def fit(x):
        tot = 0.0
        for i, xi in enumerate(train):
            term = vals[i]
            for j, xj in enumerate(train):
                if i != j:
                    term *= (x - xj) / (xi - xj)
            tot += term
        return tot

    for m in held:
        exact = d2(m)
        assert abs(fit(m) - exact) <= 1e-9 * max(1.0, abs(exact))


@pytest.mark.parametrize("kap", [Fraction(0), Fraction(3, 2), Fraction(4)])
def test_maass_d_independent_of_parity(kap):
    assert d_of(f"maass(0,{kap})") == d_of(f"maass(1,{kap})")


@given(half_rats)
def test_d_real_and_d0_one(mu):
    d = d_of(f"hecke({mu})", 5)
    assert d[0] == 1
    assert all(isinstance(x, Fraction) for x in d)


@pytest.mark.parametrize("name", ["zeta_squared", "hecke(11/2)", "maass(1,3)"])
def test_d_duplication_invariance(name):
    g = load_entry(name).gamma
    d = structural_invariants(g, 5).values
    for j in range(g.r):
        assert structural_invariants(duplicate_factor(g, j), 5).values == d


# recursion


@pytest.mark.parametrize("chi", [Fraction(0), Fraction(121, 2), Fraction(-8)])
def test_recursion_matches_pipeline(chi):
    name = {Fraction(0): "zeta_squared", Fraction(121, 2): "hecke(11/2)", Fraction(-8): "maass(0,2)"}[chi]
    pipe = structural_invariants(load_entry(name).gamma, 5)
    rec = recursive_d(chi - Fraction(1, 8), 5)
    assert rec.values == pipe.values


def test_recursion_zero_d1():
    assert recursive_d(Fraction(0), 6).values == d_of("hecke(1/4)", 6)


@given(half_rats)
def test_recursion_inverts_d1(mu):
    d = d_of(f"hecke({mu})", 5)
    assert recursive_d(d[1], 5).values == d


def test_recursion_depends_on_d1_only():
    a = recursive_d(Fraction(7, 3), 6).values
    b = recursive_d(Fraction(14, 6), 6).values
    assert a == b


def test_recursion_float():
    d = d_of("maass(1,2)", 5)
    r = recursive_d(float(d[1]), 5).values
    assert all(rel(x, y) < 1e-12 for x, y in zip(r[1:], d[1:]))


# numerical oracle


def test_oracle_examples():
    o = oracle_structural_fit(load_entry("hecke(11/2)").gamma, 2, T=20)
    assert abs(o[0] - 1) < 1e-6
    assert rel(o[1], Fraction(483, 8)) < 1e-4
    o = oracle_structural_fit(load_entry("maass(0,2)").gamma, 1, T=20)
    assert rel(o[1], -8 - 0.125) < 1e-4
    assert o.provenance == "oracle" and not o.flags


def test_oracle_rejects_small_T():
    with pytest.raises(ValueError):
        oracle_structural_fit(load_entry("hecke(1/2)").gamma, 2, T=5)


# twist residues


def test_twist_residue_rho0_nonzero(zeta2):
    for alpha in (2, 4, 6):
        assert twist_residue(zeta2.data, alpha, 0) != 0


def test_twist_residue_ratio(delta):
    d = structural_invariants(delta.gamma, 3).values
    for alpha in (2, 4):
        r0 = twist_residue(delta.data, alpha, 0, d)
        for l in (1, 2, 3):
            assert rel(twist_residue(delta.data, alpha, l, d) / r0, float(d[l]) * (-2j * math.pi * alpha) ** -l) < 1e-13


def test_twist_residue_relation(zeta2):
    d = structural_invariants(zeta2.gamma, 6).values
    T = wm_tables(8)
    for M, alpha in ((2, 2), (3, 4), (4, 6)):
        rho = [twist_residue(zeta2.data, alpha, l, d) for l in range(M + 1)]
        terms = [complex(T.W(m, s_point(M), alpha, d)) * rho[M - m] for m in range(1, M + 1)]
        assert abs(sum(terms)) <= 1e-12 * max(abs(t) for t in terms)


def test_twist_residue_spectrum(zeta2):
    with pytest.raises(SpectrumError):
        twist_residue(zeta2.data, 3, 0)  # 9/4 not an integer
    with pytest.raises(SpectrumError):
        twist_residue(zeta2.data, Fraction(5, 2), 0)
    from selberglab.core import Coefficients, LFunctionData

    F = LFunctionData(zeta2.gamma, Coefficients((1, 0, 2)))
    with pytest.raises(SpectrumError):
        twist_residue(F, 2 * math.sqrt(2), 0)  # a(2) = 0
