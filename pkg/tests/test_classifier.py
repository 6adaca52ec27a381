import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from selberglab.catalog import load_entry, normalized_catalog_names, synthetic_decay_pair
from selberglab.classifier import (
    HOLO,
    MAASS,
    ZETA2,
    VirtualGammaFactor,
    associate_virtual,
    classify,
    virtual_to_gamma,
)
from selberglab.core import (
    PowerProduct,
    UnitPhase,
    compute_invariants,
    duplicate_factor,
    is_conductor_one,
    is_degree_two,
    make_gamma,
    to_float,
)
from selberglab.errors import DomainError
from selberglab.exact import GaussianRational
from selberglab.sfunction import HFunctionHandle, eval_h, log_gamma_factor, r_ratio, s_expansion

from conftest import rel


def test_associate_examples():
    assert associate_virtual(Fraction(121, 2), 1) == VirtualGammaFactor.hecke(Fraction(11, 2))
    assert associate_virtual(Fraction(0), 1) == VirtualGammaFactor.maass(0, Fraction(0))
    assert associate_virtual(Fraction(-8), -1) == VirtualGammaFactor.maass(1, Fraction(2))


def test_associate_irrational_is_float():
    v = associate_virtual(Fraction(3), 1)
    assert v.kind == "hecke" and abs(v.mu - math.sqrt(1.5)) < 1e-15


def test_associate_errors():
    with pytest.raises(DomainError):
        associate_virtual(GaussianRational(1, 1), 1)
    with pytest.raises(DomainError):
        associate_virtual(complex(-2, 0.5), 1)
    with pytest.raises(DomainError):
        associate_virtual(Fraction(-2), 2)
    with pytest.raises(DomainError):
        associate_virtual(Fraction(-2), 1j)


def test_virtual_validation():
    with pytest.raises(DomainError):
        VirtualGammaFactor.hecke(0)
    with pytest.raises(DomainError):
        VirtualGammaFactor.maass(2, 1)
    with pytest.raises(DomainError):
        VirtualGammaFactor.maass(0, -1)
    with pytest.raises(DomainError):
        VirtualGammaFactor("eisenstein", mu=1)


def test_virtual_to_gamma_hecke_conductor_one():
    g = virtual_to_gamma(VirtualGammaFactor.hecke(Fraction(11, 2)))
    inv = compute_invariants(g)
    assert is_degree_two(inv) and is_conductor_one(inv)
    assert inv.d == 2 and inv.q.is_one()
    assert g.Q == PowerProduct.from_parts(1, -1, -1)
    assert g.omega == 1


@pytest.mark.parametrize("mu", [Fraction(1, 3), Fraction(7, 2), Fraction(11, 2)])
def test_virtual_hecke_chi_round_trip(mu):
    assert compute_invariants(virtual_to_gamma(VirtualGammaFactor.hecke(mu))).chi == 2 * mu * mu


@pytest.mark.parametrize("eps", [0, 1])
@pytest.mark.parametrize("kap", [Fraction(0), Fraction(1, 2), Fraction(3)])
def test_virtual_maass_chi_round_trip(eps, kap):
    g = virtual_to_gamma(VirtualGammaFactor.maass(eps, kap), (-1) ** eps)
    inv = compute_invariants(g)
    assert inv.chi == -2 * kap * kap
    assert inv.q.is_one() and inv.omega_F == (-1) ** eps


def test_virtual_float_parameters():
    g = virtual_to_gamma(VirtualGammaFactor.maass(1, 1.7), -1)
    assert abs(complex(compute_invariants(g).chi) + 2 * 1.7**2) < 1e-12


@given(st.integers(min_value=0, max_value=1), st.fractions(min_value=0, max_value=20, max_denominator=12))
def test_maass_chi_independent_of_parity(eps, kap):
    assert VirtualGammaFactor.maass(eps, kap).chi == VirtualGammaFactor.maass(1 - eps, kap).chi


def test_classify_zeta2(zeta2):
    c = classify(zeta2.data)
    assert c.verdict == ZETA2 and c.consistent
    assert c.virtual == VirtualGammaFactor.maass(0, Fraction(0))


def test_classify_delta(delta):
    c = classify(delta.data)
    assert c.verdict == HOLO and c.k == 12
    assert c.consistent
    assert c.diagnostic("k_even_at_least_12").passed
    assert c.diagnostic("omega_matches_weight").passed
    assert c.diagnostic("h_function_match").passed


def test_classify_odd_weight_flags():
    c = classify(load_entry("hecke(2)").data)
    assert c.verdict == HOLO and c.k == 5
    assert c.diagnostic("k_even_at_least_12").status == "fail"
    assert "k_even_at_least_12" in c.failures
    assert not c.consistent


def test_classify_small_even_weight_flags():
    c = classify(load_entry("hecke(3/2)").data)
    assert c.k == 4
    assert c.diagnostic("k_even_at_least_12").status == "fail"
    assert c.diagnostic("omega_matches_weight").passed


def test_classify_maass_entry():
    c = classify(load_entry("maass(1,3/2)").data)
    assert c.verdict == MAASS
    assert c.eigenvalue == Fraction(1, 4) + Fraction(9, 4)
    assert c.parity == 1
    assert c.diagnostic("omega_matches_parity").passed
    assert c.diagnostic("eigenvalue_in_spectrum").status == "not verifiable"
    assert c.consistent


def test_classify_chi_zero_with_odd_parity():
    c = classify(load_entry("maass(1,0)").gamma)
    assert c.verdict == ZETA2
    assert c.diagnostic("omega_zeta_squared").status == "fail"


def test_parity_follows_root_number():
    # h does not see eps: the four gamma factors are the same for both parities
    g = virtual_to_gamma(VirtualGammaFactor.maass(0, Fraction(2)), -1)
    c = classify(g)
    assert c.verdict == MAASS and c.parity == 1
    assert c.diagnostic("omega_matches_parity").passed
    assert c.diagnostic("h_function_match").passed


def test_classify_gamma_only_has_no_normalization_rows(delta):
    names = [d.name for d in classify(delta.gamma).diagnostics]
    assert not any(n.startswith("normalized:") for n in names)
    names = [d.name for d in classify(delta.data).diagnostics]
    assert any(n.startswith("normalized:") for n in names)


def test_classify_non_normalized_hecke_still_classifies():
    c = classify(load_entry("hecke(7/3)").data)
    assert c.verdict == HOLO
    assert any(n.startswith("normalized:") for n in c.failures)


def test_classify_rejects_bad_degree_and_conductor():
    with pytest.raises(DomainError):
        classify(make_gamma(PowerProduct.from_parts(1, -1, -1), 1, [(Fraction(1, 2), 0)]))
    with pytest.raises(DomainError):
        classify(make_gamma(PowerProduct.from_parts(1, 0, -1), 1, [(1, Fraction(11, 2))]))


def test_classify_rejects_theta():
    g = make_gamma(PowerProduct.from_parts(1, -1, -1), 1, [(1, GaussianRational(Fraction(11, 2), 1))])
    with pytest.raises(DomainError):
        classify(g)


def test_classify_rejects_non_real_sign_for_maass():
    g = make_gamma(PowerProduct.from_parts(1, 0, -1), UnitPhase.exp_i_pi(Fraction(1, 2)), [(Fraction(1, 2), GaussianRational(0, 1)), (Fraction(1, 2), GaussianRational(0, -1))])
    with pytest.raises(DomainError):
        classify(g)


def test_synthetic_pair_classifies_with_h_mismatch():
    g, v = synthetic_decay_pair()
    c = classify(g)
    assert c.verdict == MAASS and c.parity == 1
    assert c.eigenvalue == Fraction(13, 36)
    assert c.virtual == VirtualGammaFactor.maass(1, Fraction(1, 3))
    assert c.diagnostic("h_function_match").status == "fail"


@pytest.mark.parametrize("k", range(12, 42, 2))
def test_round_trip_hecke(k):
    chi = Fraction((k - 1) ** 2, 2)
    w = (-1) ** (k // 2)
    v = associate_virtual(chi, w)
    c = classify(virtual_to_gamma(v, w))
    assert c.verdict == HOLO and c.k == k and c.chi == chi and c.omega_F == w
    assert c.consistent


@pytest.mark.parametrize("kap", [Fraction(k, 2) for k in range(1, 11)])
@pytest.mark.parametrize("w", [1, -1])
def test_round_trip_maass(kap, w):
    chi = -2 * kap * kap
    c = classify(virtual_to_gamma(associate_virtual(chi, w), w))
    assert c.verdict == MAASS and c.chi == chi and c.omega_F == w
    assert c.eigenvalue == Fraction(1, 4) + kap * kap
    assert c.parity == (1 - w) // 2
    assert c.consistent


def test_round_trip_maass_float():
    for kap in (0.5, 1.3, 4.75):
        c = classify(to_float(virtual_to_gamma(VirtualGammaFactor.maass(0, kap), 1)))
        assert c.verdict == MAASS
        assert abs(c.eigenvalue - (0.25 + kap * kap)) <= 1e-12 * (0.25 + kap * kap)


def test_float_zero_tolerance():
    c = classify(to_float(load_entry("zeta_squared").gamma))
    assert c.verdict == ZETA2


def _random_points(n, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        im = rng.uniform(2, 20) * rng.choice((-1, 1))
        out.append(complex(rng.uniform(-2, 2), im))
    return out


@pytest.mark.parametrize("name", normalized_catalog_names())
def test_h_function_matches_virtual(name):
    e = load_entry(name)
    inv = e.invariants()
    v = virtual_to_gamma(associate_virtual(inv.chi, inv.omega_F), inv.omega_F)
    w = complex(inv.omega_F)
    for s in _random_points(20, 7):
        hF = eval_h(HFunctionHandle(e.gamma, with_root_number=True), s)
        assert rel(hF, w * eval_h(v, s)) <= 1e-9


@pytest.mark.parametrize("name", normalized_catalog_names())
def test_functional_equation_form(name):
    e = load_entry(name)
    inv = e.invariants()
    v = virtual_to_gamma(associate_virtual(inv.chi, inv.omega_F), inv.omega_F)
    fe, ve = s_expansion(e.gamma), s_expansion(v)
    w = complex(inv.omega_F)
    for s in _random_points(10, 11):
        lhs = eval_h(HFunctionHandle(e.gamma, with_root_number=True), s) * fe(s)
        rhs = w * cmath.exp(log_gamma_factor(v, 1 - s) - log_gamma_factor(v, s)) * r_ratio(fe, ve, s)
        assert rel(lhs, rhs) <= 1e-9


@pytest.mark.parametrize("name", ["zeta_squared", "ramanujan_normalized", "maass(1,3/2)", "hecke(2)"])
def test_classification_duplication_invariant(name):
    g = load_entry(name).gamma
    def summary(c):
        d = c.as_dict()
        d["diagnostics"] = [(x.name, x.status) for x in c.diagnostics]
        return d

    base = summary(classify(g))
    for j in range(g.r):
        assert summary(classify(duplicate_factor(g, j))) == base


def test_as_dict_fields(delta):
    d = classify(delta.data).as_dict()
    assert d["verdict"] == HOLO and d["k"] == "12"
    d = classify(load_entry("maass(0,2)").data).as_dict()
    assert d["eigenvalue"] == "17/4" and d["parity"] == 0
    assert d["virtual"] == {"kind": "maass", "epsilon": 0, "kappa": "2"}
