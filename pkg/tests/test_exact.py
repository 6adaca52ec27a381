from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from selberglab.exact import ExactScalar, GaussianRational, PhaseSum, parse_rational

rats = st.fractions(min_value=-50, max_value=50, max_denominator=30)
gauss = st.builds(GaussianRational, rats, rats)


def close(a, b, tol=1e-9):
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))


@given(gauss, gauss)
def test_gaussian_ring_matches_complex(a, b):
    assert close(a + b, complex(a) + complex(b))
    assert close(a * b, complex(a) * complex(b))
    assert close(a - b, complex(a) - complex(b))
    if b:
        assert close(a / b, complex(a) / complex(b))


@given(gauss)
def test_gaussian_conjugate_norm(a):
    assert a * a.conjugate() == GaussianRational(a.norm())
    assert a.conjugate().conjugate() == a


def test_gaussian_int_power():
    i = GaussianRational(0, 1)
    assert i**2 == -1
    assert i**-1 == GaussianRational(0, -1)
    assert GaussianRational(1, 1) ** 4 == -4


@given(rats, rats, st.integers(-3, 3), st.integers(-3, 3))
def test_graded_product_adds_grades(a, b, g1, g2):
    x = ExactScalar(a, g1) * ExactScalar(b, g2)
    if a and b:
        assert x.single_grade() == (g1 + g2, GaussianRational(a * b))
    else:
        assert x.is_zero()


def test_graded_sum_keeps_distinct_grades():
    x = ExactScalar(1, 1) + ExactScalar(2, 0)
    assert sorted(x.grades()) == [0, 1]
    assert x.component(1) == 1 and x.component(0) == 2
    assert (x - ExactScalar(1, 1)).single_grade() == (0, GaussianRational(2))


def test_half_grade_cancels():
    sqrt_pi = ExactScalar(1, Fraction(1, 2))
    assert sqrt_pi.has_half_grade
    assert not (sqrt_pi * ExactScalar(1, Fraction(-1, 2))).has_half_grade


def test_graded_value_matches_float():
    import math

    x = ExactScalar(GaussianRational(Fraction(3, 4), -1), -2)
    assert close(x, complex(0.75, -1) / math.pi**2)


@given(st.lists(st.tuples(rats, st.integers(-3, 3)), max_size=4))
def test_phase_sum_value(terms):
    import cmath
    import math

    p = PhaseSum.unit(0, 0)
    expect = 0j
    for w, m in terms:
        p = p + PhaseSum.unit(w, m)
        expect += m * cmath.exp(1j * math.pi * float(w))
    assert abs(complex(p) - expect) <= 1e-9 * max(1.0, sum(abs(m) for _, m in terms))


def test_phase_sum_cancellation():
    a = PhaseSum.unit(Fraction(1, 3), 2)
    assert (a + (-a)).is_zero()


@pytest.mark.parametrize("bad", ["0.5", "1e3", 0.5, True, None])
def test_parse_rational_rejects_non_rationals(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_parse_rational_accepts():
    assert parse_rational(" -3/6 ") == Fraction(-1, 2)
    assert parse_rational(7) == 7
