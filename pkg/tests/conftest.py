from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from selberglab.catalog import load_entry

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

HECKE_GRID = [Fraction(k, 2) for k in range(1, 13)]  # 1/2 .. 6
MAASS_KAPPAS = [Fraction(k, 2) for k in range(0, 11)]  # 0 .. 5
MAASS_GRID = [(eps, kap) for kap in MAASS_KAPPAS for eps in (0, 1)]


def grid_names():
    return [f"hecke({mu})" for mu in HECKE_GRID] + [f"maass({e},{k})" for e, k in MAASS_GRID]


@pytest.fixture(scope="session")
def zeta2():
    return load_entry("zeta_squared")


@pytest.fixture(scope="session")
def delta():
    return load_entry("ramanujan_normalized")


def rel(a, b) -> float:
    a, b = complex(a), complex(b)
    return abs(a - b) / abs(b) if b != 0 else abs(a - b)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, title, dt = RESULTS[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {title} ({dt:.2f} s)")
