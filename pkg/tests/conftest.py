from functools import lru_cache

import pytest

from knormal.polyring import factor_xm_minus_1
from knormal.primes import prime_power
from knormal.tower import build_tower

# (q, m) pairs with published census tables, plus the prime-power-degree fields.
CENSUS_FIELDS = [(2, 3), (2, 10), (9, 5), (8, 6), (3, 6), (5, 6), (17, 3), (7, 4)]
SAYGI_FIELDS = [(3, 3), (2, 4), (5, 5)]


@lru_cache(maxsize=None)
def tower(q, m):
    p, s = prime_power(q)
    return build_tower(p, s, m)


@lru_cache(maxsize=None)
def tower_and_factors(q, m):
    T = tower(q, m)
    return T, factor_xm_minus_1(T.fq, m)


@lru_cache(maxsize=None)
def census_report(q, m):
    from knormal.census import census

    T, fact = tower_and_factors(q, m)
    return census(T, fact)


@pytest.fixture
def f8():
    """F_8 over F_2 with modulus t^3 + t + 1."""
    return build_tower(2, 1, 3, g=(1, 1, 0, 1))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS):
            terminalreporter.write_line(line)
