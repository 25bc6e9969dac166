import itertools
from math import gcd, prod

import pytest
from hypothesis import given, settings, strategies as st

from knormal import poly
from knormal.errors import CharDividesIndex, InternalInconsistency, NotCoprime, PhiOverflow
from knormal.polyring import (
    Factorization,
    cyclotomic_cosets,
    cyclotomic_poly,
    divisor_degree_series,
    divisors_by_degree,
    factor_xm_minus_1,
    phi_q,
    x_power_minus_one,
)
from knormal.primes import divisors, euler_phi, prime_power
from knormal.tower import GF

from conftest import CENSUS_FIELDS, SAYGI_FIELDS

F2, F3, F5, F7 = GF(2), GF(3), GF(5), GF(7)


def field(q):
    return GF(*prime_power(q))


def all_polys(F, max_deg):
    for n in range(max_deg + 1):
        for coeffs in itertools.product(range(F.q), repeat=n + 1):
            if coeffs[-1]:
                yield tuple(coeffs)


def brute_irreducible(F, f):
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(F.q), repeat=d):
            if not poly.mod(F, f, low + (1,)):
                return False
    return True


def test_gcd_and_divmod_examples():
    assert poly.gcd(F2, x_power_minus_one(F2, 3), (1, 1)) == (1, 1)
    assert poly.gcd(F3, (2, 0, 2), ()) == (1, 0, 1)
    assert poly.mod(F3, (1, 0, 1), (1, 1)) == (2,)
    with pytest.raises(ZeroDivisionError):
        poly.divmod_(F3, (1, 1), ())


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 4), max_size=8), st.lists(st.integers(0, 4), min_size=1, max_size=6))
def test_divmod_identity(a, b):
    a, b = poly.trim(F5, a), poly.trim(F5, b)
    if not b:
        return
    quo, rem = poly.divmod_(F5, a, b)
    assert poly.add(F5, poly.mul(F5, quo, b), rem) == a
    assert not rem or len(rem) < len(b)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 6), max_size=6), st.lists(st.integers(0, 6), max_size=6))
def test_gcdext_bezout(a, b):
    a, b = poly.trim(F7, a), poly.trim(F7, b)
    g, s, t = poly.gcdext(F7, a, b)
    assert poly.add(F7, poly.mul(F7, s, a), poly.mul(F7, t, b)) == g
    assert g == poly.gcd(F7, a, b)


def test_irreducible_examples():
    assert poly.is_irreducible(F2, (1, 1, 1))
    assert not poly.is_irreducible(F2, (1, 0, 1))
    assert poly.is_irreducible(F5, (4, 1))


@pytest.mark.parametrize("q,max_deg", [(2, 6), (3, 4), (4, 3)])
def test_irreducible_matches_brute_force(q, max_deg):
    F = field(q)
    for f in all_polys(F, max_deg):
        if len(f) >= 2 and f[-1] == 1:
            assert poly.is_irreducible(F, f) == brute_irreducible(F, f), f


def test_cyclotomic_cosets():
    cos = cyclotomic_cosets(2, 5)
    assert [c.members for c in cos] == [(0,), (1, 2, 3, 4)]
    assert [c.members for c in cyclotomic_cosets(7, 1)] == [(0,)]
    with pytest.raises(NotCoprime):
        cyclotomic_cosets(2, 6)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 50), st.integers(1, 200))
def test_cosets_partition(q, n):
    if gcd(q, n) != 1:
        return
    cos = cyclotomic_cosets(q, n)
    members = [r for c in cos for r in c.members]
    assert sorted(members) == list(range(n))
    for c in cos:
        assert c.representative == min(c.members)
        assert {r * q % n for r in c.members} == set(c.members)
    assert [c.representative for c in cos] == sorted(c.representative for c in cos)


def test_factor_examples():
    f = factor_xm_minus_1(F2, 10)
    assert f.factors == (((1, 1), 2), ((1, 1, 1, 1, 1), 2))
    assert str(f) == "(x+1)^2 * (x^4+x^3+x^2+x+1)^2"
    assert factor_xm_minus_1(F3, 6).factors == (((1, 1), 3), ((2, 1), 3))
    f = factor_xm_minus_1(F5, 6)
    assert f.factors == (((1, 1), 1), ((4, 1), 1), ((1, 1, 1), 1), ((1, 4, 1), 1))
    assert str(f) == "(x+1) * (x+4) * (x^2+x+1) * (x^2+4x+1)"
    assert factor_xm_minus_1(F7, 1).factors == (((6, 1), 1),)


FACTOR_CASES = CENSUS_FIELDS + SAYGI_FIELDS + [(2, 21), (3, 20), (4, 15), (2, 23), (5, 12), (11, 10), (25, 20), (2, 1)]


@pytest.mark.parametrize("q,m", FACTOR_CASES)
def test_factorization_invariants(q, m):
    F = field(q)
    fact = factor_xm_minus_1(F, m)
    assert fact.product() == x_power_minus_one(F, m)
    assert fact.degree == m
    for f, _ in fact.factors:
        assert poly.is_irreducible(F, f)
    keys = [(len(f), f) for f, _ in fact.factors]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    # distinct linear factors <-> m-th roots of unity in F_q
    linear = sum(1 for f, _ in fact.factors if len(f) == 2)
    assert linear == gcd(q - 1, m)


def test_linear_factor_count_is_not_gcd_qm_minus_one():
    # over F_8, x^6 - 1 = (x+1)^2 (x^2+x+1)^2 has one linear factor although gcd(8^6-1, 6) = 3
    fact = factor_xm_minus_1(field(8), 6)
    assert sum(1 for f, _ in fact.factors if len(f) == 2) == 1
    assert gcd(8**6 - 1, 6) == 3


def test_projection_failure_is_loud(monkeypatch):
    import knormal.polyring as pr

    def wrong_root(aux, order):
        # an element of order 15 in F_16 is not a 5th root of unity
        return aux.primitive_element

    monkeypatch.setattr(pr, "_root_of_unity", wrong_root)
    with pytest.raises(InternalInconsistency):
        factor_xm_minus_1(F2, 5)


def test_cyclotomic_poly():
    assert cyclotomic_poly(F2, 1) == (1, 1)
    assert cyclotomic_poly(F5, 1) == (4, 1)
    assert cyclotomic_poly(F2, 3) == (1, 1, 1)
    with pytest.raises(CharDividesIndex):
        cyclotomic_poly(F3, 6)


@pytest.mark.parametrize("q,m", [(2, 15), (3, 8), (5, 12), (7, 9), (9, 10), (8, 21)])
def test_cyclotomic_product_identity(q, m):
    F = field(q)
    out = (1,)
    for d in divisors(m):
        Q = cyclotomic_poly(F, d)
        assert len(Q) - 1 == euler_phi(d)
        out = poly.mul(F, out, Q)
    assert out == x_power_minus_one(F, m)


def brute_phi(F, modulus):
    n = len(modulus) - 1
    count = 0
    for coeffs in itertools.product(range(F.q), repeat=n):
        a = poly.trim(F, coeffs)
        if a and poly.degree(poly.gcd(F, a, modulus)) == 0:
            count += 1
    return count


def test_phi_examples():
    assert phi_q(factor_xm_minus_1(F2, 3)) == 3
    assert brute_phi(F2, x_power_minus_one(F2, 3)) == 3
    assert phi_q(factor_xm_minus_1(field(8), 6)) == 225792
    assert phi_q(Factorization(F2, ())) == 1


@pytest.mark.parametrize("q,m", [(2, 3), (2, 10), (2, 12), (3, 6), (3, 7), (4, 5), (5, 5), (7, 4), (8, 4), (9, 3), (16, 3), (64, 2)])
def test_phi_matches_brute_force(q, m):
    assert q**m <= 2**12
    F = field(q)
    assert phi_q(factor_xm_minus_1(F, m)) == brute_phi(F, x_power_minus_one(F, m))


def test_phi_overflow_reported():
    fact = Factorization(F2, (((1, 1, 1), 40),))
    with pytest.raises(PhiOverflow):
        phi_q(fact)


def test_divisors_by_degree_examples():
    f = factor_xm_minus_1(F2, 10)
    assert divisors_by_degree(f, 7) == []
    assert [d.factors for d in divisors_by_degree(f, 0)] == [()]
    f = factor_xm_minus_1(F7, 4)
    got = [d.product() for d in divisors_by_degree(f, 3)]
    assert sorted(got) == sorted([poly.mul(F7, (6, 1), (1, 0, 1)), poly.mul(F7, (1, 1), (1, 0, 1))])


@pytest.mark.parametrize("q,m", CENSUS_FIELDS + SAYGI_FIELDS + [(2, 21), (5, 12)])
def test_divisor_enumeration_totals(q, m):
    fact = factor_xm_minus_1(field(q), m)
    series = divisor_degree_series(fact)
    total = 0
    for t in range(m + 1):
        divs = divisors_by_degree(fact, t)
        total += len(divs)
        assert len(divs) == series[t][0]
        assert sum(phi_q(d) for d in divs) == series[t][1]
        for d in divs:
            assert not poly.mod(fact.field, x_power_minus_one(fact.field, m), d.product())
    assert total == prod(e + 1 for e in fact.multiplicities)


def test_factorization_json_round_trip():
    f = factor_xm_minus_1(F5, 6)
    text = f.dumps()
    assert text == '[{"poly": "[1,1]", "mult": 1}, {"poly": "[4,1]", "mult": 1}, {"poly": "[1,1,1]", "mult": 1}, {"poly": "[1,4,1]", "mult": 1}]'
    assert Factorization.from_json(F5, text) == f
    assert Factorization.from_json(F5, text).dumps() == text
