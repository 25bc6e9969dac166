"""Polynomials over F_q: factoring x^m - 1, cyclotomic polynomials, Φ_q and divisors.

x^m - 1 is the only polynomial factored here.  With m = m' p^e and
gcd(m', p) = 1 we have x^m - 1 = (x^m' - 1)^(p^e), and the irreducible
factors of x^m' - 1 are the minimal polynomials of ζ^i for a primitive
m'-th root of unity ζ, one per q-cyclotomic coset mod m'.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import gcd

from . import poly
from .errors import CharDividesIndex, InternalInconsistency, NotCoprime, PhiOverflow
from .primes import divisors, mobius, multiplicative_order_mod, prime_divisors
from .tower import GF, Tower, parse_poly, serialize_poly

U64_MAX = 2**64 - 1


def x_power_minus_one(F, n):
    return poly.trim(F, (F.neg(F.one),) + (F.zero,) * (n - 1) + (F.one,))


def format_poly(a, var="x") -> str:
    """Human-readable rendering, highest degree first, coefficients as F_q indices."""
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}{mono}")
    return "+".join(terms)


@dataclass(frozen=True)
class CyclotomicCoset:
    modulus: int
    representative: int
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)


def cyclotomic_cosets(q: int, n: int) -> list[CyclotomicCoset]:
    """Orbits of Z/n under multiplication by q, sorted by least member."""
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    if gcd(q, n) != 1:
        raise NotCoprime(f"gcd({q}, {n}) != 1")
    seen = [False] * n
    cosets = []
    for r in range(n):
        if seen[r]:
            continue
        orbit = []
        x = r
        while not seen[x]:
            seen[x] = True
            orbit.append(x)
            x = x * q % n
        cosets.append(CyclotomicCoset(n, r, tuple(sorted(orbit))))
    return cosets


@dataclass(frozen=True)
class Factorization:
    """Monic irreducible factors with multiplicities, in canonical order."""

    field: GF
    factors: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def from_pairs(cls, field, pairs):
        merged: dict[tuple[int, ...], int] = {}
        for f, e in pairs:
            if e:
                merged[tuple(f)] = merged.get(tuple(f), 0) + e
        ordered = sorted(merged.items(), key=lambda fe: (len(fe[0]), fe[0]))
        return cls(field, tuple(ordered))

    @property
    def degree(self) -> int:
        return sum((len(f) - 1) * e for f, e in self.factors)

    @property
    def degrees(self) -> list[int]:
        return [len(f) - 1 for f, _ in self.factors]

    @property
    def multiplicities(self) -> list[int]:
        return [e for _, e in self.factors]

    def product(self):
        F = self.field
        out = poly.constant(F, F.one)
        for f, e in self.factors:
            out = poly.mul(F, out, poly.pow_(F, f, e))
        return out

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for f, e in self.factors:
            parts.append(f"({format_poly(f)})" + (f"^{e}" if e > 1 else ""))
        return " * ".join(parts)

    def to_json(self) -> list[dict]:
        return [{"poly": serialize_poly(f), "mult": e} for f, e in self.factors]

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, field, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_pairs(field, [(parse_poly(d["poly"]), d["mult"]) for d in data])


def _root_of_unity(aux: Tower, order: int):
    """An element of exact multiplicative order ``order`` in ``aux``; order | |aux^*|."""
    if order == 1:
        return aux.one
    cofactor = (aux.size - 1) // order
    primes = prime_divisors(order)
    for idx in range(1, aux.size):
        zeta = aux.pow(aux.element(idx), cofactor)
        if all(aux.pow(zeta, order // ell) != aux.one for ell in primes):
            return zeta
    raise InternalInconsistency(f"no element of order {order}")


def factor_xm_minus_1(fq: GF, m: int) -> Factorization:
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    p, q = fq.p, fq.q
    m_prime, mult = m, 1
    while m_prime % p == 0:
        m_prime //= p
        mult *= p
    r = multiplicative_order_mod(q, m_prime) if m_prime > 1 else 1
    aux = Tower(fq, r)
    zeta = _root_of_unity(aux, m_prime)
    powers = [aux.one]
    for _ in range(1, m_prime):
        powers.append(aux.mul(powers[-1], zeta))
    pairs = []
    for coset in cyclotomic_cosets(q, m_prime):
        minpoly = (aux.one,)
        for i in coset.members:
            minpoly = poly.mul(aux, minpoly, (aux.neg(powers[i]), aux.one))
        projected = []
        for c in minpoly:
            if any(c[1:]):
                raise InternalInconsistency(f"minimal polynomial coefficient {c} is not in F_{q}")
            projected.append(c[0])
        pairs.append((tuple(projected), mult))
    return Factorization.from_pairs(fq, pairs)


def cyclotomic_poly(fq: GF, d: int):
    """Q_d over F_q as the Möbius product of (x^e - 1)^μ(d/e)."""
    if d % fq.p == 0:
        raise CharDividesIndex(f"p = {fq.p} divides {d}")
    num = poly.constant(fq, fq.one)
    den = poly.constant(fq, fq.one)
    for e in divisors(d):
        mu = mobius(d // e)
        if mu == 1:
            num = poly.mul(fq, num, x_power_minus_one(fq, e))
        elif mu == -1:
            den = poly.mul(fq, den, x_power_minus_one(fq, e))
    return poly.exact_div(fq, num, den)


def _check_u64(value):
    if value > U64_MAX:
        raise PhiOverflow(f"{value} exceeds 64 bits")
    return value


def phi_prime_power(q: int, d: int, e: int) -> int:
    """Φ_q(P^e) for P irreducible of degree d."""
    if e == 0:
        return 1
    return q ** (d * (e - 1)) * (q**d - 1)


def phi_q(fact: Factorization) -> int:
    """Number of units of F_q[x]/(h) for h given by its factorisation."""
    q = fact.field.q
    result = 1
    for f, e in fact.factors:
        result = _check_u64(result * phi_prime_power(q, len(f) - 1, e))
    return result


def divisors_by_degree(fact: Factorization, target_deg: int) -> list[Factorization]:
    """Monic divisors of degree ``target_deg``, in lexicographic order of exponent tuples."""
    if not 0 <= target_deg <= fact.degree:
        raise ValueError(f"target degree {target_deg} outside [0, {fact.degree}]")
    degs = fact.degrees
    ranges = [range(e + 1) for e in fact.multiplicities]
    out = []
    for exps in itertools.product(*ranges):
        if sum(d * x for d, x in zip(degs, exps)) == target_deg:
            out.append(Factorization(fact.field, tuple((f, x) for (f, _), x in zip(fact.factors, exps) if x)))
    return out


def divisor_degree_series(fact: Factorization) -> list[tuple[int, int]]:
    """For each degree t: (number of divisors of degree t, sum of Φ_q over them)."""
    q = fact.field.q
    series = [(1, 1)]
    for f, e in fact.factors:
        d = len(f) - 1
        nxt = [(0, 0)] * (len(series) + d * e)
        for t, (cnt, tot) in enumerate(series):
            if not cnt:
                continue
            for x in range(e + 1):
                c0, t0 = nxt[t + d * x]
                nxt[t + d * x] = (c0 + cnt, t0 + tot * phi_prime_power(q, d, x))
        series = nxt
    return series
