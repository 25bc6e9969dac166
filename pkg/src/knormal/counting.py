"""Closed-form side: k-normal counts from divisors of x^m - 1, lower bounds,
the prime-power closed form, and sufficient conditions for existence."""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from math import gcd

from .errors import PreconditionViolated
from .polyring import Factorization, _check_u64, divisor_degree_series, phi_q
from .primes import factor_u64, prime_power


def count_k_normal_formula(fact: Factorization, k: int) -> int:
    """Σ Φ_q(h) over monic h | x^m - 1 with deg h = m - k (0 if there is none)."""
    m = fact.degree
    if not 0 <= k <= m:
        raise ValueError(f"k = {k} outside [0, {m}]")
    return _check_u64(divisor_degree_series(fact)[m - k][1])


def formula_counts(fact: Factorization) -> list[int]:
    m = fact.degree
    series = divisor_degree_series(fact)
    return [_check_u64(series[m - k][1]) for k in range(m + 1)]


def divisor_count(fact: Factorization, degree: int) -> int:
    """Number of monic divisors of x^m - 1 of the given degree."""
    return divisor_degree_series(fact)[degree][0]


def saygi_count(q: int, m: int, k: int) -> int:
    """(q - 1) q^(m-k-1), valid when m is a positive power of char F_q."""
    p, _ = prime_power(q)
    n = m
    while n > 1 and n % p == 0:
        n //= p
    if n != 1 or m < p:
        raise PreconditionViolated(f"m = {m} is not a power of p = {p}")
    if not 0 <= k <= m - 1:
        raise PreconditionViolated(f"k = {k} outside [0, {m - 1}]")
    return (q - 1) * q ** (m - k - 1)


def lower_bound(fact: Factorization, k: int) -> Fraction:
    """Φ_q(x^m - 1) / q^k as an exact fraction in lowest terms."""
    return Fraction(phi_q(fact), fact.field.q**k)


def render_decimal(x: Fraction, places: int = 2) -> str:
    """Integers as-is, everything else rounded half-up to ``places`` decimals."""
    if x.denominator == 1:
        return str(x.numerator)
    value = Decimal(x.numerator) / Decimal(x.denominator)
    return str(value.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class BoundEvaluation:
    q: int
    m: int
    k: int
    formula_count: int
    bound: Fraction
    divisor_count: int
    saygi_count: int | None = None

    @property
    def lower_bound_num(self) -> int:
        return self.bound.numerator

    @property
    def lower_bound_den(self) -> int:
        return self.bound.denominator

    def holds(self) -> bool:
        return self.formula_count == 0 or self.formula_count >= self.bound


def bound_rows(fact: Factorization) -> list[BoundEvaluation]:
    q, m = fact.field.q, fact.degree
    series = divisor_degree_series(fact)
    phi = phi_q(fact)
    p = fact.field.p
    n = m
    while n % p == 0:
        n //= p
    is_p_power = n == 1 and m > 1
    rows = []
    for k in range(m + 1):
        cnt, total = series[m - k]
        rows.append(
            BoundEvaluation(
                q=q,
                m=m,
                k=k,
                formula_count=_check_u64(total),
                bound=Fraction(phi, q**k),
                divisor_count=cnt,
                saygi_count=saygi_count(q, m, k) if is_p_power and k < m else None,
            )
        )
    return rows


ALWAYS, DIVIDES, GCD_CASE, REIS, NONE = "always", "divides_case", "gcd_case", "reis", "none"


@dataclass(frozen=True)
class ExistenceVerdict:
    q: int
    m: int
    d: int
    b: int | None
    divides: bool
    gcd_threshold: int | None
    reis: bool
    per_k: tuple[str, ...] = field(default=())

    def guaranteed(self, k: int) -> bool:
        return self.per_k[k] != NONE

    def guaranteed_ks(self) -> list[int]:
        return [k for k, tag in enumerate(self.per_k) if tag != NONE]

    def to_dict(self) -> dict:
        return {"d": self.d, "b": self.b, "per_k": list(self.per_k)}


def existence_verdict(q: int, m: int) -> ExistenceVerdict:
    """Sufficient conditions for k-normal elements to exist; never claims absence.

    All divisibility tests on q^m - 1 go through modular exponentiation, so
    q and m may be far beyond census range.
    """
    if m < 2:
        raise PreconditionViolated(f"m must be >= 2, got {m}")
    p, _ = prime_power(q)
    d = gcd((pow(q, m, m) - 1) % m, m)
    divides = d == m
    primes = [ell for ell, _ in factor_u64(m)]
    b = None
    threshold = None
    if not divides:
        outside = [ell for ell in primes if pow(q, m, ell) != 1]
        b = max(outside) if outside else None
        if b is not None and m < d * d:
            threshold = m - d - b + 1
    reis = all(ell == p or q % ell == 1 for ell in primes)
    per_k = []
    for k in range(m + 1):
        if k in (0, 1, m - 1, m):
            per_k.append(ALWAYS)
        elif divides:
            per_k.append(DIVIDES)
        elif threshold is not None and k >= threshold:
            per_k.append(GCD_CASE)
        elif reis:
            per_k.append(REIS)
        else:
            per_k.append(NONE)
    return ExistenceVerdict(q, m, d, b, divides, threshold, reis, tuple(per_k))
