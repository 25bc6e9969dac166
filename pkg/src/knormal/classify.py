"""k-normality of a single element, by four independent characterisations.

For α in F_{q^m} the following all equal the same k:

* m minus the F_q-dimension of span{α, α^q, ..., α^(q^(m-1))};
* deg gcd(x^m - 1, g_α) over F_{q^m}, g_α = Σ α^(q^i) x^(m-1-i);
* m minus the rank over F_{q^m} of the circulant matrix of conjugates;
* m minus deg Ord(α), the monic generator of α's annihilator in F_q[x].
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, poly
from .errors import MethodDisagreement
from .polyring import Factorization, x_power_minus_one
from .tower import Tower


def apply_module_action(T: Tower, f, alpha):
    """Σ a_i α^(q^i) for f = Σ a_i x^i; exponents wrap since α^(q^m) = α."""
    conj = T.conjugates(alpha)
    acc = T.zero
    for i, a in enumerate(f):
        if a:
            acc = T.add(acc, T.scalar_mul(a, conj[i % T.m]))
    return acc


def ord_poly(T: Tower, alpha, fact: Factorization):
    """Ord(α): shrink x^m - 1 one irreducible factor at a time while α stays annihilated."""
    F = T.fq
    exps = list(fact.multiplicities)
    polys = [f for f, _ in fact.factors]

    def build(exponents):
        out = poly.constant(F, F.one)
        for f, e in zip(polys, exponents):
            if e:
                out = poly.mul(F, out, poly.pow_(F, f, e))
        return out

    for i in range(len(exps)):
        while exps[i] > 0:
            exps[i] -= 1
            if apply_module_action(T, build(exps), alpha) != T.zero:
                exps[i] += 1
                break
    return build(exps)


def g_alpha(T: Tower, alpha):
    """Coefficients of g_α over F_{q^m}, constant term first."""
    conj = T.conjugates(alpha)
    return poly.trim(T, [conj[T.m - 1 - j] for j in range(T.m)])


def conjugate_matrix(T: Tower, alpha):
    """Circulant A_α: row r, column c holds α^(q^((c - r) mod m))."""
    conj = T.conjugates(alpha)
    m = T.m
    return [[conj[(c - r) % m] for c in range(m)] for r in range(m)]


def k_via_span(T: Tower, alpha) -> int:
    return T.m - linalg.rank(T.fq, T.conjugates(alpha))


def k_via_gcd(T: Tower, alpha) -> int:
    h = poly.gcd(T, x_power_minus_one(T, T.m), g_alpha(T, alpha))
    return poly.degree(h)


def k_via_rank(T: Tower, alpha) -> int:
    return T.m - linalg.rank(T, conjugate_matrix(T, alpha))


def k_via_ord(T: Tower, alpha, fact: Factorization) -> int:
    return T.m - poly.degree(ord_poly(T, alpha, fact))


@dataclass(frozen=True)
class KNormalityReport:
    element: tuple
    k: int
    ord_poly: tuple | None
    gcd_deg: int
    span_dim: int
    matrix_rank: int


def classify(T: Tower, alpha, fact: Factorization | None = None, mode: str = "fast") -> KNormalityReport:
    """Fast mode uses the span only (``ord_poly`` left as None); verify mode
    runs all four methods and raises MethodDisagreement on any mismatch."""
    if mode == "fast":
        k = k_via_span(T, alpha)
        return KNormalityReport(alpha, k, None, k, T.m - k, T.m - k)
    if mode != "verify":
        raise ValueError(f"unknown mode {mode!r}")
    if fact is None:
        raise ValueError("verify mode needs the factorisation of x^m - 1")
    k_span = k_via_span(T, alpha)
    k_gcd = k_via_gcd(T, alpha)
    k_rank = k_via_rank(T, alpha)
    order = ord_poly(T, alpha, fact)
    k_ord = T.m - poly.degree(order)
    if not k_span == k_gcd == k_rank == k_ord:
        raise MethodDisagreement(
            f"element {alpha}: span {k_span}, gcd {k_gcd}, rank {k_rank}, ord {k_ord}"
        )
    return KNormalityReport(alpha, k_span, order, k_gcd, T.m - k_span, T.m - k_rank)


def conjugate_stack(T: Tower, coords: np.ndarray) -> np.ndarray:
    """``(B, m, m)`` stack whose row i is the coordinate vector of α^(q^i)."""
    add_t, mul_t, _, _ = T.fq.tables
    coords = coords.astype(add_t.dtype)
    cols = np.array(T.frob_matrix, dtype=add_t.dtype)
    out = np.empty((coords.shape[0], T.m, T.m), dtype=add_t.dtype)
    cur = coords
    for i in range(T.m):
        out[:, i] = cur
        if i + 1 < T.m:
            nxt = np.zeros_like(cur)
            for j in range(T.m):
                nxt = add_t[nxt, mul_t[cur[:, j][:, None], cols[j][None, :]]]
            cur = nxt
    return out


def k_values(T: Tower, lo: int, hi: int) -> np.ndarray:
    """k for every element with index in [lo, hi), via batched span ranks."""
    coords = T.index_array(lo, hi)
    return T.m - linalg.batch_rank(T.fq, conjugate_stack(T, coords))
