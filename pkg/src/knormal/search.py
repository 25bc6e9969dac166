"""Smallest-index searches for k-normal elements and normal elements of a given order."""
from __future__ import annotations

import numpy as np

from .census import CHUNK, all_k_values, check_census_size, element_orders
from .classify import classify, k_values
from .errors import NotADivisor
from .polyring import Factorization
from .tower import VECTOR_TABLE_LIMIT, Tower


def _k_chunks(T: Tower):
    for lo in range(0, T.size, CHUNK):
        hi = min(lo + CHUNK, T.size)
        if T.q <= VECTOR_TABLE_LIMIT:
            yield lo, k_values(T, lo, hi)
        else:
            yield lo, np.array([classify(T, a).k for a in T.elements(lo, hi)])


def find_k_normal(T: Tower, k: int, fact: Factorization):
    """Smallest-index k-normal element, re-verified by all four methods; None if absent."""
    if not 0 <= k <= T.m:
        raise ValueError(f"k = {k} outside [0, {T.m}]")
    check_census_size(T)
    for lo, ks in _k_chunks(T):
        hits = np.flatnonzero(ks == k)
        if hits.size:
            alpha = T.element(lo + int(hits[0]))
            classify(T, alpha, fact, mode="verify")
            return alpha
    return None


def _check_target(T: Tower, target: int):
    if target < 1 or (T.size - 1) % target:
        raise NotADivisor(f"{target} does not divide q^m - 1 = {T.size - 1}")


def find_order_normal(T: Tower, target: int, fact: Factorization):
    """Smallest-index normal element of exact multiplicative order ``target``, or None."""
    _check_target(T, target)
    check_census_size(T)
    for lo, ks in _k_chunks(T):
        for off in np.flatnonzero(ks == 0):
            alpha = T.element(lo + int(off))
            if T.multiplicative_order(alpha) == target:
                if classify(T, alpha, fact, mode="verify").k != 0:
                    raise AssertionError(f"{alpha} failed normality re-check")
                return alpha
    return None


def count_order_normal(T: Tower, target: int, fact: Factorization | None = None) -> int:
    """Number of normal elements of exact multiplicative order ``target``."""
    _check_target(T, target)
    check_census_size(T)
    ks = all_k_values(T)
    orders = element_orders(T)
    return int(np.count_nonzero((ks == 0) & (orders == target)))


def primitive_target(T: Tower) -> int:
    return T.size - 1


def q1_primitive_target(T: Tower) -> int:
    return (T.size - 1) // (T.q - 1)
