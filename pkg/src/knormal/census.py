"""Exhaustive census of F_{q^m}: every element's k and multiplicative order.

Per-k counts from the census are checked against the divisor-sum formula;
the two are independent, so agreement is the central correctness check.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd

import numpy as np

from .classify import k_values
from .counting import BoundEvaluation, ExistenceVerdict, bound_rows, existence_verdict, render_decimal
from .errors import FormulaCensusMismatch, SizeGuardExceeded
from .polyring import Factorization, phi_q
from .tower import Tower, size_guard

CHUNK = 1 << 15


def check_census_size(T: Tower):
    if T.size > size_guard():
        raise SizeGuardExceeded(f"q^m = {T.size} exceeds census guard {size_guard()}")


def _mul_matrix(T: Tower, c):
    """Rows j = coordinates of c * z^j, so coords @ matrix multiplies by c."""
    rows = []
    zj = T.one
    z = T.element(T.q) if T.m > 1 else T.one
    for _ in range(T.m):
        rows.append(T.mul(c, zj))
        zj = T.mul(zj, z) if T.m > 1 else zj
    return np.array(rows, dtype=np.int64)


def _apply_linear(T: Tower, coords, M):
    add_t, mul_t, _, _ = T.fq.tables
    out = np.zeros((coords.shape[0], T.m), dtype=add_t.dtype)
    coords = coords.astype(add_t.dtype)
    for j in range(T.m):
        out = add_t[out, mul_t[coords[:, j][:, None], M[j][None, :].astype(add_t.dtype)]]
    return out


def discrete_logs(T: Tower) -> np.ndarray:
    """log[index] of every nonzero element to the base of the primitive element (-1 for zero).

    Powers are generated by doubling: the block γ^0..γ^(L-1) times γ^L gives
    γ^L..γ^(2L-1), and multiplying by a fixed element is F_q-linear.
    """
    n = T.size - 1
    gamma = T.primitive_element
    powers = np.array([T.one], dtype=np.int64)
    while powers.shape[0] < n:
        L = powers.shape[0]
        block = _apply_linear(T, powers, _mul_matrix(T, T.pow(gamma, L)))
        powers = np.concatenate([powers, block.astype(np.int64)])[:n]
    weights = np.array([T.q**i for i in range(T.m)], dtype=np.int64)
    idx = powers @ weights
    log = np.full(T.size, -1, dtype=np.int64)
    log[idx] = np.arange(n, dtype=np.int64)
    if (log[1:] < 0).any():
        raise FormulaCensusMismatch("powers of the primitive element miss some element")
    return log


def element_orders(T: Tower) -> np.ndarray:
    """Multiplicative order of every element by index; 0 stands for the zero element."""
    n = T.size - 1
    log = discrete_logs(T)
    orders = np.zeros(T.size, dtype=np.int64)
    orders[1:] = n // np.gcd(log[1:], n)
    return orders


_WORKER_TOWER = {}


def _k_chunk(args):
    tower_dict, lo, hi = args
    key = json.dumps(tower_dict, sort_keys=True)
    if key not in _WORKER_TOWER:
        _WORKER_TOWER[key] = Tower.from_dict(tower_dict)
    return k_values(_WORKER_TOWER[key], lo, hi)


def all_k_values(T: Tower, workers: int = 1) -> np.ndarray:
    """k of every element, chunked over the index range; independent of ``workers``."""
    ranges = [(lo, min(lo + CHUNK, T.size)) for lo in range(0, T.size, CHUNK)]
    if workers <= 1 or len(ranges) == 1:
        parts = [k_values(T, lo, hi) for lo, hi in ranges]
    else:
        payload = [(T.to_dict(), lo, hi) for lo, hi in ranges]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_k_chunk, payload))
    return np.concatenate(parts)


@dataclass
class CensusReport:
    tower: Tower
    counts: list[int]
    formula_counts: list[int]
    bounds: list[BoundEvaluation]
    existence: ExistenceVerdict | None
    primitive_normal: int
    q1_primitive_normal: int
    elapsed_ms: float
    workers: int

    @property
    def q(self):
        return self.tower.q

    @property
    def m(self):
        return self.tower.m

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "tower": self.tower.to_dict(),
            "counts": self.counts,
            "formula_counts": self.formula_counts,
            "bounds": [
                {
                    "k": b.k,
                    "count": self.counts[b.k],
                    "bound_num": b.lower_bound_num,
                    "bound_den": b.lower_bound_den,
                    "divisor_count": b.divisor_count,
                }
                for b in self.bounds
            ],
            "existence": self.existence.to_dict() if self.existence else None,
            "primitive_normal": self.primitive_normal,
            "q1_primitive_normal": self.q1_primitive_normal,
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
            out["workers"] = self.workers
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"

    def to_csv(self) -> str:
        lines = ["k,count,bound_num,bound_den,bound"]
        for b in self.bounds[: self.m]:
            lines.append(f"{b.k},{self.counts[b.k]},{b.lower_bound_num},{b.lower_bound_den},{render_decimal(b.bound)}")
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        q, m = self.q, self.m
        lines = [
            f"F_{q**m}/F_{q} (q={q}, m={m})",
            "",
            "| k | # of k-normal elements | Φ_q(x^m-1)/q^k |",
            "|---|---|---|",
        ]
        for b in self.bounds[:m]:
            lines.append(f"| {b.k} | {self.counts[b.k]} | {render_decimal(b.bound)} |")
        lines += ["", f"# of (q-1)-primitive normal elements = {self.q1_primitive_normal}"]
        return "\n".join(lines) + "\n"


def census(T: Tower, fact: Factorization, workers: int = 1) -> CensusReport:
    """Classify every element of F_{q^m}; raise FormulaCensusMismatch on any inconsistency."""
    check_census_size(T)
    start = time.perf_counter()
    m, n = T.m, T.size - 1
    ks = all_k_values(T, workers)
    counts = np.bincount(ks, minlength=m + 1).tolist()
    orders = element_orders(T)
    normal = ks == 0
    primitive_normal = int(np.count_nonzero(normal & (orders == n)))
    q1_primitive_normal = int(np.count_nonzero(normal & (orders == n // (T.q - 1))))
    rows = bound_rows(fact)
    formula = [r.formula_count for r in rows]
    elapsed = (time.perf_counter() - start) * 1000
    if counts != formula:
        raise FormulaCensusMismatch(f"census {counts} != formula {formula} for q={T.q}, m={m}")
    if sum(counts) != T.size or counts[m] != 1 or counts[0] != phi_q(fact):
        raise FormulaCensusMismatch(f"census {counts} is not a partition of F_{T.size}")
    verdict = existence_verdict(T.q, m) if m >= 2 else None
    return CensusReport(
        tower=T,
        counts=counts,
        formula_counts=formula,
        bounds=rows,
        existence=verdict,
        primitive_normal=primitive_normal,
        q1_primitive_normal=q1_primitive_normal,
        elapsed_ms=elapsed,
        workers=workers,
    )
