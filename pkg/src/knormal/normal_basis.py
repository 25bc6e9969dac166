"""Normal bases: coordinates, Frobenius as a cyclic shift, multiplication tables.

With basis α, α^q, ..., α^(q^(m-1)), raising to the q-th power sends
coordinate i to position i+1 (mod m), i.e. the coordinate vector shifts right.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .classify import k_via_span
from .errors import NotNormal
from .tower import Tower


@dataclass(frozen=True)
class NormalBasis:
    tower: Tower
    generator: tuple
    basis_matrix: tuple  # column i = coordinates of generator^(q^i)
    inverse_matrix: tuple


@dataclass(frozen=True)
class MultTable:
    t: tuple  # row i = normal coordinates of α * α^(q^i)
    density: int


def build_normal_basis(T: Tower, alpha) -> NormalBasis:
    k = k_via_span(T, alpha)
    if k != 0:
        raise NotNormal(k)
    conj = T.conjugates(alpha)
    basis = tuple(tuple(conj[c][r] for c in range(T.m)) for r in range(T.m))
    return NormalBasis(T, alpha, basis, linalg.inverse(T.fq, basis))


def to_normal_coords(nb: NormalBasis, beta) -> tuple:
    return linalg.mat_vec(nb.tower.fq, nb.inverse_matrix, beta)


def from_normal_coords(nb: NormalBasis, coords) -> tuple:
    return linalg.mat_vec(nb.tower.fq, nb.basis_matrix, coords)


def frobenius_in_normal(coords) -> tuple:
    coords = tuple(coords)
    return coords[-1:] + coords[:-1]


def mult_table(nb: NormalBasis) -> MultTable:
    T = nb.tower
    conj = T.conjugates(nb.generator)
    rows = tuple(to_normal_coords(nb, T.mul(nb.generator, c)) for c in conj)
    density = sum(1 for row in rows for v in row if v)
    return MultTable(rows, density)


def normal_mul(nb: NormalBasis, table: MultTable, u, v) -> tuple:
    """Product of two elements given in normal coordinates, using only the table.

    α^(q^i) α^(q^j) = (α α^(q^(j-i)))^(q^i), so each product of basis vectors
    is a table row shifted right by i.
    """
    F = nb.tower.fq
    m = len(u)
    out = [F.zero] * m
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            c = F.mul(a, b)
            row = table.t[(j - i) % m]
            for r, t in enumerate(row):
                if t:
                    pos = (r + i) % m
                    out[pos] = F.add(out[pos], F.mul(c, t))
    return tuple(out)
