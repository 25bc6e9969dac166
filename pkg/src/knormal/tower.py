"""The field tower F_p ⊂ F_q = F_p[y]/(f) ⊂ F_{q^m} = F_q[z]/(g).

Elements of F_q are plain ints: the canonical index ``sum a_j p^j`` of the
coordinate vector ``(a_0, ..., a_{s-1})`` over F_p.  Elements of F_{q^m} are
tuples of ``m`` such ints, coordinates with respect to ``1, z, ..., z^{m-1}``.
"""
from __future__ import annotations

import json
import os
from functools import cached_property

import numpy as np

from . import poly
from .errors import NotIrreducible, NotPrime, RangeOutOfBounds, SizeGuardExceeded, ZeroElement
from .primes import factor_u64, is_prime

DEFAULT_SIZE_GUARD = 2**48
# Dense q x q numpy tables are built for vectorised census work up to this q.
VECTOR_TABLE_LIMIT = 4096
_LIST_TABLE_LIMIT = 1024
_LOG_TABLE_LIMIT = 2**16


def size_guard() -> int:
    return int(os.environ.get("KNORMAL_SIZE_GUARD", DEFAULT_SIZE_GUARD))


def serialize_poly(coeffs) -> str:
    return "[" + ",".join(str(int(c)) for c in coeffs) + "]"


def parse_poly(text: str) -> tuple[int, ...]:
    values = json.loads(text) if isinstance(text, str) else text
    return tuple(int(v) for v in values)


def _digits(n, base, width):
    out = []
    for _ in range(width):
        n, r = divmod(n, base)
        out.append(r)
    return out


def _scan_irreducible(F, n, seed):
    """First monic irreducible of degree n in index order, starting at ``seed``."""
    total = F.size**n
    start = seed % total
    for offset in range(total):
        idx = (start + offset) % total
        cand = tuple(_digits(idx, F.size, n)) + (F.one,)
        if poly.is_irreducible(F, cand):
            return cand
    raise NotIrreducible(f"no irreducible polynomial of degree {n}")


class GF:
    """The field F_q = F_p[y]/(f); elements are ints in [0, q)."""

    def __init__(self, p: int, s: int = 1, f=None, seed: int = 0):
        if not is_prime(p):
            raise NotPrime(p)
        if s < 1:
            raise ValueError(f"extension degree must be >= 1, got {s}")
        self.p, self.s, self.q = p, s, p**s
        self.size = self.q
        self.zero, self.one = 0, 1
        if s == 1:
            if f is not None:
                f = tuple(int(c) % p for c in f)
                if len(f) != 2 or f[1] != 1:
                    raise NotIrreducible(f"{f} is not a monic degree-1 modulus")
            self.f = f if f is not None else (0, 1)
            self._setup_prime()
            return
        base = GF(p)
        if f is None:
            f = _scan_irreducible(base, s, seed)
        else:
            f = tuple(int(c) % p for c in f)
            if len(f) != s + 1 or f[-1] != 1:
                raise NotIrreducible(f"{serialize_poly(f)} is not monic of degree {s}")
            if not poly.is_irreducible(base, f):
                raise NotIrreducible(f"{serialize_poly(f)} is reducible over F_{p}")
        self.f = f
        self._setup_extension()

    # -- construction -----------------------------------------------------

    def _setup_prime(self):
        p = self.p
        self.add = lambda a, b: (a + b) % p
        self.sub = lambda a, b: (a - b) % p
        self.neg = lambda a: -a % p
        self.mul = lambda a, b: a * b % p

    def _setup_extension(self):
        p, s, q = self.p, self.s, self.q
        self._pw = [p**j for j in range(s)]
        if p == 2:
            self.add = self.sub = lambda a, b: a ^ b
            self.neg = lambda a: a
        elif q <= _LIST_TABLE_LIMIT:
            add_t = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]
            neg_t = [self._neg_digits(a) for a in range(q)]
            self.add = lambda a, b: add_t[a][b]
            self.neg = neg_t.__getitem__
            self.sub = lambda a, b: add_t[a][neg_t[b]]
        else:
            self.add = self._add_digits
            self.neg = self._neg_digits
            self.sub = lambda a, b: self._add_digits(a, self._neg_digits(b))
        if q <= _LOG_TABLE_LIMIT:
            exp, log = self._build_log_tables()
            order = q - 1

            def mul(a, b):
                if a == 0 or b == 0:
                    return 0
                return exp[(log[a] + log[b]) % order]

            self.mul = mul
            self._exp, self._log = exp, log
        else:
            self.mul = self._mul_digits

    def _add_digits(self, a, b):
        p = self.p
        return sum(((a // w + b // w) % p) * w for w in self._pw)

    def _neg_digits(self, a):
        p = self.p
        return sum((-(a // w) % p) * w for w in self._pw)

    def _mul_digits(self, a, b):
        p, s, f = self.p, self.s, self.f
        x = _digits(a, p, s)
        y = _digits(b, p, s)
        prod = [0] * (2 * s - 1)
        for i, u in enumerate(x):
            if u:
                for j, v in enumerate(y):
                    prod[i + j] += u * v
        for i in range(2 * s - 2, s - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(s):
                    prod[i - s + j] -= c * f[j]
        return sum((prod[j] % p) * w for j, w in enumerate(self._pw))

    def _build_log_tables(self):
        q = self.q
        order_fact = factor_u64(q - 1)
        for gen in range(2, q):
            if all(self._pow_digits(gen, (q - 1) // r) != 1 for r, _ in order_fact):
                break
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._mul_digits(exp[i - 1], gen)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        return exp, log

    def _pow_digits(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._mul_digits(result, a)
            a = self._mul_digits(a, a)
            e >>= 1
        return result

    # -- arithmetic ---------------------------------------------------------

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.s == 1:
            return pow(a, -1, self.p)
        if hasattr(self, "_log"):
            return self._exp[-self._log[a] % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def coords(self, a) -> tuple[int, ...]:
        return tuple(_digits(a, self.p, self.s))

    def from_coords(self, coords) -> int:
        return sum((int(c) % self.p) * self.p**j for j, c in enumerate(coords))

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.s, self.f) == (other.p, other.s, other.f)

    def __hash__(self):
        return hash((self.p, self.s, self.f))

    def __repr__(self):
        return f"GF({self.p}^{self.s}, f={serialize_poly(self.f)})"

    # -- vectorised tables (census) ----------------------------------------

    @cached_property
    def tables(self):
        """Dense ``(add, mul, neg, inv)`` numpy tables; requires q <= VECTOR_TABLE_LIMIT."""
        q, p = self.q, self.p
        if q > VECTOR_TABLE_LIMIT:
            raise SizeGuardExceeded(f"vectorised tables need q <= {VECTOR_TABLE_LIMIT}, got {q}")
        a = np.arange(q, dtype=np.int64)
        if self.s == 1:
            add_t = (a[:, None] + a[None, :]) % p
            mul_t = (a[:, None] * a[None, :]) % p
        else:
            add_t = np.zeros((q, q), dtype=np.int64)
            for w in self._pw:
                d = (a // w) % p
                add_t += ((d[:, None] + d[None, :]) % p) * w
            exp = np.array(self._exp, dtype=np.int64)
            log = np.array(self._log, dtype=np.int64)
            mul_t = exp[(log[:, None] + log[None, :]) % (q - 1)]
            mul_t[0, :] = 0
            mul_t[:, 0] = 0
        neg_t = np.argmin(add_t, axis=1)
        inv_t = np.zeros(q, dtype=np.int64)
        inv_t[1:] = np.argmax(mul_t[1:] == 1, axis=1)
        dtype = np.uint8 if q <= 256 else np.uint16
        return tuple(t.astype(dtype) for t in (add_t, mul_t, neg_t, inv_t))


class Tower:
    """Immutable context for F_{q^m} over F_q; elements are m-tuples of F_q ints."""

    def __init__(self, fq: GF, m: int, g=None, seed: int = 0):
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        self.fq = fq
        self.p, self.s, self.q, self.f = fq.p, fq.s, fq.q, fq.f
        self.m = m
        self.seed = seed
        self.size = self.q**m
        if g is None:
            g = _scan_irreducible(fq, m, seed)
        else:
            g = tuple(int(c) for c in g)
            if len(g) != m + 1 or g[-1] != 1 or any(not 0 <= c < self.q for c in g):
                raise NotIrreducible(f"{serialize_poly(g)} is not monic of degree {m} over F_{self.q}")
            if not poly.is_irreducible(fq, g):
                raise NotIrreducible(f"{serialize_poly(g)} is reducible over F_{self.q}")
        self.g = g
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)
        self._neg_g = tuple(fq.neg(c) for c in g[:m])
        self.frob_matrix = self._frobenius_columns()

    def _frobenius_columns(self):
        """Column i holds the coordinates of z^(i q); x -> x^q is F_q-linear."""
        z = (0, 1) + (0,) * (self.m - 2) if self.m > 1 else self.one
        zq = self.pow(z, self.q)
        cols = [self.one]
        for _ in range(1, self.m):
            cols.append(self.mul(cols[-1], zq))
        return tuple(cols)

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b):
        add = self.fq.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sub = self.fq.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.fq.neg
        return tuple(neg(x) for x in a)

    def scalar_mul(self, c, a):
        mul = self.fq.mul
        return tuple(mul(c, x) for x in a)

    def mul(self, a, b):
        m = self.m
        if self.s == 1:
            p = self.p
            prod = [0] * (2 * m - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
            neg_g = self._neg_g
            for i in range(2 * m - 2, m - 1, -1):
                c = prod[i] % p
                if c:
                    for j in range(m):
                        prod[i - m + j] += c * neg_g[j]
            return tuple(v % p for v in prod[:m])
        add, fmul = self.fq.add, self.fq.mul
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = add(prod[i + j], fmul(x, y))
        neg_g = self._neg_g
        for i in range(2 * m - 2, m - 1, -1):
            c = prod[i]
            if c:
                for j in range(m):
                    if neg_g[j]:
                        prod[i - m + j] = add(prod[i - m + j], fmul(c, neg_g[j]))
        return tuple(prod[:m])

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in F_{q^m}")
        F = self.fq
        g, s, _ = poly.gcdext(F, poly.trim(F, a), self.g)
        if g != (1,):
            raise ArithmeticError("modulus is not irreducible")
        return tuple(s) + (0,) * (self.m - len(s))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def frobenius(self, a):
        """a^q as a matrix-vector product over F_q."""
        add, mul = self.fq.add, self.fq.mul
        out = [0] * self.m
        for c, col in zip(a, self.frob_matrix):
            if c:
                for j, v in enumerate(col):
                    if v:
                        out[j] = add(out[j], mul(c, v))
        return tuple(out)

    def conjugates(self, a, count=None):
        """``[a, a^q, ..., a^(q^(count-1))]``; ``count`` defaults to m."""
        out = [a]
        for _ in range((self.m if count is None else count) - 1):
            out.append(self.frobenius(out[-1]))
        return out

    def embed(self, c):
        """The F_q scalar c as an element of F_{q^m}."""
        return (c,) + (0,) * (self.m - 1)

    # -- indexing and enumeration ------------------------------------------

    def index(self, a) -> int:
        idx = 0
        for c in reversed(a):
            idx = idx * self.q + c
        return idx

    def element(self, idx: int):
        if not 0 <= idx < self.size:
            raise RangeOutOfBounds(f"index {idx} outside [0, {self.size})")
        return tuple(_digits(idx, self.q, self.m))

    def elements(self, lo: int = 0, hi: int | None = None):
        """Yield elements with canonical index lo, lo+1, ..., hi-1."""
        hi = self.size if hi is None else hi
        if not 0 <= lo <= hi <= self.size:
            raise RangeOutOfBounds(f"range [{lo}, {hi}) outside [0, {self.size}]")
        for idx in range(lo, hi):
            yield self.element(idx)

    def index_array(self, lo: int, hi: int) -> np.ndarray:
        """Coordinates of elements lo..hi-1 as an (hi-lo, m) integer array."""
        idx = np.arange(lo, hi, dtype=np.int64)
        out = np.empty((hi - lo, self.m), dtype=np.int64)
        for i in range(self.m):
            idx, out[:, i] = np.divmod(idx, self.q)
        return out

    def random_element(self, rng):
        return tuple(rng.randrange(self.q) for _ in range(self.m))

    # -- multiplicative structure -----------------------------------------

    @cached_property
    def group_order_factors(self) -> list[tuple[int, int]]:
        return factor_u64(self.size - 1) if self.size > 2 else []

    def multiplicative_order(self, a) -> int:
        if a == self.zero:
            raise ZeroElement("zero has no multiplicative order")
        order = self.size - 1
        for r, e in self.group_order_factors:
            for _ in range(e):
                if self.pow(a, order // r) == self.one:
                    order //= r
                else:
                    break
        return order

    @cached_property
    def primitive_element(self):
        n = self.size - 1
        for idx in range(1, self.size):
            a = self.element(idx)
            if self.multiplicative_order(a) == n:
                return a
        raise ArithmeticError("no primitive element found")

    def find_primitive_element(self):
        return self.primitive_element

    # -- serialisation -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "s": self.s,
            "m": self.m,
            "f": serialize_poly(self.f),
            "g": serialize_poly(self.g),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data) -> Tower:
        fq = GF(data["p"], data["s"], parse_poly(data["f"]))
        return cls(fq, data["m"], parse_poly(data["g"]), seed=data.get("seed", 0))

    def __repr__(self):
        return f"Tower(q={self.q}, m={self.m}, f={serialize_poly(self.f)}, g={serialize_poly(self.g)})"


def build_tower(p: int, s: int, m: int, f=None, g=None, seed: int = 0, census: bool = False) -> Tower:
    """Validate or search moduli and return the tower F_p ⊂ F_{p^s} ⊂ F_{p^(s m)}."""
    if not is_prime(p):
        raise NotPrime(p)
    if census and (p**s) ** m > size_guard():
        raise SizeGuardExceeded(f"q^m = {(p**s)**m} exceeds census guard {size_guard()}")
    fq = GF(p, s, f, seed=seed)
    return Tower(fq, m, g, seed=seed)
