"""Integer primality and factorisation for word-sized integers.

Miller-Rabin with the first twelve prime bases is deterministic for every
n < 3.3e24, which covers the 64-bit range used for field orders.
"""
from math import gcd, isqrt

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_LIMIT = 10**6


def _small_primes(limit):
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_PRIMES = _small_primes(_TRIAL_LIMIT)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")


def factor_u64(n: int) -> list[tuple[int, int]]:
    """Prime factorisation of ``n`` as ``[(prime, exponent), ...]``, primes ascending.

    Trial division strips primes below 10**6; the cofactor is split with
    Brent's variant of Pollard rho.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    found: dict[int, int] = {}
    for p in _PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        x = stack.pop()
        if is_prime(x):
            found[x] = found.get(x, 0) + 1
            continue
        r = isqrt(x)
        if r * r == x:
            stack += [r, r]
            continue
        d = _pollard_brent(x)
        stack += [d, x // d]
    return sorted(found.items())


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factor_u64(n)]


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor_u64(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factor_u64(n):
        result -= result // p
    return result


def mobius(n: int) -> int:
    fact = factor_u64(n)
    if any(e > 1 for _, e in fact):
        return 0
    return -1 if len(fact) % 2 else 1


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``p**s``; raise ValueError when q is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    fact = factor_u64(q)
    if len(fact) != 1:
        raise ValueError(f"{q} is not a prime power")
    return fact[0]


def multiplicative_order_mod(a: int, n: int) -> int:
    """Order of ``a`` in (Z/n)^*; requires gcd(a, n) = 1."""
    if n == 1:
        return 1
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    order = euler_phi(n)
    for p, e in factor_u64(order):
        for _ in range(e):
            if pow(a, order // p, n) == 1:
                order //= p
            else:
                break
    return order
