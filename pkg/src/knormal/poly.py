"""Dense univariate polynomials over an arbitrary finite field object.

A polynomial is a tuple of field elements, constant term first, with no
trailing zeros; the zero polynomial is the empty tuple.  The field object
supplies ``zero``, ``one``, ``size`` and the methods ``add``, ``sub``,
``neg``, ``mul``, ``inv``.  Both the base field and the tower implement it,
so the same routines serve F_q[x] and F_{q^m}[x].
"""
from .primes import prime_divisors


def trim(F, coeffs):
    coeffs = list(coeffs)
    z = F.zero
    while coeffs and coeffs[-1] == z:
        coeffs.pop()
    return tuple(coeffs)


def degree(a):
    """Degree of ``a``; ``None`` for the zero polynomial."""
    return len(a) - 1 if a else None


def monomial(F, n, c=None):
    return (F.zero,) * n + (F.one if c is None else c,)


def constant(F, c):
    return trim(F, (c,))


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(F, out)


def sub(F, a, b):
    n = max(len(a), len(b))
    z = F.zero
    out = [F.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)]
    return trim(F, out)


def neg(F, a):
    return tuple(F.neg(c) for c in a)


def scale(F, c, a):
    if c == F.zero:
        return ()
    return tuple(F.mul(c, x) for x in a)


def mul(F, a, b):
    if not a or not b:
        return ()
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == F.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def divmod_(F, a, b):
    """Return ``(quot, rem)`` with ``a = quot*b + rem`` and deg rem < deg b."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    quot = [F.zero] * max(len(a) - db, 0)
    z = F.zero
    for i in range(len(a) - 1, db - 1, -1):
        c = rem[i]
        if c == z:
            continue
        c = F.mul(c, lead_inv)
        quot[i - db] = c
        for j, y in enumerate(b):
            rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, y))
    return trim(F, quot), trim(F, rem[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def exact_div(F, a, b):
    quot, rem = divmod_(F, a, b)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return quot


def monic(F, a):
    if not a:
        return ()
    return scale(F, F.inv(a[-1]), a)


def gcd(F, a, b):
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def gcdext(F, a, b):
    """Return ``(g, s, t)`` with ``g = s*a + t*b`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = constant(F, F.one), ()
    t0, t1 = (), constant(F, F.one)
    while r1:
        quo, rem = divmod_(F, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(F, s0, mul(F, quo, s1))
        t0, t1 = t1, sub(F, t0, mul(F, quo, t1))
    if not r0:
        return (), s0, t0
    lc = F.inv(r0[-1])
    return scale(F, lc, r0), scale(F, lc, s0), scale(F, lc, t0)


def mulmod(F, a, b, m):
    return mod(F, mul(F, a, b), m)


def powmod(F, a, e, m):
    result = mod(F, constant(F, F.one), m)
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mulmod(F, result, base, m)
        e >>= 1
        if e:
            base = mulmod(F, base, base, m)
    return result


def pow_(F, a, e):
    result = constant(F, F.one)
    while e:
        if e & 1:
            result = mul(F, result, a)
        e >>= 1
        if e:
            a = mul(F, a, a)
    return result


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _frobenius_power_table(F, f):
    """Rows are x^(i*size) mod f for i < deg f, used to raise to the q-th power."""
    n = len(f) - 1
    xq = powmod(F, monomial(F, 1), F.size, f)
    rows = [constant(F, F.one)]
    for _ in range(1, n):
        rows.append(mulmod(F, rows[-1], xq, f))
    return rows


def _compose_frobenius(F, a, rows):
    # a(x)^q = sum a_i^q x^{iq}; a_i is fixed by the q-power map over F
    out = ()
    for i, c in enumerate(a):
        if c != F.zero:
            out = add(F, out, scale(F, c, rows[i]))
    return out


def is_irreducible(F, f) -> bool:
    """Rabin's test: x^(q^n) = x mod f and gcd(x^(q^(n/l)) - x, f) = 1 for primes l | n."""
    n = degree(f)
    if n is None or n < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    if n == 1:
        return True
    f = monic(F, f)
    rows = _frobenius_power_table(F, f)
    x = monomial(F, 1)
    powers = [mod(F, x, f)]
    for _ in range(n):
        powers.append(_compose_frobenius(F, powers[-1], rows))
    if powers[n] != powers[0]:
        return False
    for ell in prime_divisors(n):
        h = sub(F, powers[n // ell], x)
        if degree(gcd(F, h, f)) != 0:
            return False
    return True
