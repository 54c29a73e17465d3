"""Integer and rational number theory: primality, factorization, Legendre and
Hilbert symbols over Q and Q_p.

Everything here is exact.  Hilbert symbols follow the classical local formulas:
the tame formula at odd primes, the epsilon/omega formula at 2, and the sign
rule at the real place.
"""

import math
from fractions import Fraction

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin (valid far beyond any input used here)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n):
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"failed to split {n}")


def factorint(n):
    """Prime factorization of a positive integer as a {prime: exponent} dict."""
    if n <= 0:
        raise ValueError("positive integer required")
    out = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f < 100000:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += wheel[i]
        i = (i + 1) % 8
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))
    return out


def int_valuation(n, p):
    """Exponent of p in n (n a nonzero integer)."""
    if n == 0:
        raise ZeroDivisionError("valuation of 0")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def fraction_valuation(q, p):
    q = Fraction(q)
    return int_valuation(q.numerator, p) - int_valuation(q.denominator, p)


def fraction_unit_part(q, p):
    """q / p^v(q) as a Fraction (a p-adic unit)."""
    return Fraction(q) / Fraction(p) ** fraction_valuation(q, p)


def is_square_fraction(q):
    """Exact perfect-square test for a rational number."""
    q = Fraction(q)
    if q <= 0:
        return q == 0
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    return rn * rn == q.numerator and rd * rd == q.denominator


def legendre(a, p):
    """Legendre symbol of the p-adic-unit rational a at an odd prime p."""
    a = Fraction(a)
    rep = a.numerator * a.denominator % p
    if rep % p == 0:
        raise ValueError(f"{a} is not a unit at {p}")
    return 1 if pow(rep, (p - 1) // 2, p) == 1 else -1


def rational_prime_support(*values):
    """All primes dividing a numerator or denominator of the given rationals."""
    primes = set()
    for v in values:
        v = Fraction(v)
        for n in (abs(v.numerator), v.denominator):
            if n > 1:
                primes.update(factorint(n))
    return primes


def hilbert_symbol(a, b, place):
    """Hilbert symbol (a, b) at a place of Q: "inf", 2, or an odd prime."""
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 or b == 0:
        raise ZeroDivisionError("Hilbert symbol needs nonzero arguments")
    if place == "inf":
        return -1 if a < 0 and b < 0 else 1
    p = place
    alpha = fraction_valuation(a, p)
    beta = fraction_valuation(b, p)
    u = fraction_unit_part(a, p)
    v = fraction_unit_part(b, p)
    if p == 2:
        def eps(x):
            return (x.numerator * x.denominator - 1) // 2 % 2

        def omega(x):
            r = x.numerator * x.denominator % 8
            return (r * r - 1) // 8 % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = 1
    if alpha % 2 and beta % 2 and legendre(-1, p) == -1:
        s = -s
    if beta % 2 and legendre(u, p) == -1:
        s = -s
    if alpha % 2 and legendre(v, p) == -1:
        s = -s
    return s


def hilbert_places(a, b):
    """Finite place set outside of which (a, b) is automatically trivial."""
    places = {"inf", 2}
    places.update(rational_prime_support(a, b))
    return places


def represented_by_binary_form(c, d):
    """True iff c is of the form alpha^2 - d*beta^2 over Q, i.e. a norm from Q(sqrt(d)).

    Local-global: c is represented iff (c, d)_v = 1 at every place of the
    joint support (the product formula covers the rest).
    """
    c = Fraction(c)
    d = Fraction(d)
    if is_square_fraction(d):
        return True
    return all(hilbert_symbol(c, d, v) == 1 for v in hilbert_places(c, d))


def qp_is_square(c, p):
    """Exact square test in Q_p for a rational input."""
    c = Fraction(c)
    if c == 0:
        return True
    if fraction_valuation(c, p) % 2:
        return False
    u = fraction_unit_part(c, p)
    if p == 2:
        return u.numerator * pow(u.denominator, -1, 8) % 8 == 1
    return legendre(u, p) == 1
