"""Finite fields GF(p^m) with exact arithmetic.

Prime fields store elements as ints; extensions store coefficient tuples over
GF(p) modulo the lexicographically smallest monic irreducible of degree m.
Element "codes" (base-p encodings) give a deterministic enumeration order used
wherever the package needs a canonical listing of field elements.
"""

from .numth import factorint


def _trim(t):
    i = len(t)
    while i and t[i - 1] == 0:
        i -= 1
    return t[:i]


def _poly_add(a, b, p):
    n = max(len(a), len(b))
    return _trim(tuple(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                       for i in range(n)))


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(tuple(out))


def _poly_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    rem = list(a)
    quo = [0] * max(len(a) - len(b) + 1, 0)
    while len(rem) >= len(b) and any(rem):
        rem = list(_trim(tuple(rem)))
        if len(rem) < len(b):
            break
        coef = rem[-1] * inv_lead % p
        shift = len(rem) - len(b)
        quo[shift] = coef
        for i, bi in enumerate(b):
            rem[shift + i] = (rem[shift + i] - coef * bi) % p
        rem = list(_trim(tuple(rem)))
    return _trim(tuple(quo)), _trim(tuple(rem))


def _poly_powmod(a, e, mod, p):
    result = (1,)
    base = _poly_divmod(a, mod, p)[1]
    while e:
        if e & 1:
            result = _poly_divmod(_poly_mul(result, base, p), mod, p)[1]
        base = _poly_divmod(_poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple(c * inv % p for c in a)
    return a


def _is_irreducible(f, p):
    """f monic of degree >= 1 over GF(p)."""
    m = len(f) - 1
    x = (0, 1)
    xq = _poly_powmod(x, p ** m, f, p)
    if _poly_add(xq, tuple(-c % p for c in x), p):
        return False
    for ell in factorint(m):
        xe = _poly_powmod(x, p ** (m // ell), f, p)
        g = _poly_gcd(_poly_add(xe, tuple(-c % p for c in x), p), f, p)
        if len(g) != 1:
            return False
    return True


class GFElem:
    """Element of a GF field; supports +, -, *, /, ** and exact equality."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, GFElem):
            if other.field is not self.field and other.field.q != self.field.q:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field
        if f.degree == 1:
            return GFElem(f, (self.value + o.value) % f.p)
        return GFElem(f, _poly_add(self.value, o.value, f.p))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.degree == 1:
            return GFElem(f, -self.value % f.p)
        return GFElem(f, tuple(-c % f.p for c in self.value))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field
        if f.degree == 1:
            return GFElem(f, self.value * o.value % f.p)
        return GFElem(f, _poly_divmod(_poly_mul(self.value, o.value, f.p), f.modulus, f.p)[1])

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        if f.degree == 1:
            return GFElem(f, pow(self.value, f.p - 2, f.p))
        # extended Euclid against the modulus
        r0, r1 = f.modulus, self.value
        s0, s1 = (), (1,)
        while r1:
            q, r = _poly_divmod(r0, r1, f.p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_add(s0, tuple(-c % f.p for c in _poly_mul(q, s1, f.p)), f.p)
        inv_lead = pow(r0[0], f.p - 2, f.p)
        return GFElem(f, _poly_divmod(tuple(c * inv_lead % f.p for c in s0), f.modulus, f.p)[1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        if self.field.degree == 1:
            return self.value != 0
        return bool(self.value)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.value == o.value

    def __hash__(self):
        return hash((self.field.q, self.value))

    def code(self):
        """Base-p integer encoding; defines the canonical element order."""
        f = self.field
        if f.degree == 1:
            return self.value
        return sum(c * f.p ** i for i, c in enumerate(self.value))

    def __repr__(self):
        return self.field.format(self)


class GF:
    """The finite field with q = p^m elements."""

    _cache = {}

    def __new__(cls, q):
        if q in cls._cache:
            return cls._cache[q]
        self = super().__new__(cls)
        fac = factorint(q)
        if len(fac) != 1:
            raise ValueError(f"{q} is not a prime power")
        (p, m), = fac.items()
        self.q = q
        self.p = p
        self.degree = m
        self.modulus = None
        if m > 1:
            self.modulus = self._find_modulus(p, m)
        cls._cache[q] = self
        return self

    @staticmethod
    def _find_modulus(p, m):
        # lexicographically smallest monic irreducible, scanning constant terms last
        for code in range(p ** m):
            coeffs = []
            c = code
            for _ in range(m):
                coeffs.append(c % p)
                c //= p
            f = tuple(coeffs) + (1,)
            if _is_irreducible(f, p):
                return f
        raise ArithmeticError("no irreducible polynomial found")

    @property
    def characteristic(self):
        return self.p

    def zero(self):
        return GFElem(self, 0 if self.degree == 1 else ())

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        if self.degree == 1:
            return GFElem(self, n % self.p)
        r = n % self.p
        return GFElem(self, (r,) if r else ())

    def gen(self):
        """The class of g, a root of the modulus (degree > 1 only)."""
        if self.degree == 1:
            raise ValueError("prime field has no extension generator")
        return GFElem(self, (0, 1))

    def from_code(self, code):
        if not 0 <= code < self.q:
            raise ValueError("code out of range")
        if self.degree == 1:
            return GFElem(self, code)
        coeffs = []
        while code:
            coeffs.append(code % self.p)
            code //= self.p
        return GFElem(self, _trim(tuple(coeffs)))

    def elements(self):
        for code in range(self.q):
            yield self.from_code(code)

    def is_square(self, c):
        if not c:
            raise ZeroDivisionError("square test on zero")
        if self.p == 2:
            return True
        return c ** ((self.q - 1) // 2) == self.one()

    def sqrt(self, c):
        """Square root; characteristic 2 only (Frobenius is bijective there)."""
        if self.p != 2:
            raise NotImplementedError("sqrt implemented for characteristic 2 only")
        return c ** (self.q // 2)

    def trace_to_f2(self, c):
        """Absolute trace GF(2^r) -> GF(2), returned as 0 or 1."""
        if self.p != 2:
            raise ValueError("absolute trace to GF(2) needs characteristic 2")
        acc = c
        t = c
        for _ in range(self.degree - 1):
            t = t * t
            acc = acc + t
        if not acc:
            return 0
        if acc == self.one():
            return 1
        raise ArithmeticError("trace landed outside GF(2)")

    def format(self, c):
        if self.degree == 1:
            return str(c.value)
        if not c.value:
            return "0"
        terms = []
        for i in range(len(c.value) - 1, -1, -1):
            a = c.value[i]
            if a == 0:
                continue
            if i == 0:
                terms.append(str(a))
            else:
                head = "" if a == 1 else f"{a}*"
                terms.append(f"{head}g" if i == 1 else f"{head}g^{i}")
        return "+".join(terms)

    def __repr__(self):
        return f"GF({self.q})"
