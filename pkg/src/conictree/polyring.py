"""Generic exact univariate arithmetic over an arbitrary coefficient field.

`Poly` and `RatFunc` take a field object providing zero()/one()/from_int();
coefficients themselves must support +, -, *, /, ==, bool.  This lets the same
code serve GF(q)[u], Frac(GF(q)[u])[x], Q[x], and nested combinations.

`RatFunc` is kept in a unique canonical form: numerator and denominator
coprime, denominator monic.  Equality of canonical forms is representation
equality.

`LaurentQ` models finite Laurent polynomials over Q (the sign-exact stand-in
for a real Laurent series field).  Division is supported only when it is exact
in this finite model.
"""

import math
from fractions import Fraction

from .errors import UnsupportedFieldError
from .numth import factorint


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one(),))

    @classmethod
    def const(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def gen(cls, field):
        return cls(field, (field.zero(), field.one()))

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lead(self):
        if not self.coeffs:
            raise ZeroDivisionError("leading coefficient of zero")
        return self.coeffs[-1]

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else self.field.zero()

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly.const(self.field, self.field.from_int(other))
        return Poly.const(self.field, other)

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        z = self.field.zero()
        return Poly(self.field,
                    [(self.coeffs[i] if i < len(self.coeffs) else z)
                     + (o.coeffs[i] if i < len(o.coeffs) else z) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if not self or not o:
            return Poly.zero(self.field)
        z = self.field.zero()
        out = [z] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        z = self.field.zero()
        qlen = max(len(rem) - len(o.coeffs) + 1, 0)
        quo = [z] * qlen
        inv_lead = self.field.one() / o.lead()
        while len(rem) >= len(o.coeffs):
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) < len(o.coeffs):
                break
            coef = rem[-1] * inv_lead
            shift = len(rem) - len(o.coeffs)
            quo[shift] = coef
            for i, bi in enumerate(o.coeffs):
                rem[shift + i] = rem[shift + i] - coef * bi
            rem.pop()
        return Poly(self.field, quo), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def powmod(self, e, mod):
        result = Poly.one(self.field) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def monic(self):
        if not self:
            return self
        inv = self.field.one() / self.lead()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def gcd(self, other):
        a, b = self, self._coerce(other)
        if not a or not b:
            return (a or b).monic() if (a or b) else a
        if a.degree == 0 or b.degree == 0:
            return Poly.one(self.field)
        if isinstance(a.lead(), Fraction) and isinstance(b.lead(), Fraction):
            return Poly(self.field, _fraction_poly_gcd(a.coeffs, b.coeffs))
        if isinstance(a.lead(), RatFunc):
            return Poly(self.field, _nested_poly_gcd(a.coeffs, b.coeffs))
        # generic Euclid; remainders renormalized to control coefficient swell
        b = b.monic()
        while b:
            r = a % b
            a, b = b, (r.monic() if r else r)
        return a.monic()

    def derivative(self):
        return Poly(self.field,
                    [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def __call__(self, point):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def valuation_at(self, p):
        """Multiplicity of the irreducible p in self (self nonzero)."""
        if not self:
            raise ZeroDivisionError("valuation of zero polynomial")
        v = 0
        cur = self
        while True:
            q, r = divmod(cur, p)
            if r:
                return v
            v += 1
            cur = q

    def __eq__(self, other):
        if isinstance(other, (Poly, int)) or not isinstance(other, type(self)):
            o = self._coerce(other)
            return self.coeffs == o.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def format(self, var, fmt_coeff):
        if not self.coeffs:
            return "0"
        one = self.field.one()
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = fmt_coeff(c)
            if i == 0:
                terms.append(cs)
                continue
            power = var if i == 1 else f"{var}^{i}"
            if c == one:
                terms.append(power)
            else:
                if any(op in cs for op in "+-") and not cs.lstrip("-").isdigit():
                    cs = f"({cs})"
                terms.append(f"{cs}*{power}")
        return "+".join(terms).replace("+-", "-")

    def __repr__(self):
        return self.format("T", repr)


def _primitive_ints(coeffs):
    """Fraction list -> content-free integer list (same roots)."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    content = 0
    for v in ints:
        content = math.gcd(content, v)
    return [v // content for v in ints] if content else ints


def _int_pseudo_rem(a, b):
    """Pseudo-remainder of integer coefficient lists (exact, no fractions)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while True:
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            return r
        shift = len(r) - 1 - db
        top = r[-1]
        r = [lb * c for c in r]
        for j in range(db + 1):
            r[shift + j] -= top * b[j]
        r.pop()


def _fraction_poly_gcd(pa, pb):
    """Monic gcd of two Fraction-coefficient lists via the primitive PRS."""
    a = _primitive_ints(pa)
    b = _primitive_ints(pb)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_pseudo_rem(a, b)
        content = 0
        for v in r:
            content = math.gcd(content, v)
        if content:
            r = [v // content for v in r]
        a, b = b, r
    lead = a[-1]
    return [Fraction(c, lead) for c in a]


def _monic_irreducibles_over(base):
    """Monic irreducibles over a GF coefficient field, by degree then code."""
    deg = 1
    while True:
        for code in range(base.q ** deg):
            coeffs = []
            c = code
            for _ in range(deg):
                coeffs.append(base.from_code(c % base.q))
                c //= base.q
            f = Poly(base, coeffs + [base.one()])
            if irreducible_over_gf(f):
                yield f
        deg += 1


def _certified_coprime(a, b, base, tries=3):
    """True certifies gcd = 1 for primitive coefficient lists over GF(q)[u].

    Reduce modulo a place not dividing either leading coefficient: any common
    factor survives with its degree, so a trivial modular gcd implies a
    trivial gcd.  A nontrivial modular gcd is inconclusive (unlucky places
    exist), so after a few tries the caller falls back to the full sequence.
    """
    lc = a[-1] * b[-1]
    tested = 0
    for place in _monic_irreducibles_over(base):
        if not lc % place:
            continue
        ring = QuotientRing(place)
        one = Poly.one(base)

        def reduce_list(coeffs):
            out = [ring.reduce(c) for c in coeffs]
            while out and not out[-1]:
                out.pop()
            return out

        ra, rb = reduce_list(a), reduce_list(b)
        while rb:
            inv = ring.inv(rb[-1])
            rem = list(ra)
            while len(rem) >= len(rb):
                if not rem[-1]:
                    rem.pop()
                    continue
                coef = ring.mul(rem[-1], inv)
                shift = len(rem) - len(rb)
                for j, bj in enumerate(rb):
                    rem[shift + j] = (rem[shift + j] - ring.mul(coef, bj)) % place
                rem.pop()
            while rem and not rem[-1]:
                rem.pop()
            ra, rb = rb, rem
        if len(ra) == 1:
            return True
        tested += 1
        if tested >= tries:
            return False
    return False


def _nested_poly_gcd(pa, pb):
    """Monic gcd of polynomials whose coefficients are RatFunc values.

    Clears coefficient denominators, strips the coefficient-gcd content, and
    runs a pseudo-remainder sequence entirely in the underlying polynomial
    ring, where coefficient gcds are cheap.  Coprimality (the generic case)
    is certified first by a reduction modulo a place, which short-circuits
    the expensive sequence.
    """
    base = pa[0].field

    def content_of(polys):
        content = None
        for v in polys:
            if v:
                content = content.gcd(v) if content is not None else v.monic()
                if content.degree == 0:
                    return None
        return content

    def to_primitive(coeffs):
        den = Poly.one(base)
        for c in coeffs:
            if c.den.degree > 0:
                g = den.gcd(c.den)
                den = den * (c.den // g)
        if den.degree > 0:
            rden = RatFunc(base, den)
            ints = [(c * rden).to_poly() for c in coeffs]
        else:
            ints = [c.num for c in coeffs]
        content = content_of(ints)
        if content is not None:
            ints = [v // content for v in ints]
        return ints

    def pseudo_rem(a, b):
        """Standard pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
        db = len(b) - 1
        lb = b[-1]
        expected = len(a) - len(b) + 1
        steps = 0
        r = list(a)
        while True:
            while r and not r[-1]:
                r.pop()
            if len(r) - 1 < db:
                break
            shift = len(r) - 1 - db
            top = r[-1]
            r = [lb * c for c in r]
            for j in range(db + 1):
                r[shift + j] = r[shift + j] - top * b[j]
            r.pop()
            steps += 1
        if r and steps < expected:
            f = lb ** (expected - steps)
            r = [f * c for c in r]
        return r

    def strip_content(r):
        content = content_of(r)
        if content is not None:
            return [v // content for v in r]
        return r

    def exact_div(c, divisor):
        q, rem = divmod(c, divisor)
        if rem:
            raise ArithmeticError("subresultant division was not exact")
        return q

    a = to_primitive(pa)
    b = to_primitive(pb)
    if _certified_coprime(a, b, base):
        return [RatFunc(base, Poly.one(base))]
    if len(a) < len(b):
        a, b = b, a
    # subresultant sequence: pseudo-remainders shrink by known exact divisors
    one = Poly.one(base)
    g = h = one
    while True:
        delta = len(a) - len(b)
        r = pseudo_rem(a, b)
        if not r:
            result = strip_content(b)
            break
        if len(r) == 1:
            return [RatFunc(base, one)]
        divisor = g * h ** delta
        if divisor.degree > 0 or divisor.lead() != base.one():
            r = [exact_div(c, divisor) for c in r]
        a, b = b, r
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = exact_div(g ** delta, h ** (delta - 1))
    lead = RatFunc(base, result[-1])
    return [RatFunc(base, c) / lead for c in result]


def irreducible_over_gf(f):
    """Irreducibility test for a monic Poly over a GF coefficient field."""
    q = f.field.q
    m = f.degree
    if m <= 0:
        return False
    if m == 1:
        return True
    x = Poly.gen(f.field)
    if x.powmod(q ** m, f) != x % f:
        return False
    for ell in factorint(m):
        g = (x.powmod(q ** (m // ell), f) - x).gcd(f)
        if g.degree != 0:
            return False
    return True


def poly_is_square(f):
    """Exact perfect-square test for a Poly over GF(q)."""
    field = f.field
    if not f:
        return True
    if f.degree % 2:
        return False
    if not field.is_square(f.lead()):
        return False
    return _monic_sqrt(f.monic()) is not None


def _monic_sqrt(f):
    """Square root of a monic Poly over GF(q), or None."""
    field = f.field
    d = f.degree // 2
    if field.characteristic == 2:
        if any(f.coeffs[i] for i in range(1, f.degree + 1, 2)):
            return None
        root = Poly(field, [field.sqrt(f.coeffs[2 * i]) for i in range(d + 1)])
        return root if root * root == f else None
    z = field.zero()
    g = [z] * (d + 1)
    g[d] = field.one()
    two = field.from_int(2)
    # match coefficients from the top down; everything is determined linearly
    for k in range(2 * d - 1, d - 1, -1):
        i = k - d
        acc = f.coeffs[k]
        for j in range(i + 1, d):
            if 0 <= k - j <= d:
                acc = acc - g[j] * g[k - j]
        g[i] = acc / two
    root = Poly(field, g)
    return root if root * root == f else None


class RatFunc:
    """Rational function num/den in canonical reduced, monic-denominator form."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=None):
        if den is None:
            den = Poly.one(field)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        g = num.gcd(den)
        if g.degree > 0:
            num = num // g
            den = den // g
        inv = field.one() / den.lead()
        if not (den.lead() == field.one()):
            num = num * Poly.const(field, inv)
            den = den * Poly.const(field, inv)
        self.field = field
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, field, num, den):
        """Construct without re-reduction; caller guarantees canonical form."""
        self = object.__new__(cls)
        self.field = field
        self.num = num
        self.den = den
        return self

    @classmethod
    def const(cls, field, c):
        return cls(field, Poly.const(field, c))

    @classmethod
    def from_int(cls, field, n):
        return cls(field, Poly.const(field, field.from_int(n)))

    @classmethod
    def gen(cls, field):
        return cls(field, Poly.gen(field))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(self.field, other)
        if isinstance(other, int):
            return RatFunc.from_int(self.field, other)
        return RatFunc.const(self.field, other)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.field, self.num + o.num, self.den)
        return RatFunc(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(self.field, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.field, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e):
        if e < 0:
            return (RatFunc(self.field, self.den, self.num)) ** (-e)
        return RatFunc(self.field, self.num ** e, self.den ** e)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_polynomial(self):
        return self.den.degree == 0

    def to_poly(self):
        if not self.is_polynomial():
            raise ValueError("not a polynomial")
        return self.num

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_term()

    def valuation_at_infinity(self):
        """deg(den) - deg(num); the degree valuation of the function field."""
        if not self.num:
            raise ZeroDivisionError("valuation of zero")
        return self.den.degree - self.num.degree

    def residue_at_infinity(self):
        """Value at infinity for v_inf >= 0: lead ratio when v_inf = 0, else 0."""
        if not self.num:
            return self.field.zero()
        v = self.valuation_at_infinity()
        if v < 0:
            raise ValueError("pole at infinity")
        if v > 0:
            return self.field.zero()
        return self.num.lead() / self.den.lead()

    def valuation_at(self, p):
        if not self.num:
            raise ZeroDivisionError("valuation of zero")
        return self.num.valuation_at(p) - self.den.valuation_at(p)

    def format(self, var, fmt_coeff):
        ns = self.num.format(var, fmt_coeff)
        if self.den.degree == 0:
            return ns
        return f"({ns})/({self.den.format(var, fmt_coeff)})"

    def __repr__(self):
        return self.format("T", repr)


class QuotientRing:
    """GF(q)[u] / (P) for an irreducible P; elements are reduced Polys."""

    def __init__(self, modulus):
        self.field = modulus.field
        self.modulus = modulus.monic()
        self.size = self.field.q ** modulus.degree

    def reduce(self, poly):
        return poly % self.modulus

    def of_ratfunc(self, r):
        """Image of a rational function that is a unit at the place."""
        den = self.reduce(r.den)
        if not den:
            raise ZeroDivisionError("denominator vanishes at the place")
        return self.mul(self.reduce(r.num), self.inv(den))

    def mul(self, a, b):
        return (a * b) % self.modulus

    def inv(self, a):
        a = self.reduce(a)
        if not a:
            raise ZeroDivisionError("inverse of zero residue")
        r0, r1 = self.modulus, a
        one = Poly.one(self.field)
        s0, s1 = Poly.zero(self.field), one
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        return (s0 * Poly.const(self.field, self.field.one() / r0.lead())) % self.modulus

    def pow(self, a, e):
        return a.powmod(e, self.modulus)

    def is_square(self, a):
        a = self.reduce(a)
        if not a:
            raise ZeroDivisionError("square test on zero residue")
        if self.field.characteristic == 2:
            return True
        return self.pow(a, (self.size - 1) // 2) == Poly.one(self.field)

    def sqrt(self, a):
        if self.field.characteristic != 2:
            raise NotImplementedError("residue sqrt implemented for characteristic 2 only")
        return self.pow(self.reduce(a), self.size // 2)

    def trace_to_f2(self, a):
        """Absolute trace of the residue ring down to GF(2), as 0 or 1."""
        if self.field.characteristic != 2:
            raise ValueError("absolute trace to GF(2) needs characteristic 2")
        a = self.reduce(a)
        acc = a
        t = a
        n = self.field.degree * self.modulus.degree
        for _ in range(n - 1):
            t = self.mul(t, t)
            acc = (acc + t) % self.modulus
        if not acc:
            return 0
        if acc == Poly.one(self.field):
            return 1
        raise ArithmeticError("trace landed outside GF(2)")


class LaurentQ:
    """Finite Laurent polynomial over Q: coeffs[i] is the coefficient of u^(min_exp+i)."""

    __slots__ = ("min_exp", "coeffs")

    def __init__(self, min_exp=0, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[0] == 0:
            cs.pop(0)
            min_exp += 1
        while cs and cs[-1] == 0:
            cs.pop()
        self.min_exp = min_exp if cs else 0
        self.coeffs = tuple(cs)

    @classmethod
    def from_fraction(cls, c):
        return cls(0, (Fraction(c),))

    @classmethod
    def u_power(cls, k):
        return cls(k, (Fraction(1),))

    def __bool__(self):
        return bool(self.coeffs)

    def valuation(self):
        if not self.coeffs:
            raise ZeroDivisionError("valuation of zero")
        return self.min_exp

    def leading(self):
        if not self.coeffs:
            raise ZeroDivisionError("leading coefficient of zero")
        return self.coeffs[0]

    def sign_class(self):
        """Square-class data: (valuation parity, sign of leading coefficient)."""
        return (self.valuation() % 2, 1 if self.leading() > 0 else -1)

    def _coerce(self, other):
        if isinstance(other, LaurentQ):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentQ.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.coeffs:
            return o
        if not o.coeffs:
            return self
        lo = min(self.min_exp, o.min_exp)
        hi = max(self.min_exp + len(self.coeffs), o.min_exp + len(o.coeffs))
        out = [Fraction(0)] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.min_exp - lo + i] += c
        for i, c in enumerate(o.coeffs):
            out[o.min_exp - lo + i] += c
        return LaurentQ(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentQ(self.min_exp, [-c for c in self.coeffs])

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
        if not self.coeffs or not o.coeffs:
            return LaurentQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return LaurentQ(self.min_exp + o.min_exp, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o:
            raise ZeroDivisionError("division by zero")
        if not self:
            return LaurentQ()
        # exact division only: divide the underlying Q[u] polynomials
        quo, rem = _qpoly_divmod(list(self.coeffs), list(o.coeffs))
        if any(rem):
            raise UnsupportedFieldError(
                "nonterminating division in the finite Laurent model")
        return LaurentQ(self.min_exp - o.min_exp, quo)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e):
        if e < 0:
            inv = LaurentQ.from_fraction(1) / self
            return inv ** (-e)
        result = LaurentQ.from_fraction(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.min_exp == o.min_exp and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.min_exp, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.min_exp + i
            if e == 0:
                terms.append(str(c))
            else:
                power = "u" if e == 1 else f"u^{e}"
                if c == 1:
                    terms.append(power)
                elif c == -1:
                    terms.append(f"-{power}")
                else:
                    terms.append(f"{c}*{power}")
        return "+".join(terms).replace("+-", "-")


def _qpoly_divmod(a, b):
    """Long division of Q-coefficient lists (ascending), remainder included."""
    out = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    while len(rem) >= len(b) and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(b):
            break
        c = rem[-1] / b[-1]
        shift = len(rem) - len(b)
        out[shift] = c
        for i, bi in enumerate(b):
            rem[shift + i] -= c * bi
        rem.pop()
    return out, rem


def solve_linear(rows, rhs, field):
    """Solve rows * x = rhs exactly over a field; free variables are set to 0.

    Returns the solution list, or None when the system is inconsistent.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(n):
        pr = next((r for r in range(row, m) if a[r][col]), None)
        if pr is None:
            continue
        a[row], a[pr] = a[pr], a[row]
        inv = field.one() / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(m):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if a[r][n]:
            return None
    x = [field.zero()] * n
    for r, col in enumerate(pivots):
        x[col] = a[r][n]
    return x
