"""Supported constant fields k and their square/norm decision engines.

Five kinds of constant field are supported, all with exact element
representations:

* ``Q``        -- the rationals, as ``fractions.Fraction``.
* ``R``        -- a sign-exact model of the reals: elements are rationals and
                  the square test is positivity.  Sound because every decision
                  made over the reals in this package consumes sign data only.
* ``R((u))``   -- a sign-exact model of real Laurent series: finite Laurent
                  polynomials with rational coefficients.  Square and norm
                  classes depend only on (valuation parity, leading sign).
* ``GF(q)(u)`` -- rational functions over a finite field, odd q or q = 2^r.
* ``Qp(p)``    -- p-adic norm classes of rational inputs.  Supports only the
                  class-level operations; element arithmetic is rejected.

The norm engines decide membership in the value groups of the two determinant
forms attached to a curve: the binary edge form (alpha^2 + rho*beta^2, or
alpha^2 + alpha*beta + rho*beta^2 in the separable characteristic-2 case) and
the quaternary vertex form.  Decisions are local-global where the field is
global (Hilbert symbols for odd residue characteristic, Artin-Schreier symbols
in characteristic 2) and class computations where the field is a sign-exact
model.
"""

import enum
import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import numth
from .core import OMEGA, CaseTag
from .errors import (FiniteIndexError, ParseError, UnsupportedFieldError,
                     ZeroInputError)
from .gfq import GF, GFElem
from .polyring import LaurentQ, Poly, QuotientRing, RatFunc


class FieldKind(enum.Enum):
    Q_EXACT = "QExact"
    FQ_RATIONAL = "FqRationalFunc"
    F2R_RATIONAL = "F2rRationalFunc"
    REAL_CLOSED = "RealClosedModel"
    REAL_LAURENT = "RealLaurentModel"
    QP_CLASSES = "QpClassesOnly"


@dataclass(frozen=True)
class FieldDescriptor:
    kind: FieldKind
    characteristic: int
    parameter: int = 0  # q for function fields, p for Qp, else 0


# ---------------------------------------------------------------------------
# element grammar


_TOKEN_CHARS = set("+-*/^() \t")


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif ch.isalpha():
            tokens.append(("name", ch))
            i += 1
        elif ch in "+-*/^()":
            tokens.append((ch, ch))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} in {text!r}")
    return tokens


class _Parser:
    """Recursive-descent evaluator for the shared element grammar."""

    def __init__(self, field, tokens):
        self.field = field
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind=None):
        if self.pos >= len(self.tokens):
            raise ParseError("unexpected end of input")
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input at token {self.tokens[self.pos][1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            w = self.factor()
            if op == "*":
                v = v * w
            else:
                if not w:
                    raise ParseError("division by zero")
                v = v / w
        return v

    def factor(self):
        neg = False
        while self.peek() == "-":
            self.take()
            neg = not neg
        v = self.atom()
        if self.peek() == "^":
            self.take()
            e = self.exponent()
            if e < 0:
                v = (self.field.one() / v) ** (-e)
            else:
                v = v ** e
        return -v if neg else v

    def exponent(self):
        neg = False
        while self.peek() == "-":
            self.take()
            neg = not neg
        tok = self.take("int")
        return -tok[1] if neg else tok[1]

    def atom(self):
        kind = self.peek()
        if kind == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if kind == "int":
            return self.field.from_int(self.take()[1])
        if kind == "name":
            name = self.take()[1]
            return self.field.named_atom(name)
        raise ParseError(f"unexpected token {self.tokens[self.pos][1]!r}"
                         if self.pos < len(self.tokens) else "empty expression")


# ---------------------------------------------------------------------------
# constant fields


class ConstantField:
    """Common surface of all supported constant fields."""

    kind = None
    characteristic = None
    supports_element_arithmetic = True

    @property
    def descriptor(self):
        return FieldDescriptor(self.kind, self.characteristic, getattr(self, "parameter", 0))

    # element construction -------------------------------------------------
    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        raise NotImplementedError

    def named_atom(self, name):
        raise ParseError(f"symbol {name!r} has no meaning over {self}")

    def parse(self, text):
        return _Parser(self, _tokenize(text)).parse()

    def format(self, c):
        raise NotImplementedError

    # decision surface ------------------------------------------------------
    def is_square(self, c):
        raise NotImplementedError

    def element_sequence(self):
        """Deterministic stream of distinct elements, starting 0, 1, ..."""
        raise NotImplementedError

    def random_element(self, rng, nonzero=False):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, ConstantField) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)


class RationalExactField(ConstantField):
    kind = FieldKind.Q_EXACT
    characteristic = 0

    def from_int(self, n):
        return Fraction(n)

    def format(self, c):
        return str(Fraction(c))

    def is_square(self, c):
        if not c:
            raise ZeroInputError("square test on zero")
        return numth.is_square_fraction(c)

    def element_sequence(self):
        yield Fraction(0)
        for n in itertools.count(1):
            yield Fraction(n)
            yield Fraction(-n)

    def random_element(self, rng, nonzero=False):
        while True:
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if c or not nonzero:
                return c

    def __repr__(self):
        return "Q"


class RealClosedField(RationalExactField):
    """Sign-exact model of the reals; only the square test differs from Q."""

    kind = FieldKind.REAL_CLOSED

    def is_square(self, c):
        if not c:
            raise ZeroInputError("square test on zero")
        return c > 0

    def __repr__(self):
        return "R"


class PadicClassField(ConstantField):
    """Q_p norm classes on rational inputs; no element arithmetic."""

    kind = FieldKind.QP_CLASSES
    characteristic = 0
    supports_element_arithmetic = False

    def __init__(self, p):
        if not numth.is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.parameter = p

    def from_int(self, n):
        return Fraction(n)

    def format(self, c):
        return str(Fraction(c))

    def is_square(self, c):
        if not c:
            raise ZeroInputError("square test on zero")
        return numth.qp_is_square(c, self.p)

    def element_sequence(self):
        yield Fraction(0)
        for n in itertools.count(1):
            yield Fraction(n)
            yield Fraction(-n)

    def random_element(self, rng, nonzero=False):
        while True:
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if c or not nonzero:
                return c

    def __repr__(self):
        return f"Qp({self.p})"


class RationalFunctionField(ConstantField):
    """GF(q)(u) with exact rational-function elements."""

    def __init__(self, q):
        self.base = GF(q)
        self.q = q
        self.parameter = q
        self.characteristic = self.base.p
        self.kind = (FieldKind.F2R_RATIONAL if self.base.p == 2
                     else FieldKind.FQ_RATIONAL)

    def from_int(self, n):
        return RatFunc.from_int(self.base, n)

    def named_atom(self, name):
        if name == "u":
            return RatFunc.gen(self.base)
        if name == "g" and self.base.degree > 1:
            return RatFunc.const(self.base, self.base.gen())
        raise ParseError(f"symbol {name!r} has no meaning over {self}")

    def format(self, c):
        return c.format("u", self.base.format)

    def is_square(self, c):
        if not c:
            raise ZeroInputError("square test on zero")
        from .polyring import poly_is_square
        lead = c.num.lead()
        if not self.base.is_square(lead):
            return False
        return poly_is_square(c.num.monic()) and poly_is_square(c.den)

    def in_artin_schreier_image(self, c):
        """True iff c = a^2 + a for some a in GF(q)(u) (characteristic 2)."""
        if self.characteristic != 2:
            raise UnsupportedFieldError("Artin-Schreier image needs characteristic 2")
        if not c:
            return True
        red = artin_schreier_reduce(self, c)
        return red.is_trivial()

    def element_sequence(self):
        # constants by code, then polynomials in u by code
        for code in itertools.count():
            yield self._element_from_code(code)

    def _element_from_code(self, code):
        coeffs = []
        q = self.q
        while code:
            coeffs.append(self.base.from_code(code % q))
            code //= q
        return RatFunc(self.base, Poly(self.base, coeffs))

    def random_element(self, rng, nonzero=False):
        while True:
            num = Poly(self.base, [self.base.from_code(rng.randrange(self.q))
                                   for _ in range(rng.randint(1, 3))])
            den = Poly(self.base, [self.base.from_code(rng.randrange(self.q))
                                   for _ in range(rng.randint(0, 2))] + [self.base.one()])
            if num or not nonzero:
                if num:
                    return RatFunc(self.base, num, den)
                return RatFunc(self.base, num)

    def monic_irreducibles(self):
        """All monic irreducible polynomials, by degree then coefficient code."""
        from .polyring import irreducible_over_gf
        for deg in itertools.count(1):
            for code in range(self.q ** deg):
                coeffs = []
                c = code
                for _ in range(deg):
                    coeffs.append(self.base.from_code(c % self.q))
                    c //= self.q
                f = Poly(self.base, coeffs + [self.base.one()])
                if irreducible_over_gf(f):
                    yield f

    def poly_support(self, f):
        """Distinct monic irreducible factors of a nonzero Poly (trial division)."""
        out = []
        rest = f.monic()
        for p in self.monic_irreducibles():
            if p.degree > rest.degree:
                break
            while True:
                q, r = divmod(rest, p)
                if r:
                    break
                if not out or out[-1] != p:
                    out.append(p)
                rest = q
            if rest.degree == 0:
                break
        return out

    def place_support(self, *values):
        """Distinct finite places (monic irreducibles) in the support of the values."""
        places = []
        for v in values:
            for poly in (v.num, v.den):
                if poly.degree > 0:
                    for p in self.poly_support(poly):
                        if p not in places:
                            places.append(p)
        return places

    def __repr__(self):
        return f"GF({self.q})(u)"


class RealLaurentField(ConstantField):
    """Finite Laurent polynomials over Q, classed by (valuation parity, sign)."""

    kind = FieldKind.REAL_LAURENT
    characteristic = 0

    def from_int(self, n):
        return LaurentQ.from_fraction(n)

    def named_atom(self, name):
        if name == "u":
            return LaurentQ.u_power(1)
        raise ParseError(f"symbol {name!r} has no meaning over {self}")

    def format(self, c):
        return repr(c)

    def is_square(self, c):
        if not c:
            raise ZeroInputError("square test on zero")
        return c.sign_class() == (0, 1)

    def element_sequence(self):
        yield LaurentQ()
        for n in itertools.count(1):
            yield LaurentQ.from_fraction(n)
            yield LaurentQ.from_fraction(-n)

    def random_element(self, rng, nonzero=False):
        while True:
            lo = rng.randint(-2, 2)
            coeffs = [Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, 3))]
            c = LaurentQ(lo, coeffs)
            if c or not nonzero:
                return c

    def __repr__(self):
        return "R((u))"


def make_field(token):
    """Field from its CLI token: Q, R, R((u)), Qp(p), GF(q)(u)."""
    token = token.strip()
    if token == "Q":
        return RationalExactField()
    if token == "R":
        return RealClosedField()
    if token == "R((u))":
        return RealLaurentField()
    if token.startswith("Qp(") and token.endswith(")"):
        return PadicClassField(int(token[3:-1]))
    if token.startswith("GF(") and token.endswith(")(u)"):
        return RationalFunctionField(int(token[3:-4]))
    raise ParseError(f"unknown field token {token!r}; expected "
                     "Q, R, R((u)), Qp(p), or GF(q)(u)")


# ---------------------------------------------------------------------------
# characteristic-2 Artin-Schreier machinery over GF(2^r)(u)


@dataclass
class ASReduction:
    """delta reduced modulo a^2 + a; carries ramification data of the degree-2
    extension generated by a root of s^2 + s = delta."""

    field: RationalFunctionField
    reduced: RatFunc
    finite_ramified: list
    infinity_ramified: bool
    infinity_value: GFElem  # residue of the reduced delta at the infinite place

    def is_trivial(self):
        """True iff delta lies in the image of a |-> a^2 + a."""
        if self.finite_ramified or self.infinity_ramified:
            return False
        if not self.reduced:
            return True
        if not self.reduced.is_polynomial() or self.reduced.num.degree > 0:
            return False
        return self.field.base.trace_to_f2(self.infinity_value) == 0

    def is_inert_at(self, place):
        """Splitting of an unramified finite place (monic irreducible Poly)."""
        ring = QuotientRing(place)
        if self.reduced and self.reduced.valuation_at(place) < 0:
            raise ValueError("place is ramified")
        if not self.reduced:
            return False
        return ring.trace_to_f2(ring.of_ratfunc(self.reduced)) == 1


def artin_schreier_reduce(field, delta):
    """Normalize delta modulo the image of a |-> a^2 + a.

    Even-order poles (including at infinity) are removed by subtracting
    a^2 + a for suitable a; what remains has only odd-order poles, which are
    exactly the (wildly) ramified places of the extension s^2 + s = delta.
    """
    base = field.base
    work = delta
    if work:
        for place in field.poly_support(work.den):
            ring = QuotientRing(place)
            while work:
                v = work.valuation_at(place)
                if v >= 0 or (-v) % 2:
                    break
                j = (-v) // 2
                lead = ring.of_ratfunc(work * RatFunc(base, place ** (2 * j)))
                g = ring.sqrt(lead)
                sub = RatFunc(base, g, place ** j)
                work = work + sub * sub + sub
    # infinite place: strip even-degree leading terms of the polynomial part
    while work and work.valuation_at_infinity() < 0:
        deg = -work.valuation_at_infinity()
        if deg % 2:
            break
        lead = work.num.lead() / work.den.lead()
        g = base.sqrt(lead)
        sub = RatFunc(base, Poly(base, [base.zero()] * (deg // 2) + [g]))
        work = work + sub * sub + sub
    finite_ramified = []
    if work and not work.is_polynomial():
        finite_ramified = field.poly_support(work.den)
    inf_ramified = bool(work) and work.valuation_at_infinity() < 0
    inf_value = work.residue_at_infinity() if (work and not inf_ramified) else base.zero()
    return ASReduction(field, work, finite_ramified, inf_ramified, inf_value)


def _poly_inv_mod(a, m):
    """Inverse of a modulo m in F[u] (gcd(a, m) = 1), via extended Euclid."""
    field = a.field
    r0, r1 = m, a % m
    s0, s1 = Poly.zero(field), Poly.one(field)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return (s0 * Poly.const(field, field.one() / r0.lead())) % m


def _padic_digit(f, place, index):
    """Coefficient of place^index in the place-adic expansion of a RatFunc."""
    field = f.field
    if not f:
        return Poly.zero(field)
    a = f.num.valuation_at(place)
    b = f.den.valuation_at(place)
    v = a - b
    if index < v:
        return Poly.zero(field)
    n0 = f.num
    for _ in range(a):
        n0 = n0 // place
    d0 = f.den
    for _ in range(b):
        d0 = d0 // place
    k = index - v + 1
    w = (n0 * _poly_inv_mod(d0, place ** k)) % place ** k
    for _ in range(index - v):
        w = (w - w % place) // place
    return w % place


def _infinity_expansion_coeff(f, index):
    """Coefficient of u^(-index) in the expansion of f at the infinite place."""
    if not f:
        return f.field.zero() if hasattr(f, "field") else 0
    field = f.field
    v = f.valuation_at_infinity()
    if index < v:
        return field.zero()
    # reverse both polynomials: f = w^v * (N~ / D~) with w = 1/u, D~(0) != 0
    nrev = Poly(field, list(reversed(f.num.coeffs)))
    drev = Poly(field, list(reversed(f.den.coeffs)))
    k = index - v + 1
    w = Poly.gen(field)
    series = (nrev * _poly_inv_mod(drev, w ** k)) % w ** k
    i = index - v
    return series.coeffs[i] if i < len(series.coeffs) else field.zero()


def artin_schreier_symbol_finite(field, reduction, c, place):
    """Local Artin-Schreier symbol [delta, c) at a finite place, as 0 or 1.

    Computed as the absolute trace of the residue of delta * dc/c at the
    place; c is a norm locally iff the symbol is 0.
    """
    delta = reduction.reduced
    if not delta:
        return 0
    dc = c.num.derivative() * c.den - c.num * c.den.derivative()
    if not dc:
        logderiv = RatFunc(field.base, Poly.zero(field.base))
    else:
        logderiv = RatFunc(field.base, dc, c.num * c.den)
    h = delta * logderiv / RatFunc(field.base, place.derivative())
    if not h:
        return 0
    res = _padic_digit(h, place, -1)
    ring = QuotientRing(place)
    return ring.trace_to_f2(res)


def artin_schreier_symbol_infinity(field, reduction, c):
    """Local Artin-Schreier symbol [delta, c) at the infinite place."""
    delta = reduction.reduced
    if not delta:
        return 0
    dc = c.num.derivative() * c.den - c.num * c.den.derivative()
    if not dc:
        return 0
    h = delta * RatFunc(field.base, dc, c.num * c.den)
    if not h:
        return 0
    res = _infinity_expansion_coeff(h, 1)
    if not res:
        return 0
    return field.base.trace_to_f2(res)


def artin_schreier_norm_membership(field, c, delta):
    """True iff c is a norm from the extension generated by s^2 + s = delta.

    Degree-2 cyclic extension of a global field: a norm iff a local norm
    everywhere; local symbols vanish off the support of c and the ramified
    places of the extension.
    """
    if not c:
        raise ZeroInputError("norm test on zero")
    red = artin_schreier_reduce(field, delta)
    if red.is_trivial():
        return True
    places = list(red.finite_ramified)
    for p in field.place_support(c):
        if p not in places:
            places.append(p)
    for p in places:
        if artin_schreier_symbol_finite(field, red, c, p):
            return False
    return artin_schreier_symbol_infinity(field, red, c) == 0


# ---------------------------------------------------------------------------
# tame Hilbert symbols over GF(q)(u), q odd


def fq_hilbert_symbol(field, a, b, place):
    """Hilbert symbol (a, b) at a place of GF(q)(u), q odd.

    place is a monic irreducible Poly or the string "inf".  Uses the tame
    formula: the symbol is the quadratic character of the residue of
    (-1)^(mn) * a^n / b^m in the residue field, m = v(a), n = v(b).
    """
    if not a or not b:
        raise ZeroDivisionError("Hilbert symbol needs nonzero arguments")
    if place == "inf":
        m = a.valuation_at_infinity()
        n = b.valuation_at_infinity()
        w = a ** n / b ** m
        sign = field.base.from_int(-1) ** (m * n)
        res = sign * w.residue_at_infinity()
        return 1 if field.base.is_square(res) else -1
    m = a.valuation_at(place)
    n = b.valuation_at(place)
    w = a ** n / b ** m
    ring = QuotientRing(place)
    res = ring.of_ratfunc(w)
    if (m * n) % 2:
        res = (res * Poly.const(field.base, field.base.from_int(-1))) % place
    return 1 if ring.is_square(res) else -1


def fq_represented_by_binary_form(field, c, d):
    """True iff c = alpha^2 - d*beta^2 is solvable over GF(q)(u), q odd."""
    if field.is_square(d):
        return True
    for place in field.place_support(c, d):
        if fq_hilbert_symbol(field, c, d, place) == -1:
            return False
    return fq_hilbert_symbol(field, c, d, "inf") == 1


# ---------------------------------------------------------------------------
# sign-exact Laurent model: value classes of diagonal forms


def laurent_form_classes(coeffs):
    """Square classes represented by a diagonal form over the Laurent model.

    Returns "all" when the form is isotropic (then it is universal), else the
    set of represented (parity, sign) classes.  Splitting the diagonal by
    valuation parity reduces everything to signs of the two residue forms.
    """
    even_signs = set()
    odd_signs = set()
    for d in coeffs:
        par, sg = d.sign_class()
        (even_signs if par == 0 else odd_signs).add(sg)
    if len(even_signs) == 2 or len(odd_signs) == 2:
        return "all"
    classes = set()
    if even_signs:
        classes.add((0, next(iter(even_signs))))
    if odd_signs:
        classes.add((1, next(iter(odd_signs))))
    return classes


_LAURENT_V4 = ((0, 1), (1, 1), (0, -1), (1, -1))


def _laurent_class_rep(cls):
    reps = {(0, 1): LaurentQ.from_fraction(1),
            (1, 1): LaurentQ.u_power(1),
            (0, -1): LaurentQ.from_fraction(-1),
            (1, -1): -LaurentQ.u_power(1)}
    return reps[cls]


def _class_mul(a, b):
    return ((a[0] + b[0]) % 2, a[1] * b[1])


def _laurent_cosets(subgroup):
    """Coset representatives of a subgroup of the 4-element class group."""
    reps = []
    covered = set()
    for cls in _LAURENT_V4:
        if cls in covered:
            continue
        reps.append(cls)
        covered.update(_class_mul(cls, s) for s in subgroup)
    return reps


# ---------------------------------------------------------------------------
# norm membership dispatch


def _require_nonzero(c):
    if not c:
        raise ZeroInputError("norm membership on zero")


def binary_norm_membership(c, curve):
    """c in the value group of the edge determinant form of the curve."""
    _require_nonzero(c)
    field = curve.field
    kind = field.kind
    rho = curve.rho
    if kind == FieldKind.Q_EXACT:
        return numth.represented_by_binary_form(c, -rho)
    if kind == FieldKind.REAL_CLOSED:
        return c > 0 if rho > 0 else True
    if kind == FieldKind.REAL_LAURENT:
        classes = laurent_form_classes([field.one(), rho])
        return True if classes == "all" else c.sign_class() in classes
    if kind == FieldKind.QP_CLASSES:
        return numth.hilbert_symbol(c, -rho, field.p) == 1
    if kind == FieldKind.FQ_RATIONAL:
        return fq_represented_by_binary_form(field, c, -rho)
    if kind == FieldKind.F2R_RATIONAL:
        if curve.case in (CaseTag.II, CaseTag.III):
            # inseparable norm: k^2 + rho*k^2 is all of k since [k:k^2] = 2
            return True
        if curve.case == CaseTag.IV:
            return artin_schreier_norm_membership(field, c, rho)
    raise UnsupportedFieldError(
        f"no binary norm procedure for {field} case {curve.case}")


def quaternary_norm_membership(c, curve):
    """c in the value group of the vertex determinant form of the curve."""
    _require_nonzero(c)
    field = curve.field
    kind = field.kind
    if kind in (FieldKind.Q_EXACT, FieldKind.REAL_CLOSED):
        if curve.rho > 0 and curve.sigma > 0:
            return c > 0
        return True
    if kind == FieldKind.REAL_LAURENT:
        rho, sigma = curve.rho, curve.sigma
        classes = laurent_form_classes([field.one(), rho, sigma, rho * sigma])
        return True if classes == "all" else c.sign_class() in classes
    if kind == FieldKind.QP_CLASSES:
        return True
    if kind in (FieldKind.FQ_RATIONAL, FieldKind.F2R_RATIONAL):
        return True
    raise UnsupportedFieldError(f"no quaternary norm procedure for {field}")


def is_square(c, field):
    """Square test in the constant field (exact for every supported kind)."""
    return field.is_square(c)


# ---------------------------------------------------------------------------
# coset reports and witnesses


@dataclass
class NormCosetReport:
    """Counts and witnesses for k*/det(vertex stabilizer) and
    det(vertex stabilizer)/det(edge stabilizer)."""

    vertex_class_count: object  # int or OMEGA
    edge_classes_per_vertex: object
    vertex_class_witnesses: list = dc_field(default_factory=list)
    edge_class_witnesses: list = dc_field(default_factory=list)


def _q_inert_primes(rho):
    """Odd primes p, unit on rho, with -rho a nonsquare mod p: inert primes."""
    p = 3
    while True:
        if numth.is_prime(p) and numth.fraction_valuation(rho, p) == 0:
            if numth.legendre(-Fraction(rho), p) == -1:
                yield Fraction(p)
        p += 2


def _subset_products(stream, count, one):
    """First `count` products of distinct stream items, in binary-counter order."""
    items = []
    out = []
    for i in range(1, count + 1):
        while (1 << len(items)) <= i:
            items.append(next(stream))
        prod = one
        for bit, item in enumerate(items):
            if i >> bit & 1:
                prod = prod * item
        out.append(prod)
    return out


def _fq_inert_irreducibles(field, curve):
    """Monic irreducibles inert in the residue extension, as field elements."""
    if field.kind == FieldKind.FQ_RATIONAL:
        d = -curve.rho
        for p in field.monic_irreducibles():
            if d.valuation_at(p) != 0:
                continue
            ring = QuotientRing(p)
            if not ring.is_square(ring.of_ratfunc(d)):
                yield RatFunc(field.base, p)
    else:
        red = artin_schreier_reduce(field, curve.rho)
        for p in field.monic_irreducibles():
            if p in red.finite_ramified:
                continue
            if red.reduced and red.reduced.valuation_at(p) < 0:
                continue
            if red.is_inert_at(p):
                yield RatFunc(field.base, p)


def _vertex_class_data(curve):
    field = curve.field
    kind = field.kind
    one = field.one()
    if kind in (FieldKind.Q_EXACT, FieldKind.REAL_CLOSED):
        if curve.rho > 0 and curve.sigma > 0:
            return 2, [one, -one]
        return 1, [one]
    if kind == FieldKind.REAL_LAURENT:
        classes = laurent_form_classes([one, curve.rho, curve.sigma,
                                        curve.rho * curve.sigma])
        if classes == "all":
            return 1, [one]
        reps = _laurent_cosets(classes)
        return len(reps), [_laurent_class_rep(r) for r in reps]
    # local and global function-field kinds: the quaternary form is universal
    return 1, [one]


def _edge_class_data(curve, budget):
    field = curve.field
    kind = field.kind
    one = field.one()
    if kind == FieldKind.Q_EXACT:
        stream = _q_inert_primes(curve.rho)
        return OMEGA, _subset_products(stream, budget, one)
    if kind == FieldKind.REAL_CLOSED:
        vertex_positive = curve.rho > 0 and curve.sigma > 0
        edge_positive = curve.rho > 0
        if vertex_positive == edge_positive:
            return 1, [one]
        return 2, [one, -one]
    if kind == FieldKind.REAL_LAURENT:
        quat = laurent_form_classes([one, curve.rho, curve.sigma,
                                     curve.rho * curve.sigma])
        bin_ = laurent_form_classes([one, curve.rho])
        quat_set = set(_LAURENT_V4) if quat == "all" else quat
        bin_set = set(_LAURENT_V4) if bin_ == "all" else bin_
        # the binary form is a subform, so its classes sit inside the quaternary ones
        reps = [r for r in _laurent_cosets(bin_set) if r in quat_set]
        return len(quat_set) // len(bin_set), [_laurent_class_rep(r) for r in reps]
    if kind == FieldKind.QP_CLASSES:
        if numth.qp_is_square(-curve.rho, field.p):
            return 1, [one]
        c = 2
        while numth.hilbert_symbol(Fraction(c), -curve.rho, field.p) == 1:
            c += 1
        return 2, [one, Fraction(c)]
    if kind == FieldKind.FQ_RATIONAL:
        stream = _fq_inert_irreducibles(field, curve)
        return OMEGA, [next(stream) for _ in range(budget)]
    if kind == FieldKind.F2R_RATIONAL:
        if curve.case in (CaseTag.II, CaseTag.III):
            return 1, [one]
        stream = _fq_inert_irreducibles(field, curve)
        return OMEGA, [next(stream) for _ in range(budget)]
    raise UnsupportedFieldError(f"no coset procedure for {field}")


def norm_coset_report(curve, witness_budget=10):
    """Vertex and edge coset counts above the quaternionic end, with witnesses."""
    v_count, v_wit = _vertex_class_data(curve)
    e_count, e_wit = _edge_class_data(curve, witness_budget)
    return NormCosetReport(v_count, e_count, v_wit, e_wit)


def nonnorm_witnesses(curve, count):
    """Elements of the vertex determinant group in `count` pairwise-distinct
    cosets of the edge determinant group; only defined when that index is
    infinite.  Every pairwise ratio is re-verified to be a non-norm."""
    e_count, witnesses = _edge_class_data(curve, count)
    if e_count is not OMEGA:
        raise FiniteIndexError(
            f"edge class index is {e_count}, not infinite, for {curve.field}")
    witnesses = witnesses[:count]
    for i, wi in enumerate(witnesses):
        if binary_norm_membership(wi, curve):
            raise ArithmeticError(f"witness {curve.field.format(wi)} is a norm")
        for wj in witnesses[i + 1:]:
            if binary_norm_membership(wi / wj, curve):
                raise ArithmeticError(
                    f"witnesses {curve.field.format(wi)} and "
                    f"{curve.field.format(wj)} fall in the same coset")
    return witnesses
