"""Canonical conics, the coordinate ring C = k[x,y], and the place at infinity.

A validated `Curve` fixes one of the four canonical defining equations
(see `core.CaseTag`) with rho, sigma in k*.  Elements of the function field
K = k(x) + k(x)*y are `KElement` values in the unique reduced form
a(x) + b(x)*y; multiplication rewrites y^2 through the defining equation.

The degree-2 place at infinity has uniformizer 1/x throughout.  Its valuation
has the exact closed form

    v(a + b*y) = min(v_inf(a), v_inf(b) - 1),

where v_inf on k(x) is deg(denominator) - deg(numerator).  No cancellation
between the two components is possible because the residues of 1 and t = y/x
are k-linearly independent (the residue field is the quadratic extension
k(t~)).  The series-expansion oracle in the test suite confirms this on every
curve case, including the separable characteristic-2 one.

Characteristic-2 convention, used once and everywhere: minus equals plus, and
the case-IV rewrite is y^2 = x*y + rho*x^2 + sigma.
"""

from dataclasses import dataclass

from .constfield import binary_norm_membership, is_square
from .core import INFINITE_VALUATION, CaseTag
from .errors import (DegenerateConicError, HasRationalPointError,
                     InvalidCurveError, NotIntegralAtInfinityError,
                     UnsupportedFieldError)
from .polyring import Poly, RatFunc

_CHAR2_CASES = (CaseTag.II, CaseTag.III, CaseTag.IV)


class _Provisional:
    """Just enough of a curve for the norm engines during validation."""

    def __init__(self, field, case, rho, sigma):
        self.field = field
        self.case = case
        self.rho = rho
        self.sigma = sigma


def validate_curve(field, case, rho, sigma):
    """All validity violations of the would-be curve; empty means valid."""
    violations = []
    char = field.characteristic
    if case == CaseTag.I and char == 2:
        return [f"case I requires characteristic != 2, got {field}"]
    if case in _CHAR2_CASES and char != 2:
        return [f"case {case} requires characteristic 2, got {field}"]
    if not rho:
        violations.append("rho must be a nonzero constant")
    if not sigma:
        violations.append("sigma must be a nonzero constant")
    if violations:
        return violations
    prov = _Provisional(field, case, rho, sigma)
    if case == CaseTag.I:
        if is_square(-rho, field):
            violations.append("-rho is a square, so the residue extension collapses")
        if binary_norm_membership(-sigma, prov):
            violations.append("rational point found: -sigma is represented by "
                              "y^2 + rho*x^2")
    elif case == CaseTag.II:
        violations.append(
            "case II needs a constant field with [k:k^2] > 2; every supported "
            "kind has [k:k^2] <= 2, so sigma lies in k^2 + rho*k^2 and the "
            "equation has a solution")
    elif case == CaseTag.III:
        if is_square(rho, field):
            violations.append("rho is a square, so the residue extension collapses")
        else:
            if field.in_artin_schreier_image(rho * sigma):
                violations.append("rational point found with y = 0: "
                                  "rho*sigma is of the form a^2 + a")
            else:
                iv = _Provisional(field, CaseTag.IV, rho * sigma, sigma)
                if binary_norm_membership(sigma, iv):
                    violations.append("rational point found: sigma is a norm "
                                      "from the degree-2 extension")
    elif case == CaseTag.IV:
        if field.in_artin_schreier_image(rho):
            violations.append("rho is of the form a^2 + a, so the residue "
                              "extension collapses")
        elif binary_norm_membership(sigma, prov):
            violations.append("rational point found: sigma is represented by "
                              "y^2 + x*y + rho*x^2")
    return violations


class Curve:
    """A validated canonical conic; owns all K-arithmetic context."""

    def __init__(self, field, case, rho, sigma, check=True):
        if check:
            violations = validate_curve(field, case, rho, sigma)
            if violations:
                raise InvalidCurveError(violations)
        self.field = field
        self.case = case
        self.rho = rho
        self.sigma = sigma
        self.tau = field.one() if case == CaseTag.III else field.zero()
        self._ysq = None

    def __eq__(self, other):
        return (isinstance(other, Curve) and self.field == other.field
                and self.case == other.case and self.rho == other.rho
                and self.sigma == other.sigma)

    def __hash__(self):
        return hash((self.field, self.case))

    def __repr__(self):
        f = self.field.format
        parts = {CaseTag.I: "y^2 + {r}*x^2 + {s} = 0",
                 CaseTag.II: "y^2 + {r}*x^2 + {s} = 0",
                 CaseTag.III: "y^2 + {r}*x^2 + x + {s} = 0",
                 CaseTag.IV: "y^2 + x*y + {r}*x^2 + {s} = 0"}
        return (f"Curve[{self.field}, case {self.case}: "
                + parts[self.case].format(r=f(self.rho), s=f(self.sigma)) + "]")

    def _require_arithmetic(self):
        if not self.field.supports_element_arithmetic:
            raise UnsupportedFieldError(
                f"{self.field} supports norm-class operations only; "
                "element arithmetic in K is rejected, never approximated")

    # K-element constructors ------------------------------------------------
    def from_components(self, a, b):
        self._require_arithmetic()
        return KElement(self, a, b)

    def from_k(self, c):
        return self.from_components(RatFunc.const(self.field, c),
                                    RatFunc(self.field, Poly.zero(self.field)))

    def from_int(self, n):
        return self.from_k(self.field.from_int(n))

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def x(self):
        return self.from_components(RatFunc.gen(self.field),
                                    RatFunc(self.field, Poly.zero(self.field)))

    def y(self):
        return self.from_components(
            RatFunc(self.field, Poly.zero(self.field)),
            RatFunc.const(self.field, self.field.one()))

    def t(self):
        """t = y/x; a unit at infinity whose residue generates k(t~)."""
        return self.from_components(
            RatFunc(self.field, Poly.zero(self.field)),
            RatFunc(self.field, Poly.one(self.field), Poly.gen(self.field)))

    def pi(self):
        """The uniformizer 1/x at the infinite place."""
        return self.x() ** -1

    def pi_power(self, n):
        return self.x() ** -n

    def residue(self, c0, c1):
        return ResidueElement(self, c0, c1)

    def residue_from_int(self, n):
        return ResidueElement(self, self.field.from_int(n), self.field.zero())

    def _y_square_components(self):
        """(a, b) with y^2 = a + b*y; cached, the rewrite runs on every product."""
        if self._ysq is None:
            F = self.field
            x = Poly.gen(F)
            if self.case == CaseTag.IV:
                a = Poly(F, [self.sigma, F.zero(), self.rho])
                self._ysq = (RatFunc(F, a), RatFunc(F, x))
            else:
                a = -Poly(F, [self.sigma, self.tau, self.rho])
                self._ysq = (RatFunc(F, a), RatFunc(F, Poly.zero(F)))
        return self._ysq


class KElement:
    """a(x) + b(x)*y in reduced canonical form."""

    __slots__ = ("curve", "a", "b")

    def __init__(self, curve, a, b):
        self.curve = curve
        self.a = a
        self.b = b

    def _coerce(self, other):
        if isinstance(other, KElement):
            if other.curve is not self.curve and other.curve != self.curve:
                raise ValueError("elements of different curves")
            return other
        if isinstance(other, int):
            return self.curve.from_int(other)
        return self.curve.from_k(other)

    def __add__(self, other):
        o = self._coerce(other)
        return KElement(self.curve, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return KElement(self.curve, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        cross = self.b * o.b
        a = self.a * o.a
        b = self.a * o.b + self.b * o.a
        if cross:
            ysq_a, ysq_b = self.curve._y_square_components()
            a = a + cross * ysq_a
            if ysq_b:
                b = b + cross * ysq_b
        return KElement(self.curve, a, b)

    __rmul__ = __mul__

    def conjugate(self):
        """Image under the nontrivial k(x)-automorphism of K."""
        if self.curve.case == CaseTag.IV:
            x = RatFunc.gen(self.curve.field)
            return KElement(self.curve, self.a + self.b * x, self.b)
        return KElement(self.curve, self.a, -self.b)

    def norm_to_kx(self):
        """z * conjugate(z) as a rational function of x."""
        prod = self * self.conjugate()
        if prod.b:
            raise ArithmeticError("norm failed to land in k(x)")
        return prod.a

    def inverse(self):
        """conjugate / norm, with the shared component denominators cancelled
        up front so the rational-function reduction never has to discover
        them."""
        if not self:
            raise ZeroDivisionError("inverse of zero")
        F = self.curve.field
        na, da = self.a.num, self.a.den
        nb, db = self.b.num, self.b.den
        da2, db2 = da * da, db * db
        if self.curve.case == CaseTag.IV:
            qpoly = Poly(F, [self.curve.sigma, F.zero(), self.curve.rho])
            x = Poly.gen(F)
            norm_num = na * na * db2 + na * nb * da * db * x + nb * nb * da2 * qpoly
            inv_a = RatFunc(F, (na * db + nb * da * x) * da * db, norm_num)
            inv_b = RatFunc(F, nb * db * da2, norm_num)
        else:
            qpoly = Poly(F, [self.curve.sigma, self.curve.tau, self.curve.rho])
            norm_num = na * na * db2 + nb * nb * da2 * qpoly
            inv_a = RatFunc(F, na * da * db2, norm_num)
            inv_b = RatFunc(F, -(nb * db * da2), norm_num)
        return KElement(self.curve, inv_a, inv_b)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.curve.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._coerce(other)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        fmt = self.curve.field.format
        astr = self.a.format("x", fmt)
        if not self.b:
            return astr
        bstr = self.b.format("x", fmt)
        ystr = "y" if bstr == "1" else f"({bstr})*y"
        if not self.a:
            return ystr
        return f"{astr}+{ystr}".replace("+-", "-")


@dataclass
class ResidueElement:
    """c0 + c1*t~ in the residue field k(t~) = O/m."""

    curve: object
    c0: object
    c1: object

    def _coerce(self, other):
        if isinstance(other, ResidueElement):
            return other
        if isinstance(other, int):
            return self.curve.residue_from_int(other)
        return ResidueElement(self.curve, other, self.curve.field.zero())

    def __add__(self, other):
        o = self._coerce(other)
        return ResidueElement(self.curve, self.c0 + o.c0, self.c1 + o.c1)

    def __neg__(self):
        return ResidueElement(self.curve, -self.c0, -self.c1)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        rho = self.curve.rho
        cross = self.c1 * o.c1
        if self.curve.case == CaseTag.IV:
            # t~^2 = t~ + rho in characteristic 2
            return ResidueElement(self.curve,
                                  self.c0 * o.c0 + rho * cross,
                                  self.c0 * o.c1 + self.c1 * o.c0 + cross)
        return ResidueElement(self.curve,
                              self.c0 * o.c0 - rho * cross,
                              self.c0 * o.c1 + self.c1 * o.c0)

    def conjugate(self):
        if self.curve.case == CaseTag.IV:
            return ResidueElement(self.curve, self.c0 + self.c1, self.c1)
        return ResidueElement(self.curve, self.c0, -self.c1)

    def norm(self):
        prod = self * self.conjugate()
        if prod.c1:
            raise ArithmeticError("residue norm failed to land in k")
        return prod.c0

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero residue")
        n = self.norm()
        conj = self.conjugate()
        return ResidueElement(self.curve, conj.c0 / n, conj.c1 / n)

    def __bool__(self):
        return bool(self.c0) or bool(self.c1)

    def __eq__(self, other):
        o = self._coerce(other)
        return self.c0 == o.c0 and self.c1 == o.c1

    def __hash__(self):
        return hash((self.curve.case,))

    def lift(self):
        """The standard lift c0 + c1*t as a KElement."""
        F = self.curve.field
        return KElement(self.curve,
                        RatFunc.const(F, self.c0),
                        RatFunc(F, Poly.const(F, self.c1), Poly.gen(F)))

    def __repr__(self):
        fmt = self.curve.field.format
        if not self.c1:
            return fmt(self.c0)
        c1s = fmt(self.c1)
        tpart = "t" if c1s == "1" else f"({c1s})*t"
        if not self.c0:
            return tpart
        return f"{fmt(self.c0)}+{tpart}".replace("+-", "-")


# ---------------------------------------------------------------------------
# the valuation at infinity and expansions


def valuation(z):
    """v(z) at the infinite place; +inf for z = 0.  Exact closed form."""
    if not z:
        return INFINITE_VALUATION
    vals = []
    if z.a:
        vals.append(z.a.valuation_at_infinity())
    if z.b:
        vals.append(z.b.valuation_at_infinity() - 1)
    return min(vals)


def is_integral(z):
    """True iff z lies in C = k[x,y] (both components polynomial)."""
    return z.a.is_polynomial() and z.b.is_polynomial()


def residue(z):
    """Image of z in k(t~) = O/m; requires v(z) >= 0."""
    if valuation(z) < 0:
        raise NotIntegralAtInfinityError(f"v = {valuation(z)} < 0")
    x = RatFunc.gen(z.curve.field)
    return ResidueElement(z.curve,
                          z.a.residue_at_infinity() if z.a else z.curve.field.zero(),
                          (z.b * x).residue_at_infinity() if z.b else z.curve.field.zero())


def residue_expansion(z, m):
    """First m coefficients of z in powers of 1/x with k(t~) coefficients.

    The lift of each residue is c0 + c1*t, so the expansion is exact and the
    tail always has strictly larger valuation.
    """
    if valuation(z) < 0:
        raise NotIntegralAtInfinityError(f"v = {valuation(z)} < 0")
    out = []
    cur = z
    x = z.curve.x()
    for _ in range(m):
        c = residue(cur)
        out.append(c)
        cur = (cur - c.lift()) * x
    return out


def component_pi_coefficients(f, start, count):
    """Laurent coefficients of a k(x) rational function at the infinite place.

    Returns [c_start, ..., c_(start+count-1)] with f = sum c_j * pi^j.
    Division-free: the denominator is monic, so the series follows a linear
    recurrence on reversed coefficients.
    """
    field = f.field
    zero = field.zero()
    if not f:
        return [zero] * count
    v0 = f.valuation_at_infinity()
    end = start + count
    if end <= v0:
        return [zero] * count
    ncoeffs = list(reversed(f.num.coeffs))
    dcoeffs = list(reversed(f.den.coeffs))
    need = end - v0
    series = []
    for j in range(need):
        s = ncoeffs[j] if j < len(ncoeffs) else zero
        for i in range(1, min(j, len(dcoeffs) - 1) + 1):
            s = s - dcoeffs[i] * series[j - i]
        series.append(s)
    return [series[j - v0] if j >= v0 else zero for j in range(start, end)]


def pi_grid_coefficients(z, start, count):
    """Coefficients of z on the pi-power grid with lifts c0 + c1*t.

    z = sum (c0_j + c1_j * t) * pi^j; the y-component contributes through
    b*y = (b*x)*t, so its series is the b-series shifted by one.
    """
    alphas = component_pi_coefficients(z.a, start, count)
    betas = component_pi_coefficients(z.b, start + 1, count)
    return [ResidueElement(z.curve, a, b) for a, b in zip(alphas, betas)]


def series_valuation(z, scan_limit=None):
    """Valuation computed by scanning the pi-expansion for its first nonzero
    coefficient.  Independent of the min-of-components closed form; used to
    cross-check it (k-linear independence of the residues of 1 and t means
    the two computations must agree).
    """
    if not z:
        return INFINITE_VALUATION
    lower = 0
    if z.a:
        lower = min(lower, -z.a.num.degree - z.a.den.degree - 1)
    if z.b:
        lower = min(lower, -z.b.num.degree - z.b.den.degree - 2)
    if scan_limit is None:
        scan_limit = 0
        if z.a:
            scan_limit = max(scan_limit, z.a.num.degree + z.a.den.degree)
        if z.b:
            scan_limit = max(scan_limit, z.b.num.degree + z.b.den.degree)
        scan_limit += 2 - lower
    coeffs = pi_grid_coefficients(z, lower, scan_limit)
    for j, c in enumerate(coeffs):
        if c:
            return lower + j
    raise ArithmeticError("nonzero element with no visible leading coefficient")


def truncated_representative(n, z):
    """The canonical small z' with v(z - z') >= n: the expansion of z cut
    below level n.  Exact; v(pi^n, z') and v(pi^n, z) are the same vertex."""
    if not z:
        return z
    m = valuation(z)
    if m >= n:
        return z.curve.zero()
    coeffs = pi_grid_coefficients(z, m, n - m)
    curve = z.curve
    acc = curve.zero()
    for j, c in enumerate(coeffs):
        if c:
            acc = acc + c.lift() * curve.pi_power(m + j)
    return acc


def riemann_roch_basis(curve, n):
    """Basis [1, x, ..., x^n, y, y*x, ..., y*x^(n-1)] of C(n); length 2n+1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = curve.x()
    y = curve.y()
    basis = [curve.one()]
    for i in range(1, n + 1):
        basis.append(x ** i)
    for i in range(n):
        basis.append(y * x ** i)
    return basis


# ---------------------------------------------------------------------------
# conic normalization


class BivarQuadratic:
    """Polynomial in x, y of total degree <= 2, as a {(i, j): coeff} dict."""

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def from_conic_coeffs(cls, field, coeffs):
        a, b, c, d, e, f = coeffs
        return cls(field, {(0, 2): a, (1, 1): b, (2, 0): c,
                           (1, 0): d, (0, 1): e, (0, 0): f})

    def coeff(self, i, j):
        return self.terms.get((i, j), self.field.zero())

    def scale(self, c):
        return BivarQuadratic(self.field, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return self.terms == other.terms

    def substituted(self, xsub, ysub):
        """Plug affine forms (cx, cy, c1) for x and y; result stays quadratic."""
        def linear_pow(form, e):
            # form is (coeff_x, coeff_y, const) -> dict of monomials
            out = {(0, 0): self.field.one()}
            for _ in range(e):
                nxt = {}
                for (i, j), v in out.items():
                    for (di, dj), c in (((1, 0), form[0]), ((0, 1), form[1]),
                                        ((0, 0), form[2])):
                        if c:
                            key = (i + di, j + dj)
                            nxt[key] = nxt.get(key, self.field.zero()) + v * c
                out = nxt
            return out

        acc = {}
        for (i, j), v in self.terms.items():
            xpart = linear_pow(xsub, i)
            ypart = linear_pow(ysub, j)
            for (xi, xj), xv in xpart.items():
                for (yi, yj), yv in ypart.items():
                    key = (xi + yi, xj + yj)
                    acc[key] = acc.get(key, self.field.zero()) + v * xv * yv
        return BivarQuadratic(self.field, acc)


@dataclass
class ConicSubstitution:
    """Invertible affine change of variables: new = M * (x, y) + shift,
    together with the scale factor lambda such that

        canonical(new_x, new_y) = lambda * original(x, y).
    """

    field: object
    matrix: tuple  # ((m00, m01), (m10, m11))
    shift: tuple   # (s0, s1)
    scale: object

    @classmethod
    def identity(cls, field):
        one, zero = field.one(), field.zero()
        return cls(field, ((one, zero), (zero, one)), (zero, zero), one)

    def then(self, matrix, shift):
        """Compose with a further substitution applied to the new variables."""
        (a00, a01), (a10, a11) = matrix
        (m00, m01), (m10, m11) = self.matrix
        new_matrix = ((a00 * m00 + a01 * m10, a00 * m01 + a01 * m11),
                      (a10 * m00 + a11 * m10, a10 * m01 + a11 * m11))
        new_shift = (a00 * self.shift[0] + a01 * self.shift[1] + shift[0],
                     a10 * self.shift[0] + a11 * self.shift[1] + shift[1])
        return ConicSubstitution(self.field, new_matrix, new_shift, self.scale)

    def rescaled(self, c):
        return ConicSubstitution(self.field, self.matrix, self.shift, self.scale * c)

    def x_form(self):
        return (self.matrix[0][0], self.matrix[0][1], self.shift[0])

    def y_form(self):
        return (self.matrix[1][0], self.matrix[1][1], self.shift[1])

    def is_identity(self):
        one, zero = self.field.one(), self.field.zero()
        return (self.matrix == ((one, zero), (zero, one))
                and self.shift == (zero, zero))

    def describe(self):
        f = self.field.format

        def form(coeffs, names=("x", "y")):
            parts = []
            for c, n in zip(coeffs[:2], names):
                if c:
                    cs = f(c)
                    parts.append(n if cs == "1" else f"({cs})*{n}")
            if coeffs[2]:
                parts.append(f(coeffs[2]))
            return "+".join(parts).replace("+-", "-") if parts else "0"

        return f"x' = {form(self.x_form())}, y' = {form(self.y_form())}"


def canonical_relation(field, case, rho, sigma):
    one = field.one()
    terms = {(0, 2): one, (2, 0): rho, (0, 0): sigma}
    if case == CaseTag.III:
        terms[(1, 0)] = one
    if case == CaseTag.IV:
        terms[(1, 1)] = one
    return BivarQuadratic(field, terms)


def normalize_conic(field, coeffs):
    """Bring a*y^2 + b*xy + c*x^2 + d*x + e*y + f = 0 to canonical form.

    Returns (curve, substitution); the substitution, plugged into the
    canonical relation, recovers the input scaled by substitution.scale.
    """
    if not field.supports_element_arithmetic:
        raise UnsupportedFieldError(f"{field} rejects element arithmetic")
    coeffs = list(coeffs)
    if len(coeffs) != 6:
        raise ValueError("six coefficients required")
    a = coeffs[0]
    if not a:
        raise DegenerateConicError("the y^2 coefficient must be nonzero")
    inv_a = field.one() / a
    b, c, d, e, f = (v * inv_a for v in coeffs[1:])
    sub = ConicSubstitution.identity(field).rescaled(inv_a)
    zero = field.zero()
    if field.characteristic != 2:
        return _normalize_char_not2(field, b, c, d, e, f, sub)
    if b:
        return _normalize_char2_crossterm(field, b, c, d, e, f, sub)
    return _normalize_char2_diagonal(field, c, d, e, f, sub)


def _finish(field, case, rho, sigma, sub, original=None):
    try:
        curve = Curve(field, case, rho, sigma)
    except InvalidCurveError as exc:
        raise HasRationalPointError(str(exc)) from exc
    return curve, sub


def _normalize_char_not2(field, b, c, d, e, f, sub):
    two = field.from_int(2)
    four = field.from_int(4)
    one, zero = field.one(), field.zero()
    # complete the square in y: y' = y + (b*x + e)/2
    if b or e:
        sub = sub.then(((one, zero), (b / two, one)), (zero, e / two))
        c = c - b * b / four
        d = d - b * e / two
        f = f - e * e / four
        b = e = zero
    if not c:
        if d:
            raise HasRationalPointError(
                "no x^2 term after completing the square: the curve is "
                "rational with a point for every y")
        raise DegenerateConicError("the form has no x^2 or x term; it factors")
    # complete the square in x: x' = x + d/(2c)
    if d:
        sub = sub.then(((one, zero), (zero, one)), (d / (two * c), zero))
        f = f - d * d / (four * c)
        d = zero
    if not f:
        raise DegenerateConicError("constant term vanished: the form factors")
    return _finish(field, CaseTag.I, c, f, sub)


def _normalize_char2_crossterm(field, b, c, d, e, f, sub):
    one, zero = field.one(), field.zero()
    # scale x so the cross term is exactly x*y
    if b != one:
        sub = sub.then(((b, zero), (zero, one)), (zero, zero))
        c = c / (b * b)
        d = d / b
        b = one
    # shift both variables to kill the linear terms
    if d or e:
        sub = sub.then(((one, zero), (zero, one)), (e, d))
        f = d * d + d * e + c * e * e + f
        d = e = zero
    if not f:
        raise DegenerateConicError("constant term vanished: the form factors")
    return _finish(field, CaseTag.IV, c, f, sub)


def _normalize_char2_diagonal(field, c, d, e, f, sub):
    one, zero = field.one(), field.zero()
    if e and d:
        # absorb the y-linear term into x
        lam = one + c * e * e / (d * d)
        if not lam:
            raise DegenerateConicError(
                "the quadratic part is the square of a linear form")
        sub = sub.then(((one, e / d), (zero, one)), (zero, zero)).rescaled(one / lam)
        c, d, f = c / lam, d / lam, f / lam
        e = zero
    if e and not d:
        if not c:
            raise DegenerateConicError("no x appears at all; the form factors")
        # exchange roles of the variables: new x is a multiple of y
        sub = sub.then((((zero), (e / c)), (one, zero)), (zero, zero))
        sub = sub.rescaled(one / c)
        c, d, e, f = c / (e * e), zero, zero, f / c
        return _finish(field, CaseTag.III, c, f, sub)
    if d:
        # scale x to make the linear coefficient exactly 1
        sub = sub.then(((d, zero), (zero, one)), (zero, zero))
        return _finish(field, CaseTag.III, c / (d * d), f, sub)
    return _finish(field, CaseTag.II, c, f, sub)
