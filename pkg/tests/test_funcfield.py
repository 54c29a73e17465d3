import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import conictree as ct
from conictree.core import INFINITE_VALUATION
from conictree.errors import (DegenerateConicError, HasRationalPointError,
                              InvalidCurveError, NotIntegralAtInfinityError,
                              UnsupportedFieldError)
from conictree.funcfield import (BivarQuadratic, canonical_relation,
                                 component_pi_coefficients)
from conictree.polyring import Poly, RatFunc

from conftest import constant_pool, random_kelem


# ---------------------------------------------------------------------------
# validation


def test_valid_flagship_curves(q_field, f2_field, f3_field):
    assert ct.validate_curve(q_field, ct.CaseTag.I, Fraction(1), Fraction(1)) == []
    assert ct.validate_curve(f2_field, ct.CaseTag.III, f2_field.parse("1/u"),
                             f2_field.parse("u")) == []
    assert ct.validate_curve(f2_field, ct.CaseTag.IV, f2_field.parse("u"),
                             f2_field.parse("u+1")) == []
    assert ct.validate_curve(f3_field, ct.CaseTag.I, f3_field.one(),
                             f3_field.parse("u")) == []


def test_rational_point_detected_over_q(q_field):
    violations = ct.validate_curve(q_field, ct.CaseTag.I, Fraction(1),
                                   Fraction(-1))
    assert any("rational point" in v for v in violations)
    with pytest.raises(InvalidCurveError):
        ct.Curve(q_field, ct.CaseTag.I, Fraction(1), Fraction(-1))


def test_case_ii_rejected_with_square_degree_reason(f2_field):
    violations = ct.validate_curve(f2_field, ct.CaseTag.II, f2_field.parse("u"),
                                   f2_field.parse("u+1"))
    assert any("[k:k^2]" in v for v in violations)


def test_case_characteristic_compatibility(q_field, f2_field):
    assert ct.validate_curve(q_field, ct.CaseTag.IV, Fraction(1), Fraction(1))
    assert ct.validate_curve(f2_field, ct.CaseTag.I, f2_field.one(),
                             f2_field.one())


def test_nonsquare_rho_required(q_field, f3_field):
    # -rho a square collapses the residue extension
    violations = ct.validate_curve(q_field, ct.CaseTag.I, Fraction(-4),
                                   Fraction(1))
    assert any("square" in v for v in violations)
    violations = ct.validate_curve(f3_field, ct.CaseTag.I,
                                   f3_field.parse("2*u^2"), f3_field.one())
    # -rho = u^2 is a square in GF(3)(u)
    assert any("square" in v for v in violations)


def _bounded_point_search(field, case, rho, sigma, max_code=40):
    """Tiny exhaustive search for affine points; finding one certifies that
    the curve is invalid.  Only polynomial candidates of small degree."""
    candidates = [field._element_from_code(c) for c in range(max_code)]
    one = field.one()
    for x in candidates:
        for y in candidates:
            if case == ct.CaseTag.I or case == ct.CaseTag.II:
                val = y * y + rho * x * x + sigma
            elif case == ct.CaseTag.III:
                val = y * y + rho * x * x + x + sigma
            else:
                val = y * y + x * y + rho * x * x + sigma
            if not val:
                return (x, y)
    return None


def test_validation_agrees_with_bounded_search(f3_field):
    """Whenever the bounded search finds a point, validation must reject;
    whenever validation accepts, the search must find nothing."""
    texts = ["1", "2", "u", "u+1", "2*u", "u+2"]
    for rho_s, sigma_s in itertools.product(texts, repeat=2):
        rho = f3_field.parse(rho_s)
        sigma = f3_field.parse(sigma_s)
        violations = ct.validate_curve(f3_field, ct.CaseTag.I, rho, sigma)
        point = _bounded_point_search(f3_field, ct.CaseTag.I, rho, sigma)
        if point is not None:
            assert violations, (rho_s, sigma_s, point)
        if not violations:
            assert point is None, (rho_s, sigma_s, point)


def test_char2_validation_agrees_with_bounded_search(f2_field):
    texts = ["1", "u", "u+1", "u^2+u+1"]
    for case in (ct.CaseTag.III, ct.CaseTag.IV):
        for rho_s, sigma_s in itertools.product(texts, repeat=2):
            rho = f2_field.parse(rho_s)
            sigma = f2_field.parse(sigma_s)
            violations = ct.validate_curve(f2_field, case, rho, sigma)
            point = _bounded_point_search(f2_field, case, rho, sigma,
                                          max_code=32)
            if point is not None:
                assert violations, (case, rho_s, sigma_s, point)
            if not violations:
                assert point is None, (case, rho_s, sigma_s, point)


def test_type_iii_iv_companion_curves(f2_field):
    """A valid linear-term curve always has a valid cross-term companion
    with coefficients (rho*sigma, sigma), reflecting that the two types
    present the same function field."""
    rho = f2_field.parse("1/u")
    sigma = f2_field.parse("u")
    assert ct.validate_curve(f2_field, ct.CaseTag.III, rho, sigma) == []
    assert ct.validate_curve(f2_field, ct.CaseTag.IV, rho * sigma, sigma) == []


# ---------------------------------------------------------------------------
# arithmetic in C and K


def test_defining_relation_rewrites(q_curve, f2_iv_curve):
    x, y = q_curve.x(), q_curve.y()
    assert y * y == -1 - x * x
    x4, y4 = f2_iv_curve.x(), f2_iv_curve.y()
    rho, sigma = f2_iv_curve.rho, f2_iv_curve.sigma
    assert y4 * y4 == x4 * y4 + f2_iv_curve.from_k(rho) * x4 * x4 + f2_iv_curve.from_k(sigma)


def test_inverse_examples(q_curve):
    x, y = q_curve.x(), q_curve.y()
    ix = x ** -1
    assert ix.a == RatFunc(q_curve.field, Poly.one(q_curve.field),
                           Poly.gen(q_curve.field))
    assert not ix.b
    t = q_curve.t()
    assert t * t == -1 - x ** -2


def test_field_laws_on_random_elements(q_curve, f2_iii_curve):
    rng = random.Random(0)
    for curve in (q_curve, f2_iii_curve):
        pool = constant_pool(curve.field)
        for _ in range(25):
            a = random_kelem(rng, curve, pool)
            b = random_kelem(rng, curve, pool)
            c = random_kelem(rng, curve, pool)
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            if b:
                assert (a / b) * b == a


def test_division_by_zero_raises(q_curve):
    with pytest.raises(ZeroDivisionError):
        q_curve.zero().inverse()


# ---------------------------------------------------------------------------
# valuation


def test_valuation_examples(q_curve):
    x, y, t = q_curve.x(), q_curve.y(), q_curve.t()
    assert ct.valuation(x) == -1
    assert ct.valuation(y) == -1
    assert ct.valuation(t) == 0
    assert ct.valuation(x * x + y) == -2
    assert ct.valuation(q_curve.zero()) == INFINITE_VALUATION
    assert ct.valuation(q_curve.pi()) == 1


def test_valuation_closed_form_matches_series_oracle(q_curve, f2_iii_curve,
                                                     f2_iv_curve, f3_curve):
    rng = random.Random(1)
    for curve in (q_curve, f2_iii_curve, f2_iv_curve, f3_curve):
        pool = constant_pool(curve.field)
        for _ in range(120):
            z = random_kelem(rng, curve, pool)
            if z:
                assert ct.valuation(z) == ct.series_valuation(z)


def test_ultrametric_laws(q_curve):
    rng = random.Random(2)
    pool = constant_pool(q_curve.field)
    for _ in range(150):
        z = random_kelem(rng, q_curve, pool)
        w = random_kelem(rng, q_curve, pool)
        if not z or not w:
            continue
        assert ct.valuation(z * w) == ct.valuation(z) + ct.valuation(w)
        s = z + w
        if s:
            assert ct.valuation(s) >= min(ct.valuation(z), ct.valuation(w))


# ---------------------------------------------------------------------------
# the spaces C(n)


def test_basis_shape_and_membership(q_curve):
    assert ct.riemann_roch_basis(q_curve, 0) == [q_curve.one()]
    basis1 = ct.riemann_roch_basis(q_curve, 1)
    assert basis1 == [q_curve.one(), q_curve.x(), q_curve.y()]
    assert len(ct.riemann_roch_basis(q_curve, 2)) == 5
    for n in range(6):
        for e in ct.riemann_roch_basis(q_curve, n):
            assert ct.is_integral(e)
            assert ct.valuation(e) >= -n


def test_no_element_escapes_the_basis_span(q_curve):
    """A coordinate-ring element with v >= -n always has polynomial degrees
    within the basis bounds (deg a <= n, deg b <= n - 1)."""
    rng = random.Random(3)
    field = q_curve.field
    for _ in range(120):
        a = Poly(field, [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 6))])
        b = Poly(field, [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 5))])
        z = q_curve.from_components(RatFunc(field, a), RatFunc(field, b))
        if not z:
            continue
        v = ct.valuation(z)
        n = -v
        if v < 0:
            assert z.a.num.degree <= n if z.a else True
            assert z.b.num.degree <= n - 1 if z.b else True


# ---------------------------------------------------------------------------
# residues and expansions


def test_residue_examples(q_curve):
    t = q_curve.t()
    r = ct.residue(t)
    assert (r.c0, r.c1) == (Fraction(0), Fraction(1))
    assert not ct.residue(q_curve.pi())
    exp = ct.residue_expansion(t * t, 2)
    assert (exp[0].c0, exp[0].c1) == (Fraction(-1), Fraction(0))
    assert not exp[1]


def test_residue_expansion_with_linear_term(f2_iii_curve):
    # t^2 = rho + tau/x + sigma/x^2 in characteristic 2
    t = f2_iii_curve.t()
    exp = ct.residue_expansion(t * t, 3)
    field = f2_iii_curve.field
    assert (exp[0].c0, exp[0].c1) == (f2_iii_curve.rho, field.zero())
    assert (exp[1].c0, exp[1].c1) == (f2_iii_curve.tau, field.zero())
    assert (exp[2].c0, exp[2].c1) == (f2_iii_curve.sigma, field.zero())


def test_residue_requires_integrality(q_curve):
    with pytest.raises(NotIntegralAtInfinityError):
        ct.residue_expansion(q_curve.x(), 1)


def test_residue_is_ring_homomorphism(q_curve, f2_iv_curve):
    rng = random.Random(4)
    for curve in (q_curve, f2_iv_curve):
        pool = constant_pool(curve.field)
        count = 0
        while count < 30:
            z = random_kelem(rng, curve, pool, frac_prob=0)
            w = random_kelem(rng, curve, pool, frac_prob=0)
            if ct.valuation(z) < 0 or ct.valuation(w) < 0:
                # integral sampling: divide by a power of x
                continue
            count += 1
            assert ct.residue(z * w) == ct.residue(z) * ct.residue(w)
            assert ct.residue(z + w) == ct.residue(z) + ct.residue(w)


def test_expansion_coefficients_rebuild_the_element(q_curve):
    rng = random.Random(5)
    pool = constant_pool(q_curve.field)
    for _ in range(25):
        z = random_kelem(rng, q_curve, pool)
        if not z:
            continue
        m = ct.valuation(z)
        shifted = z * q_curve.pi_power(-m)
        coeffs = ct.residue_expansion(shifted, 6)
        acc = q_curve.zero()
        for i, c in enumerate(coeffs):
            acc = acc + c.lift() * q_curve.pi_power(i)
        assert ct.valuation(shifted - acc) >= 6 or shifted == acc


def test_truncated_representative_is_equivalent(q_curve):
    rng = random.Random(6)
    pool = constant_pool(q_curve.field)
    for _ in range(30):
        z = random_kelem(rng, q_curve, pool)
        for level in (-1, 0, 2):
            w = ct.truncated_representative(level, z)
            diff = z - w
            assert (not diff) or ct.valuation(diff) >= level


def test_is_integral_examples(q_curve):
    x, y = q_curve.x(), q_curve.y()
    assert ct.is_integral(x * x + y)
    assert not ct.is_integral(q_curve.pi())
    assert not ct.is_integral(q_curve.t())


# ---------------------------------------------------------------------------
# conic normalization


def test_normalize_identity_case(q_field):
    curve, sub = ct.normalize_conic(
        q_field, [Fraction(1), Fraction(0), Fraction(1), Fraction(0),
                  Fraction(0), Fraction(1)])
    assert curve.case == ct.CaseTag.I
    assert curve.rho == 1 and curve.sigma == 1
    assert sub.is_identity()


def test_normalize_detects_rational_point(q_field):
    with pytest.raises(HasRationalPointError):
        ct.normalize_conic(q_field, [Fraction(1), Fraction(0), Fraction(1),
                                     Fraction(0), Fraction(0), Fraction(-1)])


def test_normalize_detects_degenerate(q_field):
    with pytest.raises(DegenerateConicError):
        ct.normalize_conic(q_field, [Fraction(1), Fraction(0), Fraction(-1),
                                     Fraction(0), Fraction(0), Fraction(0)])
    with pytest.raises(DegenerateConicError):
        ct.normalize_conic(q_field, [Fraction(0), Fraction(1), Fraction(0),
                                     Fraction(0), Fraction(0), Fraction(1)])


def _substitution_reproduces(field, coeffs, curve, sub):
    original = BivarQuadratic.from_conic_coeffs(field, coeffs)
    relation = canonical_relation(field, curve.case, curve.rho, curve.sigma)
    return relation.substituted(sub.x_form(), sub.y_form()) == original.scale(sub.scale)


def test_normalize_char2_cross_term(f2_field):
    coeffs = [f2_field.parse(s) for s in ("1", "1", "u", "1", "1", "1")]
    curve, sub = ct.normalize_conic(f2_field, coeffs)
    assert curve.case == ct.CaseTag.IV
    assert curve.rho == f2_field.parse("u")
    assert curve.sigma == f2_field.parse("u+1")
    assert _substitution_reproduces(f2_field, coeffs, curve, sub)


def test_normalize_char2_linear_term(f2_field):
    # y^2 + (1/u) x^2 + x + u = 0 is already canonical
    coeffs = [f2_field.parse(s) for s in ("1", "0", "1/u", "1", "0", "u")]
    curve, sub = ct.normalize_conic(f2_field, coeffs)
    assert curve.case == ct.CaseTag.III
    assert curve.rho == f2_field.parse("1/u")
    assert curve.sigma == f2_field.parse("u")
    assert _substitution_reproduces(f2_field, coeffs, curve, sub)


def test_normalize_char2_y_linear_swaps_variables(f2_field):
    # y^2 + (1/u) x^2 + y + 1 = 0: the y-linear term forces the variable swap
    coeffs = [f2_field.parse(s) for s in ("1", "0", "1/u", "0", "1", "1")]
    curve, sub = ct.normalize_conic(f2_field, coeffs)
    assert curve.case == ct.CaseTag.III
    assert curve.rho == f2_field.parse("1/u")
    assert curve.sigma == f2_field.parse("u")
    assert _substitution_reproduces(f2_field, coeffs, curve, sub)


def test_normalize_random_char0(q_field):
    rng = random.Random(7)
    produced = 0
    while produced < 12:
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(6)]
        coeffs[0] = Fraction(rng.randint(1, 3))
        try:
            curve, sub = ct.normalize_conic(q_field, coeffs)
        except (HasRationalPointError, DegenerateConicError):
            continue
        produced += 1
        assert curve.case == ct.CaseTag.I
        assert _substitution_reproduces(q_field, coeffs, curve, sub)


def test_normalize_rejects_class_only_field():
    qp = ct.PadicClassField(5)
    with pytest.raises(UnsupportedFieldError):
        ct.normalize_conic(qp, [Fraction(1)] * 6)


def test_class_only_field_rejects_element_arithmetic(qp_curves):
    with pytest.raises(UnsupportedFieldError):
        qp_curves[0].x()


def test_pi_coefficient_extraction(q_field, q_curve):
    f = RatFunc(q_field, Poly(q_field, [Fraction(2), Fraction(1)]),
                Poly(q_field, [Fraction(1), Fraction(1)]))
    # (x + 2)/(x + 1) = 1 + 1/x - 1/x^2 + ... in powers of pi = 1/x
    coeffs = component_pi_coefficients(f, 0, 3)
    assert coeffs == [Fraction(1), Fraction(1), Fraction(-1)]
