import random
from fractions import Fraction

import pytest

import conictree as ct
from conictree.polyring import Poly, RatFunc


@pytest.fixture(scope="session")
def q_field():
    return ct.RationalExactField()


@pytest.fixture(scope="session")
def r_field():
    return ct.RealClosedField()


@pytest.fixture(scope="session")
def laurent_field():
    return ct.RealLaurentField()


@pytest.fixture(scope="session")
def f2_field():
    return ct.RationalFunctionField(2)


@pytest.fixture(scope="session")
def f3_field():
    return ct.RationalFunctionField(3)


@pytest.fixture(scope="session")
def q_curve(q_field):
    return ct.Curve(q_field, ct.CaseTag.I, Fraction(1), Fraction(1))


@pytest.fixture(scope="session")
def r_curve(r_field):
    return ct.Curve(r_field, ct.CaseTag.I, Fraction(1), Fraction(1))


@pytest.fixture(scope="session")
def f2_iii_curve(f2_field):
    return ct.Curve(f2_field, ct.CaseTag.III, f2_field.parse("1/u"),
                    f2_field.parse("u"))


@pytest.fixture(scope="session")
def f2_iv_curve(f2_field):
    return ct.Curve(f2_field, ct.CaseTag.IV, f2_field.parse("u"),
                    f2_field.parse("u+1"))


@pytest.fixture(scope="session")
def f3_curve(f3_field):
    return ct.Curve(f3_field, ct.CaseTag.I, f3_field.one(), f3_field.parse("u"))


@pytest.fixture(scope="session")
def laurent_rows(laurent_field):
    mk = laurent_field.parse
    return [ct.Curve(laurent_field, ct.CaseTag.I, mk(r), mk(s))
            for r, s in (("1", "1"), ("1", "u"), ("u", "1"))]


@pytest.fixture(scope="session")
def qp_curves():
    out = []
    for p, rho, sigma in ((3, 1, 3), (5, 2, 5), (7, 1, 7)):
        field = ct.PadicClassField(p)
        out.append(ct.Curve(field, ct.CaseTag.I, Fraction(rho), Fraction(sigma)))
    return out


def constant_pool(field, size=6):
    seq = field.element_sequence()
    return [next(seq) for _ in range(size)]


def random_kelem(rng, curve, pool, max_deg=2, frac_prob=0.3):
    """Random K-element with small components; deterministic given the rng."""
    field = curve.field
    num_a = Poly(field, [rng.choice(pool) for _ in range(rng.randint(1, max_deg + 1))])
    if rng.random() < frac_prob:
        den = Poly.gen(field) + rng.choice(pool)
    else:
        den = Poly.one(field)
    a = RatFunc(field, num_a, den)
    b = RatFunc(field, Poly(field, [rng.choice(pool)
                                    for _ in range(rng.randint(1, max_deg))]))
    return curve.from_components(a, b)


def generator_matrices(curve):
    """Small generating set of the coordinate-ring group: diagonal,
    elementary, and quaternionic matrices."""
    x, y = curve.x(), curve.y()
    basis = ct.quaternion_basis(curve)
    seq = curve.field.element_sequence()
    units = []
    while len(units) < 2:
        e = next(seq)
        if e:
            units.append(e)
    def elem(b):
        return ct.Matrix2K(curve, ((curve.one(), b), (curve.zero(), curve.one())))
    def lower(b):
        return ct.Matrix2K(curve, ((curve.one(), curve.zero()), (b, curve.one())))
    return [ct.Matrix2K.identity(curve), basis.U, basis.V, basis.W,
            elem(x), elem(y), elem(curve.one()), lower(x),
            ct.Matrix2K.diagonal(curve, curve.from_k(units[0]),
                                 curve.from_k(units[1]))]
