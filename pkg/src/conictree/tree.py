"""The tree of lattice classes at the infinite place and the GL2(K) action.

Vertices are left cosets of Z*GL2(O_inf) in GL2(K_inf), represented in the
normal form [[pi^n, z], [0, 1]] and written v(pi^n, z); pi = 1/x throughout.
Two normal forms name the same vertex iff the levels agree and
v(z - z') >= n, so vertex identity is `vertex_eq`, never representation
equality.  `coset_normal_form` performs exact column reduction over the
valuation ring: pivot on the lower-row entry of smaller valuation (ties
prefer the left column), eliminate, then strip units and a central scalar.
"""

from .core import INFINITE_VALUATION
from .errors import SingularMatrixError
from .funcfield import truncated_representative, valuation

__all__ = ["Matrix2K", "Vertex", "standard_vertex", "vstar_vertex",
           "matrix_for_vertex", "coset_normal_form", "vertex_eq", "adjacent",
           "child", "parent", "act"]


class Matrix2K:
    """2x2 matrix with entries in K = k(x) + k(x)y."""

    __slots__ = ("curve", "rows")

    def __init__(self, curve, rows):
        self.curve = curve
        self.rows = ((rows[0][0], rows[0][1]), (rows[1][0], rows[1][1]))

    @classmethod
    def identity(cls, curve):
        one, zero = curve.one(), curve.zero()
        return cls(curve, ((one, zero), (zero, one)))

    @classmethod
    def diagonal(cls, curve, d0, d1):
        zero = curve.zero()
        return cls(curve, ((d0, zero), (zero, d1)))

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __mul__(self, other):
        if isinstance(other, Matrix2K):
            (a, b), (c, d) = self.rows
            (e, f), (g, h) = other.rows
            return Matrix2K(self.curve, ((a * e + b * g, a * f + b * h),
                                         (c * e + d * g, c * f + d * h)))
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def scaled(self, z):
        """Central scaling; does not change the named coset."""
        (a, b), (c, d) = self.rows
        return Matrix2K(self.curve, ((z * a, z * b), (z * c, z * d)))

    def det(self):
        (a, b), (c, d) = self.rows
        return a * d - b * c

    def inverse(self):
        det = self.det()
        if not det:
            raise SingularMatrixError("matrix is singular")
        (a, b), (c, d) = self.rows
        inv = det.inverse()
        return Matrix2K(self.curve, ((d * inv, -b * inv), (-c * inv, a * inv)))

    def __eq__(self, other):
        return isinstance(other, Matrix2K) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    # membership predicates ------------------------------------------------
    def is_in_coordinate_ring_group(self):
        """Entries in C = k[x,y] with determinant a nonzero constant (GL2(C))."""
        from .funcfield import is_integral
        if not all(is_integral(e) for row in self.rows for e in row):
            return False
        det = self.det()
        return bool(det) and (not det.b) and det.a.is_constant()

    def is_in_special_group(self):
        """GL2(C) with determinant 1 (SL2(C))."""
        return self.is_in_coordinate_ring_group() and self.det() == self.curve.one()

    def is_in_gl2_o(self):
        """All entry valuations >= 0 and v(det) = 0, as K-entries witness."""
        for row in self.rows:
            for e in row:
                if e and valuation(e) < 0:
                    return False
        det = self.det()
        return bool(det) and valuation(det) == 0

    def __repr__(self):
        (a, b), (c, d) = self.rows
        return f"[[{a!r}, {b!r}], [{c!r}, {d!r}]]"


class Vertex:
    """v(pi^n, z); identity is the coset criterion, not representation."""

    __slots__ = ("n", "z")

    def __init__(self, n, z):
        self.n = n
        self.z = z

    @property
    def curve(self):
        return self.z.curve

    def __eq__(self, other):
        if not isinstance(other, Vertex):
            return NotImplemented
        return vertex_eq(self, other)

    def __hash__(self):
        return hash(self.n)

    def __repr__(self):
        return f"v(pi^{self.n}, {self.z!r})"


def standard_vertex(curve, n):
    """The ray vertex v_n = v(pi^-n, 0), n >= 0."""
    return Vertex(-n, curve.zero())


def vstar_vertex(curve):
    """The quaternionic vertex v(pi, t) with t = y/x."""
    return Vertex(1, curve.t())


def matrix_for_vertex(v):
    curve = v.curve
    return Matrix2K(curve, ((curve.pi_power(v.n), v.z),
                            (curve.zero(), curve.one())))


def coset_normal_form(g):
    """The vertex named by the coset g * Z*GL2(O_inf).

    Column reduction pivots on the lower-row entry of smaller valuation (ties
    prefer the left column); eliminating the other entry, swapping if needed,
    and stripping units and a central power of pi collapses to the closed
    form n = v(det) - 2*v(pivot), z = (entry above the pivot) / pivot.
    """
    det = g.det()
    if not det:
        raise SingularMatrixError("matrix is singular")
    (a, b), (c, d) = g.rows
    vc = valuation(c) if c else INFINITE_VALUATION
    vd = valuation(d) if d else INFINITE_VALUATION
    if vc <= vd:
        n, z = valuation(det) - 2 * vc, a / c
    else:
        n, z = valuation(det) - 2 * vd, b / d
    # the representative is exact and small: z is cut below level n, which
    # names the same coset and keeps iterated actions from accumulating bulk
    return Vertex(n, truncated_representative(n, z))


def vertex_eq(v, w):
    """v(pi^n, z) = v(pi^m, z') iff n = m and v(z - z') >= n."""
    if v.n != w.n:
        return False
    diff = v.z - w.z
    return (not diff) or valuation(diff) >= v.n


def adjacent(v, w):
    """Neighbor criterion: levels differ by 1 and z agrees to the lower level."""
    if w.n == v.n + 1:
        diff = w.z - v.z
        return (not diff) or valuation(diff) >= v.n
    if w.n == v.n - 1:
        diff = v.z - w.z
        return (not diff) or valuation(diff) >= w.n
    return False


def child(v, u):
    """The level-(n+1) neighbor for the residue class u: v(pi^(n+1), z + u'*pi^n).

    Distinct residue classes give distinct children (the lift difference is a
    unit times pi^n, and the residues of 1 and t are k-independent).
    """
    curve = v.curve
    return Vertex(v.n + 1, v.z + u.lift() * curve.pi_power(v.n))


def parent(v):
    """The unique level-(n-1) neighbor v(pi^(n-1), z): the containing ball."""
    return Vertex(v.n - 1, v.z)


def act(g, v):
    """Left action on cosets: the normal form of g * [[pi^n, z], [0, 1]]."""
    return coset_normal_form(g * matrix_for_vertex(v))
