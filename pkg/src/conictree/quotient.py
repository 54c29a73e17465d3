"""Quotient graphs of the tree: the full linear group and the determinant-one
subgroup.

The full-group quotient is an infinite ray: the branch vertex v(pi, t), then
v(1,0), v(pi^-1,0), ...  It is assembled only after two constructive orbit
verifications succeed at desk scale:

* ray orbits: for each level n >= 1 and each sampled residue class u, an
  explicit b with v >= -n solves b*pi^n + u' = 0 (mod pi); the resulting
  triple product lands in GL2(O) and the unipotent [[1,b],[0,1]] maps the
  sampled child onto the previous ray vertex.  At v(1,0) the sampled children
  fall into exactly two classes under GL2(k), matched by explicit matrices.
* branch orbit: for sampled (a, b) != 0, X = I + a*V + b*W stabilizes
  v(pi, t) and an explicit unit-column reduction exhibits X * v(1,0) as
  v(pi^2, t + pi*u); the covered residue classes u are read off exactly.

The determinant-one quotient keeps the ray and replaces the branch vertex by
one lift per coset of the quaternary determinant group in k*, each carrying
one edge per coset of the binary determinant group, with omega multiplicities
witnessed by pairwise-inequivalent non-norms.
"""

from dataclasses import dataclass, field as dc_field

from .constfield import (FieldKind, binary_norm_membership, norm_coset_report,
                         nonnorm_witnesses)
from .core import OMEGA, CaseTag
from .errors import (ConstructionFailedError, UnsupportedFieldError,
                     VerificationIncompleteError, ZeroTupleError)
from .funcfield import residue, riemann_roch_basis, valuation
from .polyring import solve_linear
from .stabilizers import (QuaternionCoords, _mat_add, det_form,
                          edge_stabilizer_estar, quaternion_basis,
                          stab_membership, stab_ray_description)
from .tree import (Matrix2K, Vertex, act, child, coset_normal_form,
                   standard_vertex, vertex_eq, vstar_vertex)

# ---------------------------------------------------------------------------
# graph data


@dataclass
class QuotientVertex:
    id: str
    level: int
    stabilizer: str


@dataclass
class VStarLift:
    id: str
    coset_witness: str


@dataclass
class QuotientEdge:
    src: str
    dst: str
    multiplicity: object  # int or OMEGA
    witnesses: list = dc_field(default_factory=list)


@dataclass
class QuotientGraph:
    ray: list
    vstar_lifts: list
    edges: list
    free_rank: object  # int or OMEGA
    truncated_at: int


def free_rank(graph):
    """Rank of the fundamental group: edges above the branch edge minus the
    number of branch-vertex lifts (the ray is contractible)."""
    lift_ids = {l.id for l in graph.vstar_lifts}
    total = 0
    for e in graph.edges:
        if e.src in lift_ids or e.dst in lift_ids:
            if e.multiplicity is OMEGA:
                return OMEGA
            total += e.multiplicity
    return total - len(graph.vstar_lifts)


def power_of_two_check(report):
    """Vertex class counts arising from residue-norm subgroups are powers of
    two (or omega)."""
    count = report.vertex_class_count
    if count is OMEGA:
        return True
    return count >= 1 and (count & (count - 1)) == 0


# ---------------------------------------------------------------------------
# default sample generators


def default_residue_samples(curve, count=8):
    """Deterministic residue classes including 0, 1, t~, 1 + t~."""
    field = curve.field
    zero, one = field.zero(), field.one()
    samples = [curve.residue(zero, zero), curve.residue(one, zero),
               curve.residue(zero, one), curve.residue(one, one)]
    seq = field.element_sequence()
    while len(samples) < count:
        e = next(seq)
        if e == zero or e == one:
            continue
        for c0, c1 in ((e, zero), (zero, e), (e, one), (one, e)):
            if len(samples) < count:
                samples.append(curve.residue(c0, c1))
    return samples


def default_branch_samples(curve, count=20):
    """Deterministic nonzero (a, b) coefficient pairs for I + a*V + b*W."""
    field = curve.field
    seq = field.element_sequence()
    pool = []
    while len(pool) < max(6, count // 3):
        pool.append(next(seq))
    pairs = []
    for a in pool:
        for b in pool:
            if not a and not b:
                continue
            pairs.append((a, b))
            if len(pairs) == count:
                return pairs
    return pairs


# ---------------------------------------------------------------------------
# orbit verification


@dataclass
class RayOrbitCheck:
    level: int
    residue_label: str
    b_label: str
    product_integral: bool
    action_matches: bool


@dataclass
class BasePointCheck:
    residue_label: str
    orbit: str  # "ray" or "branch"
    matched: bool


@dataclass
class BranchCheck:
    label: str
    stabilizes: bool
    unit_valuation_ok: bool
    lands_level_two: bool
    tangent_to_t: bool
    residue_class_ok: bool

    @property
    def ok(self):
        return (self.stabilizes and self.unit_valuation_ok
                and self.lands_level_two and self.tangent_to_t
                and self.residue_class_ok)


@dataclass
class OrbitVerificationReport:
    curve: object
    ray_checks: list = dc_field(default_factory=list)
    base_checks: list = dc_field(default_factory=list)
    branch_checks: list = dc_field(default_factory=list)

    @property
    def failures(self):
        bad = [c for c in self.ray_checks
               if not (c.product_integral and c.action_matches)]
        bad += [c for c in self.base_checks if not c.matched]
        bad += [c for c in self.branch_checks if not c.ok]
        return bad

    @property
    def ok(self):
        return not self.failures


def verify_ray_orbits(curve, N, residue_samples=None):
    """Constructively verify that every ray vertex has exactly the two edge
    orbits along the ray, and that the children of v(1,0) fall into the ray
    class and the branch class."""
    if N < 1:
        raise ValueError("depth must be at least 1")
    if residue_samples is None:
        residue_samples = default_residue_samples(curve)
    field = curve.field
    report = OrbitVerificationReport(curve)
    for n in range(1, N + 1):
        basis = riemann_roch_basis(curve, n)
        pi_n = curve.pi_power(n)
        residues = [residue(e * pi_n) for e in basis]
        rows = [[r.c0 for r in residues], [r.c1 for r in residues]]
        for u in residue_samples:
            sol = solve_linear(rows, [-u.c0, -u.c1], field)
            if sol is None:
                raise ConstructionFailedError(
                    f"no coordinate-ring element of level {n} matches the "
                    f"residue class {u!r}; this falsifies the orbit claim")
            b = curve.zero()
            for lam, e in zip(sol, basis):
                if lam:
                    b = b + curve.from_k(lam) * e
            unipotent = Matrix2K(curve, ((curve.one(), b),
                                         (curve.zero(), curve.one())))
            left = Matrix2K(curve, ((curve.pi_power(n - 1), curve.zero()),
                                    (curve.zero(), curve.one())))
            right = Matrix2K(curve, ((curve.pi_power(-n + 1),
                                      u.lift() * curve.pi_power(-n)),
                                     (curve.zero(), curve.one())))
            product = left * unipotent * right
            integral = product.is_in_gl2_o()
            vn = standard_vertex(curve, n)
            target = act(unipotent, child(vn, u))
            matches = vertex_eq(target, standard_vertex(curve, n - 1))
            report.ray_checks.append(RayOrbitCheck(
                n, repr(u), repr(b), integral, matches))
            if not (integral and matches):
                raise ConstructionFailedError(
                    f"orbit construction failed at level {n}, class {u!r}")
    v0 = standard_vertex(curve, 0)
    v1 = standard_vertex(curve, 1)
    vstar = vstar_vertex(curve)
    for u in residue_samples:
        ch = child(v0, u)
        if not u.c1:
            # constant residue: a linear-fractional matrix sends it to infinity
            g = Matrix2K(curve, ((curve.zero(), curve.one()),
                                 (curve.one(), curve.from_k(-u.c0))))
            matched = vertex_eq(act(g, ch), v1)
            report.base_checks.append(BasePointCheck(repr(u), "ray", matched))
        else:
            g = Matrix2K(curve, ((curve.from_k(u.c1), curve.from_k(u.c0)),
                                 (curve.zero(), curve.one())))
            matched = vertex_eq(act(g, vstar), ch)
            report.base_checks.append(BasePointCheck(repr(u), "branch", matched))
        if not matched:
            raise ConstructionFailedError(
                f"child of the base vertex for class {u!r} matched neither "
                "known orbit")
    return report


def _branch_chain(curve, X, z, label, expected_residue, report):
    """Column-reduce X against v(1,0) and record the landing data."""
    vstar = vstar_vertex(curve)
    t = curve.t()
    stabilizes = stab_membership(X, vstar)
    x22 = X.rows[1][1]
    s = -(X.rows[1][0] / x22)
    unit_ok = bool(s) and valuation(s) == 0
    reducer = Matrix2K(curve, ((curve.one(), curve.one()), (s, curve.zero())))
    m = X.scaled(z.inverse()) * reducer
    lands = False
    tangent = False
    residue_ok = False
    if (not m.rows[1][0]) and m.rows[1][1] == curve.one():
        aprime, bprime = m.rows[0]
        lands = valuation(aprime) == 2
        diff = bprime - t
        tangent = (not diff) or valuation(diff) >= 1
        if tangent:
            covered = residue(diff * curve.x()) if diff else curve.residue(
                curve.field.zero(), curve.field.zero())
            residue_ok = covered == expected_residue
        # the coset named by X must be the level-2 neighbor past the branch edge
        lands = lands and vertex_eq(coset_normal_form(X),
                                    Vertex(2, bprime))
    report.branch_checks.append(BranchCheck(
        label, stabilizes, unit_ok, lands, tangent, residue_ok))
    if not report.branch_checks[-1].ok:
        raise ConstructionFailedError(
            f"branch-orbit construction failed for {label}")


def verify_vstar_orbit(curve, coord_samples=None):
    """Constructively verify that all neighbors of v(pi, t) away from v(1,0)
    are in the orbit of the branch edge."""
    if coord_samples is None:
        coord_samples = default_branch_samples(curve)
    field = curve.field
    basis = quaternion_basis(curve)
    report = OrbitVerificationReport(curve)
    t = curve.t()
    # base identity: V carries v(1,0) to v(pi^2, t), the neighbor past the edge
    prod = basis.V * Matrix2K(curve, ((t, curve.one()),
                                      (curve.one(), curve.zero())))
    x = curve.x()
    base_ok = ((not prod.rows[1][0])
               and prod.rows[1][1] == x
               and prod.rows[0][1] == curve.y()
               and vertex_eq(coset_normal_form(basis.V), Vertex(2, t)))
    report.branch_checks.append(BranchCheck("base identity", True, True,
                                            base_ok, base_ok, base_ok))
    if not base_ok:
        raise ConstructionFailedError("the base identity for V failed")
    one_res = curve.residue(field.one(), field.zero())
    for a, b in coord_samples:
        if not a and not b:
            raise ZeroTupleError("branch samples must be nonzero pairs")
        X = _mat_add(Matrix2K.identity(curve),
                     _mat_add(basis.V.scaled(curve.from_k(a)),
                              basis.W.scaled(curve.from_k(b))))
        z = curve.from_k(a) * x + curve.from_k(b) * curve.y()
        if X.rows[1][0] != z:
            raise ConstructionFailedError("lower-left entry is not a*x + b*y")
        tbar = curve.residue(field.zero(), field.one())
        denom = curve.residue(a, field.zero()) + curve.residue(b, field.zero()) * tbar
        if curve.case == CaseTag.IV:
            numer = one_res
        else:
            numer = curve.residue(field.one() + b * curve.tau, field.zero())
        expected = (numer * denom.inverse()) if numer else numer
        label = f"(a, b) = ({field.format(a)}, {field.format(b)})"
        _branch_chain(curve, X, z, label, expected, report)
    if curve.case == CaseTag.III:
        # the tau = beta = 1 branch: Y = a*V + W covers the residue classes
        # with unit t~ part in 1/u
        seq = field.element_sequence()
        for _ in range(6):
            a = next(seq)
            Y = _mat_add(basis.V.scaled(curve.from_k(a)), basis.W)
            z = curve.from_k(a) * x + curve.y()
            tbar = curve.residue(field.zero(), field.one())
            denom = curve.residue(a, field.zero()) + tbar
            expected = denom.inverse()
            _branch_chain(curve, Y, z, f"special a = {field.format(a)}",
                          expected, report)
    return report


# ---------------------------------------------------------------------------
# quotient builders


def _ray_vertices(curve, N):
    out = []
    for n in range(N + 1):
        desc = stab_ray_description(curve, n)
        out.append(QuotientVertex(f"v{n}", n, desc.label()))
    return out


def build_gl2_quotient(curve, N, ray_report=None, branch_report=None):
    """The full-group quotient: the ray with the branch vertex attached, all
    edge multiplicities 1.  Requires passing orbit verifications."""
    if ray_report is None:
        ray_report = verify_ray_orbits(curve, N)
    if branch_report is None:
        branch_report = verify_vstar_orbit(curve)
    if not (ray_report.ok and branch_report.ok):
        raise VerificationIncompleteError(
            "orbit verification reported failures; refusing to emit the graph")
    ray = _ray_vertices(curve, N)
    lifts = [VStarLift("vstar_0", curve.field.format(curve.field.one()))]
    edges = [QuotientEdge("v0", "vstar_0", 1, [])]
    for n in range(N):
        edges.append(QuotientEdge(f"v{n}", f"v{n + 1}", 1, []))
    return QuotientGraph(ray, lifts, edges, 0, N)


def _det_surjectivity_spot_check(curve, count=5):
    """diag(alpha, 1) lies in GL2(C) for sampled alpha in k*: the determinant
    map onto k* is onto, which underpins the coset identification."""
    if not curve.field.supports_element_arithmetic:
        return True  # class-only field: the identification is definitional
    seq = curve.field.element_sequence()
    done = 0
    while done < count:
        alpha = next(seq)
        if not alpha:
            continue
        g = Matrix2K.diagonal(curve, curve.from_k(alpha), curve.one())
        if not g.is_in_coordinate_ring_group():
            return False
        det = g.det()
        if det.a.constant_value() != alpha:
            return False
        done += 1
    return True


def build_sl2_quotient(curve, N, witness_budget=10):
    """The determinant-one quotient: the ray, plus one branch-vertex lift per
    quaternary-norm coset, each with one edge per binary-norm coset."""
    report = norm_coset_report(curve, witness_budget)
    if not _det_surjectivity_spot_check(curve):
        raise UnsupportedFieldError("determinant surjectivity check failed")
    fmt = curve.field.format
    ray = _ray_vertices(curve, N)
    lifts = []
    edges = [QuotientEdge(f"v{n}", f"v{n + 1}", 1, [])
             for n in range(N)]
    witness_strings = [fmt(w) for w in report.edge_class_witnesses]
    per_lift = _per_lift_multiplicities(curve, report)
    for i, w in enumerate(report.vertex_class_witnesses):
        lifts.append(VStarLift(f"vstar_{i}", fmt(w)))
        edges.append(QuotientEdge("v0", f"vstar_{i}", per_lift[i],
                                  list(witness_strings)))
    graph = QuotientGraph(ray, lifts, edges, 0, N)
    graph.free_rank = free_rank(graph)
    return graph


def graph_to_json_dict(graph):
    """The stable serialization schema shared by the CLI and fixtures."""
    def mult(m):
        return "omega" if m is OMEGA else m

    return {
        "ray": [{"id": v.id, "level": v.level, "stabilizer": v.stabilizer}
                for v in graph.ray],
        "vstar_lifts": [{"id": l.id, "coset_witness": l.coset_witness}
                        for l in graph.vstar_lifts],
        "edges": [{"from": e.src, "to": e.dst, "multiplicity": mult(e.multiplicity),
                   "witnesses": list(e.witnesses)} for e in graph.edges],
        "free_rank": mult(graph.free_rank),
        "truncated_at": graph.truncated_at,
    }


def graph_from_json_dict(data):
    def mult(m):
        return OMEGA if m == "omega" else m

    return QuotientGraph(
        ray=[QuotientVertex(v["id"], v["level"], v["stabilizer"])
             for v in data["ray"]],
        vstar_lifts=[VStarLift(l["id"], l["coset_witness"])
                     for l in data["vstar_lifts"]],
        edges=[QuotientEdge(e["from"], e["to"], mult(e["multiplicity"]),
                            list(e["witnesses"])) for e in data["edges"]],
        free_rank=mult(data["free_rank"]),
        truncated_at=data["truncated_at"])


def graph_to_dot(graph):
    """DOT rendering; omega edges are dashed with an omega label."""
    lines = ["graph quotient {", "  rankdir=LR;"]
    for v in graph.ray:
        lines.append(f'  {v.id} [label="{v.id}\\n{v.stabilizer}"];')
    for l in graph.vstar_lifts:
        lines.append(f'  {l.id} [label="{l.id}\\ncoset {l.coset_witness}"];')
    if graph.ray:
        lines.append(f'  ray_continues [shape=none, label="..."];')
        lines.append(f"  {graph.ray[-1].id} -- ray_continues [style=dotted];")
    for e in graph.edges:
        if e.multiplicity is OMEGA:
            lines.append(f'  {e.src} -- {e.dst} [label="omega", style=dashed];')
        elif e.multiplicity == 1:
            lines.append(f"  {e.src} -- {e.dst};")
        else:
            lines.append(f'  {e.src} -- {e.dst} [label="{e.multiplicity}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _per_lift_multiplicities(curve, report):
    """Edge count above each lift, computed per lift and asserted uniform."""
    counts = []
    if curve.field.kind == FieldKind.REAL_LAURENT:
        from .constfield import (_LAURENT_V4, _class_mul, laurent_form_classes)
        one = curve.field.one()
        quat = laurent_form_classes([one, curve.rho, curve.sigma,
                                     curve.rho * curve.sigma])
        bin_ = laurent_form_classes([one, curve.rho])
        quat_set = set(_LAURENT_V4) if quat == "all" else set(quat)
        bin_set = set(_LAURENT_V4) if bin_ == "all" else set(bin_)
        for w in report.vertex_class_witnesses:
            coset = {_class_mul(w.sign_class(), q) for q in quat_set}
            seen = []
            for c in sorted(coset):
                if not any(c in s for s in seen):
                    seen.append({_class_mul(c, b) for b in bin_set})
            counts.append(len(seen))
    else:
        counts = [report.edge_classes_per_vertex] * len(report.vertex_class_witnesses)
    uniform = all(c == counts[0] for c in counts)
    if not uniform:
        raise ArithmeticError(
            f"edge multiplicity is not uniform across lifts: {counts}; "
            "this would contradict the coset decomposition")
    if counts and counts[0] != report.edge_classes_per_vertex:
        raise ArithmeticError("per-lift count disagrees with the index")
    return counts


# ---------------------------------------------------------------------------
# amalgam decomposition


@dataclass
class AmalgamSample:
    label: str
    stabilizes_branch: bool
    stabilizes_base: bool
    det_is_binary_form: bool
    det_is_norm: bool
    factor_count: int

    @property
    def ok(self):
        return (self.stabilizes_branch and self.stabilizes_base
                and self.det_is_binary_form and self.det_is_norm
                and self.factor_count > 0)


@dataclass
class AmalgamReport:
    a_description: str
    b_description: str
    c_description: str
    samples: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return all(s.ok for s in self.samples)


def factor_constant_gl2(curve, g):
    """Factor a constant invertible 2x2 matrix as one diagonal times
    elementary matrices (explicit membership in the group generated by
    elementary and diagonal matrices over the coordinate ring).

    Returns [("diag", (p, q)), ("E12", c), ...]; the product of the factors
    is verified to reproduce g exactly, and a failure raises loudly.
    """
    (a, b), (c, d) = [[e.a.constant_value() if e else curve.field.zero()
                       for e in row] for row in g.rows]
    field = curve.field
    one = field.one()
    factors = []
    if not c:
        if not (a and d):
            raise ArithmeticError("matrix is singular")
        factors.append(("diag", (a, d)))
        if b:
            factors.append(("E12", b / a))
    else:
        delta = a * d - b * c
        if not delta:
            raise ArithmeticError("matrix is singular")
        # g = E12(a/c) * w * diag(-c, -delta/c) * E12(d/c), w = E12(1)E21(-1)E12(1)
        factors = [("E12", a / c), ("E12", one), ("E21", -one), ("E12", one),
                   ("diag", (-c, -delta / c)), ("E12", d / c)]
        # bubble the diagonal to the front through the elementary factors
        idx = next(i for i, f in enumerate(factors) if f[0] == "diag")
        while idx > 0:
            kind, val = factors[idx - 1]
            p, q = factors[idx][1]
            if kind == "E12":
                factors[idx - 1] = ("diag", (p, q))
                factors[idx] = ("E12", val * q / p)
            else:
                factors[idx - 1] = ("diag", (p, q))
                factors[idx] = ("E21", val * p / q)
            idx -= 1
    product = Matrix2K.identity(curve)
    for kind, val in factors:
        if kind == "diag":
            m = Matrix2K.diagonal(curve, curve.from_k(val[0]), curve.from_k(val[1]))
        elif kind == "E12":
            m = Matrix2K(curve, ((curve.one(), curve.from_k(val)),
                                 (curve.zero(), curve.one())))
        else:
            m = Matrix2K(curve, ((curve.one(), curve.zero()),
                                 (curve.from_k(val), curve.one())))
        product = product * m
    if product != g:
        raise ArithmeticError("factorization failed to reproduce the matrix")
    return factors


def amalgam_report(curve, sample_count=50):
    """The edge-of-groups decomposition over the branch edge.

    A is the quaternionic stabilizer of v(pi, t); B is generated by the ray
    stabilizers (the elementary and diagonal constant matrices); C is the
    pencil alpha*I + beta*U, verified to stabilize both edge endpoints, to
    have determinant equal to the binary norm form, and to factor into
    diagonal-times-elementary matrices.
    """
    basis = quaternion_basis(curve)
    vstar = vstar_vertex(curve)
    v0 = standard_vertex(curve, 0)
    field = curve.field
    report = AmalgamReport(
        a_description="quaternionic stabilizer of v(pi, t): "
                      "alpha*I + beta*U + gamma*V + delta*W",
        b_description="generated by the ray stabilizers: elementary and "
                      "diagonal matrices over the coordinate ring",
        c_description=edge_stabilizer_estar(curve).note)
    seq = field.element_sequence()
    pool = [next(seq) for _ in range(max(8, sample_count // 4))]
    pairs = [(a, b) for a in pool for b in pool if a or b][:sample_count]
    for a, b in pairs:
        m = _mat_add(Matrix2K.identity(curve).scaled(curve.from_k(a)),
                     basis.U.scaled(curve.from_k(b)))
        coords = QuaternionCoords(a, b, field.zero(), field.zero())
        det_val = m.det().a.constant_value()
        form_val = det_form(coords, curve)
        sample = AmalgamSample(
            label=f"alpha={field.format(a)}, beta={field.format(b)}",
            stabilizes_branch=stab_membership(m, vstar),
            stabilizes_base=stab_membership(m, v0),
            det_is_binary_form=(det_val == form_val),
            det_is_norm=binary_norm_membership(det_val, curve),
            factor_count=len(factor_constant_gl2(curve, m)))
        report.samples.append(sample)
    return report
