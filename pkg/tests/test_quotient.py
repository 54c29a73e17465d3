import json
from fractions import Fraction

import pytest

import conictree as ct
from conictree.core import OMEGA
from conictree.errors import ZeroTupleError


def test_ray_orbit_solver_reproduces_minimal_solutions(q_curve):
    """At level 1 the solver pins b = -y for the class of t and b = -x for
    the class of 1 (free coordinates are zeroed)."""
    field = q_curve.field
    t_class = q_curve.residue(field.zero(), field.one())
    one_class = q_curve.residue(field.one(), field.zero())
    zero_class = q_curve.residue(field.zero(), field.zero())
    report = ct.verify_ray_orbits(q_curve, 1,
                                  residue_samples=[zero_class, one_class, t_class])
    assert report.ok
    by_class = {c.residue_label: c.b_label for c in report.ray_checks}
    assert by_class[repr(zero_class)] == repr(q_curve.zero())
    assert by_class[repr(one_class)] == repr(-q_curve.x())
    assert by_class[repr(t_class)] == repr(-q_curve.y())


def test_ray_orbits_all_curves(q_curve, f2_iii_curve, f2_iv_curve):
    for curve in (q_curve, f2_iii_curve, f2_iv_curve):
        report = ct.verify_ray_orbits(curve, 3)
        assert report.ok
        assert len(report.ray_checks) == 3 * 8
        orbits = {c.orbit for c in report.base_checks}
        assert orbits == {"ray", "branch"}


def test_branch_orbit_verification(q_curve, f2_iii_curve, f2_iv_curve):
    for curve in (q_curve, f2_iii_curve, f2_iv_curve):
        report = ct.verify_vstar_orbit(curve)
        assert report.ok
        assert len(report.branch_checks) >= 20
    # the linear-term case exercises its special covering branch
    labels = [c.label for c in ct.verify_vstar_orbit(f2_iii_curve).branch_checks]
    assert any(l.startswith("special") for l in labels)


def test_branch_samples_must_be_nonzero(q_curve):
    zero = q_curve.field.zero()
    with pytest.raises(ZeroTupleError):
        ct.verify_vstar_orbit(q_curve, coord_samples=[(zero, zero)])


def test_gl2_graph_shapes(q_curve, f2_iv_curve):
    g = ct.build_gl2_quotient(q_curve, 5)
    assert len(g.ray) == 6
    assert len(g.vstar_lifts) == 1
    assert len(g.edges) == 6
    assert all(e.multiplicity == 1 for e in g.edges)
    assert ct.free_rank(g) == 0
    g1 = ct.build_gl2_quotient(q_curve, 1)
    assert len(g1.ray) + len(g1.vstar_lifts) == 3
    g4 = ct.build_gl2_quotient(f2_iv_curve, 3)
    assert len(g4.ray) == 4
    assert g4.ray[0].stabilizer == "GL2(k)"
    assert "quaternionic" not in g4.ray[0].stabilizer
    assert g4.vstar_lifts[0].coset_witness == "1"


def test_gl2_ray_stabilizer_labels(q_curve):
    g = ct.build_gl2_quotient(q_curve, 3)
    assert [v.stabilizer for v in g.ray][:2] == ["GL2(k)", "borel(n=1, b_dim=3)"]


def test_sl2_real_closed_tree(r_curve):
    g = ct.build_sl2_quotient(r_curve, 5)
    assert len(g.vstar_lifts) == 2
    assert {l.coset_witness for l in g.vstar_lifts} == {"1", "-1"}
    branch_edges = [e for e in g.edges if e.dst.startswith("vstar")]
    assert [e.multiplicity for e in branch_edges] == [1, 1]
    assert g.free_rank == 0


def test_sl2_padic_loop(qp_curves):
    for curve in qp_curves:
        g = ct.build_sl2_quotient(curve, 4)
        assert len(g.vstar_lifts) == 1
        branch = [e for e in g.edges if e.dst.startswith("vstar")]
        assert branch[0].multiplicity == 2
        assert g.free_rank == 1


def test_sl2_laurent_rows(laurent_rows):
    expected = [(4, 1, 0), (2, 2, 2), (2, 1, 0)]
    for curve, (lifts, per_edge, rank) in zip(laurent_rows, expected):
        g = ct.build_sl2_quotient(curve, 4)
        assert len(g.vstar_lifts) == lifts
        branch = [e for e in g.edges if e.dst.startswith("vstar")]
        assert all(e.multiplicity == per_edge for e in branch)
        assert g.free_rank == rank


def test_sl2_rational_curve_infinite_edges(q_curve):
    g = ct.build_sl2_quotient(q_curve, 4, witness_budget=10)
    assert len(g.vstar_lifts) == 2
    branch = [e for e in g.edges if e.dst.startswith("vstar")]
    assert all(e.multiplicity is OMEGA for e in branch)
    assert all(len(e.witnesses) == 10 for e in branch)
    assert g.free_rank is OMEGA


def test_sl2_function_field_curves(f2_iii_curve, f3_curve):
    g = ct.build_sl2_quotient(f2_iii_curve, 4)
    branch = [e for e in g.edges if e.dst.startswith("vstar")]
    assert len(g.vstar_lifts) == 1 and branch[0].multiplicity == 1
    assert g.free_rank == 0
    g3 = ct.build_sl2_quotient(f3_curve, 4, witness_budget=4)
    branch3 = [e for e in g3.edges if e.dst.startswith("vstar")]
    assert len(g3.vstar_lifts) == 1 and branch3[0].multiplicity is OMEGA
    assert g3.free_rank is OMEGA


def test_sl2_ray_part_matches_gl2(q_curve):
    sl2 = ct.build_sl2_quotient(q_curve, 5)
    gl2 = ct.build_gl2_quotient(q_curve, 5)
    assert sl2.ray == gl2.ray
    ray_edges_sl2 = [e for e in sl2.edges if not e.dst.startswith("vstar")]
    ray_edges_gl2 = [e for e in gl2.edges if not e.dst.startswith("vstar")]
    assert ray_edges_sl2 == ray_edges_gl2


def test_free_rank_recomputation_matches(r_curve, qp_curves, laurent_rows,
                                         q_curve):
    for curve in (r_curve, *qp_curves, *laurent_rows):
        g = ct.build_sl2_quotient(curve, 3)
        assert ct.free_rank(g) == g.free_rank
    g = ct.build_sl2_quotient(q_curve, 3)
    assert ct.free_rank(g) is OMEGA


def test_free_rank_dominates_coset_index(laurent_rows, qp_curves):
    """Graph rank >= (edge classes per lift) - 1; the two numbers are
    reported separately and differ whenever there are several lifts."""
    for curve in (*laurent_rows, *qp_curves):
        rep = ct.norm_coset_report(curve)
        g = ct.build_sl2_quotient(curve, 3)
        mu = rep.edge_classes_per_vertex
        assert g.free_rank >= mu - 1


def test_tree_iff_norm_groups_agree(r_curve, laurent_rows, qp_curves,
                                    f2_iii_curve):
    for curve in (r_curve, *laurent_rows, *qp_curves, f2_iii_curve):
        rep = ct.norm_coset_report(curve)
        g = ct.build_sl2_quotient(curve, 3)
        assert (g.free_rank == 0) == (rep.edge_classes_per_vertex == 1)


def test_power_of_two_check():
    assert ct.power_of_two_check(ct.NormCosetReport(2, 1))
    assert ct.power_of_two_check(ct.NormCosetReport(4, 1))
    assert ct.power_of_two_check(ct.NormCosetReport(OMEGA, 1))
    assert not ct.power_of_two_check(ct.NormCosetReport(3, 1))


def test_amalgam_report(q_curve, f2_iii_curve):
    for curve in (q_curve, f2_iii_curve):
        report = ct.amalgam_report(curve, sample_count=20)
        assert report.ok
        assert len(report.samples) == 20
        assert "residue field" in report.c_description


def test_constant_factorization_examples(q_curve):
    m = ct.Matrix2K(q_curve, ((q_curve.from_int(2), q_curve.from_int(-3)),
                              (q_curve.from_int(3), q_curve.from_int(2))))
    factors = ct.factor_constant_gl2(q_curve, m)
    assert factors[0][0] == "diag"
    assert all(kind in ("diag", "E12", "E21") for kind, _ in factors)
    assert sum(1 for kind, _ in factors if kind == "diag") == 1
    upper = ct.Matrix2K(q_curve, ((q_curve.from_int(2), q_curve.from_int(5)),
                                  (q_curve.zero(), q_curve.from_int(1))))
    factors = ct.factor_constant_gl2(q_curve, upper)
    assert factors[0] == ("diag", (Fraction(2), Fraction(1)))


def test_json_round_trip(q_curve, r_curve, laurent_rows):
    for g in (ct.build_sl2_quotient(q_curve, 4),
              ct.build_sl2_quotient(r_curve, 2),
              ct.build_sl2_quotient(laurent_rows[1], 3),
              ct.build_gl2_quotient(q_curve, 2)):
        data = ct.graph_to_json_dict(g)
        assert ct.graph_from_json_dict(data) == g
        # stable through an actual JSON text round trip as well
        assert ct.graph_from_json_dict(json.loads(json.dumps(data))) == g


def test_json_schema_keys(r_curve):
    data = ct.graph_to_json_dict(ct.build_sl2_quotient(r_curve, 2))
    assert list(data.keys()) == ["ray", "vstar_lifts", "edges", "free_rank",
                                 "truncated_at"]
    assert list(data["edges"][0].keys()) == ["from", "to", "multiplicity",
                                             "witnesses"]
    assert data["truncated_at"] == 2
    for e in data["edges"]:
        assert "witnesses" in e


def test_dot_rendering(q_curve, r_curve):
    dot = ct.graph_to_dot(ct.build_sl2_quotient(q_curve, 3))
    assert "style=dashed" in dot and '"omega"' in dot
    dot_r = ct.graph_to_dot(ct.build_sl2_quotient(r_curve, 3))
    assert "vstar_1" in dot_r
    assert "ray_continues" in dot_r
