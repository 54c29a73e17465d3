"""Exact arithmetic and tree quotients for nonrational genus-zero coordinate
rings k[x,y] with a degree-2 place at infinity."""

from .core import OMEGA, CaseTag
from .constfield import (FieldDescriptor, FieldKind, NormCosetReport,
                         PadicClassField, RationalExactField,
                         RationalFunctionField, RealClosedField,
                         RealLaurentField, binary_norm_membership, is_square,
                         make_field, nonnorm_witnesses, norm_coset_report,
                         quaternary_norm_membership)
from .funcfield import (Curve, KElement, ResidueElement, is_integral,
                        normalize_conic, residue, residue_expansion,
                        riemann_roch_basis, series_valuation,
                        truncated_representative, validate_curve, valuation)
from .tree import (Matrix2K, Vertex, act, adjacent, child, coset_normal_form,
                   matrix_for_vertex, parent, standard_vertex, vertex_eq,
                   vstar_vertex)
from .stabilizers import (QuaternionBasis, QuaternionCoords,
                          StabilizerDescription, StructureReport, det_form,
                          edge_stabilizer_estar, quaternion_basis,
                          quaternion_element, stab_membership,
                          stab_ray_description, structure_check)
from .quotient import (AmalgamReport, QuotientEdge, QuotientGraph,
                       QuotientVertex, VStarLift, amalgam_report,
                       build_gl2_quotient, build_sl2_quotient,
                       factor_constant_gl2, free_rank, graph_from_json_dict,
                       graph_to_dot, graph_to_json_dict, power_of_two_check,
                       verify_ray_orbits, verify_vstar_orbit)
from . import errors

__version__ = "0.1.0"
