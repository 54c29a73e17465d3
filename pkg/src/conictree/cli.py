"""Command-line surface.

Subcommands: validate, normalize, stab, orbit-verify, quotient, witnesses,
export.  Curves come from inline flags (--field/--case/--rho/--sigma) or a
key = value curve file; inline values win over the file with a warning.
Exit codes: 0 success, 1 domain violation, 2 usage error.  All output is
deterministic for fixed inputs and seeds.

Field tokens: Q, R, R((u)), Qp(p), GF(q)(u).  Element grammar: integers,
rationals p/q, polynomials and rational functions in u (with g the generator
of a nonprime coefficient field), Laurent terms like 1/2*u^-1 + 3 + u^2.
"""

import argparse
import json
import sys

from .constfield import make_field, nonnorm_witnesses, norm_coset_report
from .core import OMEGA, CaseTag
from .errors import ConicTreeError, ParseError
from .funcfield import Curve, normalize_conic, validate_curve
from .quotient import (build_gl2_quotient, build_sl2_quotient,
                       graph_from_json_dict, graph_to_dot, graph_to_json_dict,
                       verify_ray_orbits, verify_vstar_orbit)
from .stabilizers import quaternion_basis, stab_ray_description, structure_check


def export_graph(graph, fmt):
    """Bit-stable serialization of a quotient graph as bytes."""
    if fmt == "json":
        return (json.dumps(graph_to_json_dict(graph), indent=2) + "\n").encode()
    if fmt == "dot":
        return graph_to_dot(graph).encode()
    raise ValueError(f"unknown format {fmt!r}")


def _read_curve_file(path):
    data = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"bad curve-file line: {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            data[key] = value
    return data


def _curve_from_args(args, need_curve=True):
    spec = {}
    if getattr(args, "curve_file", None):
        spec.update(_read_curve_file(args.curve_file))
    for key in ("field", "case", "rho", "sigma", "tau"):
        inline = getattr(args, key, None)
        if inline is not None:
            if key in spec and spec[key] != inline:
                print(f"warning: inline --{key} {inline!r} overrides curve-file "
                      f"value {spec[key]!r}", file=sys.stderr)
            spec[key] = inline
    missing = [k for k in ("field", "case", "rho", "sigma") if k not in spec]
    if missing:
        raise ParseError(f"missing curve data: {', '.join(missing)} "
                         "(give flags or a --curve-file)")
    field = make_field(spec["field"])
    case = CaseTag(spec["case"].upper())
    rho = field.parse(spec["rho"])
    sigma = field.parse(spec["sigma"])
    if "tau" in spec:
        expected = "1" if case == CaseTag.III else "0"
        if field.parse(spec["tau"]) != field.parse(expected):
            raise ParseError(f"tau must be {expected} for case {case}")
    violations = validate_curve(field, case, rho, sigma)
    if not need_curve:
        return field, case, rho, sigma, violations
    if violations:
        raise ConicTreeError("invalid curve: " + "; ".join(violations))
    return Curve(field, case, rho, sigma)


def _write_output(args, payload):
    if getattr(args, "output", None):
        with open(args.output, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload.decode())


def _cmd_validate(args):
    field, case, rho, sigma, violations = _curve_from_args(args, need_curve=False)
    if violations:
        for v in violations:
            print(v, file=sys.stderr)
        return 1
    print("valid")
    return 0


def _cmd_normalize(args):
    field = make_field(args.field)
    coeffs = [field.parse(c) for c in args.coeffs.split(",")]
    curve, sub = normalize_conic(field, coeffs)
    print(f"case {curve.case}")
    print(f"rho = {field.format(curve.rho)}")
    print(f"sigma = {field.format(curve.sigma)}")
    print(f"tau = {field.format(curve.tau)}")
    print(f"substitution: {sub.describe()}")
    print(f"scale = {field.format(sub.scale)}")
    return 0


def _cmd_stab(args):
    curve = _curve_from_args(args)
    name = args.vertex
    if name == "vstar":
        basis = quaternion_basis(curve)
        print("stabilizer of v(pi, t): alpha*I + beta*U + gamma*V + delta*W")
        for label, mat in (("U", basis.U), ("V", basis.V), ("W", basis.W)):
            print(f"{label} = {mat!r}")
        report = structure_check(curve, sample_count=50)
        print(f"squares scalar: {report.squares_scalar}; "
              f"anticommute: {report.pairwise_anticommute}; "
              f"{report.w_relation}; "
              f"invertibility samples: {report.invertibility_samples}")
        return 0 if report.ok else 1
    if name == "estar":
        print("stabilizer of the branch edge: alpha*I + beta*U, "
              "(alpha, beta) != (0, 0)")
        return 0
    if not name.startswith("v") or not name[1:].isdigit():
        raise ParseError("--vertex takes v<N>, vstar, or estar")
    n = int(name[1:])
    desc = stab_ray_description(curve, n)
    print(desc.label())
    if desc.b_basis:
        print("b-space basis: " + ", ".join(repr(e) for e in desc.b_basis))
    return 0


def _cmd_orbit_verify(args):
    curve = _curve_from_args(args)
    ray = verify_ray_orbits(curve, args.depth)
    for c in ray.ray_checks:
        print(f"ray n={c.level} class={c.residue_label}: "
              f"product integral={c.product_integral} "
              f"action matches={c.action_matches}")
    for c in ray.base_checks:
        print(f"base class={c.residue_label}: orbit={c.orbit} "
              f"matched={c.matched}")
    branch = verify_vstar_orbit(curve)
    for c in branch.branch_checks:
        print(f"branch {c.label}: ok={c.ok}")
    ok = ray.ok and branch.ok
    print(f"all checks passed: {ok}")
    return 0 if ok else 1


def _cmd_quotient(args):
    curve = _curve_from_args(args)
    if args.group == "gl2":
        graph = build_gl2_quotient(curve, args.depth)
    else:
        graph = build_sl2_quotient(curve, args.depth,
                                   witness_budget=args.witness_budget)
    _write_output(args, export_graph(graph, args.format))
    return 0


def _cmd_witnesses(args):
    curve = _curve_from_args(args)
    for w in nonnorm_witnesses(curve, args.count):
        print(curve.field.format(w))
    return 0


def _cmd_export(args):
    with open(args.input, encoding="utf-8") as fh:
        graph = graph_from_json_dict(json.load(fh))
    _write_output(args, export_graph(graph, args.format))
    return 0


def _add_curve_flags(p):
    p.add_argument("--field", help="Q, R, R((u)), Qp(p), or GF(q)(u)")
    p.add_argument("--case", choices=["I", "II", "III", "IV", "i", "ii", "iii", "iv"])
    p.add_argument("--rho")
    p.add_argument("--sigma")
    p.add_argument("--tau")
    p.add_argument("--curve-file")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="conictree",
        description="exact quotient graphs of the lattice-class tree for "
                    "nonrational genus-zero coordinate rings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the curve conditions")
    _add_curve_flags(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("normalize", help="bring a general conic to canonical form")
    p.add_argument("--field", required=True)
    p.add_argument("--coeffs", required=True,
                   help="six comma-separated coefficients of "
                        "a*y^2 + b*x*y + c*x^2 + d*x + e*y + f")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("stab", help="print a stabilizer description")
    _add_curve_flags(p)
    p.add_argument("--vertex", default="vstar", help="v<N>, vstar, or estar")
    p.set_defaults(func=_cmd_stab)

    p = sub.add_parser("orbit-verify", help="run the constructive orbit checks")
    _add_curve_flags(p)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_orbit_verify)

    p = sub.add_parser("quotient", help="build and export a quotient graph")
    _add_curve_flags(p)
    p.add_argument("--group", choices=["gl2", "sl2"], required=True)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--witness-budget", type=int, default=10)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--output")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_quotient)

    p = sub.add_parser("witnesses", help="pairwise-inequivalent non-norm witnesses")
    _add_curve_flags(p)
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(func=_cmd_witnesses)

    p = sub.add_parser("export", help="convert a stored JSON graph")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["json", "dot"], required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_export)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConicTreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
