#!/usr/bin/env python3
"""
singgraph: command line front end for dual graph invariants of normal
surface singularities, cusp constructions and monomial germs.
"""

import argparse
import json
import logging
import sys

from arith import format_rat, parse_quad
from blowup import apply_script
from config import load_config
from cusp import (
    QuadLattice, cusp_dual_graph, klein_polygon, rotation_number, topological_degree,
)
from endo import MonoVal, MonomialMap, jacobian_divisor, push_valuation, skew_degrees, theoremB_case, verify_jacobian_formula
from errors import (
    BadParameter, BadParameters, DegenerateCycle, Disconnected, GraphFormatError,
    MixedFieldError, NoSuchEdge, NoSuchVertex, NonTermination, NotDominant,
    NotEquivariant, NotFinite, NotIntegralNorm, NotNegativeDefinite, NotSameEdge,
    NotStabilizing, NotTotallyPositive, ScriptError, SearchExhausted, SingGraphError, SingularMatrix,
)
from graph import (
    DualGraph, classify, cyclic_quotient_graph, exceptional_data, hirzebruch_jung,
    require_resolution_graph, to_dot,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_USAGE = 2
EXIT_NOT_NEGATIVE_DEFINITE = 3
EXIT_SCRIPT = 4
EXIT_CUSP = 5
EXIT_DISCONNECTED = 6
EXIT_MAP = 7
EXIT_PARAMETERS = 8
EXIT_SEARCH = 9
EXIT_INTERRUPTED = 130

# first match wins
EXIT_CODES = (
    (GraphFormatError, EXIT_USAGE),
    (NotNegativeDefinite, EXIT_NOT_NEGATIVE_DEFINITE),
    (ScriptError, EXIT_SCRIPT),
    ((NotTotallyPositive, NotStabilizing, NotIntegralNorm), EXIT_CUSP),
    (Disconnected, EXIT_DISCONNECTED),
    ((NotDominant, NotFinite, NotEquivariant), EXIT_MAP),
    ((SearchExhausted, DegenerateCycle, NonTermination), EXIT_SEARCH),
    ((BadParameter, BadParameters, NoSuchVertex, NoSuchEdge, NotSameEdge, MixedFieldError, SingularMatrix),
     EXIT_PARAMETERS),
)


def exit_code_for(error):
    for kinds, code in EXIT_CODES:
        if isinstance(error, kinds):
            return code
    return EXIT_FAILED_CHECK


def _int_list(text, count, what):
    parts = str(text).split(',')
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise BadParameters(f"{what} must be {count} comma-separated integers, got {text!r}") from None
    if len(values) != count:
        raise BadParameters(f"{what} must be {count} comma-separated integers, got {text!r}")
    return values


def _map_from_args(args, group):
    a, b, c, d = _int_list(args.map, 4, "--map")
    return MonomialMap(((a, b), (c, d)), group)


def _load_graph(path):
    try:
        return DualGraph.load(path)
    except OSError as e:
        raise GraphFormatError(f"cannot read {path}: {e.strerror}") from e


def _load_script(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except OSError as e:
        raise GraphFormatError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"invalid JSON in {path}: {e}") from e


def _emit_json(payload):
    print(json.dumps(payload, indent=2, sort_keys=True))


def cmd_classify(args):
    g = _load_graph(args.file)
    require_resolution_graph(g)
    data = exceptional_data(g)
    result = classify(g)
    if args.json:
        _emit_json({
            'verdict': result.verdict.label,
            'min_thinness': format_rat(result.min_thinness),
            'lc_places': {'kind': result.lc_places.kind.value, 'vertices': list(result.lc_places.vertices)},
            'vertices': {
                v: {
                    'a': format_rat(data.discrepancy[v]),
                    'b': data.multiplicity[v],
                    'A': format_rat(data.thinness[v]),
                }
                for v in g.ids
            },
        })
        return EXIT_OK
    if args.dot:
        print(to_dot(g, data))
        return EXIT_OK
    if not args.quiet:
        print(f"✓ Loaded dual graph: {len(g)} vertices, {len(g.edges) + g.total_loops} edges")
        for v in g.ids:
            c = g.curve(v)
            print(f"   {v}: E^2 = {c.self_intersection}, g = {c.genus}, "
                  f"a = {data.discrepancy[v]}, b = {data.multiplicity[v]}, A = {data.thinness[v]}")
    print(f"{result.verdict.label}, min A = {result.min_thinness}")
    if not args.quiet:
        print(f"   lc places: {result.lc_places.describe()}")
    return EXIT_OK


def cmd_blowup(args):
    g = _load_graph(args.file)
    steps = _load_script(args.script)
    require_resolution_graph(g)
    result = apply_script(g, steps)
    report_out = sys.stdout if args.output else sys.stderr
    mismatches = []
    for report in result.reports:
        diff = report.diff()
        mismatches.extend(diff)
        if not args.quiet and not args.json:
            status = "✓" if not diff and report.subdivision_identity_holds() else "✗"
            print(f"{status} {report.kind} blow-up -> {report.new_vertex}", file=report_out)
            for m in diff:
                print(f"   ✗ {m}", file=report_out)
    if args.json:
        _emit_json({
            'graph': result.graph.to_dict(),
            'new_vertices': list(result.new_vertices),
            'mismatches': [str(m) for m in mismatches],
        })
    elif args.output:
        result.graph.dump(args.output)
        if not args.quiet:
            print(f"✓ Wrote {len(result.graph)}-vertex graph to {args.output}")
    else:
        print(result.graph.dumps())
    if mismatches:
        print(f"✗ {len(mismatches)} transported values disagree with the recomputation", file=sys.stderr)
        return EXIT_FAILED_CHECK
    return EXIT_OK


def _lattice_from_args(args):
    d = args.d
    if args.omega == 'sqrt':
        lattice = QuadLattice.sqrt(d)
    elif args.omega == 'golden':
        if d != 5:
            raise BadParameters("--omega golden needs --d 5")
        lattice = QuadLattice.golden()
    else:
        a, b, c = _int_list(args.omega, 3, "--omega")
        lattice = QuadLattice.from_abc(a, b, c, d)
    return lattice.reflected() if args.reflected else lattice


def cmd_cusp(args):
    lattice = _lattice_from_args(args)
    data = klein_polygon(lattice)
    graph = cusp_dual_graph(data, geometric=args.geometric)
    payload = data.to_dict()
    lines = [
        f"✓ N = {lattice}",
        f"   ε = {data.epsilon}",
        f"   period l = {data.period}",
        f"   cycle: {', '.join(f'-{c}' for c in data.cycle_selfint)}",
    ]
    if args.alpha is not None:
        alpha = parse_quad(args.alpha, lattice.omega)
        degree = topological_degree(alpha, lattice)
        rotation = rotation_number(lattice, alpha)
        payload['alpha'] = {
            'value': str(alpha),
            'degree': degree,
            'rotation': 'irrational' if not rotation.rational else format_rat(rotation.value),
        }
        lines.append(f"   α = {alpha}: topological degree {degree}")
        if rotation.rational:
            lines.append(f"   rotation number: rational {rotation.value}")
        else:
            lines.append(f"   rotation number: irrational (≈ {float(rotation.approx):.6f})")
        if degree >= 2:
            lines.append("💡 JF is empty on a cusp: a self-map of degree >= 2 lands in the lc, not klt, case")
    if args.graph:
        payload['graph'] = graph.to_dict()
    if args.json:
        _emit_json(payload)
        return EXIT_OK
    for line in (lines if not args.quiet else lines[1:4]):
        print(line)
    if args.graph:
        print(graph.dumps())
    return EXIT_OK


def cmd_cyclic(args):
    g = cyclic_quotient_graph(args.n, args.q)
    result = classify(g)
    if args.json:
        _emit_json({'graph': g.to_dict(), 'verdict': result.verdict.label,
                    'min_thinness': format_rat(result.min_thinness)})
    elif args.dot:
        print(to_dot(g, exceptional_data(g)))
    else:
        chain = hirzebruch_jung(args.n, args.q)
        if not args.quiet:
            print(f"✓ (1/{args.n})(1, {args.q}): chain {' - '.join(f'-{b}' for b in chain)}")
        print(f"{result.verdict.label}, min A = {result.min_thinness}")
    return EXIT_OK


def cmd_verify_jacobian(args):
    group = tuple(_int_list(args.group, 2, "--group")) if args.group else None
    f = _map_from_args(args, group)
    v = MonoVal.parse(args.weights)
    report = verify_jacobian_formula(f, v, allow_quotient=args.allow_quotient)
    if args.json:
        _emit_json({'lhs': format_rat(report.lhs), 'rhs': format_rat(report.rhs), 'equal': report.equal})
    else:
        status = "✓" if report.equal else "✗"
        if not args.quiet:
            print(f"   F = {f}, ν = {v}, F_*ν = {push_valuation(f, v)}, JF = {jacobian_divisor(f)}")
        print(f"{status} A(F_*ν) = {report.lhs}, A(ν) + ν(JF) = {report.rhs}")
    return EXIT_OK if report.equal else EXIT_FAILED_CHECK


def cmd_theoremb(args):
    group = tuple(_int_list(args.group, 2, "--group"))
    f = _map_from_args(args, group)
    report = theoremB_case(f)
    if args.json:
        _emit_json({
            'degree': report.degree,
            'jf_empty': report.jf_empty,
            'jacobian': str(report.jacobian),
            'case': report.case,
            'quotient_klt': report.quotient_klt,
            'eigenvalues': {str(k): m for k, m in report.spectral.eigenvalues.items()},
        })
        return EXIT_OK
    if not args.quiet:
        print(f"   F = {f} on (1/{group[0]})(1, {group[1]})")
        print(f"   topological degree e = {report.degree}, JF = {report.jacobian}")
        print(f"   eigenvalues {dict(report.spectral.eigenvalues)}, spectral radius {report.spectral.spectral_radius}")
    print(f"✓ {report.case}")
    quotient = "klt" if report.quotient_klt else report.quotient_verdict.label
    print(f"{'✓' if report.quotient_klt else '⚠️'} quotient singularity is {quotient}")
    return EXIT_OK


def cmd_skew(args):
    result = skew_degrees(args.e_fiber, args.e_base)
    if args.json:
        _emit_json({'e': result.e, 'lambda': result.lam})
    else:
        print(f"e = {result.e}, λ = {result.lam}")
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help="machine readable output")
    common.add_argument('--quiet', action='store_true', help="only the essential result line")

    parser = argparse.ArgumentParser(prog='singgraph', description=__doc__.strip())
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('classify', parents=[common], help="invariants and klt/lc verdict of a graph file")
    p.add_argument('file')
    p.add_argument('--dot', action='store_true', help="emit a DOT rendering")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser('blowup', parents=[common], help="apply a blow-up script to a graph file")
    p.add_argument('file')
    p.add_argument('script')
    p.add_argument('--output', help="write the new graph here instead of stdout")
    p.set_defaults(handler=cmd_blowup)

    p = sub.add_parser('cusp', parents=[common], help="cusp cycle of a real quadratic lattice")
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--omega', default='sqrt', help="sqrt, golden or a,b,c for (a + b√d)/c")
    p.add_argument('--alpha', help="multiplier u+vw, w standing for omega")
    p.add_argument('--reflected', action='store_true', help="use the lattice √d·N")
    p.add_argument('--graph', action='store_true', help="also emit the dual graph JSON")
    p.add_argument('--geometric', action='store_true', help="nodal self-intersection for a one-vertex cycle")
    p.set_defaults(handler=cmd_cusp)

    p = sub.add_parser('cyclic', parents=[common], help="resolution graph of (1/n)(1, q)")
    p.add_argument('n', type=int)
    p.add_argument('q', type=int)
    p.add_argument('--dot', action='store_true')
    p.set_defaults(handler=cmd_cyclic)

    p = sub.add_parser('verify-jacobian', parents=[common], help="check A(F_*ν) = A(ν) + ν(JF)")
    p.add_argument('--map', required=True, help="a,b,c,d for F = (x^a y^b, x^c y^d)")
    p.add_argument('--weights', required=True, help="s,t")
    p.add_argument('--group', help="n,q for a cyclic quotient")
    p.add_argument('--allow-quotient', action='store_true')
    p.set_defaults(handler=cmd_verify_jacobian)

    p = sub.add_parser('theoremb', parents=[common], help="klt/lc case of a finite self-map of a cyclic quotient")
    p.add_argument('--group', required=True, help="n,q")
    p.add_argument('--map', required=True, help="a,b,c,d")
    p.set_defaults(handler=cmd_theoremb)

    p = sub.add_parser('skew', parents=[common], help="degrees of a skew product")
    p.add_argument('e_fiber', type=int)
    p.add_argument('e_base', type=int)
    p.set_defaults(handler=cmd_skew)
    return parser


def configure_logging(quiet=False):
    level = 'ERROR' if quiet else load_config()['log_level']
    logging.basicConfig(level=getattr(logging, level), format="%(levelname)s %(name)s: %(message)s")


def show_help():
    """Show help information"""
    print("singgraph - Dual Graphs of Normal Surface Singularities")
    print("=" * 50)
    print("📖 Subcommands:")
    print("   classify FILE [--dot]            discrepancies, b, A and the klt/lc verdict")
    print("   blowup FILE SCRIPT [--output F]  apply free/satellite/node blow-ups")
    print("   cusp --d D [--alpha u+vw]        cusp cycle, unit and rotation number")
    print("   cyclic N Q [--dot]               cyclic quotient singularity (1/N)(1, Q)")
    print("   verify-jacobian --map a,b,c,d --weights s,t")
    print("   theoremb --group n,q --map a,b,c,d")
    print("   skew E_FIBER E_BASE")
    print("")
    print("🔧 Every subcommand accepts --json and --quiet.")
    print("   SINGGRAPH_ITER_CAP, SINGGRAPH_PERIOD_CAP, SINGGRAPH_DPS and SINGGRAPH_LOG_LEVEL tune the run.")
    print("")
    print("🚀 Usage:")
    print("   python singgraph.py classify graph.json")
    print("   python demo.py                 # worked examples")
    print("   python validate_script.py      # acceptance suite")


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] == 'help':
        show_help()
        return EXIT_OK
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    configure_logging(args.quiet)
    try:
        return args.handler(args)
    except KeyboardInterrupt:
        print("\n\n👋 Operation cancelled by user")
        return EXIT_INTERRUPTED
    except NotNegativeDefinite as e:
        print(f"✗ Not a resolution graph: {e}", file=sys.stderr)
        print(f"💡 Check the self-intersections; the first failing minor has size {e.minor}", file=sys.stderr)
        return EXIT_NOT_NEGATIVE_DEFINITE
    except ScriptError as e:
        print(f"✗ Blow-up script failed at step {e.step}: {e.reason}", file=sys.stderr)
        return EXIT_SCRIPT
    except SingGraphError as e:
        print(f"✗ {type(e).__name__}: {e}", file=sys.stderr)
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
