#!/usr/bin/env python3
"""
Demo script walking through the worked examples of singgraph.
Everything printed is computed exactly; nothing is read from disk.
"""

from fractions import Fraction

from arith import QuadElem
from blowup import blow_up_free, blow_up_satellite, divisorialize
from cusp import QuadLattice, cusp_dual_graph, klein_polygon, rotation_number, topological_degree
from endo import MonoVal, MonomialMap, jacobian_divisor, theoremB_case, verify_jacobian_formula
from graph import (
    DualGraph, ExceptionalCurve, chain_graph, classify, cyclic_quotient_graph, exceptional_data, hirzebruch_jung,
)
from valuation import EdgePoint, VertexPoint, dual_divisor_at_edge_point, pair_dual_divisors, thinness_at


def show_graph(g):
    data = exceptional_data(g)
    for c in g.curves:
        print(f"  {c.id}: E^2 = {c.self_intersection}, a = {data.discrepancy[c.id]}, "
              f"b = {data.multiplicity[c.id]}, A = {data.thinness[c.id]}")
    result = classify(g)
    print(f"  {result.verdict.label}, min A = {result.min_thinness}, lc places: {result.lc_places.describe()}")


def demo_classification():
    """Classify a few standard graphs"""
    print("=== Classification Demo ===")

    print("A1 (a single -2 curve):")
    show_graph(chain_graph([2]))

    print("\nD4 (a -2 curve with three -2 neighbours):")
    curves = (ExceptionalCurve('c', -2),) + tuple(ExceptionalCurve(f"l{i}", -2) for i in (1, 2, 3))
    show_graph(DualGraph(curves, tuple(('c', f"l{i}") for i in (1, 2, 3))))

    print("\nSmooth elliptic curve with E^2 = -3:")
    show_graph(DualGraph((ExceptionalCurve('E', -3, genus=1),), ()))


def demo_cyclic_quotient():
    """Hirzebruch-Jung strings"""
    print("=== Cyclic Quotient Demo ===")

    for n, q in ((5, 2), (7, 3), (12, 5)):
        print(f"(1/{n})(1, {q}): {n}/{q} = {hirzebruch_jung(n, q)}")
        show_graph(cyclic_quotient_graph(n, q))
        print()


def demo_blowups():
    """Free and satellite blow-ups with transported invariants"""
    print("=== Blow-up Demo ===")

    a2 = chain_graph([2, 2])
    new, report = blow_up_satellite(a2, ('E1', 'E2'))
    print(f"Satellite blow-up of E1 - E2 at t = {report.position}:")
    show_graph(new)
    print(f"  transport diff: {report.diff() or 'empty'}")
    print(f"  subdivision identity holds: {report.subdivision_identity_holds()}")

    new, report = blow_up_free(chain_graph([2]), 'E1')
    print("\nFree blow-up of a point on E1:")
    show_graph(new)
    print(f"  transport diff: {report.diff() or 'empty'}")


def demo_dual_divisors():
    """Edge points, their dual divisors and pairings"""
    print("=== Dual Divisor Demo ===")

    a2 = chain_graph([2, 2])
    third = Fraction(1, 3)
    point = EdgePoint('E1', 'E2', third)
    w = dual_divisor_at_edge_point(a2, ('E1', 'E2'), third)
    print(f"A at t = 1/3 on E1 - E2: {thinness_at(a2, point)}")
    print(f"Vertex values of Z at t = 1/3: {', '.join(f'{v} = {x}' for v, x in w.values.items())}")
    print(f"Peak of the edge correction: {w.peak}")

    sub = divisorialize(a2, ('E1', 'E2'), third)
    chain = ' - '.join(f"{v} (t = {t})" for v, t in sub.chain)
    print(f"Divisorialized by satellite blow-ups: {chain}")

    print(f"Z_E1 . Z_E2 = {pair_dual_divisors(a2, VertexPoint('E1'), VertexPoint('E2'))}")
    print(f"Z_t . Z_t at t = 1/3: {pair_dual_divisors(a2, point, point)}")


def demo_cusp():
    """The cusp of Z + Z*sqrt(2)"""
    print("=== Cusp Demo ===")

    lattice = QuadLattice.sqrt(2)
    data = klein_polygon(lattice)
    print(f"Lattice {lattice}: eps = {data.epsilon}, period {data.period}")
    print(f"Cycle self-intersections: {', '.join(str(-c) for c in data.cycle_selfint)}")
    print(f"Dual graph verdict: {classify(cusp_dual_graph(data)).verdict.label}")

    for alpha in (3 + QuadElem.sqrt(2), QuadElem(2, 0, 2)):
        rotation = rotation_number(lattice, alpha)
        print(f"alpha = {alpha}: topological degree {topological_degree(alpha, lattice)}, "
              f"rotation number {rotation.description}")


def demo_germs():
    """Monomial germs, the Jacobian formula and the klt/lc dichotomy"""
    print("=== Monomial Germ Demo ===")

    f = MonomialMap(((2, 0), (0, 3)))
    v = MonoVal(1, 1)
    report = verify_jacobian_formula(f, v)
    print(f"F = {f}, JF = {jacobian_divisor(f)}")
    print(f"A(F_*nu) = {report.lhs}, A(nu) + nu(JF) = {report.rhs}")

    g = MonomialMap(((3, 0), (0, 1)), (2, 1))
    case = theoremB_case(g)
    print(f"\nF = {g} on (1/2)(1, 1): degree {case.degree}")
    print(f"  {case.case}; quotient verdict {case.quotient_verdict.label}")


def main():
    """Run all demos"""
    print("singgraph - Demo")
    print("=" * 50)

    demo_classification()
    print("\n" + "=" * 50)

    demo_cyclic_quotient()
    print("=" * 50)

    demo_blowups()
    print("\n" + "=" * 50)

    demo_dual_divisors()
    print("\n" + "=" * 50)

    demo_cusp()
    print("\n" + "=" * 50)

    demo_germs()
    print("\n" + "=" * 50)

    print("Demo completed! The command line can be run with:")
    print("python singgraph.py help")


if __name__ == "__main__":
    main()
