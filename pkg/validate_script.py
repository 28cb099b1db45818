#!/usr/bin/env python3
"""
Validation script for singgraph.
Runs the acceptance checks on seeded random data and reports timings.
"""

import sys
import os
import logging
import random
import time

# Add the current directory to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from faker import Faker

from arith import QuadElem
from blowup import apply_script, check_monotonicity, divisorialize
from cusp import (
    QuadLattice, cusp_dual_graph, fundamental_totally_positive_unit, klein_polygon, rotation_number, topological_degree,
)
from endo import verify_jacobian_formula
from graph import (
    DualGraph, ExceptionalCurve, Verdict, classify, cyclic_quotient_graph, discrepancies, dual_divisor,
    generic_multiplicities,
)
from singularity_provider import SingularityProvider
from valuation import dual_divisor_at_edge_point


def seeded_faker():
    random.seed(42)
    Faker.seed(42)
    fake = Faker()
    fake.add_provider(SingularityProvider)
    return fake


def ade_graph(kind, n):
    """A_n, D_n or E_n: a chain of n - 1 (-2)-curves plus one more attached to it"""
    curves = tuple(ExceptionalCurve(f"E{i}", -2) for i in range(1, n + 1))
    edges = [(f"E{i}", f"E{i + 1}") for i in range(1, n - 1)]
    if kind == 'A':
        if n > 1:
            edges.append((f"E{n - 1}", f"E{n}"))
    elif kind == 'D':
        edges.append((f"E{n - 2}", f"E{n}"))
    else:
        edges.append(("E3", f"E{n}"))
    return DualGraph(curves, tuple(edges))


def timed(budget):
    """Decorator printing the running time against a budget in seconds"""
    def wrap(check):
        def run():
            start = time.perf_counter()
            ok = check()
            elapsed = time.perf_counter() - start
            if elapsed > budget:
                print(f"  ⚠️ took {elapsed:.2f} s, budget {budget} s")
            else:
                print(f"  {elapsed:.2f} s (budget {budget} s)")
            return ok
        run.__name__ = check.__name__
        return run
    return wrap


@timed(5)
def validate_quotients_are_klt():
    """Cyclic quotients with n <= 50 are klt and ADE graphs have zero discrepancies"""
    print("Testing cyclic quotients and ADE graphs...")
    count = 0
    for n in range(2, 51):
        for q in range(1, n):
            try:
                g = cyclic_quotient_graph(n, q)
            except ValueError:
                continue
            result = classify(g)
            if result.verdict is not Verdict.KLT or result.min_thinness <= 0:
                print(f"✗ (1/{n})(1, {q}) classified as {result.verdict.label}, min A = {result.min_thinness}")
                return False
            count += 1
    graphs = [('A', n) for n in range(1, 9)] + [('D', n) for n in range(4, 9)] + [('E', n) for n in (6, 7, 8)]
    for kind, n in graphs:
        a = discrepancies(ade_graph(kind, n))
        if any(value != 0 for value in a.values()):
            print(f"✗ {kind}{n} has discrepancies {a}")
            return False
    print(f"✓ {count} cyclic quotients are klt, {len(graphs)} ADE graphs are crepant")
    return True


@timed(5)
def validate_lc_boundary():
    """Simple elliptic vertices and random cusp cycles sit on the lc boundary"""
    print("Testing simple elliptic and cusp graphs...")
    for k in range(1, 10):
        g = DualGraph((ExceptionalCurve('E', -k, genus=1),), ())
        result = classify(g)
        if result.verdict is not Verdict.LC_SIMPLE_ELLIPTIC or discrepancies(g)['E'] != -1 or result.min_thinness != 0:
            print(f"✗ elliptic vertex with E^2 = -{k} classified as {result.verdict.label}")
            return False
    fake = seeded_faker()
    for _ in range(200):
        g = fake.cycle_graph(max_length=8)
        if classify(g).verdict is not Verdict.LC_CUSP or any(a != -1 for a in discrepancies(g).values()):
            print(f"✗ cusp cycle {[c.self_intersection for c in g.curves]} is not an lc cusp")
            return False
    print("✓ 9 simple elliptic vertices and 200 cusp cycles are lc and not klt")
    return True


@timed(2)
def validate_jacobian_formula():
    """A(F_* nu) = A(nu) + nu(JF) on random monomial germs"""
    print("Testing the Jacobian formula...")
    fake = seeded_faker()
    for _ in range(500):
        f = fake.monomial_map()
        v = fake.weights()
        report = verify_jacobian_formula(f, v)
        if not report.equal:
            print(f"✗ F = {f}, nu = {v}: {report.lhs} != {report.rhs}")
            return False
    print("✓ Jacobian formula holds in 500 trials")
    return True


@timed(30)
def validate_edge_oracle():
    """Edge dual divisors agree with subdivide-then-solve"""
    print("Testing edge dual divisors against subdivision...")
    fake = seeded_faker()
    for _ in range(50):
        g = fake.graph_with_edge(max_vertices=6)
        u, v = g.edges[0]
        t = fake.edge_parameter(max_denominator=20)
        w = dual_divisor_at_edge_point(g, (u, v), t)
        sub = divisorialize(g, (u, v), t)
        z = dual_divisor(sub.graph, sub.vertex)
        b = generic_multiplicities(sub.graph)
        for vertex in g.ids:
            if z[vertex] / (b[sub.vertex] * b[vertex]) != w.values[vertex]:
                print(f"✗ edge {u} - {v} at t = {t}: mismatch at {vertex}")
                return False
    print("✓ 50 edge points match their divisorializations")
    return True


@timed(30)
def validate_blowup_transport():
    """Transported invariants match recomputed ones along random scripts"""
    print("Testing blow-up transport...")
    fake = seeded_faker()
    for _ in range(200):
        g = fake.resolution_graph(max_vertices=6)
        script = fake.blowup_script(g, max_steps=6)
        for report in apply_script(g, script).reports:
            if report.diff() or not report.subdivision_identity_holds():
                print(f"✗ {report.kind} blow-up at {report.parents}: {[str(m) for m in report.diff()]}")
                return False
    print("✓ 200 random blow-up scripts transport consistently")
    return True


@timed(2)
def validate_sqrt_two_cusp():
    """The cusp of Z + Z*sqrt(2)"""
    print("Testing the sqrt(2) cusp...")
    lattice = QuadLattice.sqrt(2)
    sqrt2 = QuadElem.sqrt(2)
    eps = fundamental_totally_positive_unit(lattice)
    if eps != QuadElem(3, 2, 2):
        print(f"✗ eps = {eps}")
        return False
    if topological_degree(3 + sqrt2, lattice) != 7:
        print("✗ degree of 3+√2 is not 7")
        return False
    if rotation_number(lattice, 3 + sqrt2).rational or not rotation_number(lattice, 2).rational:
        print("✗ wrong rotation verdicts")
        return False
    print("✓ eps = 3+2√2, deg(3+√2) = 7 with irrational rotation, alpha = 2 rotates rationally")
    return True


@timed(10)
def validate_cusp_constructor():
    """Klein polygons close up and give lc cusp graphs"""
    print("Testing cusp cycles...")
    for d in (2, 3, 5, 6, 7, 10):
        data = klein_polygon(QuadLattice.sqrt(d))
        data.check()
        if data.period_matrix_trace() != data.epsilon.trace():
            print(f"✗ d = {d}: trace mismatch")
            return False
        if classify(cusp_dual_graph(data)).verdict is not Verdict.LC_CUSP:
            print(f"✗ d = {d}: cycle {data.cycle_selfint} is not a cusp")
            return False
        print(f"  d = {d}: eps = {data.epsilon}, cycle {list(data.cycle_selfint)}")
    print("✓ all cusp cycles satisfy the recurrence and classify as cusps")
    return True


@timed(10)
def validate_monotonicity():
    """Pull-backs of curves never drop under blow-ups"""
    print("Testing monotonicity of pull-backs...")
    fake = seeded_faker()
    for _ in range(200):
        g = fake.resolution_graph(max_vertices=6)
        v = fake.strict_intersections(g)
        loops = [c.id for c in g.curves if c.loops]
        if loops and fake.random_int(0, 1):
            site = (loops[0], loops[0])
            available = v[loops[0]] // 2
        elif g.edges and fake.random_int(0, 1):
            site = g.edges[0]
            available = min(v[site[0]], v[site[1]])
        else:
            site = fake.random_element(g.ids)
            available = v[site]
        report = check_monotonicity(g, v, site, fake.random_int(0, available))
        if not report.holds:
            print(f"✗ at {site}: {report.new_value} < {report.retraction_value}")
            return False
    print("✓ 200 blow-ups keep pull-backs monotone")
    return True


@timed(5)
def validate_override_robustness():
    """Classification ignores the choice of multiplicities"""
    print("Testing classification under multiplicity overrides...")
    fake = seeded_faker()
    for _ in range(100):
        g = fake.resolution_graph(max_vertices=6)
        before = classify(g).verdict
        after = classify(fake.with_overrides(g)).verdict
        if before is not after:
            print(f"✗ verdict changed from {before.label} to {after.label}")
            return False
    print("✓ 100 verdicts unchanged under overrides")
    return True


def main():
    """Run all validations"""
    print("singgraph - Validation Suite")
    print("=" * 50)
    logging.basicConfig(level=logging.ERROR)

    tests = [
        validate_quotients_are_klt,
        validate_lc_boundary,
        validate_jacobian_formula,
        validate_edge_oracle,
        validate_blowup_transport,
        validate_sqrt_two_cusp,
        validate_cusp_constructor,
        validate_monotonicity,
        validate_override_robustness,
    ]

    passed = 0
    total = len(tests)

    for test in tests:
        try:
            if test():
                passed += 1
            else:
                print(f"✗ Test {test.__name__} failed")
        except Exception as e:
            print(f"✗ Test {test.__name__} failed with exception: {e}")
            import traceback
            traceback.print_exc()

    print(f"\n=== Validation Summary ===")
    print(f"Passed: {passed}/{total}")

    if passed == total:
        print("🎉 All validations passed! singgraph is working correctly.")
    else:
        print("❌ Some validations failed. Please check the errors above.")

    return passed == total


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
