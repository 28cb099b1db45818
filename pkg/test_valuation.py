#!/usr/bin/env python3
"""
Test graph points, the edge metric, thinness and dual divisors
"""

import sys
import os

# Add the current directory to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import unittest
from fractions import Fraction

import sympy

from blowup import divisorialize
from errors import BadParameter, GraphFormatError, IrrationalPoint, NoSuchEdge, NotSameEdge
from graph import chain_graph, cyclic_quotient_graph, dual_divisor, generic_multiplicities, thinness_at_vertices
from valuation import (
    EdgePoint, VertexPoint, WeilOnGraph, as_parameter, dual_divisor_at_edge_point, edge_length,
    edge_sandwich_constants, evaluate_divisor, metric_distance, mumford_pullback, normalized_dual_divisor,
    pair_dual_divisors, path_distance, thinness_at,
)

A2 = chain_graph([2, 2])
HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


class TestGraphPoints(unittest.TestCase):
    """Edge parameters and points"""

    def test_as_parameter(self):
        self.assertEqual(as_parameter("2/5"), Fraction(2, 5))
        self.assertEqual(as_parameter(sympy.Rational(1, 3)), THIRD)
        root = as_parameter(sympy.sqrt(2) / 2)
        self.assertIsInstance(root, sympy.Basic)

    def test_as_parameter_rejects_inexact_values(self):
        for bad in (0.5, True, "half", sympy.I, [1]):
            with self.subTest(value=bad):
                with self.assertRaises(BadParameter):
                    as_parameter(bad)

    def test_edge_point_must_be_interior(self):
        for t in (0, 1, Fraction(3, 2), -1):
            with self.assertRaises(BadParameter):
                EdgePoint('E1', 'E2', t)

    def test_reversed_point(self):
        p = EdgePoint('E1', 'E2', THIRD)
        self.assertEqual(p.reversed(), EdgePoint('E2', 'E1', Fraction(2, 3)))
        self.assertTrue(p.is_rational)
        self.assertFalse(EdgePoint('E1', 'E2', sympy.sqrt(2) / 2).is_rational)


class TestMetric(unittest.TestCase):
    """Edge lengths 1/(b b') and distances"""

    def test_edge_length(self):
        self.assertEqual(edge_length(A2, 'E1', 'E2'), 1)

    def test_distance_on_one_edge(self):
        p = EdgePoint('E1', 'E2', HALF)
        q = EdgePoint('E1', 'E2', THIRD)
        self.assertEqual(metric_distance(A2, p, q), Fraction(1, 6))
        self.assertEqual(metric_distance(A2, p, q.reversed()), Fraction(1, 6))
        self.assertEqual(metric_distance(A2, VertexPoint('E1'), p), HALF)
        self.assertEqual(metric_distance(A2, VertexPoint('E1'), VertexPoint('E2')), 1)

    def test_distance_needs_a_common_edge(self):
        g = chain_graph([2, 2, 2])
        with self.assertRaises(NotSameEdge):
            metric_distance(g, VertexPoint('E1'), VertexPoint('E3'))
        with self.assertRaises(NoSuchEdge):
            metric_distance(g, EdgePoint('E1', 'E3', HALF), VertexPoint('E1'))

    def test_path_distance(self):
        g = chain_graph([2, 2, 2])
        self.assertEqual(path_distance(g, VertexPoint('E1'), VertexPoint('E3')), 2)
        self.assertEqual(path_distance(g, EdgePoint('E1', 'E2', HALF), EdgePoint('E2', 'E3', THIRD)), Fraction(7, 6))
        self.assertEqual(path_distance(g, EdgePoint('E1', 'E2', HALF), EdgePoint('E1', 'E2', THIRD)), Fraction(1, 6))


class TestThinness(unittest.TestCase):
    """A is affine on edges"""

    def test_thinness_on_an_edge(self):
        g = cyclic_quotient_graph(5, 2)
        self.assertEqual(thinness_at(g, VertexPoint('E1')), Fraction(3, 5))
        self.assertEqual(thinness_at(g, EdgePoint('E1', 'E2', HALF)), Fraction(7, 10))

    def test_thinness_at_an_irrational_point(self):
        g = cyclic_quotient_graph(5, 2)
        t = sympy.sqrt(2) / 2
        value = thinness_at(g, EdgePoint('E1', 'E2', t))
        self.assertEqual(sympy.simplify(value - (sympy.Rational(4, 5) - t / 5)), 0)

    def test_thinness_matches_the_subdivided_vertex(self):
        sub = divisorialize(A2, ('E1', 'E2'), THIRD)
        self.assertEqual(thinness_at_vertices(sub.graph)[sub.vertex], thinness_at(A2, EdgePoint('E1', 'E2', THIRD)))


class TestDivisors(unittest.TestCase):
    """Pull-backs, Weil functions and their values"""

    def test_mumford_pullback(self):
        g = chain_graph([2])
        self.assertEqual(mumford_pullback(g, [1]), {'E1': HALF})
        self.assertEqual(mumford_pullback(A2, {'E1': 1, 'E2': 0}), {'E1': Fraction(2, 3), 'E2': THIRD})
        with self.assertRaises(BadParameter):
            mumford_pullback(g, [-1])
        with self.assertRaises(GraphFormatError):
            mumford_pullback(A2, [1])

    def test_evaluate_divisor(self):
        z = {'E1': 2, 'E2': 1}
        self.assertEqual(evaluate_divisor(A2, z, VertexPoint('E1')), 2)
        self.assertEqual(evaluate_divisor(A2, z, EdgePoint('E1', 'E2', THIRD)), Fraction(4, 3))

    def test_weil_function_round_trip(self):
        z = {'E1': -3, 'E2': 5}
        w = WeilOnGraph.from_divisor(A2, z)
        self.assertEqual(w.to_divisor(A2), z)
        self.assertFalse(w.is_effective())
        self.assertEqual(w.at(A2, EdgePoint('E1', 'E2', HALF)), 1)

    def test_dual_divisors_are_nef_and_negative(self):
        w = WeilOnGraph(normalized_dual_divisor(A2, 'E1'))
        self.assertTrue(w.is_nef(A2))
        self.assertTrue(all(x < 0 for x in w.values.values()))


class TestEdgeDualDivisors(unittest.TestCase):
    """Dual divisors of monomial valuations and their pairing"""

    def test_values_interpolate_vertex_duals(self):
        w = dual_divisor_at_edge_point(A2, ('E1', 'E2'), THIRD)
        self.assertEqual(w.values, {'E1': Fraction(-4, 9), 'E2': Fraction(-5, 9)})
        self.assertEqual(w.peak, Fraction(2, 9))

    def test_end_points_are_vertex_duals(self):
        w = dual_divisor_at_edge_point(A2, ('E1', 'E2'), 0)
        self.assertEqual(w.values, normalized_dual_divisor(A2, 'E2'))
        self.assertEqual(w.peak, 0)
        with self.assertRaises(BadParameter):
            dual_divisor_at_edge_point(A2, ('E1', 'E2'), 2)

    def test_vertex_values_agree_with_blow_up(self):
        for t in (HALF, THIRD, Fraction(2, 5), Fraction(3, 7)):
            with self.subTest(t=t):
                w = dual_divisor_at_edge_point(A2, ('E1', 'E2'), t)
                sub = divisorialize(A2, ('E1', 'E2'), t)
                z = dual_divisor(sub.graph, sub.vertex)
                b = generic_multiplicities(sub.graph)
                for v in A2.ids:
                    self.assertEqual(z[v] / (b[sub.vertex] * b[v]), w.values[v])

    def test_sandwich_constants(self):
        c0, c1 = edge_sandwich_constants(A2, ('E1', 'E2'))
        self.assertEqual((c0, c1), (HALF, 2))
        g_zero = normalized_dual_divisor(A2, 'E2')
        for t in (THIRD, HALF, Fraction(5, 6)):
            w = dual_divisor_at_edge_point(A2, ('E1', 'E2'), t)
            for v in A2.ids:
                self.assertGreaterEqual(c0 * g_zero[v], w.values[v])
                self.assertGreaterEqual(w.values[v], c1 * g_zero[v])

    def test_vertex_pairing(self):
        self.assertEqual(pair_dual_divisors(A2, VertexPoint('E1'), VertexPoint('E2')), -THIRD)
        self.assertEqual(pair_dual_divisors(A2, VertexPoint('E1'), EdgePoint('E1', 'E2', HALF)), -HALF)

    def test_self_pairing_dips_below_the_interpolation(self):
        for t in (HALF, THIRD, Fraction(2, 3)):
            with self.subTest(t=t):
                p = EdgePoint('E1', 'E2', t)
                w = dual_divisor_at_edge_point(A2, ('E1', 'E2'), t)
                self.assertEqual(pair_dual_divisors(A2, p, p), w.at(A2, p) - w.peak)
        self.assertEqual(pair_dual_divisors(A2, EdgePoint('E1', 'E2', HALF), EdgePoint('E1', 'E2', HALF)), Fraction(-3, 4))

    def test_pairing_is_symmetric(self):
        p = EdgePoint('E1', 'E2', HALF)
        q = EdgePoint('E1', 'E2', THIRD)
        self.assertEqual(pair_dual_divisors(A2, p, q), Fraction(-2, 3))
        self.assertEqual(pair_dual_divisors(A2, q, p), Fraction(-2, 3))

    def test_irrational_points_cannot_be_paired(self):
        p = EdgePoint('E1', 'E2', sympy.sqrt(2) / 2)
        with self.assertRaises(IrrationalPoint):
            pair_dual_divisors(A2, p, EdgePoint('E1', 'E2', HALF))


if __name__ == "__main__":
    unittest.main()
