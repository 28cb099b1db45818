#!/usr/bin/env python3
"""
Test dual graphs, intersection theory and the klt/lc classification
"""

import sys
import os

# Add the current directory to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import random
import unittest
from fractions import Fraction
from math import gcd
from unittest.mock import patch

from faker import Faker
from hypothesis import assume, given, settings, strategies as st

from arith import mat_vec
from errors import BadParameters, Disconnected, GraphFormatError, NoSuchVertex, NonTermination, NotNegativeDefinite
from graph import (
    DualGraph, ExceptionalCurve, PlaceKind, Verdict, chain_graph, classify, cycle_graph,
    cyclic_quotient_graph, discrepancies, dual_divisor, exceptional_data, fundamental_cycle,
    generic_multiplicities, hirzebruch_jung, negative_definite_failure, thinness_at_vertices, to_dot,
)
from singularity_provider import SingularityProvider


def star(center, leaves):
    curves = (ExceptionalCurve('c', -center),) + tuple(ExceptionalCurve(f"l{i}", -w) for i, w in enumerate(leaves, 1))
    edges = tuple(('c', f"l{i}") for i in range(1, len(leaves) + 1))
    return DualGraph(curves, edges)


def two_node_graph():
    """u(-3) and v(-2) joined, each carrying two (-2)-leaves"""
    curves = (
        ExceptionalCurve('u', -3), ExceptionalCurve('v', -2),
        ExceptionalCurve('l1', -2), ExceptionalCurve('l2', -2),
        ExceptionalCurve('l3', -2), ExceptionalCurve('l4', -2),
    )
    edges = (('u', 'l1'), ('u', 'l2'), ('v', 'l3'), ('v', 'l4'), ('u', 'v'))
    return DualGraph(curves, edges)


class TestDualGraph(unittest.TestCase):
    """Construction, validation and serialization"""

    def test_intersection_matrix(self):
        g = chain_graph([2, 3])
        self.assertEqual(g.intersection_matrix, ((-2, 1), (1, -3)))
        self.assertEqual(g.ids, ('E1', 'E2'))
        self.assertTrue(g.is_tree)

    def test_parallel_edges_and_loops(self):
        two = cycle_graph([4, 2])
        self.assertEqual(two.intersection_matrix, ((-4, 2), (2, -2)))
        self.assertEqual(two.cycle_rank, 1)
        one = cycle_graph([3])
        self.assertEqual(one.curves[0].loops, 1)
        self.assertEqual(one.curves[0].self_intersection, -3)
        self.assertEqual(one.valence('E1'), 2)
        self.assertEqual(one.cycle_rank, 1)
        self.assertEqual(cycle_graph([3], geometric=True).curves[0].self_intersection, -1)

    def test_validation(self):
        with self.assertRaises(GraphFormatError):
            DualGraph((), ())
        with self.assertRaises(GraphFormatError):
            DualGraph((ExceptionalCurve('A', -2), ExceptionalCurve('A', -3)), ())
        with self.assertRaises(GraphFormatError):
            DualGraph((ExceptionalCurve('A', -2),), (('A', 'B'),))
        with self.assertRaises(GraphFormatError):
            DualGraph((ExceptionalCurve('A', -2),), (('A', 'A'),))
        with self.assertRaises(GraphFormatError):
            DualGraph((ExceptionalCurve('A', -2, genus=-1),), ())
        with self.assertRaises(GraphFormatError):
            DualGraph((ExceptionalCurve('A', -2, mult_override=0),), ())

    def test_unknown_vertex(self):
        with self.assertRaises(NoSuchVertex):
            chain_graph([2]).curve('Z')

    def test_json_round_trip_keeps_loops(self):
        g = DualGraph.loads('{"vertices": [{"id": "E", "self_intersection": -5}, {"id": "F", "self_intersection": -2}],'
                            ' "edges": [["E", "E"], ["E", "F"]]}')
        self.assertEqual(g.curve('E').loops, 1)
        self.assertEqual(g.edges, (('E', 'F'),))
        self.assertEqual(DualGraph.loads(g.dumps()), g)

    def test_json_errors(self):
        bad_documents = [
            'not json',
            '{"edges": []}',
            '{"vertices": [{"id": "E"}]}',
            '{"vertices": [{"id": "E", "self_intersection": -2.0}]}',
            '{"vertices": [{"id": "E", "self_intersection": -2, "colour": "red"}]}',
            '{"vertices": [{"id": "E", "self_intersection": -2}], "edges": [["E", 3]]}',
            '{"vertices": [{"id": "E", "self_intersection": -2}], "edges": [["X", "X"]]}',
        ]
        for text in bad_documents:
            with self.subTest(text=text):
                with self.assertRaises(GraphFormatError):
                    DualGraph.loads(text)

    def test_dot_output_is_deterministic(self):
        g = cycle_graph([3])
        dot = to_dot(g, exceptional_data(g))
        self.assertTrue(dot.startswith("graph dual {"))
        self.assertIn('"E1" -- "E1";', dot)
        self.assertIn("a=-1, A=0", dot)
        self.assertEqual(dot, to_dot(g, exceptional_data(g)))


class TestIntersectionTheory(unittest.TestCase):
    """Negative definiteness, discrepancies and the fundamental cycle"""

    def test_not_negative_definite(self):
        g = DualGraph((ExceptionalCurve('E', 1),), ())
        self.assertEqual(negative_definite_failure(g), 1)
        with self.assertRaises(NotNegativeDefinite) as ctx:
            discrepancies(g)
        self.assertEqual(ctx.exception.minor, 1)
        self.assertEqual(negative_definite_failure(chain_graph([1, 1])), 2)

    def test_disconnected(self):
        g = DualGraph((ExceptionalCurve('A', -2), ExceptionalCurve('B', -2)), ())
        with self.assertRaises(Disconnected):
            classify(g)

    def test_a1(self):
        g = chain_graph([2])
        self.assertEqual(discrepancies(g), {'E1': 0})
        self.assertEqual(fundamental_cycle(g), {'E1': 1})
        self.assertEqual(dual_divisor(g, 'E1'), {'E1': Fraction(-1, 2)})

    def test_d4_multiplicities(self):
        g = star(2, [2, 2, 2])
        self.assertEqual(fundamental_cycle(g), {'c': 2, 'l1': 1, 'l2': 1, 'l3': 1})
        self.assertEqual(set(discrepancies(g).values()), {0})

    def test_cyclic_quotient_discrepancies(self):
        g = cyclic_quotient_graph(5, 2)
        self.assertEqual(discrepancies(g), {'E1': Fraction(-2, 5), 'E2': Fraction(-1, 5)})
        self.assertEqual(thinness_at_vertices(g), {'E1': Fraction(3, 5), 'E2': Fraction(4, 5)})

    def test_overrides_replace_the_fundamental_cycle(self):
        g = DualGraph((ExceptionalCurve('E', -2, mult_override=3),), ())
        self.assertEqual(generic_multiplicities(g), {'E': 3})

    def test_partial_overrides_are_ignored(self):
        g = DualGraph((ExceptionalCurve('A', -2, mult_override=3), ExceptionalCurve('B', -2)), (('A', 'B'),))
        with self.assertLogs('graph', level='WARNING'):
            self.assertEqual(generic_multiplicities(g), {'A': 1, 'B': 1})

    def test_iteration_cap(self):
        g = two_node_graph()
        self.assertEqual(fundamental_cycle(g)['u'], 2)
        with patch.dict(os.environ, {'SINGGRAPH_ITER_CAP': '1'}):
            with self.assertRaises(NonTermination):
                fundamental_cycle(g)

    def test_random_trees_satisfy_adjunction(self):
        random.seed(42)
        Faker.seed(42)
        fake = Faker()
        fake.add_provider(SingularityProvider)
        for _ in range(25):
            g = fake.resolution_graph()
            m = g.intersection_matrix
            a = discrepancies(g)
            z = fundamental_cycle(g)
            lhs = mat_vec(m, [a[v] for v in g.ids])
            for i, c in enumerate(g.curves):
                self.assertEqual(lhs[i], 2 * c.arithmetic_genus - 2 - m[i][i])
            products = mat_vec(m, [z[v] for v in g.ids])
            self.assertTrue(all(x <= 0 for x in products))
            self.assertTrue(all(x < 0 for x in dual_divisor(g, g.ids[0]).values()))


class TestClassification(unittest.TestCase):
    """Verdicts and lc places"""

    def test_a1_is_klt(self):
        result = classify(chain_graph([2]))
        self.assertIs(result.verdict, Verdict.KLT)
        self.assertEqual(result.min_thinness, 1)
        self.assertIs(result.lc_places.kind, PlaceKind.EMPTY)

    def test_simple_elliptic(self):
        g = DualGraph((ExceptionalCurve('E', -1, genus=1),), ())
        result = classify(g)
        self.assertIs(result.verdict, Verdict.LC_SIMPLE_ELLIPTIC)
        self.assertEqual(result.lc_places.describe(), 'whole graph')

    def test_higher_genus_is_not_lc(self):
        g = DualGraph((ExceptionalCurve('E', -1, genus=2),), ())
        result = classify(g)
        self.assertIs(result.verdict, Verdict.NOT_LC)
        self.assertEqual(result.min_thinness, -2)
        self.assertFalse(result.verdict.is_lc)

    def test_cusp_cycle(self):
        result = classify(cycle_graph([3, 2, 2]))
        self.assertIs(result.verdict, Verdict.LC_CUSP)
        self.assertIs(result.lc_places.kind, PlaceKind.WHOLE)
        self.assertIs(classify(cycle_graph([3])).verdict, Verdict.LC_CUSP)
        self.assertIs(classify(cycle_graph([4, 2])).verdict, Verdict.LC_CUSP)

    def test_quotient_with_zero_vertex(self):
        g = star(3, [2, 2, 2, 2])
        self.assertEqual(thinness_at_vertices(g)['l1'], Fraction(1, 2))
        result = classify(g)
        self.assertIs(result.verdict, Verdict.LC_QUOTIENT_OF_LC)
        self.assertEqual(result.lc_places.kind, PlaceKind.VERTEX)
        self.assertEqual(result.lc_places.vertices, ('c',))
        self.assertEqual(result.lc_places.describe(), 'vertex c')

    def test_quotient_with_zero_segment(self):
        result = classify(two_node_graph())
        self.assertIs(result.verdict, Verdict.LC_QUOTIENT_OF_LC)
        self.assertIs(result.lc_places.kind, PlaceKind.SEGMENT)
        self.assertEqual(result.lc_places.vertices, ('u', 'v'))
        self.assertEqual(result.verdict.label, 'LC (quotient of lc)')

    def test_non_minimal_input_warns(self):
        g = chain_graph([1, 3])
        with self.assertLogs('graph', level='WARNING'):
            classify(g)

    def test_random_genus_one_vertices_are_simple_elliptic(self):
        random.seed(42)
        Faker.seed(42)
        fake = Faker()
        fake.add_provider(SingularityProvider)
        for _ in range(10):
            self.assertIs(classify(fake.genus_one_vertex()).verdict, Verdict.LC_SIMPLE_ELLIPTIC)


class TestCyclicQuotients(unittest.TestCase):
    """Hirzebruch-Jung strings"""

    def test_known_expansions(self):
        self.assertEqual(hirzebruch_jung(7, 3), [3, 2, 2])
        self.assertEqual(hirzebruch_jung(5, 2), [3, 2])
        self.assertEqual(hirzebruch_jung(5, 4), [2, 2, 2, 2])

    def test_bad_parameters(self):
        for n, q in ((4, 2), (1, 1), (5, 5), (True, 1), (5, 0)):
            with self.subTest(n=n, q=q):
                with self.assertRaises(BadParameters):
                    cyclic_quotient_graph(n, q)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=2, max_value=60), st.integers(min_value=1, max_value=59))
    def test_cyclic_quotients_are_klt(self, n, q):
        assume(q < n and gcd(n, q) == 1)
        coefficients = hirzebruch_jung(n, q)
        value = Fraction(coefficients[-1])
        for b in reversed(coefficients[:-1]):
            value = b - 1 / value
        self.assertEqual(value, Fraction(n, q))
        self.assertIs(classify(cyclic_quotient_graph(n, q)).verdict, Verdict.KLT)


if __name__ == "__main__":
    unittest.main()
