#!/usr/bin/env python3
"""
Tests for exact rationals, quadratic field elements and exact linear algebra.
"""

import sys
import os

# Add the current directory to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import unittest
from fractions import Fraction

import mpmath
from hypothesis import given, settings, strategies as st

from arith import (
    QuadElem, format_quad, invert_exact, is_squarefree, leading_pivots, mat_vec,
    parse_quad, parse_rat, quad_is_integral, quad_is_totally_positive, solve_exact,
)
from errors import BadParameters, GraphFormatError, MixedFieldError, SingularMatrix

SQRT2 = QuadElem.sqrt(2)
GOLDEN = QuadElem(Fraction(1, 2), Fraction(1, 2), 5)

small = st.integers(min_value=-20, max_value=20)
rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)


class TestRationals(unittest.TestCase):
    """Parsing and formatting of exact rationals"""

    def test_parse_rat_accepts_exact_values(self):
        self.assertEqual(parse_rat("2/3"), Fraction(2, 3))
        self.assertEqual(parse_rat(" -5 "), Fraction(-5))
        self.assertEqual(parse_rat(Fraction(1, 7)), Fraction(1, 7))
        self.assertEqual(parse_rat(4), Fraction(4))

    def test_parse_rat_rejects_floats_and_garbage(self):
        for bad in (0.5, True, "x/2", "1/0", None):
            with self.assertRaises(GraphFormatError):
                parse_rat(bad)

    def test_is_squarefree(self):
        self.assertTrue(is_squarefree(2))
        self.assertTrue(is_squarefree(10))
        self.assertFalse(is_squarefree(12))
        self.assertFalse(is_squarefree(1))


class TestQuadElem(unittest.TestCase):
    """Exact arithmetic in Q(sqrt(d))"""

    def test_construction_requires_squarefree_d(self):
        with self.assertRaises(BadParameters):
            QuadElem(1, 1, 9)

    def test_string_form(self):
        self.assertEqual(str(QuadElem(3, 2, 2)), "3+2√2")
        self.assertEqual(str(QuadElem(1, -1, 2)), "1-√2")
        self.assertEqual(str(QuadElem(0, 1, 3)), "√3")
        self.assertEqual(str(QuadElem(5, 0, 3)), "5")

    def test_field_operations(self):
        x = 1 + SQRT2
        self.assertEqual(x * x.conjugate(), -1)
        self.assertEqual(x.norm(), -1)
        self.assertEqual(x.trace(), 2)
        self.assertEqual(x * x, QuadElem(3, 2, 2))
        self.assertEqual(x.inverse(), QuadElem(-1, 1, 2))
        self.assertEqual(x ** -2 * x ** 2, 1)
        self.assertEqual(1 / SQRT2, QuadElem(0, Fraction(1, 2), 2))

    def test_rational_elements_compare_with_fractions(self):
        self.assertEqual(QuadElem(Fraction(3, 2), 0, 2), Fraction(3, 2))
        self.assertEqual(hash(QuadElem(4, 0, 7)), hash(4))

    def test_exact_sign_and_order(self):
        self.assertEqual((1 - SQRT2).sign(), -1)
        self.assertEqual((QuadElem(3, -2, 2)).sign(), 1)
        self.assertLess(SQRT2, Fraction(3, 2))
        self.assertGreater(SQRT2, Fraction(7, 5))
        self.assertFalse(QuadElem(0, 0, 2))

    def test_exact_floor(self):
        self.assertEqual(SQRT2.floor(), 1)
        self.assertEqual((-SQRT2).floor(), -2)
        self.assertEqual(QuadElem(3, 2, 2).floor(), 5)
        self.assertEqual(QuadElem(Fraction(-7, 2), 0, 2).floor(), -4)

    def test_mixed_fields_are_rejected(self):
        with self.assertRaises(MixedFieldError):
            SQRT2 + QuadElem.sqrt(3)

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            SQRT2 / QuadElem(0, 0, 2)

    def test_total_positivity(self):
        self.assertTrue(quad_is_totally_positive(QuadElem(3, 2, 2)))
        self.assertFalse(quad_is_totally_positive(1 + SQRT2))
        self.assertTrue(quad_is_totally_positive(3 + SQRT2))

    def test_integrality_in_a_basis(self):
        self.assertTrue(quad_is_integral(GOLDEN * GOLDEN, GOLDEN))
        self.assertFalse(quad_is_integral(SQRT2 / 2, SQRT2))
        self.assertEqual((GOLDEN * GOLDEN).coordinates(GOLDEN), (1, 1))

    @settings(max_examples=60, deadline=None)
    @given(small, small, small, small)
    def test_norm_is_multiplicative(self, p1, q1, p2, q2):
        x, y = QuadElem(p1, q1, 5), QuadElem(p2, q2, 5)
        self.assertEqual((x * y).norm(), x.norm() * y.norm())
        self.assertEqual((x + y).trace(), x.trace() + y.trace())

    @settings(max_examples=60, deadline=None)
    @given(rationals, rationals)
    def test_floor_brackets_the_value(self, p, q):
        x = QuadElem(p, q, 3)
        k = x.floor()
        self.assertLessEqual(QuadElem(k, 0, 3), x)
        self.assertLess(x, QuadElem(k + 1, 0, 3))

    @settings(max_examples=1000, deadline=None)
    @given(rationals, rationals, rationals, rationals, st.sampled_from([2, 3, 5, 6, 7, 10, 13]))
    def test_exact_sign_agrees_with_the_embedding(self, p1, q1, p2, q2, d):
        x, y = QuadElem(p1, q1, d), QuadElem(p2, q2, d)
        self.assertEqual(x.conjugate().conjugate(), x)
        with mpmath.workdps(60):
            self.assertEqual(x.sign(), int(mpmath.sign(x.sigma1(60))))
            self.assertEqual(x.conjugate().sign(), int(mpmath.sign(x.sigma2(60))))
            self.assertEqual(x < y, x.sigma1(60) < y.sigma1(60))


class TestQuadText(unittest.TestCase):
    """The u+vw text format"""

    def test_parse_quad(self):
        self.assertEqual(parse_quad("3+1w", SQRT2), 3 + SQRT2)
        self.assertEqual(parse_quad("2", SQRT2), 2)
        self.assertEqual(parse_quad("1-1w", SQRT2), 1 - SQRT2)
        self.assertEqual(parse_quad("-1/2w", SQRT2), -SQRT2 / 2)
        self.assertEqual(parse_quad("w", GOLDEN), GOLDEN)

    def test_parse_quad_rejects_garbage(self):
        for bad in ("", "3+xw", "1/0"):
            with self.assertRaises(GraphFormatError):
                parse_quad(bad, SQRT2)

    def test_format_quad(self):
        self.assertEqual(format_quad(QuadElem(3, 2, 2), SQRT2), "3+2w")
        self.assertEqual(format_quad(QuadElem(5, 0, 2), SQRT2), "5")
        self.assertEqual(format_quad(QuadElem(Fraction(3, 2), Fraction(1, 2), 5), GOLDEN), "1+1w")


class TestExactLinearAlgebra(unittest.TestCase):
    """Gauss-Jordan over Fraction"""

    def test_inverse(self):
        self.assertEqual(invert_exact([[2, 1], [1, 1]]), [[1, -1], [-1, 2]])
        inverse = invert_exact([[-2, 1], [1, -2]])
        self.assertEqual(inverse, [[Fraction(-2, 3), Fraction(-1, 3)], [Fraction(-1, 3), Fraction(-2, 3)]])

    def test_solve(self):
        self.assertEqual(solve_exact([[0, 1], [1, 0]], [3, 4]), [4, 3])
        m = [[-3, 1, 0], [1, -2, 1], [0, 1, -2]]
        x = solve_exact(m, [1, 0, 0])
        self.assertEqual(mat_vec(m, x), [1, 0, 0])

    def test_singular_matrix(self):
        with self.assertRaises(SingularMatrix):
            invert_exact([[1, 2], [2, 4]])
        with self.assertRaises(SingularMatrix):
            solve_exact([[1, 2, 3], [4, 5, 6]], [1, 2])

    def test_leading_pivots_stop_at_zero(self):
        self.assertEqual(leading_pivots([[2, 1], [1, 2]]), [2, Fraction(3, 2)])
        self.assertEqual(leading_pivots([[1, -1, 0], [-1, 1, 0], [0, 0, 1]]), [1, 0])


if __name__ == "__main__":
    unittest.main()
