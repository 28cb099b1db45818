#!/usr/bin/env python3
"""
Faker provider generating random singularity data: negative definite dual
graphs, cusp cycles, cyclic quotient parameters, monomial germs, weights and
blow-up scripts. Seed with Faker.seed(42) for reproducible runs.
"""

from dataclasses import replace
from fractions import Fraction
from math import gcd

from faker import Faker
from faker.providers import BaseProvider

from blowup import apply_script
from endo import MonoVal, MonomialMap
from graph import DualGraph, ExceptionalCurve, chain_graph, cycle_graph


class SingularityProvider(BaseProvider):
    """Custom Faker provider for resolution graphs and germs"""

    def self_intersection_list(self, length, low=2, high=6):
        return [self.random_int(low, high) for _ in range(length)]

    def chain_graph(self, max_length=6):
        return chain_graph(self.self_intersection_list(self.random_int(1, max_length)))

    def tree_graph(self, max_vertices=7):
        """A tree with -E^2 >= valence, strictly somewhere, hence negative definite"""
        n = self.random_int(1, max_vertices)
        parents = [None] + [self.random_int(0, i - 1) for i in range(1, n)]
        valence = [0] * n
        for i, p in enumerate(parents):
            if p is not None:
                valence[i] += 1
                valence[p] += 1
        weights = [max(valence[i], 2) + self.random_int(0, 2) for i in range(n)]
        if all(w == valence[i] for i, w in enumerate(weights)):
            weights[0] += 1
        curves = tuple(ExceptionalCurve(f"E{i + 1}", -w) for i, w in enumerate(weights))
        edges = tuple((f"E{p + 1}", f"E{i + 1}") for i, p in enumerate(parents) if p is not None)
        return DualGraph(curves, edges)

    def cusp_cycle(self, max_length=8, low=2, high=6):
        cycle = self.self_intersection_list(self.random_int(1, max_length), low, high)
        if all(c == 2 for c in cycle):
            cycle[self.random_int(0, len(cycle) - 1)] = self.random_int(3, max(3, high))
        return cycle

    def cycle_graph(self, max_length=8):
        return cycle_graph(self.cusp_cycle(max_length))

    def resolution_graph(self, max_vertices=7):
        kind = self.random_element(('chain', 'tree', 'tree', 'cycle'))
        if kind == 'chain':
            return self.chain_graph(max_vertices)
        if kind == 'cycle':
            return self.cycle_graph(max_vertices)
        return self.tree_graph(max_vertices)

    def graph_with_edge(self, max_vertices=7):
        while True:
            g = self.resolution_graph(max_vertices)
            if g.edges:
                return g

    def genus_one_vertex(self):
        return DualGraph((ExceptionalCurve('E', -self.random_int(1, 9), genus=1),), ())

    def with_overrides(self, g, high=9):
        return DualGraph(tuple(replace(c, mult_override=self.random_int(1, high)) for c in g.curves), g.edges)

    def coprime_pair(self, max_n=50):
        n = self.random_int(2, max_n)
        q = self.random_element([q for q in range(1, n) if gcd(n, q) == 1])
        return n, q

    def edge_parameter(self, max_denominator=20):
        q = self.random_int(2, max_denominator)
        return Fraction(self.random_int(1, q - 1), q)

    def weights(self, max_denominator=9, max_numerator=12):
        s = Fraction(self.random_int(0, max_numerator), self.random_int(1, max_denominator))
        t = Fraction(self.random_int(1, max_numerator), self.random_int(1, max_denominator))
        if self.random_int(0, 1):
            s, t = t, s
        return MonoVal(s, t)

    def monomial_map(self, max_exponent=5):
        """Random dominant map with no zero row or column"""
        while True:
            a, b, c, d = (self.random_int(0, max_exponent) for _ in range(4))
            if (a, b) == (0, 0) or (c, d) == (0, 0) or (a, c) == (0, 0) or (b, d) == (0, 0):
                continue
            if a * d - b * c != 0:
                return MonomialMap(((a, b), (c, d)))

    def equivariant_map(self, group, max_exponent=6):
        """Finite map commuting with (1/n)(1, q): diagonal or anti-diagonal"""
        n, q = group
        if self.random_int(0, 1):
            a = self.random_int(1, max_exponent)
            d = a + n * self.random_int(0, 1)
            return MonomialMap(((a, 0), (0, d)), group)
        b = self.random_int(1, max_exponent)
        c = (q * q * b) % n or n
        return MonomialMap(((0, b), (c, 0)), group)

    def strict_intersections(self, g, max_value=3):
        return {v: self.random_int(0, max_value) for v in g.ids}

    def blowup_step(self, g):
        loops = [c.id for c in g.curves if c.loops]
        kinds = ['free'] + (['satellite'] * 2 if g.edges else []) + (['node'] if loops else [])
        kind = self.random_element(kinds)
        if kind == 'free':
            return {'op': 'free', 'at': self.random_element(g.ids)}
        if kind == 'node':
            return {'op': 'node', 'at': self.random_element(loops)}
        u, v = self.random_element(g.edges)
        return {'op': 'satellite', 'at': [u, v]}

    def blowup_script(self, g, max_steps=6):
        steps = []
        current = g
        for _ in range(self.random_int(1, max_steps)):
            step = self.blowup_step(current)
            steps.append(step)
            current = apply_script(current, [step]).graph
        return steps


def make_faker(seed=42):
    Faker.seed(seed)
    fake = Faker()
    fake.add_provider(SingularityProvider)
    return fake
