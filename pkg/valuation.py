#!/usr/bin/env python3
"""
Points of the valuation graph and the functions living on it.

A point of the dual graph is either a vertex (a divisorial valuation
b_E^-1 ord_E) or an interior point of an edge (E, E') with parameter t,
where t = 1 is the end E and t = 0 the end E'. Every formula in this module
uses that orientation.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import networkx as nx
import sympy

from arith import mat_vec, parse_rat
from errors import BadParameter, GraphFormatError, IrrationalPoint, NoSuchEdge, NotSameEdge
from graph import dual_divisor, generic_multiplicities, thinness_at_vertices, intersection_inverse

logger = logging.getLogger(__name__)


def as_parameter(t):
    """Exact edge parameter: a Fraction, or a real sympy number when irrational"""
    if isinstance(t, (bool, float)):
        raise BadParameter(f"edge parameter must be exact, got {t!r}")
    if isinstance(t, (int, Fraction)):
        return Fraction(t)
    if isinstance(t, str):
        try:
            return parse_rat(t)
        except GraphFormatError as e:
            raise BadParameter(str(e)) from e
    if isinstance(t, sympy.Basic):
        if t.is_Rational:
            return Fraction(int(t.p), int(t.q))
        if not t.is_number or t.is_real is not True:
            raise BadParameter(f"edge parameter must be a real number, got {t}")
        return t
    raise BadParameter(f"unsupported edge parameter {t!r}")


def is_rational_parameter(t):
    return isinstance(t, Fraction)


def _in_range(t, open_interval):
    try:
        if open_interval:
            return bool(0 < t) and bool(t < 1)
        return bool(0 <= t) and bool(t <= 1)
    except TypeError:
        raise BadParameter(f"cannot decide whether {t} lies in [0, 1]") from None


def _sym(x):
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    return sympy.sympify(x)


def _affine(t, hi, lo):
    """t*hi + (1-t)*lo, exact for rational and symbolic t"""
    if isinstance(t, Fraction):
        return t * hi + (1 - t) * lo
    value = sympy.expand(t * _sym(hi) + (1 - t) * _sym(lo))
    return Fraction(int(value.p), int(value.q)) if value.is_Rational else value


@dataclass(frozen=True)
class VertexPoint:
    vertex: str


@dataclass(frozen=True)
class EdgePoint:
    """Interior point of the index-th edge joining source (t = 1) and target (t = 0)"""

    source: str
    target: str
    t: object
    index: int = 0

    def __post_init__(self):
        t = as_parameter(self.t)
        if not _in_range(t, open_interval=True):
            raise BadParameter(f"edge point parameter must lie strictly between 0 and 1, got {t}")
        object.__setattr__(self, 't', t)

    def reversed(self):
        return EdgePoint(self.target, self.source, 1 - self.t, self.index)

    @property
    def is_rational(self):
        return is_rational_parameter(self.t)


GraphPoint = Union[VertexPoint, EdgePoint]


def _check_edge(g, source, target, index=0):
    if index < 0 or g.edge_count(source, target) <= index:
        raise NoSuchEdge(f"no edge #{index} between {source} and {target}")


def _edge_of(edge):
    if len(edge) == 2:
        return edge[0], edge[1], 0
    if len(edge) == 3:
        return tuple(edge)
    raise BadParameter(f"edge must be (E, E') or (E, E', index), got {edge!r}")


def edge_length(g, source, target, multiplicities=None):
    b = multiplicities or generic_multiplicities(g)
    return Fraction(1, b[source] * b[target])


def metric_distance(g, p, q):
    """Distance between two points lying on one edge: |t_p - t_q| / (b_E b_E')"""
    b = generic_multiplicities(g)
    if isinstance(p, VertexPoint) and isinstance(q, VertexPoint):
        g.index(p.vertex)
        g.index(q.vertex)
        if p.vertex == q.vertex:
            return Fraction(0)
        if g.edge_count(p.vertex, q.vertex) == 0:
            raise NotSameEdge(f"{p.vertex} and {q.vertex} are not adjacent")
        return edge_length(g, p.vertex, q.vertex, b)
    if isinstance(p, VertexPoint):
        p, q = q, p
    _check_edge(g, p.source, p.target, p.index)
    length = edge_length(g, p.source, p.target, b)
    if isinstance(q, VertexPoint):
        if q.vertex == p.source:
            t_q = Fraction(1)
        elif q.vertex == p.target:
            t_q = Fraction(0)
        else:
            raise NotSameEdge(f"{q.vertex} is not an end of the edge {p.source} - {p.target}")
    elif q.index != p.index:
        raise NotSameEdge("points lie on different parallel edges")
    elif (q.source, q.target) == (p.source, p.target):
        t_q = q.t
    elif (q.source, q.target) == (p.target, p.source):
        t_q = 1 - q.t
    else:
        raise NotSameEdge("points lie on different edges")
    return abs(p.t - t_q) * length


def _anchors(g, p, b):
    if isinstance(p, VertexPoint):
        g.index(p.vertex)
        return [(p.vertex, Fraction(0))]
    _check_edge(g, p.source, p.target, p.index)
    length = edge_length(g, p.source, p.target, b)
    return [(p.source, (1 - p.t) * length), (p.target, p.t * length)]


def path_distance(g, p, q):
    """Length of a shortest path between two arbitrary points of the graph"""
    b = generic_multiplicities(g)
    network = nx.Graph()
    network.add_nodes_from(g.ids)
    for u, v in g.edges:
        network.add_edge(u, v, length=edge_length(g, u, v, b))
    candidates = []
    try:
        candidates.append(metric_distance(g, p, q))
    except NotSameEdge:
        pass
    for x, to_x in _anchors(g, p, b):
        reach = nx.single_source_dijkstra_path_length(network, x, weight='length')
        for y, to_y in _anchors(g, q, b):
            candidates.append(to_x + reach[y] + to_y)
    return min(candidates)


def thinness_at(g, p, data=None):
    """A at a graph point; affine along each edge"""
    thinness = data.thinness if data is not None else thinness_at_vertices(g)
    if isinstance(p, VertexPoint):
        g.index(p.vertex)
        return thinness[p.vertex]
    _check_edge(g, p.source, p.target, p.index)
    return _affine(p.t, thinness[p.source], thinness[p.target])


def _per_vertex(g, values, what):
    if isinstance(values, dict):
        missing = set(g.ids) - set(values)
        if missing:
            raise GraphFormatError(f"{what} lacks values for {sorted(missing)}")
        return [values[v] for v in g.ids]
    values = list(values)
    if len(values) != len(g):
        raise GraphFormatError(f"{what} needs {len(g)} entries, got {len(values)}")
    return values


def mumford_pullback(g, strict_intersections):
    """
    Exceptional part Z_C of the numerical pull-back of a curve C.

    strict_intersections gives C~ . E for every vertex; Z_C solves
    M z = -v so that C~ + Z_C is numerically trivial.
    """
    v = _per_vertex(g, strict_intersections, "strict intersections")
    for x in v:
        if isinstance(x, bool) or not isinstance(x, int) or x < 0:
            raise BadParameter(f"strict intersections must be non-negative integers, got {x!r}")
    z = mat_vec(intersection_inverse(g), [-x for x in v])
    return dict(zip(g.ids, z))


def evaluate_divisor(g, z_total, p):
    """nu_p(Z) for the normalized valuation at p, strict transform in generic position"""
    z = dict(zip(g.ids, (Fraction(x) for x in _per_vertex(g, z_total, "divisor"))))
    b = generic_multiplicities(g)
    if isinstance(p, VertexPoint):
        g.index(p.vertex)
        return z[p.vertex] / b[p.vertex]
    _check_edge(g, p.source, p.target, p.index)
    return _affine(p.t, z[p.source] / b[p.source], z[p.target] / b[p.target])


@dataclass(frozen=True)
class WeilOnGraph:
    """
    Function g_Z on the divisorial valuations of one graph, g_Z(nu_E) = z_E / b_E.

    peak holds the extra dip h_t of an edge dual divisor at its own point,
    zero for divisors living on the graph.
    """

    values: dict
    peak: object = field(default=Fraction(0))

    @classmethod
    def from_divisor(cls, g, z):
        b = generic_multiplicities(g)
        z = _per_vertex(g, z, "divisor")
        return cls({v: Fraction(x) / b[v] for v, x in zip(g.ids, z)})

    def to_divisor(self, g):
        b = generic_multiplicities(g)
        return {v: self.values[v] * b[v] for v in g.ids}

    def is_effective(self):
        return all(x >= 0 for x in self.values.values())

    def is_nef(self, g):
        z = self.to_divisor(g)
        products = mat_vec(g.intersection_matrix, [z[v] for v in g.ids])
        return all(x >= 0 for x in products)

    def at(self, g, p):
        if isinstance(p, VertexPoint):
            return self.values[p.vertex]
        _check_edge(g, p.source, p.target, p.index)
        return _affine(p.t, self.values[p.source], self.values[p.target])


def normalized_dual_divisor(g, vertex, multiplicities=None):
    """Vertex values of Z_{nu_E} = b_E^-1 Z_E as a function"""
    b = multiplicities or generic_multiplicities(g)
    z = dual_divisor(g, vertex)
    return {v: z[v] / (b[vertex] * b[v]) for v in g.ids}


def dual_divisor_at_edge_point(g, edge, t):
    """
    Z of the monomial valuation at parameter t of edge (E, E').

    At every vertex the function is t*g_E + (1-t)*g_E'; the correction term
    lives inside the open edge and peaks at the point itself with
    t(1-t)/(b_E b_E').
    """
    source, target, index = _edge_of(edge)
    t = as_parameter(t)
    if not _in_range(t, open_interval=False):
        raise BadParameter(f"edge parameter must lie in [0, 1], got {t}")
    _check_edge(g, source, target, index)
    b = generic_multiplicities(g)
    g_source = normalized_dual_divisor(g, source, b)
    g_target = normalized_dual_divisor(g, target, b)
    values = {v: _affine(t, g_source[v], g_target[v]) for v in g.ids}
    length = edge_length(g, source, target, b)
    if isinstance(t, Fraction):
        peak = t * (1 - t) * length
    else:
        peak = sympy.expand(t * (1 - t) * _sym(length))
    return WeilOnGraph(values, peak)


def edge_sandwich_constants(g, edge):
    """
    Constants 0 < c0 <= c1 with c0*g_0 >= g_t >= c1*g_0 at every vertex for all t.

    All dual-divisor functions are negative, so the bounds come from the
    extreme vertex ratios g_1 / g_0.
    """
    source, target, index = _edge_of(edge)
    _check_edge(g, source, target, index)
    b = generic_multiplicities(g)
    g_one = normalized_dual_divisor(g, source, b)
    g_zero = normalized_dual_divisor(g, target, b)
    ratios = [g_one[v] / g_zero[v] for v in g.ids]
    return min([Fraction(1)] + ratios), max([Fraction(1)] + ratios)


def pair_dual_divisors(g, p, q):
    """
    Intersection number Z_p . Z_q of the dual divisors of two graph points.

    Vertex data is read off directly; an edge point is paired with a vertex
    by evaluating the vertex's dual divisor at it. Two edge points are
    handled by making q divisorial with satellite blow-ups first.
    """
    b = generic_multiplicities(g)
    if isinstance(p, VertexPoint) and isinstance(q, VertexPoint):
        return dual_divisor(g, q.vertex)[p.vertex] / (b[p.vertex] * b[q.vertex])
    if isinstance(p, VertexPoint):
        p, q = q, p
    if isinstance(q, VertexPoint):
        z = dual_divisor(g, q.vertex)
        return evaluate_divisor(g, {v: z[v] / b[q.vertex] for v in g.ids}, p)
    for point in (p, q):
        if not point.is_rational:
            raise IrrationalPoint(f"edge point at t = {point.t} is not divisorial")
        if point.source == point.target:
            raise BadParameter("pairing two edge points on a loop is not supported")

    from blowup import divisorialize

    subdivision = divisorialize(g, (q.source, q.target, q.index), q.t)
    moved = subdivision.relocate(p)
    logger.debug("paired through %s after %d blow-ups", subdivision.vertex, len(subdivision.chain) - 2)
    return pair_dual_divisors(subdivision.graph, moved, VertexPoint(subdivision.vertex))
