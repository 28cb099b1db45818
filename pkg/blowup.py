#!/usr/bin/env python3
"""
Point blow-ups of a resolution, as rewrites of its dual graph.

Each public blow-up returns the new graph together with a TransportReport
holding two sets of invariants for the new graph: the values transported by
the blow-up formulas and the values recomputed from scratch. They must
agree; the report lists every disagreement.
"""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from config import iteration_cap
from errors import (
    BadParameter, GraphFormatError, IrrationalPoint, NoSuchEdge, NoSuchVertex,
    NonTermination, ScriptError,
)
from graph import DualGraph, ExceptionalCurve, discrepancies, generic_multiplicities
from valuation import (
    EdgePoint, VertexPoint, as_parameter, evaluate_divisor, is_rational_parameter,
    mumford_pullback,
)

logger = logging.getLogger(__name__)


def fresh_id(g, prefix='F'):
    n = 1
    while f"{prefix}{n}" in g:
        n += 1
    return f"{prefix}{n}"


def _override(g, value):
    """Keep a complete mult_override assignment complete"""
    if all(c.mult_override is not None for c in g.curves):
        return value
    return None


def _shift(curve, self_intersection=0, loops=0):
    return replace(curve, self_intersection=curve.self_intersection + self_intersection, loops=curve.loops + loops)


def _rewrite_free(g, vertex, new_id, override):
    curves = [_shift(c, -1) if c.id == vertex else c for c in g.curves]
    curves.append(ExceptionalCurve(new_id, -1, mult_override=override))
    return DualGraph(tuple(curves), g.edges + ((vertex, new_id),))


def _rewrite_satellite(g, position, source, target, new_id, override):
    curves = [_shift(c, -1) if c.id in (source, target) else c for c in g.curves]
    curves.append(ExceptionalCurve(new_id, -1, mult_override=override))
    edges = list(g.edges)
    # the old edge keeps its position so that edge positions stay stable
    edges[position] = (source, new_id)
    edges.append((new_id, target))
    return DualGraph(tuple(curves), tuple(edges))


def _rewrite_node(g, vertex, new_id, override):
    curves = [_shift(c, -4, -1) if c.id == vertex else c for c in g.curves]
    curves.append(ExceptionalCurve(new_id, -1, mult_override=override))
    return DualGraph(tuple(curves), g.edges + ((vertex, new_id), (vertex, new_id)))


@dataclass(frozen=True)
class Mismatch:
    vertex: object
    quantity: str
    transported: Fraction
    recomputed: Fraction

    def __str__(self):
        return f"{self.quantity}[{self.vertex}]: transported {self.transported}, recomputed {self.recomputed}"


@dataclass
class TransportReport:
    """Transported versus recomputed invariants after one blow-up"""

    kind: str
    new_vertex: str
    parents: tuple
    transported: dict = field(default_factory=dict)
    recomputed: dict = field(default_factory=dict)
    edge_lengths: dict = field(default_factory=dict)
    position: Optional[Fraction] = None

    def diff(self):
        mismatches = []
        for quantity in ('a', 'A', 'b'):
            for vertex, value in self.transported[quantity].items():
                fresh = self.recomputed[quantity][vertex]
                if value != fresh:
                    mismatches.append(Mismatch(vertex, quantity, value, fresh))
        for edge, (value, fresh) in self.edge_lengths.items():
            if value != fresh:
                mismatches.append(Mismatch(edge, 'length', value, fresh))
        return mismatches

    @property
    def is_consistent(self):
        return not self.diff()

    def subdivision_identity_holds(self):
        """1/(b0 bF) + 1/(bF b1) = 1/(b0 b1) for a satellite blow-up"""
        if self.kind != 'satellite':
            return True
        b = self.transported['b']
        b0, b1 = b[self.parents[0]], b[self.parents[1]]
        bf = b[self.new_vertex]
        return Fraction(1, b0 * bf) + Fraction(1, bf * b1) == Fraction(1, b0 * b1)


@dataclass(frozen=True)
class BlowUp:
    graph: DualGraph
    vertex: str
    report: TransportReport

    def __iter__(self):
        yield self.graph
        yield self.report


def _report(kind, old, new, vertex, parents, a_new, b_new, position=None):
    a = discrepancies(old)
    b = generic_multiplicities(old)
    a[vertex] = a_new
    b[vertex] = b_new
    transported = {'a': a, 'b': b, 'A': {v: (1 + a[v]) / b[v] for v in a}}
    a_fresh = discrepancies(new)
    b_fresh = generic_multiplicities(new)
    recomputed = {'a': a_fresh, 'b': b_fresh, 'A': {v: (1 + a_fresh[v]) / b_fresh[v] for v in a_fresh}}
    lengths = {}
    for u in parents:
        key = (u, vertex)
        lengths[key] = (Fraction(1, b[u] * b[vertex]), Fraction(1, b_fresh[u] * b_fresh[vertex]))
    report = TransportReport(kind, vertex, tuple(parents), transported, recomputed, lengths, position)
    for m in report.diff():
        if m.quantity == 'b':
            logger.warning("fundamental cycle disagrees with transported multiplicity: %s", m)
    return report


def blow_up_free(g, vertex):
    """Blow up a general point of E: F is a (-1)-curve meeting only E"""
    g.index(vertex)
    a = discrepancies(g)
    b = generic_multiplicities(g)
    new_id = fresh_id(g)
    new = _rewrite_free(g, vertex, new_id, _override(g, b[vertex]))
    report = _report('free', g, new, new_id, (vertex,), a[vertex] + 1, b[vertex])
    return BlowUp(new, new_id, report)


def blow_up_node(g, vertex):
    """Blow up the node of a nodal curve E carried as a loop"""
    if g.curve(vertex).loops == 0:
        raise NoSuchEdge(f"vertex {vertex} carries no loop")
    a = discrepancies(g)
    b = generic_multiplicities(g)
    new_id = fresh_id(g)
    new = _rewrite_node(g, vertex, new_id, _override(g, 2 * b[vertex]))
    report = _report('node', g, new, new_id, (vertex,), 2 * a[vertex] + 1, 2 * b[vertex])
    return BlowUp(new, new_id, report)


def _edge_position(g, source, target, index):
    positions = g.edges_between(source, target)
    if not 0 <= index < len(positions):
        raise NoSuchEdge(f"no edge #{index} between {source} and {target}")
    return positions[index]


def _split_edge(edge):
    if isinstance(edge, (str, bytes)) or len(edge) not in (2, 3):
        raise BadParameter(f"edge must be (E0, E1) or (E0, E1, index), got {edge!r}")
    source, target = edge[0], edge[1]
    index = edge[2] if len(edge) == 3 else 0
    if isinstance(index, bool) or not isinstance(index, int):
        raise BadParameter(f"edge index must be an integer, got {index!r}")
    return source, target, index


def blow_up_satellite(g, edge):
    """
    Blow up the intersection point of E0 and E1.

    F sits at parameter t = b0/(b0 + b1) of the old edge, measured with
    t = 1 at E0.
    """
    source, target, index = _split_edge(edge)
    if source == target:
        if index >= g.curve(source).loops:
            raise NoSuchEdge(f"no loop #{index} at {source}")
        return blow_up_node(g, source)
    position = _edge_position(g, source, target, index)
    a = discrepancies(g)
    b = generic_multiplicities(g)
    new_id = fresh_id(g)
    b_new = b[source] + b[target]
    new = _rewrite_satellite(g, position, source, target, new_id, _override(g, b_new))
    report = _report(
        'satellite', g, new, new_id, (source, target),
        a[source] + a[target] + 1, b_new, Fraction(b[source], b_new),
    )
    return BlowUp(new, new_id, report)


@dataclass(frozen=True)
class Subdivision:
    """
    Result of subdividing one edge until a vertex sits at a given parameter.

    chain lists the vertices on the old edge with their parameters, from
    t = 1 down to t = 0.
    """

    original: DualGraph
    graph: DualGraph
    vertex: str
    chain: tuple
    edge_position: int
    segment_positions: dict

    def __iter__(self):
        yield self.graph
        yield self.vertex

    @property
    def parameter(self):
        return dict(self.chain)[self.vertex]

    def relocate(self, point):
        """The same valuation as a point of the subdivided graph"""
        if isinstance(point, VertexPoint) or point.source == point.target or len(self.chain) == 2:
            return point
        position = _edge_position(self.original, point.source, point.target, point.index)
        if position != self.edge_position:
            index = self.graph.edges_between(point.source, point.target).index(position)
            return EdgePoint(point.source, point.target, point.t, index)
        t = point.t if point.source == self.chain[0][0] else 1 - point.t
        for (upper, t_upper), (lower, t_lower) in zip(self.chain, self.chain[1:]):
            if t == t_upper:
                return VertexPoint(upper)
            if t_lower < t < t_upper:
                s = (t - t_lower) / (t_upper - t_lower)
                index = self.graph.edges_between(upper, lower).index(self.segment_positions[(upper, lower)])
                return EdgePoint(upper, lower, s, index)
        raise BadParameter(f"parameter {t} lies outside the subdivided edge")


def divisorialize(g, edge, t):
    """
    Satellite blow-ups along edge (E, E') until a vertex sits at parameter t.

    Each step blows up the end points of the sub-edge containing t, which is
    the Farey descent of the b-weighted slope; rational t is reached in
    finitely many steps.
    """
    source, target, index = _split_edge(edge)
    t = as_parameter(t)
    if not is_rational_parameter(t):
        raise IrrationalPoint(f"t = {t} is irrational; no blow-up realizes it")
    if not 0 <= t <= 1:
        raise BadParameter(f"edge parameter must lie in [0, 1], got {t}")
    if source == target:
        raise BadParameter("cannot subdivide a loop; blow up the node first")
    position = _edge_position(g, source, target, index)
    chain = [(source, Fraction(1)), (target, Fraction(0))]
    segments = {(source, target): position}
    if t in (0, 1):
        vertex = source if t == 1 else target
        return Subdivision(g, g, vertex, tuple(chain), position, segments)

    b = generic_multiplicities(g)
    mult = {source: b[source], target: b[target]}
    current = g
    for _ in range(iteration_cap()):
        i = next(k for k in range(len(chain) - 1) if chain[k][1] > t > chain[k + 1][1])
        (upper, t_upper), (lower, t_lower) = chain[i], chain[i + 1]
        b_new = mult[upper] + mult[lower]
        t_new = (mult[upper] * t_upper + mult[lower] * t_lower) / b_new
        new_id = fresh_id(current)
        at = segments.pop((upper, lower))
        current = _rewrite_satellite(current, at, upper, lower, new_id, _override(current, b_new))
        segments[(upper, new_id)] = at
        segments[(new_id, lower)] = len(current.edges) - 1
        mult[new_id] = b_new
        chain.insert(i + 1, (new_id, t_new))
        if t_new == t:
            return Subdivision(g, current, new_id, tuple(chain), position, segments)
    raise NonTermination(f"divisorialize did not reach t = {t} within the iteration cap")


@dataclass(frozen=True)
class ScriptResult:
    graph: DualGraph
    reports: tuple
    new_vertices: tuple


def _step_shape(i, step):
    if not isinstance(step, dict) or 'op' not in step or 'at' not in step:
        raise ScriptError(i, f"malformed step {step!r}")
    return step['op'], step['at']


def apply_script(g, steps):
    """Apply blow-up steps in order; failures name the step index"""
    if not isinstance(steps, list):
        raise GraphFormatError("a blow-up script must be a JSON list of steps")
    current = g
    reports = []
    new_vertices = []
    for i, step in enumerate(steps):
        op, at = _step_shape(i, step)
        try:
            if op in ('free', 'node'):
                if not isinstance(at, str):
                    raise ScriptError(i, f"'{op}' needs a vertex id, got {at!r}")
                result = blow_up_free(current, at) if op == 'free' else blow_up_node(current, at)
            elif op == 'satellite':
                if not isinstance(at, list):
                    raise ScriptError(i, f"'satellite' needs an edge [u, v], got {at!r}")
                result = blow_up_satellite(current, tuple(at))
            elif op == 'divisorialize':
                if not isinstance(at, list) or 't' not in step:
                    raise ScriptError(i, "'divisorialize' needs an edge [u, v] and a parameter t")
                sub = divisorialize(current, tuple(at), step['t'])
                current = sub.graph
                new_vertices.append(sub.vertex)
                continue
            else:
                raise ScriptError(i, f"unknown op {op!r}")
        except (NoSuchVertex, NoSuchEdge, BadParameter, GraphFormatError) as e:
            raise ScriptError(i, str(e)) from e
        current = result.graph
        reports.append(result.report)
        new_vertices.append(result.vertex)
    return ScriptResult(current, tuple(reports), tuple(new_vertices))


@dataclass(frozen=True)
class MonotonicityReport:
    site: object
    through: int
    new_value: Fraction
    retraction_value: Fraction

    @property
    def holds(self):
        return self.new_value >= self.retraction_value

    @property
    def is_equality(self):
        return self.new_value == self.retraction_value


def check_monotonicity(g, strict_intersections, site, through=0):
    """
    Compare the pull-back of a curve C at a new exceptional vertex with its
    value at the retraction of that vertex onto the old graph.

    site is a vertex (free blow-up) or an edge (satellite, or node when both
    ends agree); through counts smooth branches of C through the blown-up
    point.
    """
    z = mumford_pullback(g, strict_intersections)
    if isinstance(strict_intersections, dict):
        v = dict(strict_intersections)
    else:
        v = dict(zip(g.ids, strict_intersections))
    b = generic_multiplicities(g)
    if isinstance(through, bool) or not isinstance(through, int) or through < 0:
        raise BadParameter(f"through must be a non-negative integer, got {through!r}")

    if isinstance(site, str):
        if v[site] < through:
            raise BadParameter(f"only {v[site]} branches meet {site}")
        result = blow_up_free(g, site)
        v[site] -= through
        retraction = z[site] / b[site]
    else:
        source, target, index = _split_edge(site)
        if source == target:
            if v[source] < 2 * through:
                raise BadParameter(f"only {v[source]} branch intersections at {source}")
            result = blow_up_satellite(g, site)
            v[source] -= 2 * through
            retraction = z[source] / b[source]
        else:
            if min(v[source], v[target]) < through:
                raise BadParameter(f"too few branches through the point {source} - {target}")
            result = blow_up_satellite(g, site)
            v[source] -= through
            v[target] -= through
            retraction = evaluate_divisor(g, z, EdgePoint(source, target, result.report.position, index))
    v[result.vertex] = through
    z_new = mumford_pullback(result.graph, v)
    value = evaluate_divisor(result.graph, z_new, VertexPoint(result.vertex))
    return MonotonicityReport(site, through, value, retraction)
