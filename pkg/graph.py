#!/usr/bin/env python3
"""
Dual graphs of good resolutions of normal surface singularities.

A DualGraph is a weighted multigraph: one vertex per exceptional prime
divisor (self-intersection, geometric genus, number of nodes carried as
loops) and one edge per intersection point. This module computes the
intersection form and everything derived from it: negative definiteness,
discrepancies, the fundamental cycle, thinness and the klt/lc
classification.
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Optional

import networkx as nx

from arith import invert_exact, leading_pivots, mat_vec
from config import iteration_cap
from errors import (
    BadParameters, Disconnected, GraphFormatError, NoSuchVertex, NonTermination,
    NotNegativeDefinite,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExceptionalCurve:
    """One exceptional prime divisor of the resolution"""

    id: str
    self_intersection: int
    genus: int = 0
    loops: int = 0
    mult_override: Optional[int] = None

    @property
    def arithmetic_genus(self):
        # a loop is a node of an irreducible curve
        return self.genus + self.loops


def _check_int(value, what, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphFormatError(f"{what} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise GraphFormatError(f"{what} must be >= {minimum}, got {value}")


@dataclass(frozen=True)
class DualGraph:
    """Immutable weighted multigraph of exceptional curves"""

    curves: tuple
    edges: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, 'curves', tuple(self.curves))
        object.__setattr__(self, 'edges', tuple(tuple(e) for e in self.edges))
        if not self.curves:
            raise GraphFormatError("a dual graph needs at least one vertex")
        seen = set()
        for curve in self.curves:
            if not isinstance(curve.id, str) or not curve.id:
                raise GraphFormatError(f"vertex id must be a non-empty string, got {curve.id!r}")
            if curve.id in seen:
                raise GraphFormatError(f"duplicate vertex id {curve.id!r}")
            seen.add(curve.id)
            _check_int(curve.self_intersection, f"self_intersection of {curve.id}")
            _check_int(curve.genus, f"genus of {curve.id}", 0)
            _check_int(curve.loops, f"loops of {curve.id}", 0)
            if curve.mult_override is not None:
                _check_int(curve.mult_override, f"mult_override of {curve.id}", 1)
        for edge in self.edges:
            if len(edge) != 2:
                raise GraphFormatError(f"edge must join two vertices, got {edge!r}")
            u, v = edge
            if u not in seen or v not in seen:
                raise GraphFormatError(f"edge {edge!r} references an unknown vertex")
            if u == v:
                raise GraphFormatError(f"edge {edge!r} is a loop; store it in the vertex's loops")

    @cached_property
    def ids(self):
        return tuple(c.id for c in self.curves)

    @cached_property
    def _positions(self):
        return {vid: i for i, vid in enumerate(self.ids)}

    def __len__(self):
        return len(self.curves)

    def __contains__(self, vertex):
        return vertex in self._positions

    def index(self, vertex):
        try:
            return self._positions[vertex]
        except KeyError:
            raise NoSuchVertex(f"no vertex {vertex!r}") from None

    def curve(self, vertex):
        return self.curves[self.index(vertex)]

    def edges_between(self, u, v):
        """Positions in self.edges of the edges joining u and v (u != v)"""
        self.index(u)
        self.index(v)
        if u == v:
            return []
        pair = {u, v}
        return [i for i, e in enumerate(self.edges) if set(e) == pair]

    def edge_count(self, u, v):
        if u == v:
            return self.curve(u).loops
        return len(self.edges_between(u, v))

    def valence(self, vertex):
        ends = sum((u == vertex) + (v == vertex) for u, v in self.edges)
        return ends + 2 * self.curve(vertex).loops

    @cached_property
    def intersection_matrix(self):
        n = len(self.curves)
        m = [[0] * n for _ in range(n)]
        for i, curve in enumerate(self.curves):
            m[i][i] = curve.self_intersection
        for u, v in self.edges:
            i, j = self._positions[u], self._positions[v]
            m[i][j] += 1
            m[j][i] += 1
        return tuple(tuple(row) for row in m)

    @property
    def total_loops(self):
        return sum(c.loops for c in self.curves)

    @property
    def cycle_rank(self):
        """First Betti number, counting loops and parallel edges"""
        return len(self.edges) + self.total_loops - len(self.curves) + nx.number_connected_components(self.to_networkx())

    @property
    def is_tree(self):
        return self.cycle_rank == 0 and self.is_connected

    @cached_property
    def is_connected(self):
        return nx.is_connected(self.to_networkx())

    def to_networkx(self):
        graph = nx.MultiGraph()
        for curve in self.curves:
            graph.add_node(curve.id, self_intersection=curve.self_intersection, genus=curve.genus)
            for _ in range(curve.loops):
                graph.add_edge(curve.id, curve.id)
        graph.add_edges_from(self.edges)
        return graph

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict) or 'vertices' not in data:
            raise GraphFormatError("graph JSON must be an object with a 'vertices' list")
        vertices = data['vertices']
        edges = data.get('edges', [])
        if not isinstance(vertices, list) or not isinstance(edges, list):
            raise GraphFormatError("'vertices' and 'edges' must be lists")
        records = []
        for entry in vertices:
            if not isinstance(entry, dict) or 'id' not in entry or 'self_intersection' not in entry:
                raise GraphFormatError(f"vertex entry needs 'id' and 'self_intersection': {entry!r}")
            unknown = set(entry) - {'id', 'self_intersection', 'genus', 'loops', 'mult_override'}
            if unknown:
                raise GraphFormatError(f"unknown vertex fields {sorted(unknown)}")
            records.append(dict(entry))
        by_id = {}
        for r in records:
            if isinstance(r['id'], str):
                by_id.setdefault(r['id'], r)
        plain = []
        for edge in edges:
            if not isinstance(edge, list) or len(edge) != 2 or not all(isinstance(x, str) for x in edge):
                raise GraphFormatError(f"edge must be a pair of vertex ids: {edge!r}")
            u, v = edge
            if u == v:
                if u not in by_id:
                    raise GraphFormatError(f"loop at unknown vertex {u!r}")
                current = by_id[u].get('loops', 0)
                _check_int(current, f"loops of {u}", 0)
                by_id[u]['loops'] = current + 1
            else:
                plain.append((u, v))
        curves = [
            ExceptionalCurve(
                id=r['id'],
                self_intersection=r['self_intersection'],
                genus=r.get('genus', 0),
                loops=r.get('loops', 0),
                mult_override=r.get('mult_override'),
            )
            for r in records
        ]
        return cls(tuple(curves), tuple(plain))

    def to_dict(self):
        vertices = []
        for c in self.curves:
            entry = {'id': c.id, 'self_intersection': c.self_intersection, 'genus': c.genus, 'loops': c.loops}
            if c.mult_override is not None:
                entry['mult_override'] = c.mult_override
            vertices.append(entry)
        return {'vertices': vertices, 'edges': [list(e) for e in self.edges]}

    @classmethod
    def loads(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise GraphFormatError(f"invalid JSON: {e}") from e
        return cls.from_dict(data)

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def load(cls, path):
        with open(path, encoding='utf-8') as handle:
            return cls.loads(handle.read())

    def dump(self, path):
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(self.dumps() + "\n")


def chain_graph(self_intersections, prefix='E'):
    """Linear chain E1 - E2 - ... of genus-0 curves"""
    curves = tuple(ExceptionalCurve(f"{prefix}{i + 1}", -b) for i, b in enumerate(self_intersections))
    edges = tuple((curves[i].id, curves[i + 1].id) for i in range(len(curves) - 1))
    return DualGraph(curves, edges)


def cycle_graph(self_intersections, prefix='E', geometric=False):
    """
    Cycle of genus-0 curves with self-intersections -c_k.

    Length two gives two parallel edges; length one gives a single curve
    with a node, whose self-intersection is -c_0 + 2 when geometric is set.
    """
    c = list(self_intersections)
    if len(c) == 1:
        e2 = -c[0] + 2 if geometric else -c[0]
        return DualGraph((ExceptionalCurve(f"{prefix}1", e2, loops=1),), ())
    curves = tuple(ExceptionalCurve(f"{prefix}{k + 1}", -x) for k, x in enumerate(c))
    if len(c) == 2:
        return DualGraph(curves, ((curves[0].id, curves[1].id), (curves[0].id, curves[1].id)))
    edges = tuple((curves[k].id, curves[(k + 1) % len(c)].id) for k in range(len(c)))
    return DualGraph(curves, edges)


# Intersection theory

def negative_definite_failure(g):
    """Size of the first leading principal minor of -M that is not positive, or None"""
    negated = [[-x for x in row] for row in g.intersection_matrix]
    for k, pivot in enumerate(leading_pivots(negated), start=1):
        if pivot <= 0:
            return k
    return None


def check_negative_definite(g):
    return negative_definite_failure(g) is None


def require_resolution_graph(g):
    if not g.is_connected:
        raise Disconnected(f"dual graph has {nx.number_connected_components(g.to_networkx())} components")
    minor = negative_definite_failure(g)
    if minor is not None:
        raise NotNegativeDefinite(minor)


@lru_cache(maxsize=512)
def intersection_inverse(g):
    require_resolution_graph(g)
    return tuple(tuple(row) for row in invert_exact(g.intersection_matrix))


def fundamental_cycle(g):
    """Laufer's loop: the smallest non-zero cycle Z with Z.E <= 0 for every E"""
    m = g.intersection_matrix
    n = len(g)
    z = [1] * n
    products = [sum(m[i]) for i in range(n)]
    cap = iteration_cap()
    steps = 0
    while True:
        positive = next((i for i in range(n) if products[i] > 0), None)
        if positive is None:
            break
        steps += 1
        if steps > cap:
            raise NonTermination(f"fundamental cycle loop exceeded {cap} steps; is the graph negative definite?")
        z[positive] += 1
        for j in range(n):
            products[j] += m[positive][j]
    logger.debug("fundamental cycle found after %d steps", steps)
    return dict(zip(g.ids, z))


def generic_multiplicities(g):
    overrides = [c.mult_override for c in g.curves]
    if all(b is not None for b in overrides):
        return dict(zip(g.ids, overrides))
    if any(b is not None for b in overrides):
        logger.warning("mult_override set on some vertices only; using the fundamental cycle")
    require_resolution_graph(g)
    return fundamental_cycle(g)


def discrepancies(g):
    """Coefficients a_E of the relative canonical divisor, from adjunction"""
    inverse = intersection_inverse(g)
    m = g.intersection_matrix
    rhs = [2 * c.arithmetic_genus - 2 - m[i][i] for i, c in enumerate(g.curves)]
    return dict(zip(g.ids, mat_vec(inverse, rhs)))


def thinness_at_vertices(g):
    a = discrepancies(g)
    b = generic_multiplicities(g)
    return {v: (1 + a[v]) / b[v] for v in g.ids}


def dual_divisor(g, vertex):
    """Z_E with Z_E . E' = delta(E, E'); every coefficient is negative"""
    column = g.index(vertex)
    inverse = intersection_inverse(g)
    z = {v: inverse[i][column] for i, v in enumerate(g.ids)}
    assert all(x < 0 for x in z.values()), f"dual divisor of {vertex} has a non-negative coefficient"
    return z


@dataclass(frozen=True)
class ExceptionalData:
    """Per-vertex invariants; treat the mappings as read-only"""

    discrepancy: dict
    multiplicity: dict
    thinness: dict
    dual_divisor: dict


def exceptional_data(g):
    a = discrepancies(g)
    b = generic_multiplicities(g)
    return ExceptionalData(
        discrepancy=a,
        multiplicity=b,
        thinness={v: (1 + a[v]) / b[v] for v in g.ids},
        dual_divisor={v: dual_divisor(g, v) for v in g.ids},
    )


# Classification

class Verdict(Enum):
    KLT = 'KLT'
    LC_SIMPLE_ELLIPTIC = 'LC_SIMPLE_ELLIPTIC'
    LC_CUSP = 'LC_CUSP'
    LC_QUOTIENT_OF_LC = 'LC_QUOTIENT_OF_LC'
    NOT_LC = 'NOT_LC'

    @property
    def label(self):
        return {
            Verdict.KLT: 'KLT',
            Verdict.LC_SIMPLE_ELLIPTIC: 'LC (simple elliptic)',
            Verdict.LC_CUSP: 'LC (cusp)',
            Verdict.LC_QUOTIENT_OF_LC: 'LC (quotient of lc)',
            Verdict.NOT_LC: 'not LC',
        }[self]

    @property
    def is_lc(self):
        return self is not Verdict.NOT_LC


class PlaceKind(Enum):
    EMPTY = 'empty'
    WHOLE = 'whole'
    VERTEX = 'vertex'
    SEGMENT = 'segment'
    SUBGRAPH = 'subgraph'


@dataclass(frozen=True)
class LcPlaces:
    """The locus where the thinness vanishes"""

    kind: PlaceKind
    vertices: tuple = ()

    def describe(self):
        if self.kind is PlaceKind.EMPTY:
            return 'empty'
        if self.kind is PlaceKind.WHOLE:
            return 'whole graph'
        if self.kind is PlaceKind.VERTEX:
            return f"vertex {self.vertices[0]}"
        if self.kind is PlaceKind.SEGMENT:
            return f"segment {self.vertices[0]} .. {self.vertices[-1]} ({' - '.join(self.vertices)})"
        return f"subgraph on {', '.join(self.vertices)}"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    min_thinness: Fraction
    lc_places: LcPlaces


def _is_cycle(g):
    return g.is_connected and all(g.valence(v) == 2 for v in g.ids)


def _warn_if_not_minimal(g):
    for c in g.curves:
        if c.self_intersection == -1 and c.genus == 0 and c.loops == 0 and g.valence(c.id) <= 2:
            logger.warning("vertex %s is a contractible (-1)-curve; the resolution is not minimal", c.id)


def _branch_segment(g, zero):
    simple = nx.Graph(g.to_networkx())
    sub = simple.subgraph(zero)
    if not nx.is_connected(sub) or sub.number_of_edges() != len(zero) - 1:
        return None
    if any(deg > 2 for _, deg in sub.degree()):
        return None
    ends = sorted(v for v, deg in sub.degree() if deg == 1)
    if len(ends) != 2 or any(g.valence(v) != 3 for v in ends):
        return None
    return tuple(nx.shortest_path(sub, ends[0], ends[1]))


def classify(g):
    """
    klt/lc verdict of a MINIMAL good resolution graph.

    A is affine on edges, so the minimum over the whole graph is attained at
    a vertex and the zero locus is spanned by the zero vertices.
    """
    thinness = thinness_at_vertices(g)
    _warn_if_not_minimal(g)
    low = min(thinness.values())
    if low > 0:
        return Classification(Verdict.KLT, low, LcPlaces(PlaceKind.EMPTY))
    if low < 0:
        return Classification(Verdict.NOT_LC, low, LcPlaces(PlaceKind.EMPTY))

    zero = tuple(v for v in g.ids if thinness[v] == 0)
    rational = all(c.genus == 0 for c in g.curves)
    if len(zero) == len(g):
        if len(g) == 1 and g.curves[0].genus == 1 and g.curves[0].loops == 0:
            return Classification(Verdict.LC_SIMPLE_ELLIPTIC, low, LcPlaces(PlaceKind.WHOLE, zero))
        if rational and _is_cycle(g):
            return Classification(Verdict.LC_CUSP, low, LcPlaces(PlaceKind.WHOLE, zero))
    if g.is_tree and rational:
        if len(zero) == 1 and g.valence(zero[0]) >= 3:
            return Classification(Verdict.LC_QUOTIENT_OF_LC, low, LcPlaces(PlaceKind.VERTEX, zero))
        if len(zero) >= 2:
            segment = _branch_segment(g, zero)
            if segment is not None:
                return Classification(Verdict.LC_QUOTIENT_OF_LC, low, LcPlaces(PlaceKind.SEGMENT, segment))

    logger.warning("zero locus %s matches no minimal lc configuration; is the input minimal?", ', '.join(zero))
    if any(g.curve(v).genus >= 1 for v in zero):
        verdict = Verdict.LC_SIMPLE_ELLIPTIC
    elif g.cycle_rank > 0:
        verdict = Verdict.LC_CUSP
    else:
        verdict = Verdict.LC_QUOTIENT_OF_LC
    return Classification(verdict, low, LcPlaces(PlaceKind.SUBGRAPH, zero))


def hirzebruch_jung(n, q):
    """Negative continued fraction n/q = b1 - 1/(b2 - 1/(...))"""
    coefficients = []
    a, c = n, q
    while c:
        b = -(-a // c)
        coefficients.append(b)
        a, c = c, b * c - a
    return coefficients


def cyclic_quotient_graph(n, q):
    """Minimal resolution graph of the cyclic quotient singularity (1/n)(1, q)"""
    for value, name in ((n, 'n'), (q, 'q')):
        if isinstance(value, bool) or not isinstance(value, int):
            raise BadParameters(f"{name} must be an integer, got {value!r}")
    if n < 2 or not 1 <= q < n or gcd(n, q) != 1:
        raise BadParameters(f"need n >= 2, 1 <= q < n and gcd(n, q) = 1; got n={n}, q={q}")
    return chain_graph(hirzebruch_jung(n, q))


def to_dot(g, data=None):
    """Deterministic DOT rendering, vertices labelled (E^2, genus, a, A)"""
    lines = ["graph dual {"]
    for vid in sorted(g.ids):
        c = g.curve(vid)
        label = f"{vid}\\n({c.self_intersection}, g={c.genus}"
        if data is not None:
            label += f", a={data.discrepancy[vid]}, A={data.thinness[vid]}"
        label += ")"
        lines.append(f'  "{vid}" [label="{label}"];')
    for vid in sorted(g.ids):
        for _ in range(g.curve(vid).loops):
            lines.append(f'  "{vid}" -- "{vid}";')
    for u, v in sorted(tuple(sorted(e)) for e in g.edges):
        lines.append(f'  "{u}" -- "{v}";')
    lines.append("}")
    return "\n".join(lines)
