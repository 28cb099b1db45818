#!/usr/bin/env python3
"""
Cusp singularities from lattices in real quadratic fields.

A lattice N = scale * (Z + Z*omega) in Q(sqrt(d)) determines a cusp: the
totally positive fundamental unit eps of its multiplier ring acts on the
boundary of the convex hull of the totally positive elements, and the
boundary lattice points n_k, with n_{k-1} + n_{k+1} = c_k * n_k, give the
cycle of self-intersections -c_k. Multiplication by a totally positive
alpha with alpha*N in N induces an endomorphism whose rotation number on
the cycle is decided here exactly.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Optional

import mpmath
from sympy import continued_fraction_periodic, integer_nthroot
try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from arith import QuadElem, format_quad, quad_is_integral, quad_is_totally_positive
from config import load_config
from errors import (
    BadParameters, DegenerateCycle, MixedFieldError, NotIntegralNorm, NotStabilizing,
    NotTotallyPositive, SearchExhausted,
)
from graph import cycle_graph

logger = logging.getLogger(__name__)

MAX_DOUBLINGS = 64


@dataclass(frozen=True)
class QuadLattice:
    """The lattice scale * (Z + Z*omega) for an irrational omega"""

    omega: QuadElem
    scale: Optional[QuadElem] = None

    def __post_init__(self):
        if not isinstance(self.omega, QuadElem) or self.omega.is_rational:
            raise BadParameters(f"omega must be an irrational quadratic element, got {self.omega!r}")
        scale = self.scale
        if scale is None:
            scale = QuadElem(1, 0, self.omega.d)
        elif not isinstance(scale, QuadElem):
            scale = QuadElem(scale, 0, self.omega.d)
        if not scale:
            raise BadParameters("lattice scale must be non-zero")
        if scale.d != self.omega.d:
            raise MixedFieldError(f"scale {scale} and omega {self.omega} lie in different fields")
        object.__setattr__(self, 'scale', scale)

    @classmethod
    def sqrt(cls, d):
        return cls(QuadElem.sqrt(d))

    @classmethod
    def golden(cls):
        return cls(QuadElem(Fraction(1, 2), Fraction(1, 2), 5))

    @classmethod
    def from_abc(cls, a, b, c, d):
        """omega = (a + b*sqrt(d)) / c"""
        if c == 0 or b == 0:
            raise BadParameters("need b != 0 and c != 0 for omega = (a + b*sqrt(d))/c")
        return cls(QuadElem(Fraction(a, c), Fraction(b, c), d))

    @property
    def d(self):
        return self.omega.d

    @property
    def basis(self):
        return self.scale, self.scale * self.omega

    def element(self, u, v):
        return self.scale * (u + v * self.omega)

    def coordinates(self, x):
        return (x / self.scale).coordinates(self.omega)

    def contains(self, x):
        if not isinstance(x, QuadElem):
            x = QuadElem(x, 0, self.d)
        return quad_is_integral(x / self.scale, self.omega)

    def stabilizes(self, alpha):
        """alpha * N is contained in N"""
        return self.contains(alpha * self.scale) and self.contains(alpha * self.scale * self.omega)

    def multiplier_ring_generator(self):
        """theta with {x : xN in N} = Z[theta]"""
        t, n = self.omega.trace(), self.omega.norm()
        a = lcm(t.denominator, n.denominator)
        a //= gcd(a, gcd(int(a * t), int(a * n)))
        return a * self.omega

    def reflected(self):
        """sqrt(d) * N; its totally positive part is the mixed-sign quadrant of N"""
        return QuadLattice(self.omega, self.scale * QuadElem.sqrt(self.d))

    def __str__(self):
        if self.scale == 1:
            return f"Z + Z({self.omega})"
        return f"({self.scale})(Z + Z({self.omega}))"


@lru_cache(maxsize=128)
def fundamental_totally_positive_unit(lattice):
    """
    Generator eps > 1 of the totally positive units of the multiplier ring.

    The period of the continued fraction of omega gives the fundamental
    unit eta of the multiplier ring as an eigenvalue of the period matrix;
    eps is eta or eta**2 according to the sign of its norm.
    """
    omega = lattice.omega
    c = lcm(omega.p.denominator, omega.q.denominator)
    a, b = int(omega.p * c), int(omega.q * c)
    expansion = continued_fraction_periodic(a, c, b * b * omega.d, 1 if b > 0 else -1)
    period = expansion[-1]
    cap = load_config()['period_cap']
    if len(period) > cap:
        raise SearchExhausted(f"continued fraction period {len(period)} exceeds the cap {cap}")
    m00, m01, m10, m11 = 1, 0, 0, 1
    for coefficient in period:
        m00, m01, m10, m11 = m00 * coefficient + m01, m00, m10 * coefficient + m11, m10
    trace = m00 + m11
    det = (-1) ** len(period)
    disc = trace * trace - 4 * det
    m, exact = integer_nthroot(disc // omega.d, 2)
    assert disc % omega.d == 0 and exact, f"period trace {trace} does not match Q(√{omega.d})"
    eta = QuadElem(Fraction(trace, 2), Fraction(int(m), 2), omega.d)
    logger.debug("continued fraction of %s has period %s; eta = %s", omega, period, eta)
    eps = eta if det == 1 else eta * eta
    assert eps.norm() == 1 and quad_is_totally_positive(eps) and lattice.stabilizes(eps)
    return eps


def maximal_order_unit(d):
    """Totally positive fundamental unit of the ring of integers of Q(sqrt(d))"""
    if d % 4 == 1:
        return fundamental_totally_positive_unit(QuadLattice(QuadElem(Fraction(1, 2), Fraction(1, 2), d)))
    return fundamental_totally_positive_unit(QuadLattice.sqrt(d))


@dataclass(frozen=True)
class CuspData:
    """Boundary of the convex hull of N+ over one period of the eps-action"""

    epsilon: QuadElem
    period: int
    cycle_selfint: tuple
    extremal_points: tuple
    lattice: QuadLattice = field(compare=False)

    def period_matrix_trace(self):
        m00, m01, m10, m11 = 1, 0, 0, 1
        for c in self.cycle_selfint:
            m00, m01, m10, m11 = m00 * c + m01, -m00, m10 * c + m11, -m10
        return m00 + m11

    def check(self):
        points = self.extremal_points
        c = self.cycle_selfint
        assert len(c) == self.period and len(points) == self.period + 1
        assert all(x >= 2 for x in c)
        assert points[-1] == self.epsilon * points[0]
        extended = (points[-2] / self.epsilon,) + points + (self.epsilon * points[1],)
        for k in range(self.period):
            assert extended[k] + extended[k + 2] == c[k] * extended[k + 1], f"recurrence fails at n_{k}"
        assert self.period_matrix_trace() == self.epsilon.trace()
        return True

    def to_dict(self):
        omega = self.lattice.omega
        return {
            'omega': str(omega),
            'epsilon': format_quad(self.epsilon, omega),
            'period': self.period,
            'cycle': list(self.cycle_selfint),
            'extremal': [format_quad(n, omega) for n in self.extremal_points],
        }


def _minimal_trace_element(lattice):
    """Totally positive element of least trace; ties go to the larger sigma_1"""
    e1, e2 = lattice.basis
    with mpmath.workdps(load_config()['precision']):
        inverse = mpmath.matrix([[e1.sigma1(), e2.sigma1()], [e1.sigma2(), e2.sigma2()]]) ** -1
        bound = 1
        for _ in range(MAX_DOUBLINGS):
            corners = [(0, 0), (bound, 0), (0, bound), (bound, bound)]
            us = [inverse[0, 0] * x + inverse[0, 1] * y for x, y in corners]
            vs = [inverse[1, 0] * x + inverse[1, 1] * y for x, y in corners]
            best = None
            for u in range(int(mpmath.floor(min(us))) - 1, int(mpmath.ceil(max(us))) + 2):
                for v in range(int(mpmath.floor(min(vs))) - 1, int(mpmath.ceil(max(vs))) + 2):
                    n = lattice.element(u, v)
                    if n.trace() >= bound or not quad_is_totally_positive(n):
                        continue
                    if best is None or n.trace() < best.trace() or (n.trace() == best.trace() and n > best):
                        best = n
            if best is not None:
                return best
            bound *= 2
    raise SearchExhausted("no totally positive lattice element found")


def _next_point(previous, current):
    """The boundary point after current, given a basis (previous, current) oriented the same way"""
    ratio = previous / current
    c = 1 + max(ratio.floor(), ratio.conjugate().floor())
    return c, c * current - previous


def _orientation(u, v):
    """Sign of sigma1(u) sigma2(v) - sigma2(u) sigma1(v)"""
    q = (u * v.conjugate()).q
    return (q > 0) - (q < 0)


def _walk(lattice, eps, start):
    u, v = lattice.coordinates(start)
    u, v = int(u), int(v)
    s, t, one = igcdex(u, v)
    assert one == 1, f"{start} is not primitive in the lattice"
    # {start, partner} is a basis of N since u*s + v*t = 1
    partner = lattice.element(-int(t), int(s))
    if _orientation(start, partner) > 0:
        partner = -partner
    ratio = -partner / start
    j = 1 + max(ratio.floor(), ratio.conjugate().floor())
    points = [start, partner + j * start]
    coefficients = []
    target = eps * start
    cap = load_config()['period_cap']
    while points[-1] != target:
        if len(points) > cap:
            raise SearchExhausted(f"Klein walk exceeded {cap} steps")
        c, nxt = _next_point(points[-2], points[-1])
        coefficients.append(c)
        points.append(nxt)
    period = len(points) - 1
    closing = (points[-2] / eps + points[1]) / start
    assert closing.is_rational and closing.p.denominator == 1, "cycle does not close"
    logger.debug("Klein walk from %s: %d steps", start, period)
    return tuple(points), (int(closing.p),) + tuple(coefficients)


def _bring_into_period(x, start, eps):
    cap = load_config()['period_cap']
    for _ in range(cap):
        if x < start:
            x = x * eps
        elif x >= eps * start:
            x = x / eps
        else:
            return x
    raise SearchExhausted("could not move the start point into one period")


def klein_polygon(lattice, start=None):
    """
    CuspData for N: boundary lattice points n_0 .. n_l = eps * n_0 of the
    convex hull of the totally positive elements, walked in the direction
    of growing sigma_1.
    """
    eps = fundamental_totally_positive_unit(lattice)
    origin = _minimal_trace_element(lattice)
    points, cycle = _walk(lattice, eps, origin)
    if start is not None:
        if not isinstance(start, QuadElem):
            start = QuadElem(start, 0, lattice.d)
        if not lattice.contains(start) or not quad_is_totally_positive(start):
            raise BadParameters(f"start {start} is not a totally positive element of N")
        if _bring_into_period(start, origin, eps) not in points[:-1]:
            raise BadParameters(f"start {start} is not a boundary point of the convex hull")
        points, cycle = _walk(lattice, eps, start)
    if all(c == 2 for c in cycle):
        raise DegenerateCycle(f"every self-intersection of the cycle is -2: {cycle}")
    data = CuspData(eps, len(cycle), cycle, points, lattice)
    data.check()
    return data


def cusp_dual_graph(data, geometric=False):
    """
    Cycle of rational curves with self-intersections -c_k.

    A cycle of length one is a single curve with one node; with geometric
    set its self-intersection is -c_0 + 2, the value on the nodal curve.
    """
    return cycle_graph(data.cycle_selfint, geometric=geometric)


@dataclass(frozen=True)
class RotationNumber:
    rational: bool
    value: Optional[Fraction]
    description: str
    approx: object = field(compare=False, default=None)


def _discrete_log(u, base, cap):
    """k with u = base**k, or None when u is no power of base"""
    sign = 1
    if u < 1:
        u, sign = u.inverse(), -1
    k = 0
    while u > 1:
        u = u / base
        k += 1
        if k > cap:
            raise SearchExhausted(f"discrete logarithm exceeds the cap {cap}")
    if u != 1:
        return None
    return sign * k


def _as_element(alpha, lattice):
    if isinstance(alpha, QuadElem):
        return alpha
    return QuadElem(alpha, 0, lattice.d)


def _require_multiplier(lattice, alpha):
    if not quad_is_totally_positive(alpha):
        raise NotTotallyPositive(f"{alpha} is not totally positive")
    if not lattice.stabilizes(alpha):
        raise NotStabilizing(f"{alpha} does not map {lattice} into itself")


def rotation_number(lattice, alpha):
    """
    Rotation number log(alpha/alpha') / (2 log eps) of the endomorphism
    induced by multiplication with alpha, decided exactly.
    """
    alpha = _as_element(alpha, lattice)
    _require_multiplier(lattice, alpha)
    eps = fundamental_totally_positive_unit(lattice)
    u = alpha / alpha.conjugate()
    dps = load_config()['precision']
    with mpmath.workdps(dps):
        approx = mpmath.log(u.sigma1(dps)) / (2 * mpmath.log(eps.sigma1(dps)))
    if not u.is_algebraic_integer():
        return RotationNumber(False, None, 'irrational', approx)
    base = maximal_order_unit(lattice.d)
    cap = load_config()['dlog_cap']
    j = _discrete_log(u, base, cap)
    r = _discrete_log(eps, base, cap)
    assert j is not None and r is not None and r > 0, "totally positive unit outside <eps_K>"
    value = Fraction(j, 2 * r)
    return RotationNumber(True, value, f"rational, {value}", approx)


def topological_degree(alpha, lattice=None):
    """Topological degree of the induced germ: the norm of alpha"""
    if lattice is not None:
        alpha = _as_element(alpha, lattice)
        _require_multiplier(lattice, alpha)
    elif not isinstance(alpha, QuadElem):
        alpha = QuadElem(alpha)
    n = alpha.norm()
    if n.denominator != 1 or n <= 0:
        raise NotIntegralNorm(f"norm of {alpha} is {n}, not a positive integer")
    return int(n)
