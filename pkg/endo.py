#!/usr/bin/env python3
"""
Monomial endomorphism germs F(x, y) = (x^a y^b, x^c y^d) and their action on
monomial valuations, on C^2 or on a cyclic quotient (1/n)(1, q).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from sympy import Abs, Matrix, simplify, symbols

from arith import parse_rat
from errors import BadParameter, BadParameters, NotDominant, NotEquivariant, NotFinite
from graph import Verdict, classify, cyclic_quotient_graph

logger = logging.getLogger(__name__)

x, y = symbols('x y')


def _check_group(group):
    if group is None:
        return None
    n, q = group
    if any(isinstance(v, bool) or not isinstance(v, int) for v in (n, q)):
        raise BadParameters(f"group data must be integers, got {group!r}")
    if n < 2 or not 1 <= q < n or gcd(n, q) != 1:
        raise BadParameters(f"need n >= 2, 1 <= q < n and gcd(n, q) = 1; got {group!r}")
    return (n, q)


def invariant_monomials(group):
    """Exponents (i, j) of invariant monomials generating the maximal ideal"""
    if group is None:
        return ((1, 0), (0, 1))
    n, q = group
    found = [(i, j) for i in range(n + 1) for j in range(n + 1) if (i, j) != (0, 0) and (i + q * j) % n == 0]
    # keep only those not divisible by another invariant monomial
    return tuple(m for m in found if not any(o != m and o[0] <= m[0] and o[1] <= m[1] for o in found))


@dataclass(frozen=True)
class MonomialMap:
    """F(x, y) = (x^a y^b, x^c y^d), exponents ((a, b), (c, d))"""

    exponents: tuple
    group: Optional[tuple] = None

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.exponents)
        if len(rows) != 2 or any(len(row) != 2 for row in rows):
            raise BadParameters(f"exponents must be a 2x2 matrix, got {self.exponents!r}")
        for value in rows[0] + rows[1]:
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise BadParameters(f"exponents must be non-negative integers, got {value!r}")
        object.__setattr__(self, 'exponents', rows)
        (a, b), (c, d) = rows
        if (a, b) == (0, 0) or (c, d) == (0, 0) or (a, c) == (0, 0) or (b, d) == (0, 0):
            raise NotFinite(f"exponent matrix {rows} has a zero row or column")
        if a * d - b * c == 0:
            raise NotDominant(f"exponent matrix {rows} is singular")
        group = _check_group(self.group)
        object.__setattr__(self, 'group', group)
        if group is not None:
            n, q = group
            if (c + q * d - q * (a + q * b)) % n != 0:
                raise NotEquivariant(f"F does not commute with the (1/{n})(1, {q}) action")

    @classmethod
    def parse(cls, text, group=None):
        parts = str(text).split(',')
        if len(parts) != 4:
            raise BadParameters(f"expected a,b,c,d for a monomial map, got {text!r}")
        try:
            a, b, c, d = (int(p) for p in parts)
        except ValueError:
            raise BadParameters(f"monomial map exponents must be integers, got {text!r}") from None
        return cls(((a, b), (c, d)), group)

    @property
    def determinant(self):
        (a, b), (c, d) = self.exponents
        return a * d - b * c

    @property
    def degree(self):
        return abs(self.determinant)

    @property
    def is_finite(self):
        """F^-1(0) = {0}: no coordinate axis is collapsed"""
        (a, b), (c, d) = self.exponents
        return (a == 0 or c == 0) and (b == 0 or d == 0)

    def compose(self, other):
        """self o other"""
        if self.group != other.group and None not in (self.group, other.group):
            raise BadParameters("cannot compose maps on different quotients")
        m = Matrix(self.exponents) * Matrix(other.exponents)
        return MonomialMap(tuple(tuple(int(v) for v in m.row(i)) for i in range(2)), self.group or other.group)

    def __str__(self):
        (a, b), (c, d) = self.exponents
        return f"(x^{a} y^{b}, x^{c} y^{d})"


@dataclass(frozen=True)
class MonoVal:
    """Monomial valuation with nu(x) = s, nu(y) = t"""

    s: Fraction
    t: Fraction

    def __post_init__(self):
        s, t = parse_rat(self.s), parse_rat(self.t)
        if s < 0 or t < 0 or (s == 0 and t == 0):
            raise BadParameter(f"weights must be non-negative and not both zero, got ({s}, {t})")
        object.__setattr__(self, 's', s)
        object.__setattr__(self, 't', t)

    @classmethod
    def parse(cls, text):
        parts = str(text).split(',')
        if len(parts) != 2:
            raise BadParameter(f"expected weights s,t, got {text!r}")
        return cls(*parts)

    def value_on_maximal_ideal(self, group=None):
        return min(i * self.s + j * self.t for i, j in invariant_monomials(group))

    def is_normalized(self, group=None):
        return self.value_on_maximal_ideal(group) == 1

    def normalized(self, group=None):
        m = self.value_on_maximal_ideal(group)
        if m == 0:
            raise BadParameter(f"({self.s}, {self.t}) vanishes on a generator of the maximal ideal")
        return MonoVal(self.s / m, self.t / m)

    @property
    def thinness(self):
        """A(nu) = s + t on the smooth germ"""
        return self.s + self.t

    def __str__(self):
        return f"({self.s}, {self.t})"


def push_valuation(f, v):
    """F_* nu (g) = nu(g o F)"""
    (a, b), (c, d) = f.exponents
    return MonoVal(a * v.s + b * v.t, c * v.s + d * v.t)


def contraction_rate(f, v):
    if not v.is_normalized(f.group):
        raise BadParameter(f"valuation {v} is not normalized")
    rate = push_valuation(f, v).value_on_maximal_ideal(f.group)
    assert rate >= 1, f"contraction rate {rate} < 1"
    return rate


def normalized_push(f, v):
    """F_. nu = F_* nu / c(F, nu)"""
    pushed = push_valuation(f, v)
    rate = contraction_rate(f, v)
    return MonoVal(pushed.s / rate, pushed.t / rate)


@dataclass(frozen=True)
class JacobianDivisor:
    coefficient: int
    exponents: tuple

    @property
    def is_empty(self):
        return self.exponents == (0, 0)

    def value(self, v):
        return self.exponents[0] * v.s + self.exponents[1] * v.t

    def __str__(self):
        if self.is_empty:
            return f"{self.coefficient} (empty divisor)"
        return f"{self.coefficient}*x^{self.exponents[0]}*y^{self.exponents[1]}"


def jacobian_divisor(f):
    (a, b), (c, d) = f.exponents
    return JacobianDivisor(f.determinant, (a + c - 1, b + d - 1))


def symbolic_jacobian(f):
    (a, b), (c, d) = f.exponents
    return simplify(Matrix([x ** a * y ** b, x ** c * y ** d]).jacobian([x, y]).det())


@dataclass(frozen=True)
class JacobianReport:
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self):
        return self.lhs == self.rhs


def verify_jacobian_formula(f, v, allow_quotient=False):
    """A(F_* nu) against A(nu) + nu(JF)"""
    if f.group is not None and not allow_quotient:
        raise BadParameter("the Jacobian formula is checked on smooth germs; pass allow_quotient to use the cover")
    lhs = push_valuation(f, v).thinness
    rhs = v.thinness + jacobian_divisor(f).value(v)
    if lhs != rhs:
        logger.error("Jacobian formula fails for %s at %s: %s != %s", f, v, lhs, rhs)
    return JacobianReport(lhs, rhs)


@dataclass(frozen=True)
class SpectralData:
    eigenvalues: dict
    spectral_radius: object
    degree: int

    @property
    def degree_is_square_of_radius(self):
        return simplify(self.spectral_radius ** 2 - self.degree) == 0


def spectral_data(f):
    eigenvalues = Matrix(f.exponents).eigenvals()
    radius = max((Abs(lam) for lam in eigenvalues), key=lambda r: r.evalf())
    return SpectralData(eigenvalues, simplify(radius), f.degree)


@dataclass(frozen=True)
class TheoremBReport:
    degree: int
    jacobian: JacobianDivisor
    case: str
    quotient_klt: bool
    quotient_verdict: Verdict
    spectral: SpectralData

    @property
    def jf_empty(self):
        return self.jacobian.is_empty


def theoremB_case(f):
    """Which branch of the klt / lc dichotomy applies to a finite self-map of a quotient germ"""
    if f.group is None:
        raise BadParameters("theoremb needs group data (n, q)")
    if not f.is_finite:
        raise NotFinite(f"{f} collapses a coordinate axis")
    jacobian = jacobian_divisor(f)
    verdict = classify(cyclic_quotient_graph(*f.group)).verdict
    if not jacobian.is_empty:
        case = "non-empty ramification: the germ must be klt"
    else:
        # finite monomial maps are diagonal or anti-diagonal, so an empty JF forces degree 1
        assert f.degree == 1, f"{f} has empty JF but degree {f.degree}"
        case = "invertible: no constraint"
    logger.info("%s on (1/%d)(1, %d): %s", f, f.group[0], f.group[1], case)
    return TheoremBReport(f.degree, jacobian, case, verdict is Verdict.KLT, verdict, spectral_data(f))


def preimages(f, w):
    """Normalized nu with F_. nu = w"""
    if not w.is_normalized(f.group):
        raise BadParameter(f"target weights {w} are not normalized")
    (a, b), (c, d) = f.exponents
    det = f.determinant
    s = Fraction(d * w.s - b * w.t, det)
    t = Fraction(-c * w.s + a * w.t, det)
    if s < 0 or t < 0 or (s == 0 and t == 0):
        return []
    candidate = MonoVal(s, t)
    # not centered at the origin
    if candidate.value_on_maximal_ideal(f.group) == 0:
        return []
    v = candidate.normalized(f.group)
    if normalized_push(f, v) != w:
        return []
    return [v]


@dataclass(frozen=True)
class SkewDegrees:
    e: int
    lam: int


def skew_degrees(e_fiber, e_base):
    """Topological degree and asymptotic contraction rate of a skew product"""
    for value in (e_fiber, e_base):
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise BadParameter(f"degrees must be positive integers, got {value!r}")
    return SkewDegrees(e_fiber * e_base, max(e_fiber, e_base))
