#!/usr/bin/env python3
"""
Exact arithmetic substrate: rationals, real quadratic field elements and
exact linear algebra over the rationals.

Every decision (signs, floors, integrality, linear solves) is made in exact
arithmetic. mpmath is used only to print embeddings and to bound searches.
"""

import math
from fractions import Fraction
from functools import cached_property, lru_cache, total_ordering

import mpmath
from sympy import factorint

from errors import GraphFormatError, MixedFieldError, BadParameters, SingularMatrix

Rat = Fraction


def parse_rat(value):
    """Parse an exact rational from an int, a Fraction or a "p/q" string"""
    if isinstance(value, bool) or isinstance(value, float):
        raise GraphFormatError(f"expected an exact rational, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise GraphFormatError(f"bad rational {value!r}: {e}") from e
    raise GraphFormatError(f"expected an exact rational, got {value!r}")


def format_rat(value):
    return str(Fraction(value))


@lru_cache(maxsize=None)
def is_squarefree(d):
    if d < 2:
        return False
    return all(exponent == 1 for exponent in factorint(d).values())


def _mpf(x):
    return mpmath.mpf(x.numerator) / x.denominator


@total_ordering
class QuadElem:
    """Element p + q*sqrt(d) of the real quadratic field Q(sqrt(d))"""

    def __init__(self, p, q=0, d=2):
        if not isinstance(d, int) or not is_squarefree(d):
            raise BadParameters(f"d must be a square-free integer >= 2, got {d!r}")
        self._p = Fraction(p)
        self._q = Fraction(q)
        self._d = d

    @classmethod
    def _make(cls, p, q, d):
        obj = cls.__new__(cls)
        obj._p = p
        obj._q = q
        obj._d = d
        return obj

    @classmethod
    def sqrt(cls, d):
        return cls(0, 1, d)

    @property
    def p(self):
        return self._p

    @property
    def q(self):
        return self._q

    @property
    def d(self):
        return self._d

    @property
    def is_rational(self):
        return self._q == 0

    def __repr__(self):
        return f"QuadElem({self._p}, {self._q}, {self._d})"

    def __str__(self):
        if self._q == 0:
            return str(self._p)
        root = f"√{self._d}"
        coeff = '' if abs(self._q) == 1 else str(abs(self._q))
        if self._p == 0:
            return f"{'-' if self._q < 0 else ''}{coeff}{root}"
        return f"{self._p}{'-' if self._q < 0 else '+'}{coeff}{root}"

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other._d != self._d:
                raise MixedFieldError(f"cannot combine elements of Q(√{self._d}) and Q(√{other._d})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadElem._make(Fraction(other), Fraction(0), self._d)
        return None

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self._p == other._p and self._q == other._q and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._q == 0 and self._p == other
        return NotImplemented

    def __hash__(self):
        if self._q == 0:
            return hash(self._p)
        return hash((self._p, self._q, self._d))

    def sign(self):
        """Exact sign of the sigma_1 embedding p + q*sqrt(d)"""
        p, q = self._p, self._q
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        return sp if p * p > q * q * self._d else sq

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __bool__(self):
        return self._p != 0 or self._q != 0

    def __neg__(self):
        return QuadElem._make(-self._p, -self._q, self._d)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadElem._make(self._p + other._p, self._q + other._q, self._d)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadElem._make(self._p - other._p, self._q - other._q, self._d)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self._p * other._p + self._d * self._q * other._q
        q = self._p * other._q + self._q * other._p
        return QuadElem._make(p, q, self._d)

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in a quadratic field")
        return QuadElem._make(self._p / n, -self._q / n, self._d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** -exponent
        result = QuadElem._make(Fraction(1), Fraction(0), self._d)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self):
        return QuadElem._make(self._p, -self._q, self._d)

    def norm(self):
        return self._p * self._p - self._d * self._q * self._q

    def trace(self):
        return 2 * self._p

    def is_algebraic_integer(self):
        return self.trace().denominator == 1 and self.norm().denominator == 1

    def coordinates(self, omega):
        """Coordinates (u, v) with self = u + v*omega for an irrational omega"""
        if omega._d != self._d:
            raise MixedFieldError(f"basis element lives in Q(√{omega._d}), not Q(√{self._d})")
        if omega._q == 0:
            raise BadParameters("basis element omega must be irrational")
        v = self._q / omega._q
        u = self._p - v * omega._p
        return u, v

    @cached_property
    def _digits(self):
        size = max(abs(self._p.numerator), self._p.denominator, abs(self._q.numerator), self._q.denominator, self._d)
        return 30 + len(str(size))

    def sigma1(self, dps=None):
        with mpmath.workdps(dps or self._digits):
            return _mpf(self._p) + _mpf(self._q) * mpmath.sqrt(self._d)

    def sigma2(self, dps=None):
        with mpmath.workdps(dps or self._digits):
            return _mpf(self._p) - _mpf(self._q) * mpmath.sqrt(self._d)

    def floor(self):
        """Exact floor of the sigma_1 embedding"""
        if self._q == 0:
            return math.floor(self._p)
        with mpmath.workdps(self._digits):
            k = int(mpmath.floor(self.sigma1()))
        while (self - k).sign() < 0:
            k -= 1
        while (self - (k + 1)).sign() >= 0:
            k += 1
        return k


def quad_is_totally_positive(x):
    return x.sign() > 0 and x.conjugate().sign() > 0


def quad_is_integral(x, omega):
    """True iff x lies in Z + Z*omega"""
    if x.is_rational and omega.is_rational:
        return x.p.denominator == 1
    u, v = x.coordinates(omega)
    return u.denominator == 1 and v.denominator == 1


def quad_norm(x):
    return x.norm()


def parse_quad(text, omega):
    """Parse "u+vw" (w standing for omega) into u + v*omega"""
    s = str(text).replace(' ', '')
    if not s:
        raise GraphFormatError("empty quadratic element")
    try:
        if not s.endswith('w'):
            return QuadElem._make(Fraction(s), Fraction(0), omega.d)
        body = s[:-1]
        split = max(body.rfind('+'), body.rfind('-'))
        if split <= 0:
            u_text, v_text = '0', body
        else:
            u_text, v_text = body[:split], body[split:]
        if v_text in ('', '+'):
            v = Fraction(1)
        elif v_text == '-':
            v = Fraction(-1)
        else:
            v = Fraction(v_text)
        return Fraction(u_text) + v * omega
    except (ValueError, ZeroDivisionError) as e:
        raise GraphFormatError(f"bad quadratic element {text!r}: {e}") from e


def format_quad(x, omega):
    u, v = x.coordinates(omega)
    if v == 0:
        return str(u)
    coeff = str(abs(v))
    if u == 0:
        return f"{'-' if v < 0 else ''}{coeff}w"
    return f"{u}{'-' if v < 0 else '+'}{coeff}w"


# Exact linear algebra over Fraction.

def _augment(matrix, extra):
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise SingularMatrix("matrix is not square")
    return [[Fraction(x) for x in row] + list(extra_row) for row, extra_row in zip(matrix, extra)]


def _gauss_jordan(a, n):
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            raise SingularMatrix("matrix is not invertible")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
        pivot = a[col][col]
        a[col] = [x / pivot for x in a[col]]
        for r in range(n):
            factor = a[r][col]
            if r != col and factor != 0:
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return a


def invert_exact(matrix):
    n = len(matrix)
    identity = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    a = _gauss_jordan(_augment(matrix, identity), n)
    return [row[n:] for row in a]


def solve_exact(matrix, rhs):
    n = len(matrix)
    a = _gauss_jordan(_augment(matrix, [[Fraction(b)] for b in rhs]), n)
    return [row[n] for row in a]


def mat_vec(matrix, vector):
    return [sum((Fraction(x) * y for x, y in zip(row, vector)), Fraction(0)) for row in matrix]


def leading_pivots(matrix):
    """
    Pivots of Gaussian elimination without row exchanges.

    The k-th leading principal minor is the product of the first k pivots, so
    elimination stops after the first zero pivot.
    """
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    pivots = []
    for k in range(n):
        pivot = a[k][k]
        pivots.append(pivot)
        if pivot == 0:
            break
        for r in range(k + 1, n):
            factor = a[r][k] / pivot
            if factor != 0:
                a[r] = [x - factor * y for x, y in zip(a[r], a[k])]
    return pivots
