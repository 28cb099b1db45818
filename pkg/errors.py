#!/usr/bin/env python3
"""
Exception hierarchy for singgraph.

Library code raises these; only the command line front end turns them into
exit codes and user-facing messages.
"""


class SingGraphError(Exception):
    """Base class for every error raised by singgraph"""


class GraphFormatError(SingGraphError, ValueError):
    """Input could not be parsed into a dual graph, divisor or script"""


class NotNegativeDefinite(SingGraphError):
    """The intersection matrix is not negative definite"""

    def __init__(self, minor, message=None):
        self.minor = minor
        super().__init__(message or f"leading principal minor of size {minor} of -M is not positive")


class Disconnected(SingGraphError):
    """The dual graph has more than one connected component"""


class SingularMatrix(SingGraphError, ArithmeticError):
    """An exact linear system has no unique solution"""


class NonTermination(SingGraphError):
    """An iterative procedure exceeded its iteration cap"""


class BadParameters(SingGraphError, ValueError):
    """Invalid numeric parameters for a constructor"""


class BadParameter(SingGraphError, ValueError):
    """Invalid parameter value, typically an edge parameter outside [0, 1]"""


class IrrationalPoint(BadParameter):
    """An edge point with irrational parameter where a divisorial one is needed"""


class NotSameEdge(SingGraphError, ValueError):
    """Two graph points do not lie on a common edge"""


class NoSuchVertex(SingGraphError, KeyError):
    """Unknown vertex id"""

    def __str__(self):
        return str(self.args[0]) if self.args else "no such vertex"


class NoSuchEdge(SingGraphError, KeyError):
    """Unknown edge"""

    def __str__(self):
        return str(self.args[0]) if self.args else "no such edge"


class ScriptError(SingGraphError):
    """A blow-up script step failed"""

    def __init__(self, step, reason):
        self.step = step
        self.reason = reason
        super().__init__(f"step {step}: {reason}")


class MixedFieldError(SingGraphError, ValueError):
    """Arithmetic between elements of different quadratic fields"""


class SearchExhausted(SingGraphError):
    """A bounded search hit its cap before finding an answer"""


class DegenerateCycle(SingGraphError):
    """Every self-intersection of the cusp cycle equals -2"""


class NotTotallyPositive(SingGraphError, ValueError):
    """A quadratic element is not positive under both embeddings"""


class NotStabilizing(SingGraphError, ValueError):
    """Multiplication by the element does not map the lattice into itself"""


class NotIntegralNorm(SingGraphError, ValueError):
    """The norm of the element is not a positive integer"""


class NotDominant(SingGraphError, ValueError):
    """Monomial map with vanishing determinant"""


class NotFinite(SingGraphError, ValueError):
    """Monomial map with a zero row or column"""


class NotEquivariant(SingGraphError, ValueError):
    """Monomial map that does not descend to the cyclic quotient"""
