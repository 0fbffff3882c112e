"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class FormalCRError(Exception):
    """Base class for all errors raised by formalcr."""


class SpaceMismatch(FormalCRError):
    pass


class UnknownVariable(FormalCRError):
    pass


class DivisionByZero(FormalCRError, ZeroDivisionError):
    pass


class NonUnit(FormalCRError):
    """Raised when a series with zero constant term must be inverted."""


class NonNilpotentSubstitution(FormalCRError):
    pass


class NonNilpotentArgument(FormalCRError):
    pass


class DegreeOverflow(FormalCRError):
    pass


class ParseError(FormalCRError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class ZeroDenominator(FormalCRError):
    pass


class IdentityFailure(FormalCRError):
    """An identity that must hold failed; carries the offending monomial.

    ``monomial`` is a mapping from variable name to exponent, ``lhs`` and
    ``rhs`` the two differing coefficients.
    """

    def __init__(self, message: str, identity: str = "", component: int | None = None,
                 monomial: dict | None = None, lhs=None, rhs=None):
        self.identity = identity
        self.component = component
        self.monomial = monomial
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(message)


class NotNormalForm(IdentityFailure):
    pass


class NotReal(IdentityFailure):
    pass


class NotThroughOrigin(FormalCRError):
    pass


class RankDeficientAtOrigin(FormalCRError):
    pass


class SingularTransverseBlock(FormalCRError):
    pass


class NoConvergenceAtOrder(FormalCRError):
    pass


class InputError(FormalCRError):
    """Malformed manifold or map file (missing section, key, or quoting)."""


def with_context(exc: FormalCRError, path, line: int | None = None) -> FormalCRError:
    """Prefix ``exc``'s message with ``path:line`` and record both on it."""
    exc.path = str(path)
    exc.line = line
    where = f"{path}:{line}" if line is not None else str(path)
    exc.args = (f"{where}: {exc}",)
    return exc
