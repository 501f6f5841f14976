"""Exception hierarchy.

Every structural failure carries a small witness (an element, a pair or a
triple) rather than whole tables.
"""

from __future__ import annotations


class BraceError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, message: str, witness=None):
        super().__init__(message if witness is None else f"{message} (witness: {witness})")
        self.witness = witness


class InternalConsistencyError(AssertionError):
    """Two routes that must agree did not; indicates a bug, not bad input."""


# group-core
class GroupError(BraceError):
    pass


class TableShapeError(GroupError):
    pass


class NoIdentityAtZero(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class NoInverse(GroupError):
    pass


class NotNormal(GroupError):
    pass


class OrderBoundExceeded(BraceError):
    pass


# brace-core
class AddInvalid(BraceError):
    pass


class MulInvalid(BraceError):
    pass


class BraceEquationFails(BraceError):
    pass


class NotBiSkew(BraceError):
    pass


class NotGammaHomomorphic(BraceError):
    pass


class NotAnIdeal(BraceError):
    pass


# constructions
class NotAutomorphism(BraceError):
    pass


class GammaLawFails(BraceError):
    pass


class ActionNotBraceAutomorphism(BraceError):
    pass


class ActionNotHomomorphism(BraceError):
    pass


class MNotAbelian(BraceError):
    pass


class NotIntoM(BraceError):
    pass


class NotMInvariant(BraceError):
    pass


class NotHomomorphism(BraceError):
    pass


class HBNotAbelian(BraceError):
    pass


class NotEndomorphism(BraceError):
    pass


class CompatibilityFails(BraceError):
    pass


class PairNotBiSkew(BraceError):
    def __init__(self, i: int, j: int, witness=None):
        super().__init__(f"operations {i} and {j} do not form a bi-skew brace", witness)
        self.pair = (i, j)


class ConditionFails(BraceError):
    def __init__(self, i: int, j: int, witness=None):
        super().__init__(f"gamma conditions fail for operations {i} and {j}", witness)
        self.pair = (i, j)


# ybe
class SolutionError(BraceError):
    pass


class NotBijectivePairMap(SolutionError):
    pass


class DegenerateSigma(SolutionError):
    pass


class DegenerateTau(SolutionError):
    pass


class BraidFails(SolutionError):
    pass


class RetractIllDefined(SolutionError):
    pass


class ClosureBoundExceeded(BraceError):
    pass


# infinite samples
class WindowFailure(BraceError):
    pass


# file formats
class ParseError(BraceError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip())
        self.line = line
        self.path = path
