"""Exception taxonomy for supergrade.

Every failure mode that callers are expected to handle gets its own class;
all inherit from SupergradeError so the CLI can map them to exit codes.
"""

from __future__ import annotations


class SupergradeError(Exception):
    """Base class for all supergrade errors."""


class DimensionMismatch(SupergradeError):
    pass


class NonSplitSpectrum(SupergradeError):
    """An operator has an eigenvalue outside the rationals."""


class NotDiagonalizable(SupergradeError):
    """An operator has a repeated rational eigenvalue in its minimal polynomial."""

    def __init__(self, message, eigenvalue=None, witness=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue
        self.witness = witness


class AxiomViolation(SupergradeError):
    """A structure table fails an algebra axiom on a specific basis tuple."""

    def __init__(self, axiom, indices, message=None):
        self.axiom = axiom
        self.indices = tuple(indices)
        super().__init__(message or f"{axiom} fails at basis tuple {self.indices}")


class MissingUnit(SupergradeError):
    pass


class NotCentral(SupergradeError):
    pass


class BadParams(SupergradeError):
    pass


class WrongAlgebra(SupergradeError):
    pass


class NotHomomorphism(SupergradeError):
    pass


class NotThreeGraded(SupergradeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotIdempotent(SupergradeError):
    pass


class UnexpectedEigenvalue(SupergradeError):
    pass


class UnitFailure(SupergradeError):
    pass


class NotPerfect(SupergradeError):
    pass


class JacobiFailure(SupergradeError):
    pass


class ParseError(SupergradeError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ValidationError(SupergradeError):
    pass
