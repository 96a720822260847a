"""Exception hierarchy.

Every error carries a stable machine-readable ``kind`` (used verbatim in
CLI JSON) and the CLI exit status it maps to: 2 for malformed input, 3 for
well-formed input that is outside the domain of an operation.
"""


class LgrError(Exception):
    kind = "Error"
    exit_code = 3

    def __init__(self, message="", position=None):
        super().__init__(message)
        self.message = message
        self.position = position

    def to_json(self):
        return {"error": self.kind, "message": self.message, "position": self.position}


class InputError(LgrError):
    """Malformed or shape-inconsistent input."""

    kind = "InvalidInput"
    exit_code = 2


class DomainError(LgrError):
    """Valid input for which the operation is undefined."""

    kind = "DomainError"
    exit_code = 3


# exact_arith
class DivisionByZero(DomainError, ZeroDivisionError):
    kind = "DivisionByZero"


# linalg
class NotSquare(InputError):
    kind = "NotSquare"


class BadSubset(InputError):
    kind = "BadSubset"


class NotSymmetric(InputError):
    kind = "NotSymmetric"


class NotInvertible(DomainError):
    kind = "NotInvertible"


# lag_grassmann
class DimensionTooLarge(DomainError):
    kind = "DimensionTooLarge"


class UnsupportedAtInfinity(DomainError):
    kind = "UnsupportedAtInfinity"


class AtInfinity(DomainError):
    kind = "AtInfinity"


class BadShape(InputError):
    kind = "BadShape"


# symplectic
class NotSymplectic(InputError):
    kind = "NotSymplectic"


class LeavesBigCell(DomainError):
    kind = "LeavesBigCell"


# pde_poly / pde_analysis
class BadIndex(InputError):
    kind = "BadIndex"


class DimensionMismatch(InputError):
    kind = "DimensionMismatch"


class ZeroCovector(DomainError):
    kind = "ZeroCovector"


class NotOnEquation(DomainError):
    kind = "NotOnEquation"


class LimitsExceeded(DomainError):
    kind = "LimitsExceeded"


class NotMongeAmpere(DomainError):
    kind = "NotMongeAmpere"


class AllZero(DomainError):
    kind = "AllZero"


# chow_duality
class WrongDimension(InputError):
    kind = "WrongDimension"


class OrthogonalNotInBigCell(DomainError):
    kind = "OrthogonalNotInBigCell"


# parser
class PdeSyntaxError(InputError):
    kind = "SyntaxError"


class ZeroDenominator(InputError):
    kind = "ZeroDenominator"


# cli
class BadPayload(InputError):
    """Malformed JSON, a missing or unexpected payload, or a bad flag."""

    kind = "BadPayload"
