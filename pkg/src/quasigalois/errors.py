"""Exception types.  Every error carries a stable ``code`` used by the CLI."""

from __future__ import annotations


class QGError(Exception):
    code = "ERROR"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details


class ZeroAdjunctError(QGError):
    code = "ZERO_ADJUNCT"


class RootsMissingError(QGError):
    code = "ROOTS_MISSING"

    def __init__(self, n: int, conductor: int, minimal_conductor: int):
        super().__init__(
            f"no primitive {n}-th root of unity in Q(zeta_{conductor}); "
            f"conductor {minimal_conductor} suffices",
            n=n,
            conductor=conductor,
            minimal_conductor=minimal_conductor,
        )
        self.n = n
        self.minimal_conductor = minimal_conductor


class FieldDivisionByZero(QGError, ZeroDivisionError):
    code = "DIVISION_BY_ZERO"


class ZeroDivisorError(QGError, ZeroDivisionError):
    code = "ZERO_DIVISOR"


class ContextMismatch(QGError):
    code = "CONTEXT_MISMATCH"


class ParseError(QGError, ValueError):
    code = "PARSE_ERROR"


class SingularMatrixError(QGError):
    code = "SINGULAR_MATRIX"


class DegenerateLineError(QGError):
    code = "DEGENERATE_LINE"


class LineInCurveError(QGError):
    code = "LINE_IN_CURVE"


class ZeroPolyError(QGError):
    code = "ZERO_POLY"


class EqualPointsError(QGError):
    code = "EQUAL_POINTS"


class NotOnCurveError(QGError):
    code = "NOT_ON_CURVE"


class SingularPointError(QGError):
    code = "SINGULAR_POINT"


class NotIncidentError(QGError):
    code = "NOT_INCIDENT"


class ProjectionDegenerateError(QGError):
    code = "PROJECTION_DEGENERATE"


class NotHomologyError(QGError):
    code = "NOT_HOMOLOGY"


class NotQuasiGaloisError(QGError):
    code = "NOT_QUASI_GALOIS"


class NotAutomorphismError(QGError):
    code = "NOT_AUTOMORPHISM"


class CapExceededError(QGError):
    code = "CAP_EXCEEDED"

    def __init__(self, message: str, partial):
        super().__init__(message)
        self.partial = partial


class NotDivisibleError(QGError):
    code = "NOT_DIVISIBLE"


class NotApplicableError(QGError):
    code = "NOT_APPLICABLE"


class IrrationalEigenvalueError(QGError):
    code = "IRRATIONAL_EIGENVALUE"


class NotSubgroupError(QGError):
    code = "NOT_SUBGROUP"


class UnknownNameError(QGError):
    code = "UNKNOWN_NAME"


class BadParamsError(QGError):
    code = "BAD_PARAMS"


class NoExpectationError(QGError):
    code = "NO_EXPECTATION"
