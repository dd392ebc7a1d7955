"""Exception hierarchy shared by all modules."""


class AlgenusError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(AlgenusError):
    """Matrix dimensions incompatible with the requested operation."""


class ContractError(AlgenusError):
    """An argument violates a documented precondition (e.g. not symmetric)."""


class ValidationError(AlgenusError):
    """A matrix fails one of the Seifert-form validity conditions.

    ``code`` is one of ``"parity"``, ``"radical-rank"``,
    ``"quotient-not-unimodular"``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class ZeroPolynomialError(AlgenusError):
    """Operation undefined for the zero polynomial (e.g. breadth)."""


class SingularOmegaError(AlgenusError):
    """The chosen root of unity is a zero of the Alexander polynomial."""


class KnotsOnlyError(AlgenusError):
    """Operation requires a one-component form (unimodular antisymmetrization)."""


class ShapeError(AlgenusError):
    """Input matrix does not have the required block shape."""


class NotUnimodularError(AlgenusError):
    """A determinant that must be +-1 is not."""


class ShapeReductionError(AlgenusError):
    """Best-effort reduction to the triangular block shape failed."""


class BudgetExhaustedError(AlgenusError):
    """A search ran out of budget before the guaranteed witness was found."""


class InternalConsistencyError(AlgenusError):
    """A certificate or intermediate identity failed re-verification.

    This must never happen; it maps to CLI exit code 2.
    """


class InputError(AlgenusError):
    """Malformed input document; carries line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
