"""Exceptions raised by the almost free algebra toolkit."""


class AfaError(Exception):
    """Base class for all toolkit errors."""


class ParseError(AfaError):
    """Raised when a signature, problem, term or formula text cannot be parsed.

    Args:
        message: Human readable description of the problem
        line: 1-based line of the offending input, when known
        column: 1-based column of the offending input, when known
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class DuplicateSymbolError(AfaError):
    """Raised when a signature declares the same symbol twice."""


class NoConstantError(AfaError):
    """Raised when a signature declares no constant."""


class UnknownSymbolError(AfaError):
    """Raised when a term mentions a symbol missing from the signature."""


class ArityError(AfaError):
    """Raised when a symbol is applied to the wrong number of arguments."""


class InvalidPositionError(AfaError):
    """Raised when a position does not address a node of a term."""


class SignatureMismatchError(AfaError):
    """Raised when terms or presentations are not over the expected signature."""


class NotFiniteError(AfaError):
    """Raised when a finite carrier is requested for an infinite algebra."""


class UnassignedVariableError(AfaError):
    """Raised when evaluating a formula with a free variable missing from the valuation."""


class UnboundVariableError(AfaError):
    """Raised when a sentence was expected but the formula has free variables."""


class BudgetExhaustedError(AfaError):
    """Raised when quantifier elimination runs out of its node budget."""
