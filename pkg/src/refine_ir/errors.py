"""Exception types shared across the library."""
from __future__ import annotations


class ContractViolationError(ValueError):
    """An argument violates an operation's stated precondition."""


class NonFiniteEntryError(ContractViolationError):
    """A NaN or infinity was passed where only finite values are accepted."""


class NumericalError(Exception):
    """Base class for failures of the numerical algorithms themselves."""


class SingularMatrixError(NumericalError):
    """An exactly zero pivot was met; the matrix is singular."""


class SingularBlockError(SingularMatrixError):
    """A diagonal block of a block factorization is singular.

    ``block`` names the offending block so callers can tell whether the
    leading block or the Schur complement failed.
    """

    def __init__(self, block: str, message: str | None = None):
        super().__init__(message or f"singular block: {block}")
        self.block = block


class SvdConvergenceError(NumericalError):
    """The Jacobi sweep limit was reached before convergence."""


class MatrixFormatError(ValueError):
    """A matrix file could not be parsed.

    ``line_number`` is 1-based and points at the offending line.
    """

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class CliInputError(ValueError):
    """Invalid command-line usage (maps to exit status 1)."""
