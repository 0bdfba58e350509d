"""Exception taxonomy shared across the package.

The CLI maps these onto process exit codes: ValidationError -> 2,
VerificationError -> 3, BudgetExceededError -> 4.
"""


class CechTowerError(Exception):
    """Base class for all package errors."""


class ValidationError(CechTowerError):
    """Invalid input data: bad schema, broken invariant, mismatched shapes."""


class SchemaError(ValidationError):
    """JSON document rejected; carries the offending JSON path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class VerificationError(CechTowerError):
    """An internal proof obligation failed (d∘d != 0, lift missing, ...).

    This always indicates a bug, never bad user input.
    """


class BudgetExceededError(CechTowerError):
    """A guarded exhaustive computation would exceed its configured budget."""
