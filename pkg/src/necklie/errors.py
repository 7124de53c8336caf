"""Exception kinds shared across the package.

Four failure categories keep caller handling predictable: misuse of an
interface (UsageError), an index or component outside a declared slice
(SliceRangeError), an unmet mathematical precondition carried with evidence
(PreconditionError), and an internal consistency check that should never
fire (IntegrityError).
"""


class NecklieError(Exception):
    """Base class for all package errors."""


class UsageError(NecklieError):
    """An argument violates the documented contract of an operation."""


class SliceRangeError(NecklieError):
    """A component falls outside the declared basis slice or truncation."""


class PreconditionError(NecklieError):
    """A mathematical precondition fails; carries the offending data."""

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class IntegrityError(NecklieError):
    """An internal exactness check failed; indicates a bug, not bad input."""
