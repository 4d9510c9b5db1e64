"""Exception types. CLI exit codes key off these."""


class DomainError(ValueError):
    """An input lies outside the domain of the operation."""


class InvariantError(AssertionError):
    """An internal consistency check failed; carries the name of the check."""

    def __init__(self, check: str, detail: str = ""):
        self.check = check
        super().__init__(f"{check}: {detail}" if detail else check)


class PrecisionError(ArithmeticError):
    """Working precision was too small to decide a leading term."""


class NotFoundError(LookupError):
    """A bounded search finished without a qualifying candidate."""
