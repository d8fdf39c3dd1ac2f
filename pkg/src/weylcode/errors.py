"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class WeylCodeError(ValueError):
    code = "error"


class DistinctnessError(WeylCodeError):
    """Input values are not pairwise distinct."""

    code = "distinct_violation"


class InvalidCodeError(WeylCodeError):
    """A rank code, word or tableau violates its invariants."""

    code = "invalid"


class CannotShrinkError(WeylCodeError):
    code = "cannot_shrink"


class InsufficientDataError(WeylCodeError):
    code = "insufficient_data"


class ResourceGuardError(WeylCodeError):
    code = "resource_guard"


class IntervalError(WeylCodeError):
    code = "interval"


class TransferStateError(WeylCodeError):
    code = "malformed_transfer_state"


class CapabilityError(WeylCodeError):
    code = "unsupported_graph"


class ParseError(WeylCodeError):
    code = "parse"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
