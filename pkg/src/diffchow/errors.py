"""Exception hierarchy. Every error carries a machine-readable ``code``."""


class DiffAlgebraError(Exception):
    code = "domain_error"

    def __init__(self, message, **detail):
        super().__init__(message)
        self.detail = detail


class ParseError(DiffAlgebraError):
    code = "parse_error"

    def __init__(self, message, position=None, text=None):
        super().__init__(message, position=position)
        self.position = position
        self.text = text

    def __str__(self):
        base = super().__str__()
        if self.position is None:
            return base
        return f"{base} (at position {self.position})"


class UnknownVariableError(ParseError):
    code = "unknown_variable"


class OrderOverflowError(ParseError):
    code = "order_overflow"


class RingMismatchError(DiffAlgebraError):
    code = "ring_mismatch"


class PreconditionError(DiffAlgebraError):
    code = "precondition"


class UnitIdealError(DiffAlgebraError):
    code = "unit_ideal"


class InsufficientPrecisionError(DiffAlgebraError):
    code = "insufficient_precision"


class EliminationError(DiffAlgebraError):
    code = "elimination_failure"


class InconclusiveError(DiffAlgebraError):
    code = "inconclusive"


class VerificationError(DiffAlgebraError):
    """Raised when an internal consistency check fails; indicates an engine bug."""

    code = "verification_failure"


class NotDivisibleError(DiffAlgebraError):
    code = "not_divisible"
