"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed rational text input."""


class ContractViolation(ValueError):
    """An operation was called outside its stated preconditions."""


class RetryCapExceeded(RuntimeError):
    """A Las Vegas loop hit its retry cap; the seed and counts are in args."""
