"""Exception types shared across the toolkit."""


class ValidationError(ValueError):
    """An input violates an operation's documented precondition."""


class UnsupportedPrecisionError(ValueError):
    """A requested tolerance is below the supported floor."""
