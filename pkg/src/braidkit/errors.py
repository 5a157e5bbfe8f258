"""Exception types shared across the toolkit."""


class InvalidInputError(ValueError):
    """Arguments violate a documented precondition."""


class UnsupportedFamilyError(InvalidInputError):
    """Requested surface family or quotient class is outside the supported range."""


class BoundExceededError(RuntimeError):
    """A closure or search would exceed its resource bound."""
