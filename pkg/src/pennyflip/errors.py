class PreconditionError(ValueError):
    """An operation was called with inputs outside its contract."""


class DomainError(ValueError):
    """A strategy parameter lies outside the winning family's domain."""
