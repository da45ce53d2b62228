"""Exception types shared across the package."""


class DomainError(ValueError):
    """Inputs are well-formed but outside an operation's domain.

    Examples: negative times, support beyond a curve horizon, a target
    present value with no internal rate in the search range, a tolerance
    that cannot be met within the iteration budget.
    """


class SchemaError(Exception):
    """An input file is malformed (bad JSON, wrong shape, bad field value)."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
