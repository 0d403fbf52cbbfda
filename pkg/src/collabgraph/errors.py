"""Shared exception types."""


class ContractViolationError(ValueError):
    """An operation was handed inputs that break its stated preconditions."""
