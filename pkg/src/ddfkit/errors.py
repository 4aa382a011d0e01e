"""Shared exception types."""


class BudgetError(ValueError):
    """A requested computation exceeds the configured exact-arithmetic budget."""
