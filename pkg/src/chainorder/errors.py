"""Shared exception types."""


class BudgetError(RuntimeError):
    """A computation would exceed its configured enumeration budget."""


class InconsistentInputError(ValueError):
    """Paired data (e.g. a vertex list and an inequality system) disagree."""
