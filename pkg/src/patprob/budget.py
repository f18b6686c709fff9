"""Shared guard for operations that enumerate all L**k words."""

DEFAULT_ENUM_BUDGET = 2**24


class EnumerationBudgetError(ValueError):
    """Raised when an exhaustive enumeration would exceed its word budget."""


def check_enum_budget(total: int, budget: int, what: str) -> None:
    if total > budget:
        raise EnumerationBudgetError(
            f"{what} would enumerate {total} words, exceeding the budget of {budget}"
        )
