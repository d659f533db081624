"""Error types shared across the toolkit."""


class BudgetExceededError(RuntimeError):
    """An exhaustive operation would exceed its configured work budget."""

    def __init__(self, operation: str, work: int, budget: int):
        self.operation = operation
        self.work = work
        self.budget = budget
        super().__init__(f"{operation}: work {work} exceeds budget {budget}")


class FieldMismatchError(ValueError):
    """Operands belong to different finite fields."""


def check_budget(operation: str, work: int, budget: int) -> None:
    """Raise BudgetExceededError when `work` is over `budget`."""
    if work > budget:
        raise BudgetExceededError(operation, work, budget)
