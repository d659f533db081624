"""Utils package for the deep-hole toolkit."""
from .config import get_settings, settings
from .errors import BudgetExceededError, FieldMismatchError, check_budget
from .parallel import run_partitioned, split_range

__all__ = [
    "get_settings",
    "settings",
    "BudgetExceededError",
    "FieldMismatchError",
    "check_budget",
    "run_partitioned",
    "split_range",
]
