"""
Partitioned execution of exhaustive scans.

Callers split a scan into disjoint tasks and merge the per-task results
themselves (minimum for searches, sum for counts), so the outcome never
depends on the worker schedule.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

from loguru import logger

T = TypeVar("T")
R = TypeVar("R")


def run_partitioned(worker: Callable[[T], R], tasks: Sequence[T], jobs: int = 1) -> List[R]:
    """
    Run `worker` over every task and return the results in task order.

    Args:
        worker: Module-level function (must be picklable for jobs > 1)
        tasks: Disjoint work descriptions
        jobs: Number of worker processes; <= 1 runs in-process

    Returns:
        List of worker results aligned with `tasks`
    """
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]

    workers = min(jobs, len(tasks))
    logger.debug(f"Dispatching {len(tasks)} tasks to {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, tasks))


def split_range(values: Sequence[int], parts: int) -> List[List[int]]:
    """Split `values` into at most `parts` contiguous, non-empty chunks."""
    parts = max(1, min(parts, len(values)))
    size, extra = divmod(len(values), parts)
    chunks = []
    start = 0
    for i in range(parts):
        end = start + size + (1 if i < extra else 0)
        chunks.append(list(values[start:end]))
        start = end
    return [c for c in chunks if c]
