"""Fan independent work items out to a process pool and return them in key order."""

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable, Generic, List, Optional, Sequence, Tuple, TypeVar

from config.settings import WORKERS
from src.errors import FplabError, exit_code_for

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class WorkResult(Generic[T]):
    key: Tuple
    value: Optional[T] = None
    error: Optional[str] = None
    exit_code: int = 0

    @property
    def ok(self) -> bool:
        return self.error is None


def _run_one(fn: Callable[..., T], key: Tuple, args: Tuple) -> WorkResult[T]:
    try:
        return WorkResult(key, fn(*args))
    except FplabError as e:
        logger.warning(f"work item {key} failed: {e}")
        return WorkResult(key, None, str(e), exit_code_for(e))


def run_parallel(
    fn: Callable[..., T],
    items: Sequence[Tuple[Tuple, Tuple]],
    workers: Optional[int] = None,
) -> List[WorkResult[T]]:
    """
    Evaluate fn(*args) for every (key, args) item.

    Args:
        fn: pure module-level function (or bound method of a picklable object)
        items: (sortable key, argument tuple) pairs
        workers: pool size; 1 runs inline

    Returns:
        results sorted by key, independent of completion order
    """
    workers = WORKERS if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        results = [_run_one(fn, key, args) for key, args in items]
        return sorted(results, key=lambda r: r.key)

    results: List[WorkResult[T]] = []
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as executor:
        futures = {executor.submit(_run_one, fn, key, args): key for key, args in items}
        for future in as_completed(futures):
            results.append(future.result())
    logger.debug(f"{len(results)} work items finished on {workers} workers")
    return sorted(results, key=lambda r: r.key)
