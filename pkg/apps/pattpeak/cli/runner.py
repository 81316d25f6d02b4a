"""Runs independent jobs inline or on a process pool, keeping results in
submission order."""

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional

from apps.pattpeak.cli.observable import CheckObservable
from apps.pattpeak.combinat.verifiers import run_check


LOGGER = logging.getLogger(__name__)


async def gather_ordered(func: Callable, arguments: list, jobs: int = 1,
                         on_done: Optional[Callable] = None) -> list:
    """Call func(*args) for each args tuple and return the results in the
    order of `arguments`. `on_done(index, result)` fires as each job ends."""
    if jobs <= 1 or len(arguments) <= 1:
        results = []
        for index, args in enumerate(arguments):
            result = func(*args)
            if on_done is not None:
                on_done(index, result)
            results.append(result)
        return results

    loop = asyncio.get_running_loop()
    LOGGER.debug(f"Running {len(arguments)} jobs on {jobs} worker processes")
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        async def one(index, args):
            result = await loop.run_in_executor(pool, func, *args)
            if on_done is not None:
                on_done(index, result)
            return result

        return await asyncio.gather(*(one(i, args)
                                      for i, args in enumerate(arguments)))


def run_jobs(func: Callable, arguments: list, jobs: int = 1) -> list:
    return asyncio.run(gather_ordered(func, arguments, jobs))


def run_checks(checks: list, jobs: int = 1,
               observable: Optional[CheckObservable] = None) -> list:
    """Run verification checks; results are ordered like `checks`."""
    if observable is None:
        observable = CheckObservable(len(checks))
    return asyncio.run(gather_ordered(
        run_check, [(check,) for check in checks], jobs,
        on_done=observable.check_done))
