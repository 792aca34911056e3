"""Parallel grid evaluation and small shared helpers."""
from __future__ import annotations

from contextlib import contextmanager
from enum import Enum
from multiprocessing import Manager, cpu_count
from queue import Queue
from threading import Thread
from typing import TYPE_CHECKING, Any, Callable, Generator, Sequence

import joblib as jl
import numpy as np
from tqdm.std import tqdm

__all__ = ["Signal", "SigQueue", "NDArrayA", "parallelize", "split_contiguous", "verbosity"]


try:
    from numpy.typing import NDArray

    NDArrayA = NDArray[Any]
except (ImportError, TypeError):
    NDArray = np.ndarray  # type: ignore[misc]
    NDArrayA = np.ndarray  # type: ignore[misc]


class SigQueue(Queue["Signal"] if TYPE_CHECKING else Queue):  # type: ignore[misc]
    """Queue carrying progress signals from the workers."""


class Signal(Enum):
    """Progress signals sent by a chunk callback."""

    UPDATE = 1
    FINISH = 2


def split_contiguous(collection: Sequence[Any], n_chunks: int) -> list[Sequence[Any]]:
    """
    Split a collection into at most ``n_chunks`` contiguous, non-empty chunks.

    Concatenating the chunks gives back ``collection`` in its original order.
    """
    n = len(collection)
    if not n:
        return []
    step = -(-n // max(1, n_chunks))
    return [collection[i : i + step] for i in range(0, n, step)]


def _track(pbar: tqdm | None, queue: SigQueue, n_chunks: int) -> None:
    n_finished = 0
    while n_finished < n_chunks:
        res = queue.get()
        if res is Signal.FINISH:
            n_finished += 1
        elif pbar is not None:
            pbar.update()
    if pbar is not None:
        pbar.close()


def parallelize(
    callback: Callable[..., Any],
    collection: Sequence[Any],
    n_jobs: int | None = 1,
    backend: str = "loky",
    unit: str = "point",
    extractor: Callable[[Sequence[Any]], Any] | None = None,
    show_progress_bar: bool = False,
) -> Callable[..., Any]:
    """
    Evaluate a chunk callback over contiguous chunks of a collection.

    Parameters
    ----------
    callback
        Function called as ``callback(chunk, *args, queue=queue, **kwargs)``. It should put
        :attr:`Signal.UPDATE` on the queue after each item and :attr:`Signal.FINISH` once done,
        unless the queue is `None`.
    collection
        Items to evaluate, e.g. grid points.
    n_jobs
        Number of parallel jobs, see :func:`_get_n_cores`.
    backend
        Which backend to use for multiprocessing. See :class:`joblib.Parallel` for valid options.
    unit
        Unit of the progress bar.
    extractor
        Function applied to the list of chunk results.
    show_progress_bar
        Whether to show a progress bar.

    Returns
    -------
    A function forwarding its arguments to ``callback``. Chunk results come back in chunk order, so the result
    does not depend on ``n_jobs``.
    """
    n_jobs = _get_n_cores(n_jobs)
    chunks = split_contiguous(collection, n_jobs)

    def wrapper(*args: Any, **kwargs: Any) -> Any:
        queue: SigQueue | None = None
        thread: Thread | None = None
        if show_progress_bar and chunks:
            queue = Manager().Queue()
            thread = Thread(target=_track, args=(tqdm(total=len(collection), unit=unit), queue, len(chunks)))
            thread.start()

        try:
            res = jl.Parallel(n_jobs=n_jobs, backend=backend)(
                jl.delayed(callback)(chunk, *args, queue=queue, **kwargs) for chunk in chunks
            )
        except BaseException:
            if queue is not None:
                # release the tracker, the failed chunk never signals
                for _ in chunks:
                    queue.put(Signal.FINISH)
            raise
        finally:
            if thread is not None:
                thread.join()

        return res if extractor is None else extractor(res)

    return wrapper


def _get_n_cores(n_cores: int | None) -> int:
    """
    Resolve the number of jobs.

    `None` means `1`, negative values count back from the number of CPUs (`-1` uses all of them).
    """
    if n_cores is None:
        return 1
    if n_cores == 0:
        raise ValueError("Expected `n_jobs` to be non-zero, found `0`.")
    if n_cores < 0:
        return max(1, cpu_count() + 1 + n_cores)
    return int(n_cores)


@contextmanager
def verbosity(level: int) -> Generator[None, None, None]:
    """
    Temporarily set the verbosity level of :mod:`scanpy`, which carries the logging of this package.

    Parameters
    ----------
    level
        The new verbosity level, `0` (errors) to `4` (debug).

    Returns
    -------
    Nothing.
    """
    import scanpy as sc

    if not 0 <= level <= 4:
        raise ValueError(f"Expected verbosity in `[0, 4]`, found `{level}`.")
    old = sc.settings.verbosity
    sc.settings.verbosity = level
    try:
        yield
    finally:
        sc.settings.verbosity = old
