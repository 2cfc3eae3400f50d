from __future__ import annotations

from dataclasses import dataclass
from typing import Generic, Iterator, TypeVar

T = TypeVar("T")


@dataclass
class StreamCounters:
    """Work and memory counters shared by one producer pipeline.

    ``peak_retained_paths`` counts path objects the producer keeps alive at
    once: one per open search frame (each frame is a live path prefix) plus the
    paths the pipeline holds downstream of the search, such as the cycle being
    rotated and the item being handed out.
    """

    items: int = 0
    frames_pushed: int = 0
    peak_depth: int = 0
    peak_retained_paths: int = 0
    source_items: int = 0

    def observe(self, depth: int, held: int) -> None:
        if depth > self.peak_depth:
            self.peak_depth = depth
        if depth + held > self.peak_retained_paths:
            self.peak_retained_paths = depth + held


class ItemStream(Iterator[T], Generic[T]):
    """Lazy single-consumer stream of items; nothing is computed ahead of demand."""

    def __init__(self, source: Iterator[T], counters: StreamCounters | None = None):
        self._source = source
        self.counters = counters if counters is not None else StreamCounters()

    def __iter__(self) -> ItemStream[T]:
        return self

    def __next__(self) -> T:
        item = next(self._source)
        self.counters.items += 1
        return item

    def close(self) -> None:
        close = getattr(self._source, "close", None)
        if close is not None:
            close()
