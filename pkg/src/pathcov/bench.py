"""Timing and memory instrumentation for the streaming and baseline engines."""

from __future__ import annotations

import multiprocessing as mp
import resource
import sys
import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

from .enumeration import BaselineTimeout, baseline_prime_paths, prime_paths
from .graph import Digraph
from .streams import ItemStream

ENGINES = ("stream", "ao-baseline")

# engine run outcomes
COMPLETED = "completed"
TRUNCATED = "truncated"
TIMEOUT = "timeout"
MEMORY = "memory-exhausted"


@dataclass
class RunStats:
    engine: str
    status: str
    items_emitted: int
    elapsed: float
    avg_period: float | None = None
    max_period: float | None = None
    peak_retained_paths: int | None = None
    peak_memory_estimate: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def path_bytes(n_vertices: int) -> int:
    """Bytes held by one tuple path of ``n_vertices`` small ints."""
    return sys.getsizeof(tuple(range(n_vertices)))


def consume(
    stream: ItemStream,
    max_items: int | None = None,
    timeout: float | None = None,
    sink: Callable[[object], None] | None = None,
    engine: str = "stream",
    path_len: int = 1,
) -> RunStats:
    """Pull from ``stream`` until it ends, ``max_items`` items or ``timeout`` seconds.

    Each item goes to ``sink`` (or is dropped) before the next one is
    requested. The timeout is checked between items.
    """
    start = time.perf_counter()
    prev = start
    max_period = 0.0
    n = 0
    status = COMPLETED
    deadline = None if timeout is None else start + timeout
    try:
        if max_items is not None and max_items <= 0:
            status = TRUNCATED
        else:
            for item in stream:
                now = time.perf_counter()
                if now - prev > max_period:
                    max_period = now - prev
                prev = now
                n += 1
                if sink is not None:
                    sink(item)
                del item
                if max_items is not None and n >= max_items:
                    status = TRUNCATED
                    break
                if deadline is not None and now > deadline:
                    status = TIMEOUT
                    break
    finally:
        stream.close()
    elapsed = time.perf_counter() - start
    retained = stream.counters.peak_retained_paths or None
    return RunStats(
        engine=engine,
        status=status,
        items_emitted=n,
        elapsed=elapsed,
        avg_period=elapsed / n if n else None,
        max_period=max_period if n else None,
        peak_retained_paths=retained,
        peak_memory_estimate=None if retained is None else retained * path_bytes(path_len),
    )


def run_stream(g: Digraph, max_items: int | None = None, timeout: float | None = None) -> RunStats:
    return consume(prime_paths(g), max_items, timeout, engine="stream", path_len=g.n + 1)


def _baseline_child(g: Digraph, timeout: float | None, memory_mb: int | None, conn) -> None:
    if memory_mb is not None:
        try:
            with open("/proc/self/statm") as f:
                current = int(f.read().split()[0]) * resource.getpagesize()
            limit = current + memory_mb * 2**20
            resource.setrlimit(resource.RLIMIT_AS, (limit, limit))
        except (OSError, ValueError):
            pass
    start = time.perf_counter()
    deadline = None if timeout is None else time.monotonic() + timeout
    status, count = COMPLETED, 0
    try:
        count = len(baseline_prime_paths(g, deadline))
    except BaselineTimeout:
        status = TIMEOUT
    except MemoryError:
        status = MEMORY
    # report outside the handlers so the failed frames are already released
    try:
        conn.send((status, count, time.perf_counter() - start))
    finally:
        conn.close()


def run_baseline(g: Digraph, timeout: float | None = None, memory_mb: int | None = 2048) -> RunStats:
    """Run the breadth-wise baseline in a forked child so it can be capped and killed."""
    ctx = mp.get_context("fork")
    parent, child = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_baseline_child, args=(g, timeout, memory_mb, child), daemon=True)
    start = time.perf_counter()
    proc.start()
    child.close()
    grace = None if timeout is None else timeout + 5.0
    result = None
    if parent.poll(grace):
        try:
            result = parent.recv()
        except EOFError:
            result = None
    elapsed = time.perf_counter() - start
    killed = proc.is_alive()
    if killed:
        proc.kill()
    proc.join()
    if result is None:
        # a child that died on its own ran out of memory somewhere we could not catch
        return RunStats("ao-baseline", TIMEOUT if killed else MEMORY, 0, elapsed)
    status, count, inner = result
    return RunStats("ao-baseline", status, count, inner)


def run_engines(
    g: Digraph,
    engines: Iterable[str] = ENGINES,
    timeout: float | None = None,
    max_items: int | None = None,
    memory_mb: int | None = 2048,
) -> list[RunStats]:
    """Run the selected engines one after another; a failing engine never stops the next."""
    out = []
    for engine in engines:
        if engine == "stream":
            out.append(run_stream(g, max_items, timeout))
        elif engine == "ao-baseline":
            out.append(run_baseline(g, timeout, memory_mb))
        else:
            raise ValueError(f"unknown engine {engine!r}; expected one of {', '.join(ENGINES)}")
    return out


def format_table(rows: list[RunStats]) -> str:
    headers = ["engine", "status", "items", "elapsed [s]", "avg period [s]", "max period [s]", "peak paths", "peak mem [B]"]

    def fmt(x):
        if x is None:
            return "-"
        if isinstance(x, float):
            return f"{x:.3g}"
        return str(x)

    body = [
        [r.engine, r.status, r.items_emitted, r.elapsed, r.avg_period, r.max_period, r.peak_retained_paths, r.peak_memory_estimate]
        for r in rows
    ]
    cells = [headers] + [[fmt(x) for x in row] for row in body]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
