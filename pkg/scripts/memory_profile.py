"""Retained paths and traced allocations while discarding a long stream.

Prints, at growing item counts, the producer's peak retained-path count and
the memory tracemalloc sees. Both should stay flat while the count grows.

    python scripts/memory_profile.py --diamonds 30 --items 1000000
"""

from __future__ import annotations

import argparse
import time
import tracemalloc
from dataclasses import dataclass

from pathcov.bench import path_bytes
from pathcov.enumeration import prime_paths
from pathcov.generators import diamond_chain


@dataclass
class Config:
    diamonds: int = 30
    items: int = 1_000_000
    every: int = 100_000
    trace: bool = True


def run(cfg: Config) -> None:
    g = diamond_chain(cfg.diamonds).graph
    print(f"|V|={g.n}  bound |V|+2={g.n + 2}  bytes/path~{path_bytes(g.n + 1)}")
    print(f"{'items':>10s} {'peak paths':>11s} {'estimate [B]':>13s} {'traced [KiB]':>13s} {'elapsed [s]':>12s}")
    if cfg.trace:
        tracemalloc.start()
    stream = prime_paths(g)
    start = time.perf_counter()
    for i, _ in enumerate(stream, 1):
        if i % cfg.every == 0 or i == cfg.items:
            peak = stream.counters.peak_retained_paths
            traced = tracemalloc.get_traced_memory()[0] / 1024 if cfg.trace else float("nan")
            print(f"{i:10,d} {peak:11d} {peak * path_bytes(g.n + 1):13d} {traced:13.1f} {time.perf_counter() - start:12.2f}", flush=True)
        if i >= cfg.items:
            break
    stream.close()
    if cfg.trace:
        tracemalloc.stop()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--diamonds", type=int, default=Config.diamonds)
    parser.add_argument("--items", type=int, default=Config.items)
    parser.add_argument("--every", type=int, default=Config.every)
    parser.add_argument("--no-trace", dest="trace", action="store_false")
    run(Config(**vars(parser.parse_args())))


if __name__ == "__main__":
    main()
