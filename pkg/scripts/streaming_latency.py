"""Time to the first m prime paths of a diamond chain, against the baseline.

A chain of n diamonds has 2**n prime paths. The stream hands out the first
ones in milliseconds; the baseline has to finish all of them first.

    python scripts/streaming_latency.py --diamonds 30 --baseline-timeout 10
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from pathcov import bench
from pathcov.enumeration import prime_paths
from pathcov.generators import diamond_chain


@dataclass
class Config:
    diamonds: int = 30
    checkpoints: tuple[int, ...] = (1, 10, 100, 1_000, 10_000, 100_000)
    baseline_timeout: float = 10.0


def run(cfg: Config) -> None:
    g = diamond_chain(cfg.diamonds).graph
    print(f"diamond chain of {cfg.diamonds}: |V|={g.n}, |E|={len(g.edges)}, 2^{cfg.diamonds} prime paths")
    marks = sorted(cfg.checkpoints)
    start = time.perf_counter()
    stream = prime_paths(g)
    for i, _ in enumerate(stream, 1):
        if i == marks[0]:
            print(f"  {i:>9,d} paths after {time.perf_counter() - start:9.4f}s")
            marks.pop(0)
            if not marks:
                break
    stream.close()
    print(f"  peak retained paths: {stream.counters.peak_retained_paths}")
    base = bench.run_baseline(g, timeout=cfg.baseline_timeout)
    print(f"baseline: {base.status} after {base.elapsed:.2f}s, {base.items_emitted} paths")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--diamonds", type=int, default=Config.diamonds)
    parser.add_argument("--checkpoints", type=int, nargs="+", default=list(Config.checkpoints))
    parser.add_argument("--baseline-timeout", type=float, default=Config.baseline_timeout)
    args = parser.parse_args()
    run(Config(args.diamonds, tuple(args.checkpoints), args.baseline_timeout))


if __name__ == "__main__":
    main()
