"""Stream vs. breadth-wise baseline on generated control-flow graphs.

Samples structured CFGs, keeps the ones on which the baseline needs more than
``min_baseline`` seconds, and reports per-graph timings plus mean/median
summaries of both engines.

    python scripts/speedup_table.py --graphs 30 --csv speedup.csv
"""

from __future__ import annotations

import argparse
import csv
import random
import statistics
import time
from dataclasses import asdict, dataclass, fields

from pathcov.enumeration import BaselineTimeout, baseline_prime_paths, prime_paths
from pathcov.generators import random_cfg


@dataclass
class Config:
    graphs: int = 30
    min_vertices: int = 30
    max_vertices: int = 70
    min_baseline: float = 0.1
    baseline_timeout: float = 60.0
    max_attempts: int = 20_000
    seed: int = 11
    csv: str | None = None


@dataclass
class Row:
    vertices: int
    edges: int
    prime_paths: int
    baseline_s: float
    stream_s: float

    @property
    def ratio(self) -> float:
        return self.baseline_s / self.stream_s


def collect(cfg: Config) -> list[Row]:
    rng = random.Random(cfg.seed)
    rows: list[Row] = []
    for _ in range(cfg.max_attempts):
        if len(rows) >= cfg.graphs:
            break
        g = random_cfg(rng.randint(cfg.min_vertices, cfg.max_vertices), rng).graph
        if not cfg.min_vertices <= g.n <= cfg.max_vertices:
            continue
        t = time.perf_counter()
        try:
            found = baseline_prime_paths(g, time.monotonic() + cfg.baseline_timeout)
        except BaselineTimeout:
            continue
        tb = time.perf_counter() - t
        if tb <= cfg.min_baseline:
            continue
        t = time.perf_counter()
        count = sum(1 for _ in prime_paths(g))
        ts = time.perf_counter() - t
        assert count == len(found)
        rows.append(Row(g.n, len(g.edges), count, tb, ts))
        print(f"{len(rows):3d}  |V|={g.n:3d} |E|={len(g.edges):3d}  PP={count:7d}  baseline {tb:7.3f}s  stream {ts:7.3f}s  x{tb / ts:5.2f}", flush=True)
    return rows


def summarize(rows: list[Row]) -> None:
    if not rows:
        print("no qualifying graphs")
        return
    base = [r.baseline_s for r in rows]
    strm = [r.stream_s for r in rows]
    print()
    print(f"{'':10s} {'baseline [s]':>14s} {'stream [s]':>12s}")
    for name, fn in (("mean", statistics.mean), ("median", statistics.median), ("max", max)):
        print(f"{name:10s} {fn(base):14.3f} {fn(strm):12.3f}")
    print(f"ratio of medians: {statistics.median(base) / statistics.median(strm):.2f}x")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for f in fields(Config):
        kind = str if f.name == "csv" else type(f.default)
        parser.add_argument("--" + f.name.replace("_", "-"), type=kind, default=f.default)
    cfg = Config(**vars(parser.parse_args()))
    rows = collect(cfg)
    summarize(rows)
    if cfg.csv:
        with open(cfg.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=[*asdict(rows[0]), "ratio"] if rows else ["vertices"])
            w.writeheader()
            for r in rows:
                w.writerow({**asdict(r), "ratio": r.ratio})


if __name__ == "__main__":
    main()
