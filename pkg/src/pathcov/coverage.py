"""Test path generation for the path-based coverage criteria.

Every generator walks an item stream and packs up to ``k`` items into one
test path: the first item is reached by a shortest path from the entry, later
items are chained by shortest connecting paths, and the test path is closed by
a shortest path to the exit. When the next item cannot be reached from the
current test path, the current one is closed early and a new one started.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, Sequence

from .enumeration import _non_extendable_simple_paths, _prime_paths, _simple_cycles
from .graph import (
    Digraph,
    GraphError,
    Path,
    SeseGraph,
    bfs_tree,
    covers,
    join,
    line_graph,
    line_path_reduce,
    rotations,
    shortest_path,
    shortest_path_to_any,
    tree_path,
)
from .streams import ItemStream, StreamCounters

Criterion = Literal["prime-path", "simple-cycle", "simple-path", "e-acyclic"]
CRITERIA: tuple[str, ...] = ("prime-path", "simple-cycle", "simple-path", "e-acyclic")


class MalformedGraphError(GraphError):
    pass


@dataclass(frozen=True)
class CoverageConfig:
    k: int = 1
    double_cycle: bool = False

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")


@dataclass(frozen=True)
class TestCase:
    path: Path
    items_covered: int

    __test__ = False  # keep pytest from collecting this class


class _Router:
    """Shortest-path plumbing between a set of entries, items and a set of exits."""

    def __init__(self, g: Digraph, entries: Iterable[int], exits: Iterable[int]):
        self.g = g
        self.exits = frozenset(exits)
        self._entry_tree = bfs_tree(g, sorted(entries))

    def from_entry(self, v: int) -> Path:
        p = tree_path(self._entry_tree, v)
        if p is None:
            raise MalformedGraphError(f"vertex {self.g.labels[v]!r} is unreachable from the entry")
        return p

    def to_exit(self, v: int) -> Path:
        p = shortest_path_to_any(self.g, v, self.exits)
        if p is None:
            raise MalformedGraphError(f"vertex {self.g.labels[v]!r} cannot reach the exit")
        return p

    def between(self, x: int, y: int) -> Path | None:
        return shortest_path(self.g, x, y)


def _accumulate(
    items: Iterator[Path], k: int, router: _Router, counters: StreamCounters
) -> Iterator[TestCase]:
    count = 0
    test: Path = ()
    for item in items:
        counters.source_items += 1
        count += 1
        if count == 1:
            test = join(router.from_entry(item[0]), item)
            if k == 1:
                yield TestCase(join(test, router.to_exit(item[-1])), 1)
                count, test = 0, ()
            continue
        link = router.between(test[-1], item[0])
        if link is None:
            yield TestCase(join(test, router.to_exit(test[-1])), count - 1)
            count, test = 1, join(router.from_entry(item[0]), item)
        else:
            test = join(test, link, item)
            if count == k:
                yield TestCase(join(test, router.to_exit(item[-1])), count)
                count, test = 0, ()
    if count:
        yield TestCase(join(test, router.to_exit(test[-1])), count)


def _doubled(cycles: Iterator[Path]) -> Iterator[Path]:
    # c + tail(c) runs the cycle twice, so every rotation appears contiguously
    for c in cycles:
        yield c + c[1:]


def _cycle_bound_paths(g: Digraph, cycles: Iterator[Path]) -> Iterator[Path]:
    """Maximal simple paths that only extend by closing a cycle.

    Such a path ``p`` has an edge from its last vertex back to its first, and
    every other neighbour that could extend it is already on it, so no
    non-extendable simple path contains it. Each one is a rotation of a simple
    cycle with the closing vertex dropped.
    """
    for c in cycles:
        body = c[:-1]
        members = set(body)
        for i in range(len(body)):
            p = body[i:] + body[:i]
            if members.issuperset(g.in_adj[p[0]]) and members.issuperset(g.out_adj[p[-1]]):
                yield p


def _path_items(g: Digraph, counters: StreamCounters, maximal: bool) -> Iterator[Path]:
    yield from _non_extendable_simple_paths(g, counters, held=1)
    if maximal:
        yield from _cycle_bound_paths(g, _simple_cycles(g, counters, held=2))


def _sese_router(g: SeseGraph) -> _Router:
    return _Router(g.graph, [g.entry], [g.exit])


def simple_cycle_coverage(g: SeseGraph, cfg: CoverageConfig = CoverageConfig()) -> ItemStream[TestCase]:
    """Test paths covering one rotation of every simple cycle, or every
    rotation when ``cfg.double_cycle`` is set."""
    counters = StreamCounters()
    cycles: Iterator[Path] = _simple_cycles(g.graph, counters, held=1)
    if cfg.double_cycle:
        cycles = _doubled(cycles)
    return ItemStream(_accumulate(cycles, cfg.k, _sese_router(g), counters), counters)


def simple_path_coverage(g: SeseGraph, cfg: CoverageConfig = CoverageConfig()) -> ItemStream[TestCase]:
    """Test paths covering every simple path.

    Items are the non-extendable simple paths followed by the simple paths that
    can only be extended into a cycle; together they contain every simple path.
    ``cfg.double_cycle`` is ignored.
    """
    counters = StreamCounters()
    items = _path_items(g.graph, counters, maximal=True)
    return ItemStream(_accumulate(items, cfg.k, _sese_router(g), counters), counters)


def _prime_path_coverage(g: SeseGraph, k: int, counters: StreamCounters) -> Iterator[TestCase]:
    router = _sese_router(g)
    cycles = _doubled(_simple_cycles(g.graph, counters, held=1))
    yield from _accumulate(cycles, k, router, counters)
    yield from _accumulate(_path_items(g.graph, counters, maximal=False), k, router, counters)


def prime_path_coverage(g: SeseGraph, k: int = 1) -> ItemStream[TestCase]:
    """Doubled-cycle test paths first, then test paths for the non-extendable
    simple paths."""
    CoverageConfig(k)
    counters = StreamCounters()
    return ItemStream(_prime_path_coverage(g, k, counters), counters)


def _e_acyclic_path_coverage(g: SeseGraph, k: int, counters: StreamCounters) -> Iterator[TestCase]:
    lg = line_graph(g.graph)
    entries = [lg.index((g.entry, w)) for w in g.graph.out_adj[g.entry]]
    exits = [lg.index((u, g.exit)) for u in g.graph.in_adj[g.exit]]
    router = _Router(lg, entries, exits)
    for tc in _accumulate(_path_items(lg, counters, maximal=True), k, router, counters):
        yield TestCase(line_path_reduce(lg, tc.path), tc.items_covered)


def e_acyclic_path_coverage(g: SeseGraph, k: int = 1) -> ItemStream[TestCase]:
    """Test paths covering every path with at least one edge and no repeated edge.

    Runs the simple path strategy on the line graph, where every edge out of
    the entry is a start and every edge into the exit an end, and maps each
    test path back through the line path reduction.
    """
    CoverageConfig(k)
    counters = StreamCounters()
    return ItemStream(_e_acyclic_path_coverage(g, k, counters), counters)


def cover(g: SeseGraph, criterion: str, cfg: CoverageConfig = CoverageConfig()) -> ItemStream[TestCase]:
    if cfg.double_cycle and criterion != "simple-cycle":
        raise ValueError("double_cycle only applies to the simple-cycle criterion")
    if criterion == "simple-cycle":
        return simple_cycle_coverage(g, cfg)
    if criterion == "simple-path":
        return simple_path_coverage(g, cfg)
    if criterion == "prime-path":
        return prime_path_coverage(g, cfg.k)
    if criterion == "e-acyclic":
        return e_acyclic_path_coverage(g, cfg.k)
    raise ValueError(f"unknown criterion {criterion!r}; expected one of {', '.join(CRITERIA)}")


def required_items(g: SeseGraph, criterion: str, cfg: CoverageConfig = CoverageConfig()) -> Iterator[tuple[Path, ...]]:
    """What a complete suite has to cover, one group of alternatives per item.

    A group is satisfied when any of its paths is covered. Only simple cycles
    without ``double_cycle`` have more than one alternative (their rotations).
    Simple-path items are the maximal simple paths, which between them
    contain every simple path; e-acyclic items are their images under the
    line path reduction.
    """
    counters = StreamCounters()
    if criterion == "simple-cycle":
        for c in _simple_cycles(g.graph, counters, held=1):
            rots = tuple(rotations(c))
            if cfg.double_cycle:
                yield from ((r,) for r in rots)
            else:
                yield rots
    elif criterion == "prime-path":
        yield from ((p,) for p in _prime_paths(g.graph, counters))
    elif criterion == "simple-path":
        yield from ((p,) for p in _path_items(g.graph, counters, maximal=True))
    elif criterion == "e-acyclic":
        lg = line_graph(g.graph)
        for p in _path_items(lg, counters, maximal=True):
            yield (line_path_reduce(lg, p),)
    else:
        raise ValueError(f"unknown criterion {criterion!r}; expected one of {', '.join(CRITERIA)}")


def uncovered_items(
    g: SeseGraph,
    criterion: str,
    suite: Sequence[Path],
    cfg: CoverageConfig = CoverageConfig(),
    max_items: int | None = None,
) -> list[Path]:
    """Items of ``criterion`` that no test path in ``suite`` covers.

    Raises OverflowError when there are more than ``max_items`` items.
    """
    missed = []
    for n, group in enumerate(required_items(g, criterion, cfg), 1):
        if max_items is not None and n > max_items:
            raise OverflowError(f"more than {max_items} coverage items")
        if not any(covers(t, item) for item in group for t in suite):
            missed.append(group[0])
    return missed
