"""Streaming enumeration of simple cycles, non-extendable simple paths and
prime paths.

Cycles come from Johnson's elementary-circuit search, run lazily so each cycle
is handed out as soon as it closes. Non-extendable simple paths reuse the same
search: for every admissible start vertex ``v`` the graph is extended with a
sentinel ``x_v`` (edge ``x_v -> v`` plus edges from admissible end vertices
back to ``x_v``), and every cycle through the sentinel is a candidate path.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Hashable, Iterator, Mapping, Sequence

from .graph import (
    Digraph,
    InvalidPathError,
    Path,
    SccPartition,
    cut,
    is_simple,
    is_simple_cycle,
    scc_partition,
)
from .streams import ItemStream, StreamCounters

Adjacency = Mapping[int, Sequence[int]]


# --------------------------------------------------------------------------
# start / end filters


@dataclass(frozen=True)
class StartEndFilter:
    """Necessary conditions for a vertex to start or end a non-cycle prime path.

    ``conditions[v]`` holds the eight per-vertex flags in order, i.e.
    ``conditions[v][0]`` is condition 1 and ``conditions[v][7]`` condition 8.
    """

    graph: Digraph
    conditions: tuple[tuple[bool, ...], ...]
    v_start: frozenset[int]
    v_end: frozenset[int]

    def condition(self, i: int, v: int) -> bool:
        return self.conditions[v][i - 1]

    def pair_ok(self, end: int, start: int) -> bool:
        """A path may run from ``start`` to ``end`` only if it cannot close into a cycle."""
        return (end, start) not in self.graph.edges


def vertex_conditions(g: Digraph, part: SccPartition, v: int) -> tuple[bool, ...]:
    sc = part.component(v)
    ins = g.in_adj[v]
    outs = g.out_adj[v]
    out_of_ins = {w for u in ins for w in g.out_adj[u]}
    in_of_outs = {w for u in outs for w in g.in_adj[u]}
    in_of_ins = {w for u in ins for w in g.in_adj[u]}
    out_of_outs = {w for u in outs for w in g.out_adj[u]}
    return (
        sc.issuperset(ins),
        sc.issuperset(outs),
        len(out_of_ins | {v}) > len(ins),
        len(in_of_outs | {v}) > len(outs),
        len(out_of_ins & sc) >= len(ins),
        len(in_of_outs & sc) >= len(outs),
        len(in_of_ins & sc) >= len(ins),
        len(out_of_outs & sc) >= len(outs),
    )


def start_end_filter(g: Digraph, part: SccPartition | None = None) -> StartEndFilter:
    if part is None:
        part = scc_partition(g)
    conds = tuple(vertex_conditions(g, part, v) for v in range(g.n))
    v_start = frozenset(v for v, c in enumerate(conds) if c[0] and c[2] and c[4] and c[6])
    v_end = frozenset(v for v, c in enumerate(conds) if c[1] and c[3] and c[5] and c[7])
    return StartEndFilter(g, conds, v_start, v_end)


# --------------------------------------------------------------------------
# sentinel extension


@dataclass(frozen=True)
class Sentinel:
    for_vertex: Hashable

    def __repr__(self) -> str:
        return f"x_{self.for_vertex}"


@dataclass(frozen=True)
class ExtendedGraph:
    base: Digraph
    start: int
    sentinel: int
    graph: Digraph

    def cycle_component(self) -> dict[int, list[int]] | None:
        """Adjacency of the SCC holding the sentinel, or None if it lies on no cycle."""
        g = self.graph
        x = self.sentinel
        fwd = _reach(g.out_adj, x)
        comp = _reach(g.in_adj, x, within=fwd)
        if len(comp) == 1:
            return None
        return {u: [w for w in g.out_adj[u] if w in comp] for u in comp}


def extend_graph(g: Digraph, flt: StartEndFilter, v: int) -> ExtendedGraph:
    if v not in flt.v_start:
        raise ValueError(f"vertex {g.labels[v]!r} is not an admissible start vertex")
    x = g.n
    extra = [(x, v)] + [(u, x) for u in sorted(flt.v_end) if flt.pair_ok(u, v)]
    ex = Digraph(g.labels + (Sentinel(g.labels[v]),), list(g.edges) + extra)
    return ExtendedGraph(g, v, x, ex)


def _reach(adj: Sequence[Sequence[int]], root: int, within: set[int] | None = None, floor: int = 0) -> set[int]:
    seen = {root}
    todo = [root]
    while todo:
        u = todo.pop()
        for w in adj[u]:
            if w >= floor and w not in seen and (within is None or w in within):
                seen.add(w)
                todo.append(w)
    return seen


# --------------------------------------------------------------------------
# Johnson's circuit search


@dataclass
class JohnsonState:
    blocked: set[int] = field(default_factory=set)
    blocked_map: dict[int, set[int]] = field(default_factory=dict)
    path: list[int] = field(default_factory=list)


def circuit(
    state: JohnsonState,
    succ: Adjacency,
    anchor: int,
    counters: StreamCounters | None = None,
    held: int = 1,
) -> Iterator[Path]:
    """Yield every simple cycle through ``anchor`` inside the component ``succ``.

    ``succ`` must describe a strongly connected subgraph containing ``anchor``.
    Cycles are emitted as ``(anchor, ..., anchor)`` the moment they close.
    ``held`` is the number of paths the consumer keeps while the search runs;
    it only feeds the retained-path accounting in ``counters``.
    """
    path = state.path
    blocked = state.blocked
    bmap = state.blocked_map
    path.append(anchor)
    blocked.add(anchor)
    found = [False]
    frames = [iter(succ[anchor])]
    pushes = depth = peak = 1
    while frames:
        for w in frames[-1]:
            if w == anchor:
                if counters is not None:
                    counters.frames_pushed += pushes
                    pushes = 0
                    counters.observe(peak, held)
                yield tuple(path) + (anchor,)
                found[-1] = True
            elif w not in blocked:
                path.append(w)
                blocked.add(w)
                found.append(False)
                frames.append(iter(succ[w]))
                pushes += 1
                depth += 1
                if depth > peak:
                    peak = depth
                break
        else:
            frames.pop()
            depth -= 1
            v = path.pop()
            if found.pop():
                if found:
                    found[-1] = True
                if v in bmap:
                    _unblock(v, blocked, bmap)
                else:
                    blocked.discard(v)
            else:
                for w in succ[v]:
                    bmap.setdefault(w, set()).add(v)
    if counters is not None:
        counters.frames_pushed += pushes
        counters.observe(peak, held)


def _unblock(v: int, blocked: set[int], bmap: dict[int, set[int]]) -> None:
    todo = [v]
    while todo:
        u = todo.pop()
        if u in blocked:
            blocked.discard(u)
            waiting = bmap.pop(u, None)
            if waiting:
                todo.extend(waiting)


def _simple_cycles(g: Digraph, counters: StreamCounters, held: int) -> Iterator[Path]:
    out_adj, in_adj = g.out_adj, g.in_adj
    for v in range(g.n):
        # vertices below v were anchors already and are removed from the graph
        if not any(w >= v for w in out_adj[v]) or not any(w >= v for w in in_adj[v]):
            continue
        fwd = _reach(out_adj, v, floor=v)
        comp = _reach(in_adj, v, within=fwd, floor=v)
        succ = {u: [w for w in out_adj[u] if w in comp] for u in comp}
        yield from circuit(JohnsonState(), succ, v, counters, held)


def simple_cycles(g: Digraph) -> ItemStream[Path]:
    """One representative per simple cycle, starting at its smallest vertex."""
    counters = StreamCounters()
    return ItemStream(_simple_cycles(g, counters, held=1), counters)


# --------------------------------------------------------------------------
# non-extendable simple paths


def is_non_extendable(g: Digraph, p: Sequence[int]) -> bool:
    """True iff the simple path ``p`` extends to no simple path or simple cycle."""
    if not is_simple(p):
        raise InvalidPathError(f"{tuple(p)!r} is not a simple path")
    return _non_extendable(g, p)


def _non_extendable(g: Digraph, p: Sequence[int]) -> bool:
    head, last = p[0], p[-1]
    ins = g.in_adj[head]
    outs = g.out_adj[last]
    if not ins and not outs:
        return True
    members = set(p)
    return all(u in members and u != last for u in ins) and all(
        w in members and w != head for w in outs
    )


def _sentinel_paths(
    g: Digraph, ex: ExtendedGraph, succ: Adjacency, counters: StreamCounters | None, held: int
) -> Iterator[Path]:
    """Circuit search anchored at the sentinel, yielding the non-extendable paths.

    Same blocking discipline as :func:`circuit`. Each closed cycle
    ``(x, v, ..., u, x)`` is tested for non-extendability in ``g`` through an
    on-path bitmap before any tuple is built, since most candidates fail.
    """
    x, v = ex.sentinel, ex.start
    g_out = g.out_adj
    # in(v) must be on the path and must not contain its last vertex
    is_head_in = bytearray(g.n + 1)
    for u in g.in_adj[v]:
        is_head_in[u] = 1
    missing_ins = len(g.in_adj[v])
    on_path = bytearray(g.n + 1)
    on_path[x] = 1
    path = [x]
    blocked = {x}
    bmap: dict[int, set[int]] = {}
    found = [False]
    frames = [iter(succ[x])]
    pushes = depth = peak = 1
    while frames:
        for w in frames[-1]:
            if w == x:
                found[-1] = True
                last = path[-1]
                if not missing_ins and not is_head_in[last] and all(
                    on_path[y] and y != v for y in g_out[last]
                ):
                    if counters is not None:
                        counters.frames_pushed += pushes
                        pushes = 0
                        counters.observe(peak, held)
                    yield tuple(path[1:])
            elif w not in blocked:
                path.append(w)
                on_path[w] = 1
                missing_ins -= is_head_in[w]
                blocked.add(w)
                found.append(False)
                frames.append(iter(succ[w]))
                pushes += 1
                depth += 1
                if depth > peak:
                    peak = depth
                break
        else:
            frames.pop()
            depth -= 1
            u = path.pop()
            on_path[u] = 0
            missing_ins += is_head_in[u]
            if found.pop():
                if found:
                    found[-1] = True
                if u in bmap:
                    _unblock(u, blocked, bmap)
                else:
                    blocked.discard(u)
            else:
                for w in succ[u]:
                    bmap.setdefault(w, set()).add(u)
    if counters is not None:
        counters.frames_pushed += pushes
        counters.observe(peak, held)


def _non_extendable_simple_paths(
    g: Digraph, counters: StreamCounters, held: int, flt: StartEndFilter | None = None
) -> Iterator[Path]:
    if flt is None:
        flt = start_end_filter(g)
    for v in sorted(flt.v_start):
        ex = extend_graph(g, flt, v)
        succ = ex.cycle_component()
        if succ is None:
            continue
        yield from _sentinel_paths(g, ex, succ, counters, held)


def non_extendable_simple_paths(g: Digraph) -> ItemStream[Path]:
    counters = StreamCounters()
    return ItemStream(_non_extendable_simple_paths(g, counters, held=1), counters)


# --------------------------------------------------------------------------
# prime paths


def _prime_paths(g: Digraph, counters: StreamCounters) -> Iterator[Path]:
    # the cycle being rotated and the rotation handed out are both alive
    for c in _simple_cycles(g, counters, held=2):
        body = c[:-1]
        for i in range(len(body)):
            yield body[i:] + body[:i] + (body[i],)
    yield from _non_extendable_simple_paths(g, counters, held=1)


def prime_paths(g: Digraph) -> ItemStream[Path]:
    """All prime paths: every rotation of every simple cycle, then the
    non-extendable simple paths. Each prime path is emitted exactly once."""
    counters = StreamCounters()
    return ItemStream(_prime_paths(g, counters), counters)


class BaselineTimeout(TimeoutError):
    pass


def baseline_prime_paths(g: Digraph, deadline: float | None = None) -> set[Path]:
    """Classical breadth-wise prime path computation (Ammann & Offutt).

    Starts from every vertex and extends all simple paths one edge per round,
    keeping closed simple cycles and paths that cannot be extended forward.
    Retained paths that are proper subpaths of other retained paths are then
    dropped. A retained non-cycle path cannot be extended forward, so it can
    only occur inside another retained path as a proper suffix; the pruning
    relies on that.

    ``deadline`` is a ``time.monotonic()`` value; past it, BaselineTimeout is
    raised between rounds or every few thousand extensions.
    """
    out_adj = g.out_adj
    frontier: list[Path] = [(v,) for v in range(g.n)]
    retained: list[Path] = []
    work = 0
    while frontier:
        nxt: list[Path] = []
        for p in frontier:
            extended = False
            for w in out_adj[p[-1]]:
                if w == p[0]:
                    retained.append(p + (w,))
                    extended = True
                elif w not in p:
                    nxt.append(p + (w,))
                    extended = True
            if not extended:
                retained.append(p)
            work += 1
            if deadline is not None and not work & 0xFFF and time.monotonic() > deadline:
                raise BaselineTimeout("baseline prime path computation timed out")
        frontier = nxt
        if deadline is not None and time.monotonic() > deadline:
            raise BaselineTimeout("baseline prime path computation timed out")
    suffixes = {q[i:] for q in retained for i in range(1, len(q))}
    return {p for p in retained if p not in suffixes}


# --------------------------------------------------------------------------
# SCC characterization of prime paths


def characterize(g: Digraph, part: SccPartition, p: Sequence[int]) -> tuple[bool, bool, bool]:
    """Evaluate the three SCC-based prime path conditions for ``p``.

    1. ``p`` is a simple cycle.
    2. ``p`` is a simple path inside one SCC whose first vertex has all
       in-neighbours on ``p`` (but not the last vertex) and whose last vertex
       has all out-neighbours on ``p`` (but not the first vertex).
    3. ``p`` crosses at least two SCCs, the per-class cuts of ``p`` are
       contiguous simple segments along a simple path of the condensation,
       every in-neighbour of the first vertex lies in the first cut and every
       out-neighbour of the last vertex lies in the last cut.

    A path is prime iff exactly one of them holds.
    """
    p = tuple(p)
    g.check_path(p)
    return _cond_cycle(p), _cond_single_scc(g, part, p), _cond_multi_scc(g, part, p)


def _cond_cycle(p: Path) -> bool:
    return is_simple_cycle(p)


def _cond_single_scc(g: Digraph, part: SccPartition, p: Path) -> bool:
    if not is_simple(p):
        return False
    classes = {part.class_of[v] for v in p}
    if len(classes) != 1:
        return False
    head, last = p[0], p[-1]
    members = set(p)
    return set(g.in_adj[head]) <= members - {last} and set(g.out_adj[last]) <= members - {head}


def _cond_multi_scc(g: Digraph, part: SccPartition, p: Path) -> bool:
    # class sequence along p with consecutive repeats collapsed
    seq: list[int] = []
    for v in p:
        c = part.class_of[v]
        if not seq or seq[-1] != c:
            seq.append(c)
    if len(seq) < 2 or len(set(seq)) != len(seq):
        return False
    cond = part.condensation
    if not all(cond.has_edge(a, b) for a, b in zip(seq, seq[1:])):
        return False
    pos = 0
    cuts = []
    for c in seq:
        segment = []
        while pos < len(p) and part.class_of[p[pos]] == c:
            segment.append(p[pos])
            pos += 1
        piece = cut(part, c, p)
        if piece != set(segment) or not is_simple(segment):
            return False
        cuts.append(piece)
    if set().union(*cuts) != set(p):
        return False
    return set(g.in_adj[p[0]]) <= cuts[0] and set(g.out_adj[p[-1]]) <= cuts[-1]
