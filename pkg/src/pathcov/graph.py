"""Directed graphs, strongly connected components and path predicates.

Vertices are addressed by dense integer indices ``0..n-1``; the original
labels are kept on the graph and only matter at the I/O boundary. A path is a
plain tuple of indices, inclusive at both ends, so ``(v,)`` is the zero-length
path at ``v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, NamedTuple, Sequence

Path = tuple[int, ...]


class GraphError(ValueError):
    """Base class for malformed graph input."""


class DuplicateLabelError(GraphError):
    pass


class UnknownVertexError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class InvalidPathError(ValueError):
    pass


class Digraph:
    """Immutable directed graph over dense vertex indices.

    Self-loops are allowed, parallel edges are not. Neighbour tuples are sorted
    ascending so every traversal built on top of them is deterministic.
    """

    __slots__ = ("labels", "_index", "edges", "out_adj", "in_adj")

    def __init__(self, labels: Sequence[Hashable], edges: Iterable[tuple[int, int]]):
        self.labels: tuple[Hashable, ...] = tuple(labels)
        self._index = {label: i for i, label in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            dup = next(x for i, x in enumerate(self.labels) if self._index[x] != i)
            raise DuplicateLabelError(f"duplicate vertex label {dup!r}")
        n = len(self.labels)
        edge_set: set[tuple[int, int]] = set()
        out_adj: list[list[int]] = [[] for _ in range(n)]
        in_adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownVertexError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if (u, v) in edge_set:
                raise DuplicateEdgeError(
                    f"duplicate edge {self.labels[u]!r} -> {self.labels[v]!r}"
                )
            edge_set.add((u, v))
            out_adj[u].append(v)
            in_adj[v].append(u)
        self.edges: frozenset[tuple[int, int]] = frozenset(edge_set)
        self.out_adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in out_adj)
        self.in_adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in in_adj)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[Hashable, Hashable]],
        vertices: Iterable[Hashable] = (),
    ) -> Digraph:
        """Build a graph from labelled edges.

        Labels are indexed by first appearance, ``vertices`` first and then
        edge endpoints in order.
        """
        edges = list(edges)
        index: dict[Hashable, int] = {}
        for label in vertices:
            if label in index:
                raise DuplicateLabelError(f"duplicate vertex label {label!r}")
            index[label] = len(index)
        for u, v in edges:
            index.setdefault(u, len(index))
            index.setdefault(v, len(index))
        return cls(list(index), [(index[u], index[v]) for u, v in edges])

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"Digraph(|V|={len(self.labels)}, |E|={len(self.edges)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.labels == other.labels and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.labels, self.edges))

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: Hashable) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {label!r}") from None

    def path(self, *labels: Hashable) -> Path:
        """Translate labels to an index path, checking that it is a path."""
        p = tuple(self.index(x) for x in labels)
        self.check_path(p)
        return p

    def label_path(self, p: Sequence[int]) -> tuple[Hashable, ...]:
        labels = self.labels
        return tuple(labels[v] for v in p)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def is_path(self, p: Sequence[int]) -> bool:
        if not p or not all(0 <= v < self.n for v in p):
            return False
        edges = self.edges
        return all((p[i], p[i + 1]) in edges for i in range(len(p) - 1))

    def check_path(self, p: Sequence[int]) -> None:
        if not self.is_path(p):
            raise InvalidPathError(f"{tuple(p)!r} is not a path of {self!r}")

    def induced(self, keep: Iterable[int]) -> Digraph:
        """Subgraph induced on ``keep``, re-indexed in ascending index order."""
        keep = sorted(set(keep))
        remap = {v: i for i, v in enumerate(keep)}
        return Digraph(
            [self.labels[v] for v in keep],
            [(remap[u], remap[v]) for u, v in sorted(self.edges) if u in remap and v in remap],
        )

    def reversed(self) -> Digraph:
        return Digraph(self.labels, [(v, u) for u, v in sorted(self.edges)])


def reachable(adj: Sequence[Sequence[int]], sources: Iterable[int]) -> set[int]:
    """Vertices reachable from ``sources`` (inclusive) along ``adj``."""
    seen = set(sources)
    todo = list(seen)
    while todo:
        u = todo.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


# --------------------------------------------------------------------------
# strongly connected components


@dataclass(frozen=True)
class SccPartition:
    classes: tuple[frozenset[int], ...]
    class_of: tuple[int, ...]
    condensation: Digraph

    def __len__(self) -> int:
        return len(self.classes)

    def component(self, v: int) -> frozenset[int]:
        return self.classes[self.class_of[v]]


def tarjan(adj: Sequence[Sequence[int]], vertices: Iterable[int] | None = None) -> list[list[int]]:
    """Iterative Tarjan. Components come out in reverse topological order."""
    if vertices is None:
        vertices = range(len(adj))
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(adj[root]))]
        while work:
            v, nbrs = work[-1]
            for w in nbrs:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj[w])))
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    components.append(comp)
    return components


def scc_partition(g: Digraph) -> SccPartition:
    """Unique SCC partition with classes ordered by their smallest vertex."""
    comps = sorted((sorted(c) for c in tarjan(g.out_adj)), key=lambda c: c[0])
    class_of = [0] * g.n
    for i, comp in enumerate(comps):
        for v in comp:
            class_of[v] = i
    cond_edges = {
        (class_of[u], class_of[v]) for u, v in g.edges if class_of[u] != class_of[v]
    }
    condensation = Digraph(range(len(comps)), sorted(cond_edges))
    return SccPartition(
        classes=tuple(frozenset(c) for c in comps),
        class_of=tuple(class_of),
        condensation=condensation,
    )


def cut(part: SccPartition, class_index: int, p: Sequence[int]) -> set[int]:
    """Vertices of ``p`` that fall in the given SCC class."""
    return set(p) & part.classes[class_index]


# --------------------------------------------------------------------------
# line graph


def line_graph(g: Digraph) -> Digraph:
    """L(g): one vertex per edge ``(u, v)``, labelled by the index pair.

    Line vertices are indexed in sorted edge order, so ``L.labels[i]`` is the
    ``(u, v)`` pair of ``g`` indices for line vertex ``i``.
    """
    edges = sorted(g.edges)
    index = {e: i for i, e in enumerate(edges)}
    line_edges = [
        (index[(u, v)], index[(v, w)]) for (u, v) in edges for w in g.out_adj[v]
    ]
    return Digraph(edges, line_edges)


def line_path_reduce(lg: Digraph, p: Sequence[int]) -> Path:
    """Map a path of ``lg = line_graph(g)`` back to the vertex path of ``g``."""
    if not p:
        raise InvalidPathError("empty line path")
    pairs = [lg.labels[x] for x in p]
    out = [pairs[0][0], pairs[0][1]]
    for (_, v), (u2, w) in zip(pairs, pairs[1:]):
        if v != u2:
            raise InvalidPathError(f"line path does not chain at {(v, u2)!r}")
        out.append(w)
    return tuple(out)


def line_path_embed(lg: Digraph, p: Sequence[int]) -> Path:
    """Inverse of :func:`line_path_reduce` for paths with at least one edge."""
    if len(p) < 2:
        raise InvalidPathError("only paths with at least one edge embed into L(g)")
    return tuple(lg.index((p[i], p[i + 1])) for i in range(len(p) - 1))


# --------------------------------------------------------------------------
# shortest paths


def bfs_tree(g: Digraph, sources: Iterable[int]) -> list[int]:
    """BFS parent array from ``sources``; roots point at themselves, unreached at -1."""
    parent = [-1] * g.n
    queue = deque()
    for s in sources:
        if parent[s] < 0:
            parent[s] = s
            queue.append(s)
    out_adj = g.out_adj
    while queue:
        u = queue.popleft()
        for w in out_adj[u]:
            if parent[w] < 0:
                parent[w] = u
                queue.append(w)
    return parent


def tree_path(parent: Sequence[int], y: int) -> Path | None:
    if parent[y] < 0:
        return None
    out = [y]
    while parent[y] != y:
        y = parent[y]
        out.append(y)
    out.reverse()
    return tuple(out)


def shortest_path(g: Digraph, x: int, y: int) -> Path | None:
    """Fewest-edge path ``(x, ..., y)``, ``(x,)`` when ``x == y``, None if unreachable."""
    return shortest_path_to_any(g, x, {y})


def shortest_path_to_any(g: Digraph, x: int, targets: set[int] | frozenset[int]) -> Path | None:
    if x in targets:
        return (x,)
    parent = {x: x}
    queue = deque([x])
    out_adj = g.out_adj
    while queue:
        u = queue.popleft()
        for w in out_adj[u]:
            if w in parent:
                continue
            parent[w] = u
            if w in targets:
                out = [w]
                while w != x:
                    w = parent[w]
                    out.append(w)
                out.reverse()
                return tuple(out)
            queue.append(w)
    return None


# --------------------------------------------------------------------------
# path predicates


class PathClass(NamedTuple):
    is_simple: bool
    is_simple_cycle: bool
    is_e_acyclic: bool


def is_simple(p: Sequence[int]) -> bool:
    return len(set(p)) == len(p)


def is_simple_cycle(p: Sequence[int]) -> bool:
    return len(p) >= 2 and p[0] == p[-1] and is_simple(p[:-1])


def is_e_acyclic(p: Sequence[int]) -> bool:
    pairs = list(zip(p, p[1:]))
    return len(set(pairs)) == len(pairs)


def classify_path(g: Digraph, p: Sequence[int]) -> PathClass:
    g.check_path(p)
    return PathClass(is_simple(p), is_simple_cycle(p), is_e_acyclic(p))


def covers(test: Sequence[int], item: Sequence[int]) -> bool:
    """True iff ``item`` occurs as a contiguous run inside ``test``."""
    k = len(item)
    if k == 0:
        return True
    item = tuple(item)
    first = item[0]
    test = tuple(test)
    for i in range(len(test) - k + 1):
        if test[i] == first and test[i : i + k] == item:
            return True
    return False


def rotations(c: Sequence[int]) -> list[Path]:
    """All rotations of a simple cycle ``(v1, ..., vn, v1)``."""
    if not is_simple_cycle(c):
        raise InvalidPathError(f"{tuple(c)!r} is not a simple cycle")
    body = tuple(c[:-1])
    return [body[i:] + body[:i] + (body[i],) for i in range(len(body))]


def join(*paths: Sequence[int]) -> Path:
    """Concatenate inclusive paths, writing each junction vertex once."""
    if not paths:
        raise InvalidPathError("nothing to join")
    out = list(paths[0])
    for q in paths[1:]:
        if not out or not q or out[-1] != q[0]:
            raise InvalidPathError(
                f"cannot join: path ends at {out[-1] if out else None!r}, next starts at {q[0] if q else None!r}"
            )
        out.extend(q[1:])
    return tuple(out)


# --------------------------------------------------------------------------
# single entry / single exit


@dataclass(frozen=True)
class SeseGraph:
    graph: Digraph
    entry: int
    exit: int

    def __post_init__(self):
        problems = validate_sese(self.graph, self.entry, self.exit)
        if problems:
            raise NotSeseError(problems)

    @classmethod
    def from_labels(cls, graph: Digraph, entry: Hashable, exit: Hashable) -> SeseGraph:
        return cls(graph, graph.index(entry), graph.index(exit))


class NotSeseError(GraphError):
    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("graph is not single-entry/single-exit: " + "; ".join(problems))


def validate_sese(g: Digraph, s: int, t: int) -> list[str]:
    """Return a list of human-readable violations; empty means valid."""
    problems: list[str] = []
    labels = g.labels
    if g.n < 2:
        problems.append("graph needs at least 2 vertices")
    if s == t:
        problems.append("entry and exit must differ")
    if g.in_adj[s]:
        problems.append(f"entry {labels[s]!r} has incoming edge(s)")
    if g.out_adj[t]:
        problems.append(f"exit {labels[t]!r} has outgoing edge(s)")
    fwd = reachable(g.out_adj, [s])
    bwd = reachable(g.in_adj, [t])
    for v in range(g.n):
        if v not in fwd:
            problems.append(f"vertex {labels[v]!r} is unreachable from entry")
        if v not in bwd:
            problems.append(f"vertex {labels[v]!r} cannot reach exit")
    return problems
