"""Graph families used by the tests, the benchmarks and the scripts."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Digraph, SeseGraph, reachable


def diamond_chain(n: int) -> SeseGraph:
    """``n`` consecutive if/else diamonds from ``s`` to ``t``; 3n+1 vertices, 2**n prime paths."""
    if n < 1:
        raise ValueError("need at least one diamond")
    labels = ["s"]
    edges = []
    joint = 0
    for i in range(1, n + 1):
        u, v = len(labels), len(labels) + 1
        nxt = len(labels) + 2
        labels += [f"u{i}", f"v{i}", "t" if i == n else f"s{i + 1}"]
        edges += [(joint, u), (joint, v), (u, nxt), (v, nxt)]
        joint = nxt
    return SeseGraph(Digraph(labels, edges), 0, joint)


def complete_digraph(n: int) -> Digraph:
    """All ordered pairs of distinct vertices, labelled ``"1".."n"``."""
    return Digraph([str(i) for i in range(1, n + 1)], [(u, v) for u in range(n) for v in range(n) if u != v])


def random_digraph(n: int, p: float, rng: random.Random, self_loops: bool = False) -> Digraph:
    edges = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if (self_loops or u != v) and rng.random() < p
    ]
    return Digraph([str(i) for i in range(n)], edges)


def random_sese(n: int, p: float, rng: random.Random, self_loops: bool = False) -> SeseGraph:
    """Random digraph on ``n >= 2`` vertices patched into SESE shape.

    Vertex 0 is the entry and ``n-1`` the exit. Edges into the entry and out of
    the exit are dropped; vertices not reachable from the entry get an edge
    from it, vertices that cannot reach the exit get an edge to it.
    """
    if n < 2:
        raise ValueError("a SESE graph needs at least 2 vertices")
    s, t = 0, n - 1
    edges = {
        (u, v)
        for u in range(n)
        for v in range(n)
        if (self_loops or u != v) and v != s and u != t and rng.random() < p
    }
    out_adj = [[] for _ in range(n)]
    for u, v in edges:
        out_adj[u].append(v)
    for v in range(n):
        if v != s and v not in reachable(out_adj, [s]):
            edges.add((s, v))
            out_adj[s].append(v)
    in_adj = [[] for _ in range(n)]
    for u, v in edges:
        in_adj[v].append(u)
    for v in range(n):
        if v != t and v not in reachable(in_adj, [t]):
            edges.add((v, t))
            in_adj[t].append(v)
    labels = ["s"] + [str(i) for i in range(1, n - 1)] + ["t"]
    return SeseGraph(Digraph(labels, sorted(edges)), s, t)


@dataclass(frozen=True)
class CfgShape:
    """Relative weights of the block kinds ``random_cfg`` nests."""

    seq: float = 4
    if_: float = 2
    ifelse: float = 4
    switch: float = 1
    early_return: float = 1
    loop: float = 1
    loop_break: float = 1

    def weights(self) -> list[float]:
        return [self.seq, self.if_, self.ifelse, self.switch, self.early_return, self.loop, self.loop_break]


_KINDS = ["seq", "if", "ifelse", "switch", "return", "loop", "loop_break"]


class _CfgBuilder:
    def __init__(self, rng: random.Random, shape: CfgShape = CfgShape()):
        self.rng = rng
        self.shape = shape
        self.count = 0
        self.edges: set[tuple[int, int]] = set()
        self.returns: list[int] = []  # blocks that jump straight to the exit

    def node(self) -> int:
        self.count += 1
        return self.count - 1

    def edge(self, u: int, v: int) -> None:
        self.edges.add((u, v))

    def fragment(self, budget: int, depth: int = 0) -> tuple[int, int, list[int]]:
        """Build a single-entry single-exit fragment; returns (entry, exit, nodes)."""
        rng = self.rng
        if budget <= 1 or depth > 8:
            v = self.node()
            return v, v, [v]
        kind = rng.choices(_KINDS, self.shape.weights())[0]
        if kind == "seq" or budget < 3:
            left = rng.randint(1, budget - 1)
            a_in, a_out, a_nodes = self.fragment(left, depth + 1)
            b_in, b_out, b_nodes = self.fragment(budget - left, depth + 1)
            self.edge(a_out, b_in)
            return a_in, b_out, a_nodes + b_nodes
        head = self.node()
        if kind == "if":
            b_in, b_out, nodes = self.fragment(budget - 2, depth + 1)
            join = self.node()
            self.edge(head, b_in)
            self.edge(b_out, join)
            self.edge(head, join)
            return head, join, [head, *nodes, join]
        if kind == "return":
            # if (cond) return; the guarded block jumps to the exit
            ret = self.node()
            b_in, b_out, nodes = self.fragment(budget - 2, depth + 1)
            self.edge(head, ret)
            self.edge(head, b_in)
            self.returns.append(ret)
            return head, b_out, [head, ret, *nodes]
        if kind == "switch" and budget >= 5:
            arms = rng.randint(3, min(5, budget - 2))
            share = max(1, (budget - 2) // arms)
            join = self.node()
            nodes = [head]
            for _ in range(arms):
                a_in, a_out, a_nodes = self.fragment(share, depth + 1)
                self.edge(head, a_in)
                self.edge(a_out, join)
                nodes += a_nodes
            return head, join, [*nodes, join]
        if kind in ("ifelse", "switch"):
            left = max(1, (budget - 2) // 2)
            a_in, a_out, a_nodes = self.fragment(left, depth + 1)
            b_in, b_out, b_nodes = self.fragment(max(1, budget - 2 - left), depth + 1)
            join = self.node()
            for x_in, x_out in ((a_in, a_out), (b_in, b_out)):
                self.edge(head, x_in)
                self.edge(x_out, join)
            return head, join, [head, *a_nodes, *b_nodes, join]
        b_in, b_out, nodes = self.fragment(budget - 2, depth + 1)
        exit_ = self.node()
        self.edge(head, b_in)
        self.edge(b_out, head)
        self.edge(head, exit_)
        if kind == "loop_break" and len(nodes) > 1:
            self.edge(rng.choice(nodes[1:]), exit_)
        return head, exit_, [head, *nodes, exit_]


def random_cfg(n: int, rng: random.Random, shape: CfgShape = CfgShape()) -> SeseGraph:
    """Structured control-flow graph of roughly ``n`` basic blocks.

    Built from nested sequences, if/if-else diamonds, switches, guarded early
    returns and while loops (some with an early break), so every vertex lies
    on an entry-exit path.
    """
    b = _CfgBuilder(rng, shape)
    s = b.node()
    f_in, f_out, _ = b.fragment(max(1, n - 2))
    t = b.node()
    b.edge(s, f_in)
    b.edge(f_out, t)
    for r in b.returns:
        b.edge(r, t)
    labels = [f"b{i}" for i in range(b.count)]
    labels[s], labels[t] = "s", "t"
    return SeseGraph(Digraph(labels, sorted(b.edges)), s, t)
