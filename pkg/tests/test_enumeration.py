import itertools
import time

import pytest
from hypothesis import given

import oracles
from conftest import digraphs, labelled, random_corpus
from pathcov.enumeration import (
    BaselineTimeout,
    JohnsonState,
    baseline_prime_paths,
    characterize,
    circuit,
    extend_graph,
    is_non_extendable,
    non_extendable_simple_paths,
    prime_paths,
    simple_cycles,
    start_end_filter,
)
from pathcov.generators import complete_digraph
from pathcov.graph import Digraph, InvalidPathError, is_simple, scc_partition
from pathcov.streams import StreamCounters


def labels(g, paths):
    return {"".join(g.label_path(p)) for p in paths}


# --- start / end filter -----------------------------------------------------


def test_condition_3_without_5(g_3_not5):
    g = g_3_not5
    flt = start_end_filter(g)
    v1 = g.index("v1")
    assert flt.condition(3, v1)
    assert not flt.condition(5, v1)
    assert v1 not in flt.v_start


def test_condition_5_without_3(g_not3_5):
    g = g_not3_5
    flt = start_end_filter(g)
    v1 = g.index("v1")
    assert not flt.condition(3, v1)
    assert flt.condition(5, v1)
    assert v1 not in flt.v_start


def test_source_of_a_dag_is_a_start(diamond):
    g = diamond(3).graph
    flt = start_end_filter(g)
    s = g.index("s")
    assert all(flt.condition(i, s) for i in (1, 3, 5, 7))
    assert s in flt.v_start and g.index("t") in flt.v_end


def test_pair_condition(g_loop):
    g = g_loop.graph
    flt = start_end_filter(g)
    a, b = g.index("a"), g.index("b")
    assert not flt.pair_ok(b, a)  # (b, a) closes a cycle
    assert flt.pair_ok(g.index("t"), g.index("s"))


@given(digraphs(max_n=7))
def test_filters_are_sound(g):
    flt = start_end_filter(g)
    for p in oracles.non_extendable_paths(g):
        if len(p) == 1:
            continue
        assert p[0] in flt.v_start
        assert p[-1] in flt.v_end
        assert flt.pair_ok(p[-1], p[0])


# --- sentinel extension -------------------------------------------------------


def test_extension_edges(g_loop):
    g = g_loop.graph
    flt = start_end_filter(g)
    s = g.index("s")
    ex = extend_graph(g, flt, s)
    x = ex.sentinel
    assert x == g.n and ex.graph.has_edge(x, s)
    ends = {u for u, w in ex.graph.edges if w == x}
    assert ends == {u for u in flt.v_end if (u, s) not in g.edges}
    assert ex.graph.edges - {(x, s)} - {(u, x) for u in ends} == g.edges


def test_extension_rejects_inadmissible_start(g_loop):
    g = g_loop.graph
    flt = start_end_filter(g)
    bad = next(v for v in range(g.n) if v not in flt.v_start)
    with pytest.raises(ValueError):
        extend_graph(g, flt, bad)


def test_two_cycle_has_no_admissible_start():
    # every vertex of a bare 2-cycle fails condition 3, so only the cycle is prime
    g = labelled([("a", "b"), ("b", "a")])
    assert start_end_filter(g).v_start == frozenset()
    assert list(non_extendable_simple_paths(g)) == []


def test_sentinel_without_reachable_end():
    # start 2 has edges from every admissible end, so no edge returns to the sentinel
    g = Digraph("0123", [(0, 2), (0, 3), (1, 2), (1, 3), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)])
    flt = start_end_filter(g)
    assert 2 in flt.v_start
    assert extend_graph(g, flt, 2).cycle_component() is None


@pytest.mark.parametrize("g", random_corpus(60, 7, seed=5), ids=lambda g: f"n{g.n}e{len(g.edges)}")
def test_sentinel_cycles_match_simple_paths(g):
    flt = start_end_filter(g)
    for v in flt.v_start:
        ex = extend_graph(g, flt, v)
        through_x = [c for c in oracles.all_simple_cycles(ex.graph) if c[0] == ex.sentinel]
        expected = [
            p for p in oracles.all_simple_paths(g)
            if p[0] == v and p[-1] in flt.v_end and (p[-1], v) not in g.edges
        ]  # fmt: skip
        assert sorted(c[1:-1] for c in through_x) == sorted(expected)


# --- circuit / simple cycles ----------------------------------------------------


def test_circuit_triangle():
    succ = {0: [1], 1: [2], 2: [0]}
    assert list(circuit(JohnsonState(), succ, 0)) == [(0, 1, 2, 0)]


def test_circuit_two_cycle():
    assert list(circuit(JohnsonState(), {0: [1], 1: [0]}, 0)) == [(0, 1, 0)]


def test_circuit_in_example_graph(g_ex):
    g = g_ex.graph
    comp = {g.index(x) for x in ("v2", "v3", "v11")}
    succ = {u: [w for w in g.out_adj[u] if w in comp] for u in comp}
    (c,) = circuit(JohnsonState(), succ, g.index("v2"))
    assert g.label_path(c) == ("v2", "v11", "v3", "v2")


def test_simple_cycles_examples(g_loop, diamond):
    assert list(simple_cycles(diamond(4).graph)) == []
    g = g_loop.graph
    assert labels(g, simple_cycles(g)) == {"aba"}


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 5), (4, 20), (5, 84), (6, 409)])
def test_complete_digraph_cycle_counts(n, expected):
    g = complete_digraph(n)
    cycles = list(simple_cycles(g))
    assert len(cycles) == len(set(cycles)) == expected
    assert len(oracles.canonical_cycle_classes(g)) == expected


def test_self_loop_cycle():
    g = labelled([("v", "v"), ("v", "w")])
    assert list(simple_cycles(g)) == [(0, 0)]


@given(digraphs(max_n=7))
def test_simple_cycles_one_per_class(g):
    got = list(simple_cycles(g))
    assert len(got) == len(set(got))
    canon = {min(c[i:-1] + c[:i] for i in range(len(c) - 1)) for c in got}
    assert canon == oracles.canonical_cycle_classes(g)
    # every representative starts at its smallest vertex
    assert all(c[0] == min(c) for c in got)


# --- non-extendable simple paths ------------------------------------------------


def test_is_non_extendable_examples(g_ex, g_loop):
    g = g_ex.graph
    assert is_non_extendable(g, g.path("v2", "v11", "v3", "v10", "t"))
    h = g_loop.graph
    assert is_non_extendable(h, h.path("s", "a", "b", "t"))
    assert not is_non_extendable(h, h.path("a", "b", "t"))
    with pytest.raises(InvalidPathError):
        is_non_extendable(h, h.path("a", "b", "a"))


def test_non_extendable_examples(g_loop, g_pp2, diamond):
    g = diamond(1).graph
    assert labels(g, non_extendable_simple_paths(g)) == {"su1t", "sv1t"}
    g = g_loop.graph
    assert labels(g, non_extendable_simple_paths(g)) == {"sabt"}
    assert labels(g_pp2, non_extendable_simple_paths(g_pp2)) == {"123", "321"}


def test_isolated_vertices_emitted_once():
    g = Digraph(["a", "b", "c"], [(0, 1)])
    assert sorted(non_extendable_simple_paths(g)) == [(0, 1), (2,)]


@given(digraphs(max_n=7))
def test_non_extendable_matches_oracle(g):
    got = list(non_extendable_simple_paths(g))
    assert len(got) == len(set(got))
    assert set(got) == oracles.non_extendable_paths(g)


# --- prime paths ------------------------------------------------------------------


def test_prime_path_examples(g_loop, g_chain, diamond):
    assert sum(1 for _ in prime_paths(diamond(4).graph)) == 16
    g = g_loop.graph
    assert labels(g, prime_paths(g)) == {"aba", "bab", "sabt"}
    g = g_chain.graph
    assert labels(g, prime_paths(g)) == {"sat"}


def test_cycles_come_before_paths(g_ex):
    g = g_ex.graph
    kinds = [p[0] == p[-1] and len(p) > 1 for p in prime_paths(g)]
    assert kinds == sorted(kinds, reverse=True)


@given(digraphs(max_n=7))
def test_prime_paths_match_oracles(g):
    got = list(prime_paths(g))
    assert len(got) == len(set(got))
    expected = oracles.prime_paths(g)
    assert set(got) == expected
    assert baseline_prime_paths(g) == expected


def test_baseline_examples(diamond):
    assert len(baseline_prime_paths(diamond(4).graph)) == 16
    assert baseline_prime_paths(Digraph("abc", [])) == {(0,), (1,), (2,)}


def test_baseline_deadline(diamond):
    with pytest.raises(BaselineTimeout):
        baseline_prime_paths(diamond(22).graph, deadline=time.monotonic() + 0.05)


def test_example_graph_prime_paths_match(g_ex):
    g = g_ex.graph
    assert set(prime_paths(g)) == oracles.prime_paths(g) == baseline_prime_paths(g)


def test_condition_two_example_is_not_prime(g_ex):
    # v9 -> v6 -> v5 closes into the cycle v5 -> v9 -> v6 -> v5
    g = g_ex.graph
    p = g.path("v9", "v6", "v5")
    assert p not in set(prime_paths(g))
    assert not any(characterize(g, scc_partition(g), p))


# --- characterization -------------------------------------------------------------


def test_characterize_examples(g_ex):
    g = g_ex.graph
    part = scc_partition(g)
    assert characterize(g, part, g.path("v11", "v3", "v2", "v11")) == (True, False, False)
    assert characterize(g, part, g.path("v2", "v11", "v3", "v10", "t")) == (False, False, True)


@given(digraphs(max_n=6))
def test_exactly_one_condition_iff_prime(g):
    part = scc_partition(g)
    prime = oracles.prime_paths(g)
    for p in set(oracles.all_simple_paths(g)) | set(oracles.all_simple_cycles(g)):
        flags = characterize(g, part, p)
        if p in prime:
            assert sum(flags) == 1, p
        else:
            assert not any(flags), p


# --- laziness and accounting ---------------------------------------------------------


def test_stream_is_lazy(diamond):
    g = diamond(30).graph
    stream = prime_paths(g)
    first = list(itertools.islice(stream, 5))
    assert len(first) == 5 and all(is_simple(p) for p in first)
    # five paths of a 91-vertex DAG need at most a few hundred pushes
    assert stream.counters.items == 5
    assert stream.counters.frames_pushed < 5 * g.n + 200


def test_retained_paths_bounded(diamond):
    g = diamond(12).graph
    stream = prime_paths(g)
    for _ in stream:
        pass
    assert stream.counters.items == 2**12
    assert stream.counters.peak_retained_paths <= g.n + 2


def test_counters_observe():
    c = StreamCounters()
    c.observe(3, 2)
    c.observe(1, 1)
    assert c.peak_depth == 3 and c.peak_retained_paths == 5
