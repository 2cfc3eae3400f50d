import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from pathcov.generators import diamond_chain, random_digraph, random_sese  # noqa: E402
from pathcov.graph import Digraph, SeseGraph  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

EX_EDGES = [
    ("s", "v1"), ("s", "v4"), ("v2", "v11"), ("v11", "v3"), ("v3", "v2"), ("v3", "v10"),
    ("v10", "t"), ("v1", "v11"), ("v11", "v6"), ("v13", "v7"), ("v7", "v13"), ("v7", "t"),
    ("v9", "v13"), ("v8", "v7"), ("v4", "v5"), ("v9", "v6"), ("v5", "v9"), ("v6", "v5"),
    ("v6", "v12"), ("v12", "v6"), ("v8", "v12"), ("v12", "v8"),
]  # fmt: skip


def labelled(edges, vertices=()):
    return Digraph.from_edges(edges, vertices)


@pytest.fixture
def g_ex() -> SeseGraph:
    g = labelled(EX_EDGES, ["s"] + [f"v{i}" for i in range(1, 14)] + ["t"])
    return SeseGraph.from_labels(g, "s", "t")


@pytest.fixture
def g_loop() -> SeseGraph:
    g = labelled([("s", "a"), ("a", "b"), ("b", "a"), ("b", "t")])
    return SeseGraph.from_labels(g, "s", "t")


@pytest.fixture
def g_chain() -> SeseGraph:
    return SeseGraph.from_labels(labelled([("s", "a"), ("a", "t")]), "s", "t")


@pytest.fixture
def g_3_not5() -> Digraph:
    """Condition 3 holds at v1 but condition 5 does not."""
    return labelled([
        ("c", "b"), ("b", "a"), ("a", "c"), ("y", "c"), ("x", "a"), ("z", "b"),
        ("z", "v1"), ("x", "v1"), ("y", "v1"), ("v1", "x"), ("v1", "y"), ("v1", "z"),
    ])  # fmt: skip


@pytest.fixture
def g_not3_5() -> Digraph:
    """Condition 5 holds at v1 but condition 3 does not."""
    return labelled([("x", "v1"), ("y", "v1"), ("y", "z"), ("v1", "z"), ("z", "y"), ("z", "x")])


@pytest.fixture
def g_pp2() -> Digraph:
    return labelled([("1", "2"), ("2", "1"), ("2", "3"), ("3", "2")])


@pytest.fixture
def diamond():
    return diamond_chain


@st.composite
def digraphs(draw, max_n=7, self_loops=True):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if self_loops or u != v]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=3 * n)) if pairs else []
    return Digraph([str(i) for i in range(n)], edges)


@st.composite
def sese_graphs(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    p = draw(st.sampled_from([0.1, 0.2, 0.3]))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_sese(n, p, random.Random(seed), self_loops=draw(st.booleans()))


def random_corpus(count, max_n, seed=0, probs=(0.1, 0.2, 0.3, 0.4, 0.5)):
    """Deterministic list of random digraphs with 1..max_n vertices."""
    rng = random.Random(seed)
    return [random_digraph(rng.randint(1, max_n), probs[i % len(probs)], rng, self_loops=rng.random() < 0.3) for i in range(count)]


def sese_corpus(count, max_n, seed=0, probs=(0.1, 0.15, 0.2)):
    rng = random.Random(seed)
    return [random_sese(rng.randint(2, max_n), probs[i % len(probs)], rng, self_loops=rng.random() < 0.3) for i in range(count)]


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if rep.when != "call" or "acceptance" not in props:
                continue
            if rep.passed:
                lines.append(f"PASS  {props['acceptance']}: {props.get('detail', '')}")
            else:
                msg = rep.longrepr.reprcrash.message if hasattr(rep.longrepr, "reprcrash") else str(rep.longrepr)
                lines.append(f"FAIL  {props['acceptance']}: {msg.splitlines()[0]}")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
