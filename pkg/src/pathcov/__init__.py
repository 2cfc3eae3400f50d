"""Lazy enumeration of prime paths and streaming generation of path-coverage test cases."""

from .coverage import (
    CRITERIA,
    CoverageConfig,
    MalformedGraphError,
    TestCase,
    cover,
    e_acyclic_path_coverage,
    prime_path_coverage,
    simple_cycle_coverage,
    simple_path_coverage,
    uncovered_items,
)
from .enumeration import (
    baseline_prime_paths,
    characterize,
    is_non_extendable,
    non_extendable_simple_paths,
    prime_paths,
    simple_cycles,
    start_end_filter,
)
from .graph import (
    Digraph,
    DuplicateEdgeError,
    DuplicateLabelError,
    GraphError,
    InvalidPathError,
    NotSeseError,
    SeseGraph,
    UnknownVertexError,
    classify_path,
    covers,
    line_graph,
    line_path_reduce,
    rotations,
    scc_partition,
    shortest_path,
    validate_sese,
)
from .io import GraphDocument, ParseError, load_graph, parse_graph
from .streams import ItemStream, StreamCounters

__version__ = "0.1.0"
