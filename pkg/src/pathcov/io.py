"""Graph documents: the JSON schema, a read-only DOT subset, and path output.

JSON documents look like::

    {"name": "f", "vertices": ["s", "a", "t"],
     "edges": [["s", "a"], ["a", "t"]], "entry": "s", "exit": "t"}

``name``, ``entry`` and ``exit`` are optional. Labels are indexed in the order
of the ``vertices`` array.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Hashable, Sequence

from .graph import (
    Digraph,
    DuplicateLabelError,
    GraphError,
    NotSeseError,
    SeseGraph,
    UnknownVertexError,
    validate_sese,
)

__all__ = [
    "GraphDocument",
    "LoadedGraph",
    "ParseError",
    "format_path",
    "load_graph",
    "parse_dot",
    "parse_graph",
    "parse_json",
    "validate_sese",
]


class ParseError(GraphError):
    pass


@dataclass
class GraphDocument:
    vertices: list[str]
    edges: list[tuple[str, str]]
    name: str | None = None
    entry: str | None = None
    exit: str | None = None

    def to_digraph(self) -> Digraph:
        g = Digraph(self.vertices, [])  # checks label uniqueness
        index = {label: i for i, label in enumerate(self.vertices)}
        pairs = []
        for u, v in self.edges:
            for x in (u, v):
                if x not in index:
                    raise UnknownVertexError(f"edge ({u!r}, {v!r}) uses undeclared vertex {x!r}")
            pairs.append((index[u], index[v]))
        g = Digraph(self.vertices, pairs)
        for role, label in (("entry", self.entry), ("exit", self.exit)):
            if label is not None and label not in index:
                raise UnknownVertexError(f"{role} {label!r} is not a declared vertex")
        return g

    def to_json(self, indent: int | None = None) -> str:
        doc: dict = {}
        if self.name is not None:
            doc["name"] = self.name
        doc["vertices"] = list(self.vertices)
        doc["edges"] = [list(e) for e in self.edges]
        if self.entry is not None:
            doc["entry"] = self.entry
        if self.exit is not None:
            doc["exit"] = self.exit
        return json.dumps(doc, indent=indent)

    @classmethod
    def from_graph(
        cls,
        g: Digraph,
        entry: int | None = None,
        exit: int | None = None,
        name: str | None = None,
    ) -> GraphDocument:
        labels = [str(x) for x in g.labels]
        if len(set(labels)) != len(labels):
            raise DuplicateLabelError("labels collide after conversion to strings")
        return cls(
            vertices=labels,
            edges=[(labels[u], labels[v]) for u, v in sorted(g.edges)],
            name=name,
            entry=None if entry is None else labels[entry],
            exit=None if exit is None else labels[exit],
        )

    @classmethod
    def from_sese(cls, g: SeseGraph, name: str | None = None) -> GraphDocument:
        return cls.from_graph(g.graph, g.entry, g.exit, name)


@dataclass
class LoadedGraph:
    document: GraphDocument
    graph: Digraph
    entry: int | None = None
    exit: int | None = None
    _sese: SeseGraph | None = field(default=None, repr=False)

    @property
    def has_terminals(self) -> bool:
        return self.entry is not None and self.exit is not None

    def sese_problems(self) -> list[str]:
        if not self.has_terminals:
            return ["entry and exit vertices are not specified"]
        return validate_sese(self.graph, self.entry, self.exit)

    def sese(self) -> SeseGraph:
        """The graph as a SESE graph; raises NotSeseError when it is not one."""
        if self._sese is None:
            problems = self.sese_problems()
            if problems:
                raise NotSeseError(problems)
            self._sese = SeseGraph(self.graph, self.entry, self.exit)
        return self._sese


_JSON_KEYS = {"name", "vertices", "edges", "entry", "exit"}


def parse_json(text: str) -> GraphDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    unknown = set(doc) - _JSON_KEYS
    if unknown:
        raise ParseError(f"unknown keys: {', '.join(sorted(unknown))}")
    vertices = doc.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise ParseError('"vertices" must be an array of strings')
    edges = doc.get("edges", [])
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e) for e in edges
    ):
        raise ParseError('"edges" must be an array of [from, to] string pairs')
    for key in ("name", "entry", "exit"):
        if doc.get(key) is not None and not isinstance(doc[key], str):
            raise ParseError(f'"{key}" must be a string')
    seen: set[str] = set()
    for v in vertices:
        if v in seen:
            raise DuplicateLabelError(f"duplicate vertex label {v!r}")
        seen.add(v)
    return GraphDocument(
        vertices=list(vertices),
        edges=[(u, v) for u, v in edges],
        name=doc.get("name"),
        entry=doc.get("entry"),
        exit=doc.get("exit"),
    )


# --------------------------------------------------------------------------
# DOT subset

_DOT_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*|/\*.*?\*/|\#[^\n]*)
  | (?P<string>"(?:\\.|[^"\\])*")
  | (?P<arrow>->)
  | (?P<undirected>--)
  | (?P<id>[A-Za-z_\u0080-\uffff][\w\u0080-\uffff]*|-?(?:\.\d+|\d+(?:\.\d*)?))
  | (?P<punct>[{}\[\];,=:])
    """,
    re.VERBOSE | re.DOTALL,
)


def _dot_tokens(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if m is None:
            line = text.count("\n", 0, pos) + 1
            raise ParseError(f"unexpected character {text[pos]!r} on line {line}")
        pos = m.end()
        kind = m.lastgroup
        if kind in ("ws", "comment"):
            continue
        value = m.group()
        if kind == "string":
            value = re.sub(r'\\(["\\])', r"\1", value[1:-1]).replace("\\\n", "")
            kind = "id"
        tokens.append((kind, value))
    return tokens


class _DotParser:
    def __init__(self, text: str):
        self.tokens = _dot_tokens(text)
        self.pos = 0
        self.vertices: dict[str, None] = {}
        self.edges: list[tuple[str, str]] = []

    def peek(self, offset: int = 0) -> tuple[str, str] | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def take(self, value: str | None = None, kind: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input, expected {value or kind}")
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            raise ParseError(f"expected {value or kind}, found {tok[1]!r}")
        self.pos += 1
        return tok[1]

    def accept(self, value: str) -> bool:
        tok = self.peek()
        if tok is not None and tok[0] == "punct" and tok[1] == value:
            self.pos += 1
            return True
        return False

    def parse(self) -> tuple[str | None, list[str], list[tuple[str, str]]]:
        name = None
        tok = self.peek()
        if tok is not None and tok[1].lower() == "strict":
            self.pos += 1
        kw = self.take(kind="id")
        if kw.lower() == "graph":
            raise ParseError("undirected graphs are not supported")
        if kw.lower() != "digraph":
            raise ParseError(f"expected 'digraph', found {kw!r}")
        if self.peek() is not None and self.peek()[0] == "id":
            name = self.take(kind="id")
        self.take("{")
        while not self.accept("}"):
            self.statement()
        if self.peek() is not None:
            raise ParseError(f"trailing input after graph: {self.peek()[1]!r}")
        return name, list(self.vertices), self.edges

    def statement(self) -> None:
        if self.accept(";"):
            return
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input inside graph body")
        if tok == ("punct", "{"):
            raise ParseError("subgraphs are not supported")
        if tok[0] != "id":
            raise ParseError(f"unexpected {tok[1]!r}")
        word = tok[1].lower()
        if word == "subgraph":
            raise ParseError("subgraphs are not supported")
        if word in ("graph", "node", "edge") and self.peek(1) == ("punct", "["):
            self.pos += 1
            self.attributes()
            return
        nxt = self.peek(1)
        if nxt == ("punct", "="):
            self.pos += 3  # graph attribute: id = id
            return
        chain = [self.node_id()]
        while True:
            tok = self.peek()
            if tok is not None and tok[0] == "undirected":
                raise ParseError("'--' edges are not allowed in a digraph")
            if tok is None or tok[0] != "arrow":
                break
            self.pos += 1
            chain.append(self.node_id())
        for label in chain:
            self.vertices.setdefault(label, None)
        self.edges.extend(zip(chain, chain[1:]))
        if self.peek() is not None and self.peek()[1] == "[":
            self.attributes()

    def node_id(self) -> str:
        tok = self.peek()
        if tok is not None and (tok == ("punct", "{") or tok == ("id", "subgraph")):
            raise ParseError("subgraphs are not supported")
        label = self.take(kind="id")
        while self.peek() is not None and self.peek()[1] == ":":
            self.pos += 1
            self.take(kind="id")  # port, ignored
        return label

    def attributes(self) -> None:
        while self.peek() is not None and self.peek()[1] == "[":
            self.pos += 1
            while not self.accept("]"):
                if self.peek() is None:
                    raise ParseError("unterminated attribute list")
                self.pos += 1


def parse_dot(text: str, entry: str | None = None, exit: str | None = None) -> GraphDocument:
    """Read ``digraph { a -> b; ... }``; attributes are ignored."""
    name, vertices, edges = _DotParser(text).parse()
    return GraphDocument(vertices=vertices, edges=edges, name=name, entry=entry, exit=exit)


def parse_graph(
    data: bytes | str,
    fmt: str | None = None,
    entry: str | None = None,
    exit: str | None = None,
) -> LoadedGraph:
    """Parse a JSON or DOT document; ``entry``/``exit`` override the document's."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not UTF-8: {e}") from None
    if fmt is None:
        fmt = "json" if data.lstrip().startswith("{") else "dot"
    if fmt == "json":
        doc = parse_json(data)
    elif fmt == "dot":
        doc = parse_dot(data)
    else:
        raise ValueError(f"unknown graph format {fmt!r}")
    if entry is not None:
        doc.entry = entry
    if exit is not None:
        doc.exit = exit
    g = doc.to_digraph()
    return LoadedGraph(
        document=doc,
        graph=g,
        entry=None if doc.entry is None else g.index(doc.entry),
        exit=None if doc.exit is None else g.index(doc.exit),
    )


def load_graph(path: str | FsPath, fmt: str | None = None, entry: str | None = None, exit: str | None = None) -> LoadedGraph:
    path = FsPath(path)
    if fmt is None and path.suffix.lower() in (".dot", ".gv"):
        fmt = "dot"
    elif fmt is None and path.suffix.lower() == ".json":
        fmt = "json"
    return parse_graph(path.read_bytes(), fmt, entry, exit)


def format_path(labels: Sequence[Hashable], fmt: str = "lines") -> str:
    if fmt == "ndjson":
        return json.dumps({"path": [str(x) for x in labels]})
    return ",".join(str(x) for x in labels)
