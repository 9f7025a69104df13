"""Finite directed multigraphs with ordered vertices and named edges.

A graph here is the presentation object for an edge shift: vertex order fixes
the adjacency matrix, and edges carry stable string ids so edge partitions,
splittings and term expressions can refer to them.  Parallel edges and loops
are allowed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    InvalidMatrix,
    NotASource,
    ParseError,
    WouldEmpty,
)
from .linalg import Matrix


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    id: str


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ParseError("duplicate vertex names")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ParseError("duplicate edge ids")
        vs = set(self.vertices)
        for e in self.edges:
            if e.src not in vs or e.dst not in vs:
                raise ParseError(f"edge {e.id!r} has endpoint outside the vertex set")

    # -- lookups -----------------------------------------------------------

    def index(self, v: str) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise ParseError(f"{v!r} is not a vertex of this graph") from None

    def has_vertex(self, v: str) -> bool:
        return v in self.vertices

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise ParseError(f"{edge_id!r} is not an edge of this graph")

    def has_edge(self, edge_id: str) -> bool:
        return any(e.id == edge_id for e in self.edges)

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.src == v)

    def in_edges(self, v: str) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.dst == v)

    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if not self.out_edges(v))

    def sources(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if not self.in_edges(v))

    def adjacency(self) -> Matrix:
        n = len(self.vertices)
        idx = {v: i for i, v in enumerate(self.vertices)}
        counts = [[0] * n for _ in range(n)]
        for e in self.edges:
            counts[idx[e.src]][idx[e.dst]] += 1
        return Matrix.from_rows(counts)


@dataclass(frozen=True)
class GraphReport:
    sinks: tuple[str, ...]
    sources: tuple[str, ...]
    essential: bool
    irreducible: bool
    trivial: bool
    purely_infinite_simple: bool
    strongly_graded: bool


def from_adjacency(m: Matrix | Iterable[Iterable[int]]) -> Graph:
    """Graph with vertices v1..vn and edges e1..ek numbered row-major.

    Entry (i, j) contributes that many parallel edges vi -> vj; edge ids are
    assigned in row-major order, multiplicities consecutively, so the same
    matrix always yields the identical graph.
    """
    if not isinstance(m, Matrix):
        m = Matrix.from_rows(m)
    if not m.is_square:
        raise InvalidMatrix("adjacency matrix must be square")
    if not m.is_integral() or not m.is_nonnegative():
        raise InvalidMatrix("adjacency entries must be nonnegative integers")
    n = m.nrows
    vertices = tuple(f"v{i + 1}" for i in range(n))
    edges = []
    counter = 1
    for i in range(n):
        for j in range(n):
            for _ in range(int(m[i, j])):
                edges.append(Edge(vertices[i], vertices[j], f"e{counter}"))
                counter += 1
    return Graph(vertices, tuple(edges))


def transpose(g: Graph) -> Graph:
    """Reverse every edge, keeping vertex order and edge ids."""
    return Graph(g.vertices, tuple(Edge(e.dst, e.src, e.id) for e in g.edges))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def _reachable(g: Graph, start: str) -> set[str]:
    """Vertices reachable from start by a path of length >= 1."""
    outs: dict[str, list[str]] = {v: [] for v in g.vertices}
    for e in g.edges:
        outs[e.src].append(e.dst)
    seen: set[str] = set()
    stack = list(outs[start])
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(outs[v])
    return seen


def _is_irreducible(g: Graph) -> bool:
    if not g.vertices:
        return False
    reach = {v: _reachable(g, v) for v in g.vertices}
    return all(w in reach[v] for v in g.vertices for w in g.vertices)


def _is_trivial(g: Graph) -> bool:
    """True when the graph is exactly one cycle through all its vertices."""
    if not g.vertices or len(g.edges) != len(g.vertices):
        return False
    if any(len(g.out_edges(v)) != 1 or len(g.in_edges(v)) != 1 for v in g.vertices):
        return False
    # out-degree one everywhere: follow the unique walk and demand one orbit
    seen = [g.vertices[0]]
    while True:
        nxt = g.out_edges(seen[-1])[0].dst
        if nxt == seen[0]:
            break
        if nxt in seen:
            return False
        seen.append(nxt)
    return len(seen) == len(g.vertices)


def _vertices_on_cycles(g: Graph) -> set[str]:
    reach = {v: _reachable(g, v) for v in g.vertices}
    return {v for v in g.vertices if v in reach[v]}


def _every_cycle_has_exit(g: Graph) -> bool:
    """No cycle may consist entirely of vertices with out-degree one.

    A cycle without an exit is exactly a cycle all of whose vertices emit a
    single edge, so it suffices to chase the unique out-edges of out-degree-1
    vertices and look for a loop among them.
    """
    ones = {v for v in g.vertices if len(g.out_edges(v)) == 1}
    for start in ones:
        v = start
        trail = set()
        while v in ones and v not in trail:
            trail.add(v)
            v = g.out_edges(v)[0].dst
            if v == start:
                return False
    return True


def classify(g: Graph) -> GraphReport:
    """Structural report: sinks, sources and the standard dynamical predicates."""
    sinks = g.sinks()
    sources = g.sources()
    essential = not sinks and not sources
    irreducible = _is_irreducible(g)
    trivial = _is_trivial(g)
    on_cycles = _vertices_on_cycles(g)
    reaches_cycle = bool(g.vertices) and all(
        v in on_cycles or (_reachable(g, v) & on_cycles) for v in g.vertices
    )
    exits = _every_cycle_has_exit(g)
    ess = essentialize(g)
    pis = (
        reaches_cycle
        and exits
        and bool(ess.vertices)
        and _is_irreducible(ess)
    )
    return GraphReport(
        sinks=sinks,
        sources=sources,
        essential=essential,
        irreducible=irreducible,
        trivial=trivial,
        purely_infinite_simple=pis,
        strongly_graded=not sinks,
    )


# ---------------------------------------------------------------------------
# Source elimination and essentialization
# ---------------------------------------------------------------------------


def eliminate_source(g: Graph, v: str) -> Graph:
    """Delete a source vertex together with all edges it emits."""
    if not g.has_vertex(v):
        raise NotASource(f"{v!r} is not a vertex of the graph")
    if g.in_edges(v):
        raise NotASource(f"{v!r} has incoming edges")
    if len(g.vertices) == 1:
        raise WouldEmpty("refusing to delete the last vertex")
    return Graph(
        tuple(w for w in g.vertices if w != v),
        tuple(e for e in g.edges if e.src != v and e.dst != v),
    )


def _drop(g: Graph, victims: set[str]) -> Graph:
    return Graph(
        tuple(w for w in g.vertices if w not in victims),
        tuple(e for e in g.edges if e.src not in victims and e.dst not in victims),
    )


def essentialize(g: Graph) -> Graph:
    """Alternate full sweeps deleting sources then sinks until both are gone.

    The result can be the empty graph (for instance, a directed path dies
    entirely).
    """
    cur = g
    while True:
        sources = set(cur.sources())
        if sources:
            cur = _drop(cur, sources)
            continue
        sinks = set(cur.sinks())
        if sinks:
            cur = _drop(cur, sinks)
            continue
        return cur


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"src": e.src, "dst": e.dst, "id": e.id} for e in g.edges],
    }


def graph_from_json(obj: Mapping | Iterable) -> Graph:
    """Accept either {"vertices": ..., "edges": ...}, {"adjacency": ...} or a bare matrix."""
    if isinstance(obj, Mapping):
        if "adjacency" in obj:
            return from_adjacency(_int_rows(obj["adjacency"]))
        if "vertices" in obj and "edges" in obj:
            try:
                edges = tuple(
                    Edge(e["src"], e["dst"], e["id"]) for e in obj["edges"]
                )
                return Graph(tuple(obj["vertices"]), edges)
            except (KeyError, TypeError) as exc:
                raise ParseError(f"malformed graph object: {exc}") from exc
        raise ParseError("graph object needs either 'adjacency' or 'vertices'+'edges'")
    if isinstance(obj, (list, tuple)):
        return from_adjacency(_int_rows(obj))
    raise ParseError("unsupported graph JSON payload")


def _int_rows(rows) -> list[list[int]]:
    try:
        return [[int(x) for x in row] for row in rows]
    except (TypeError, ValueError) as exc:
        raise InvalidMatrix(f"bad adjacency payload: {exc}") from exc


def graph_from_json_text(text: str) -> Graph:
    try:
        return graph_from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def graph_to_dot(g: Graph) -> str:
    """DOT digraph with one arrow per edge, labeled by edge id."""
    lines = ["digraph {"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for e in g.edges:
        lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.id}"];')
    lines.append("}")
    return "\n".join(lines)
