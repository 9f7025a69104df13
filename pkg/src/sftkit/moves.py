"""Graph moves: out-/in-splitting, graph products, and bridge graphs.

Splittings return the moved graph together with the elementary strong shift
equivalence witness relating the two adjacency matrices, so "this move
preserves conjugacy" is a checkable artifact, not a promise.  Bridge graphs
package a matrix factorization a = r s as a two-class graph whose crossing
length-2 paths biject with the edges of the factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .equivalences import SSEWitness
from .errors import BadPartition, InvalidMatrix, NotAFactorization
from .graphs import Edge, Graph
from .linalg import Matrix


@dataclass(frozen=True)
class EdgePartition:
    """Per-vertex partition of edge ids into ordered, labeled blocks."""

    blocks: tuple[tuple[str, tuple[tuple[str, ...], ...]], ...]

    @classmethod
    def from_mapping(
        cls, mapping: Mapping[str, Sequence[Sequence[str]]]
    ) -> "EdgePartition":
        return cls(
            tuple(
                (v, tuple(tuple(block) for block in blocks))
                for v, blocks in mapping.items()
            )
        )

    def vertices(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.blocks)

    def blocks_at(self, v: str) -> tuple[tuple[str, ...], ...]:
        for w, blocks in self.blocks:
            if w == v:
                return blocks
        raise BadPartition(f"no blocks given for vertex {v!r}")


def partition_from_json(obj) -> EdgePartition:
    try:
        return EdgePartition(
            tuple(
                (entry["vertex"], tuple(tuple(b) for b in entry["blocks"]))
                for entry in obj
            )
        )
    except (KeyError, TypeError) as exc:
        raise BadPartition(f"malformed partition payload: {exc}") from exc


def partition_to_json(p: EdgePartition) -> list:
    return [
        {"vertex": v, "blocks": [list(b) for b in blocks]} for v, blocks in p.blocks
    ]


def trivial_out_partition(g: Graph) -> EdgePartition:
    """One block per non-sink vertex holding all its outgoing edges."""
    return EdgePartition(
        tuple(
            (v, (tuple(e.id for e in g.out_edges(v)),))
            for v in g.vertices
            if g.out_edges(v)
        )
    )


def trivial_in_partition(g: Graph) -> EdgePartition:
    return EdgePartition(
        tuple(
            (v, (tuple(e.id for e in g.in_edges(v)),))
            for v in g.vertices
            if g.in_edges(v)
        )
    )


def _check_partition(
    g: Graph, p: EdgePartition, required: dict[str, set[str]], kind: str
) -> None:
    given = p.vertices()
    if len(set(given)) != len(given):
        raise BadPartition("vertex listed twice in partition")
    if set(given) != set(required):
        missing = set(required) - set(given)
        extra = set(given) - set(required)
        raise BadPartition(
            f"partition must cover exactly the {kind} vertices"
            + (f"; missing {sorted(missing)}" if missing else "")
            + (f"; unexpected {sorted(extra)}" if extra else "")
        )
    for v, blocks in p.blocks:
        if not blocks or any(not b for b in blocks):
            raise BadPartition(f"empty block at vertex {v!r}")
        flat = [e for b in blocks for e in b]
        if len(set(flat)) != len(flat):
            raise BadPartition(f"edge repeated across blocks at vertex {v!r}")
        if set(flat) != required[v]:
            raise BadPartition(
                f"blocks at {v!r} must partition exactly its {kind}-side edges"
            )


def _block_index(p: EdgePartition, v: str, edge_id: str) -> int:
    for i, block in enumerate(p.blocks_at(v)):
        if edge_id in block:
            return i
    raise BadPartition(f"edge {edge_id!r} missing from blocks at {v!r}")


def out_split(g: Graph, p: EdgePartition) -> tuple[Graph, SSEWitness]:
    """Out-split g along a partition of each non-sink vertex's outgoing edges.

    Vertex v with m blocks becomes v.1 .. v.m (sinks stay put); the edge e in
    block i at s(e) becomes one copy e.j into each copy j of r(e).  The
    returned witness is (R, S) with R the 0/1 "division" matrix of vertex
    copies and S the block-edge count matrix: R S is the original adjacency
    and S R the split one.
    """
    required = {v: {e.id for e in g.out_edges(v)} for v in g.vertices if g.out_edges(v)}
    _check_partition(g, p, required, "outgoing")

    copies: dict[str, list[str]] = {}
    split_vertices: list[str] = []
    for v in g.vertices:
        if v in required:
            names = [f"{v}.{i + 1}" for i in range(len(p.blocks_at(v)))]
        else:
            names = [v]
        copies[v] = names
        split_vertices.extend(names)

    split_edges: list[Edge] = []
    for e in g.edges:
        i = _block_index(p, e.src, e.id)
        src_name = copies[e.src][i]
        for j, dst_name in enumerate(copies[e.dst]):
            split_edges.append(Edge(src_name, dst_name, f"{e.id}.{j + 1}"))
    h = Graph(tuple(split_vertices), tuple(split_edges))

    col_of = {name: idx for idx, name in enumerate(split_vertices)}
    n, k = len(g.vertices), len(split_vertices)
    r_rows = [[0] * k for _ in range(n)]
    for vi, v in enumerate(g.vertices):
        for name in copies[v]:
            r_rows[vi][col_of[name]] = 1
    s_rows = [[0] * n for _ in range(k)]
    widx = {v: i for i, v in enumerate(g.vertices)}
    for v in g.vertices:
        if v in required:
            for i, block in enumerate(p.blocks_at(v)):
                row = col_of[copies[v][i]]
                for edge_id in block:
                    s_rows[row][widx[g.edge(edge_id).dst]] += 1
    witness = SSEWitness(Matrix.from_rows(r_rows), Matrix.from_rows(s_rows))
    assert witness.r @ witness.s == g.adjacency()
    assert witness.s @ witness.r == h.adjacency()
    return h, witness


def in_split(g: Graph, p: EdgePartition) -> tuple[Graph, SSEWitness]:
    """In-split g along a partition of each non-source vertex's incoming edges.

    Vertex v with m blocks becomes v.1 .. v.m (sources stay put); the edge e
    in block i at r(e) becomes one copy e.j out of each copy j of s(e), all
    landing on r(e).i.  Witness orientation matches out_split: R S is the
    original adjacency, S R the split one.
    """
    required = {v: {e.id for e in g.in_edges(v)} for v in g.vertices if g.in_edges(v)}
    _check_partition(g, p, required, "incoming")

    copies: dict[str, list[str]] = {}
    split_vertices: list[str] = []
    for v in g.vertices:
        if v in required:
            names = [f"{v}.{i + 1}" for i in range(len(p.blocks_at(v)))]
        else:
            names = [v]
        copies[v] = names
        split_vertices.extend(names)

    split_edges: list[Edge] = []
    for e in g.edges:
        i = _block_index(p, e.dst, e.id)
        dst_name = copies[e.dst][i]
        for j, src_name in enumerate(copies[e.src]):
            split_edges.append(Edge(src_name, dst_name, f"{e.id}.{j + 1}"))
    h = Graph(tuple(split_vertices), tuple(split_edges))

    col_of = {name: idx for idx, name in enumerate(split_vertices)}
    n, k = len(g.vertices), len(split_vertices)
    r_rows = [[0] * k for _ in range(n)]
    vidx = {v: i for i, v in enumerate(g.vertices)}
    for v in g.vertices:
        if v in required:
            for i, block in enumerate(p.blocks_at(v)):
                col = col_of[copies[v][i]]
                for edge_id in block:
                    r_rows[vidx[g.edge(edge_id).src]][col] += 1
    s_rows = [[0] * n for _ in range(k)]
    for v in g.vertices:
        for name in copies[v]:
            s_rows[col_of[name]][vidx[v]] = 1
    witness = SSEWitness(Matrix.from_rows(r_rows), Matrix.from_rows(s_rows))
    assert witness.r @ witness.s == g.adjacency()
    assert witness.s @ witness.r == h.adjacency()
    return h, witness


def kronecker_product(g: Graph, h: Graph) -> Graph:
    """Product graph: vertex pairs (lexicographic) and edge pairs.

    Its adjacency matrix is the Kronecker product of the two adjacency
    matrices, in the same vertex order.
    """
    vertices = tuple(f"{u}|{x}" for u in g.vertices for x in h.vertices)
    edges = tuple(
        Edge(f"{e.src}|{f.src}", f"{e.dst}|{f.dst}", f"{e.id}|{f.id}")
        for e in g.edges
        for f in h.edges
    )
    return Graph(vertices, edges)


# ---------------------------------------------------------------------------
# Bridge graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BridgeGraph:
    """Two-class graph realizing a = r s and b = s r as crossing paths.

    graph: all vertices and crossing edges; class1/class2: the two vertex
    classes; e1/e2: the factor graphs on each class; theta1/theta2: bijections
    from factor edges to the (first, second) crossing edge ids of length-2
    paths that start and end in the matching class.
    """

    graph: Graph
    class1: tuple[str, ...]
    class2: tuple[str, ...]
    e1: Graph
    e2: Graph
    theta1: dict[str, tuple[str, str]]
    theta2: dict[str, tuple[str, str]]


def bridge_from_factorization(a: Matrix, r: Matrix, s: Matrix) -> BridgeGraph:
    """Build the bridge graph of a factorization a = r s.

    Crossing edges u_i -> w_l appear r[i, l] times and w_l -> u_j appear
    s[l, j] times; factor edges are matched with crossing length-2 paths in
    lexicographic order (middle vertex, then copy indices), which makes the
    construction deterministic.
    """
    for name, m in (("a", a), ("r", r), ("s", s)):
        if not m.is_integral() or not m.is_nonnegative():
            raise InvalidMatrix(f"matrix {name} must be nonnegative and integral")
    if not a.is_square:
        raise InvalidMatrix("matrix a must be square")
    n = a.nrows
    k = r.ncols
    if r.nrows != n or s.shape() != (k, n):
        raise NotAFactorization(
            f"shapes {r.shape()} x {s.shape()} cannot multiply to {n}x{n}"
        )
    if r @ s != a:
        raise NotAFactorization("r s differs from a")
    b = s @ r

    class1 = tuple(f"u{i + 1}" for i in range(n))
    class2 = tuple(f"w{l + 1}" for l in range(k))

    x_ids: list[list[list[str]]] = [[[] for _ in range(k)] for _ in range(n)]
    y_ids: list[list[list[str]]] = [[[] for _ in range(n)] for _ in range(k)]
    bridge_edges: list[Edge] = []
    counter = 1
    for i in range(n):
        for l in range(k):
            for _ in range(int(r[i, l])):
                eid = f"x{counter}"
                counter += 1
                x_ids[i][l].append(eid)
                bridge_edges.append(Edge(class1[i], class2[l], eid))
    counter = 1
    for l in range(k):
        for j in range(n):
            for _ in range(int(s[l, j])):
                eid = f"y{counter}"
                counter += 1
                y_ids[l][j].append(eid)
                bridge_edges.append(Edge(class2[l], class1[j], eid))

    def factor_graph(vertices: tuple[str, ...], m: Matrix, prefix: str) -> Graph:
        edges = []
        c = 1
        for i in range(m.nrows):
            for j in range(m.ncols):
                for _ in range(int(m[i, j])):
                    edges.append(Edge(vertices[i], vertices[j], f"{prefix}{c}"))
                    c += 1
        return Graph(vertices, tuple(edges))

    e1 = factor_graph(class1, a, "p")
    e2 = factor_graph(class2, b, "q")

    theta1: dict[str, tuple[str, str]] = {}
    for i in range(n):
        for j in range(n):
            edge_pool = [e.id for e in e1.edges if e.src == class1[i] and e.dst == class1[j]]
            paths = [
                (x, y)
                for l in range(k)
                for x in x_ids[i][l]
                for y in y_ids[l][j]
            ]
            assert len(edge_pool) == len(paths)
            theta1.update(zip(edge_pool, paths))

    theta2: dict[str, tuple[str, str]] = {}
    for l in range(k):
        for l2 in range(k):
            edge_pool = [e.id for e in e2.edges if e.src == class2[l] and e.dst == class2[l2]]
            paths = [
                (y, x)
                for j in range(n)
                for y in y_ids[l][j]
                for x in x_ids[j][l2]
            ]
            assert len(edge_pool) == len(paths)
            theta2.update(zip(edge_pool, paths))

    graph = Graph(class1 + class2, tuple(bridge_edges))
    return BridgeGraph(graph, class1, class2, e1, e2, theta1, theta2)


def verify_bridge(bg: BridgeGraph) -> bool:
    """Check the bridge conditions structurally.

    The classes must partition the vertices, every edge must cross between
    the classes, and each theta must biject the factor edges onto the
    crossing length-2 paths based in its class, preserving source and range.
    """
    c1, c2 = set(bg.class1), set(bg.class2)
    if not c1 or not c2 or c1 & c2:
        return False
    if c1 | c2 != set(bg.graph.vertices):
        return False
    for e in bg.graph.edges:
        if (e.src in c1) == (e.dst in c1):
            return False
    edge_by_id = {e.id: e for e in bg.graph.edges}

    def check_theta(
        factor: Graph, theta: Mapping[str, tuple[str, str]], home: set[str]
    ) -> bool:
        if set(theta) != {e.id for e in factor.edges}:
            return False
        images = set()
        for fid, (first, second) in theta.items():
            if first not in edge_by_id or second not in edge_by_id:
                return False
            fe = factor.edge(fid)
            f1, f2 = edge_by_id[first], edge_by_id[second]
            if f1.dst != f2.src:
                return False
            if f1.src != fe.src or f2.dst != fe.dst:
                return False
            if f1.src not in home or f2.dst not in home:
                return False
            images.add((first, second))
        if len(images) != len(theta):
            return False
        all_paths = {
            (f1.id, f2.id)
            for f1 in bg.graph.edges
            if f1.src in home
            for f2 in bg.graph.edges
            if f2.src == f1.dst and f2.dst in home
        }
        return images == all_paths

    return check_theta(bg.e1, bg.theta1, c1) and check_theta(bg.e2, bg.theta2, c2)


def bridge_to_json(bg: BridgeGraph) -> dict:
    from .graphs import graph_to_json

    return {
        "graph": graph_to_json(bg.graph),
        "class1": list(bg.class1),
        "class2": list(bg.class2),
        "e1": graph_to_json(bg.e1),
        "e2": graph_to_json(bg.e2),
        "theta1": {k: list(v) for k, v in bg.theta1.items()},
        "theta2": {k: list(v) for k, v in bg.theta2.items()},
    }
