"""Shared generators and independent oracles for the test suite.

Oracles here are written from scratch (cofactor determinants, brute-force
rank, entrywise Kronecker products) so that library results are checked
against genuinely independent computations.
"""

from __future__ import annotations

import random
from fractions import Fraction

from sftkit.graphs import Graph, classify, from_adjacency
from sftkit.linalg import Matrix
from sftkit.moves import EdgePartition


def random_adjacency(rng: random.Random, n: int, entry_max: int) -> Matrix:
    return Matrix.from_rows(
        [[rng.randrange(0, entry_max + 1) for _ in range(n)] for _ in range(n)]
    )


def random_int_matrix(rng: random.Random, n: int, lo: int, hi: int) -> Matrix:
    return Matrix.from_rows(
        [[rng.randrange(lo, hi + 1) for _ in range(n)] for _ in range(n)]
    )


def random_irreducible_nontrivial(
    rng: random.Random, n_max: int, entry_max: int
) -> Graph:
    """Rejection-sample a strongly connected graph that is not a single cycle."""
    while True:
        n = rng.randrange(1, n_max + 1)
        g = from_adjacency(random_adjacency(rng, n, entry_max))
        r = classify(g)
        if r.irreducible and not r.trivial:
            return g


def random_sink_free(rng: random.Random, n_max: int, entry_max: int) -> Graph:
    """A graph in which every vertex emits at least one edge."""
    while True:
        n = rng.randrange(1, n_max + 1)
        m = random_adjacency(rng, n, entry_max)
        if all(any(x != 0 for x in m.row(i)) for i in range(n)):
            return from_adjacency(m)


def random_out_partition(rng: random.Random, g: Graph) -> EdgePartition:
    return _random_partition(rng, g, incoming=False)


def random_in_partition(rng: random.Random, g: Graph) -> EdgePartition:
    return _random_partition(rng, g, incoming=True)


def _random_partition(rng: random.Random, g: Graph, incoming: bool) -> EdgePartition:
    entries = []
    for v in g.vertices:
        ids = [e.id for e in (g.in_edges(v) if incoming else g.out_edges(v))]
        if not ids:
            continue
        rng.shuffle(ids)
        if len(ids) > 1 and rng.random() < 0.7:
            cut = rng.randrange(1, len(ids))
            blocks = (tuple(sorted(ids[:cut])), tuple(sorted(ids[cut:])))
        else:
            blocks = (tuple(sorted(ids)),)
        entries.append((v, blocks))
    return EdgePartition(tuple(entries))


def cofactor_det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j, x in enumerate(rows[0]):
        if x == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * Fraction(x) * cofactor_det(minor)
    return total


def det_oracle(m: Matrix) -> Fraction:
    return cofactor_det([[Fraction(x) for x in row] for row in m.rows])


def rank_oracle(rows: list[list[Fraction]]) -> int:
    """Row rank by plain Gaussian elimination, independent of the library."""
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [x / lead for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def kron_oracle(a: Matrix, b: Matrix) -> Matrix:
    """Entrywise block Kronecker product."""
    rows = []
    for i in range(a.nrows):
        for k in range(b.nrows):
            row = []
            for j in range(a.ncols):
                for l in range(b.ncols):
                    row.append(a[i, j] * b[k, l])
            rows.append(row)
    return Matrix.from_rows(rows)
