"""Exact linear algebra over the integers and rationals.

Everything is computed with arbitrary-precision integers and
`fractions.Fraction`; no floating point enters any decision.  The module
supplies the kernels the rest of the package leans on:

* an immutable `Matrix` with exact arithmetic, RREF and nullspaces;
* Smith normal form with unimodular transforms (elementary operations,
  pivoting on the minimal absolute value);
* characteristic polynomials via Faddeev-LeVerrier, which also yields the
  adjugate of (xI - A) as a polynomial matrix for free;
* exact affine solving with an infeasibility certificate (a rational row
  combination y with y.A = 0 and y.b = 1);
* Perron root isolation by Sturm bisection and the exact sign of the pairing
  of a rational vector against the left Perron eigenvector of an irreducible
  nonnegative matrix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import InvalidMatrix, NotIrreducible, ShapeError
from .polynomials import Poly, count_roots, poly_gcd, squarefree_part, sturm_chain

Rat = Fraction | int
Vector = tuple[Fraction, ...]


def _frac(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vector(entries: Iterable[Rat]) -> Vector:
    return tuple(_frac(e) for e in entries)


@dataclass(frozen=True)
class Matrix:
    """Immutable exact matrix; entries are Fractions."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise InvalidMatrix("ragged rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Rat]]) -> "Matrix":
        return cls(tuple(tuple(_frac(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls.from_rows([[0] * ncols for _ in range(nrows)])

    @classmethod
    def column(cls, entries: Iterable[Rat]) -> "Matrix":
        return cls.from_rows([[e] for e in entries])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for row in self.rows for x in row)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.rows[i][j]

    def row(self, i: int) -> Vector:
        return self.rows[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix.from_rows(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix.from_rows(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> "Matrix":
        return Matrix.from_rows([[-a for a in r] for r in self.rows])

    def scale(self, c: Rat) -> "Matrix":
        c = _frac(c)
        return Matrix.from_rows([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape()} by {other.shape()}")
        bt = other.transpose().rows
        return Matrix.from_rows(
            [[sum(a * b for a, b in zip(row, colv)) for colv in bt] for row in self.rows]
        )

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise ShapeError("powers need a square matrix")
        if k < 0:
            raise ShapeError("negative matrix powers are not supported")
        acc = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                acc = acc @ base
            base = base @ base
            k >>= 1
        return acc

    def apply(self, v: Sequence[Rat]) -> Vector:
        if len(v) != self.ncols:
            raise ShapeError("vector length does not match column count")
        return tuple(
            sum((a * _frac(x) for a, x in zip(row, v)), Fraction(0))
            for row in self.rows
        )

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.rows))) if self.rows else Matrix(())

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product in the usual block form (lexicographic index order)."""
        out = []
        for ra in self.rows:
            for rb in other.rows:
                out.append([a * b for a in ra for b in rb])
        return Matrix.from_rows(out)

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ShapeError("trace needs a square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def det(self) -> Fraction:
        """Exact determinant by fraction-free style Gaussian elimination."""
        if not self.is_square:
            raise ShapeError("determinant needs a square matrix")
        n = self.nrows
        a = [list(r) for r in self.rows]
        det = Fraction(1)
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det *= a[c][c]
            inv = 1 / a[c][c]
            for r in range(c + 1, n):
                if a[r][c] != 0:
                    f = a[r][c] * inv
                    for k in range(c, n):
                        a[r][k] -= f * a[c][k]
        return det

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise ShapeError("inverse needs a square matrix")
        n = self.nrows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        reduced, _, pivots = _rref(aug)
        if len(pivots) < n or any(p >= n for p in pivots):
            raise ShapeError("matrix is singular")
        return Matrix.from_rows([row[n:] for row in reduced])

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise InvalidMatrix("matrix is not integral")
        return [[int(x) for x in row] for row in self.rows]

    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __str__(self) -> str:
        def fmt(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else str(x)

        return "[" + "; ".join(" ".join(fmt(x) for x in row) for row in self.rows) + "]"

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape() != other.shape():
            raise ShapeError(f"shape mismatch: {self.shape()} vs {other.shape()}")


def _rref(
    rows: list[list[Fraction]],
) -> tuple[list[list[Fraction]], list[list[Fraction]], list[int]]:
    """Row-reduce in place; returns (reduced, transform, pivot columns).

    transform tracks the applied row operations: transform @ original == reduced.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    t = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        t[r], t[piv] = t[piv], t[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        t[r] = [x * inv for x in t[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
                t[i] = [x - f * y for x, y in zip(t[i], t[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, t, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    reduced, _, pivots = _rref([list(r) for r in m.rows])
    return Matrix.from_rows(reduced), pivots


def nullspace(m: Matrix) -> list[Vector]:
    """Deterministic echelon basis of {x : m x = 0}.

    Each basis vector has value 1 at "its" free column and 0 at the other
    free columns, listed in ascending free-column order.
    """
    if m.nrows == 0:
        return [_unit(m.ncols, j) for j in range(m.ncols)]
    reduced, pivots = rref(m)
    free = [j for j in range(m.ncols) if j not in pivots]
    basis: list[Vector] = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, f]
        basis.append(tuple(v))
    return basis


def _unit(n: int, j: int) -> Vector:
    return tuple(Fraction(int(i == j)) for i in range(n))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return unimodular (U, D, V) with U @ m @ V == D diagonal.

    D has nonnegative diagonal entries d1 | d2 | ... ; U and V are built from
    elementary row/column operations only (so det = +-1).  Pivots are chosen
    with minimal absolute value, which keeps intermediate entries small.
    """
    a = [row[:] for row in m.to_int_rows()]
    nr, nc = m.nrows, m.ncols
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def min_pivot(t):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(nr, nc):
        pos = min_pivot(t)
        if pos is None:
            break
        while True:
            i, j = pos
            if (i, j) != (t, t):
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
            if a[t][t] < 0:
                negate_row(t)
            # clear the pivot's column and row
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                pos = min_pivot(t)
                continue
            # divisibility: pivot must divide everything left in the block
            bad = next(
                (
                    (i, j)
                    for i in range(t + 1, nr)
                    for j in range(t + 1, nc)
                    if a[i][j] % a[t][t] != 0
                ),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
            pos = (t, t)
        t += 1

    for i in range(min(nr, nc)):
        if a[i][i] < 0:
            negate_row(i)
    return (
        Matrix.from_rows(u),
        Matrix.from_rows(a),
        Matrix.from_rows(v),
    )


# ---------------------------------------------------------------------------
# Characteristic polynomial and the adjugate of xI - A
# ---------------------------------------------------------------------------


def _faddeev_leverrier(a: list[list[int]]) -> tuple[list[int], list[list[list[int]]]]:
    """Integer Faddeev-LeVerrier.

    Returns (c, B) where det(xI - A) = sum c[k] x^(n-k) for k = 0..n and
    adj(xI - A) = sum B[k] x^(n-1-k) for k = 0..n-1.  All intermediate
    divisions are exact for integer input.
    """
    n = len(a)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    b = [row[:] for row in ident]
    cs = [1]
    bs = [[row[:] for row in b]]
    for k in range(1, n + 1):
        ab = [
            [sum(a[i][l] * b[l][j] for l in range(n)) for j in range(n)]
            for i in range(n)
        ]
        tr = sum(ab[i][i] for i in range(n))
        assert tr % k == 0, "Faddeev-LeVerrier trace division must be exact"
        c = -(tr // k)
        cs.append(c)
        b = [[ab[i][j] + c * ident[i][j] for j in range(n)] for i in range(n)]
        if k < n:
            bs.append([row[:] for row in b])
    assert all(x == 0 for row in b for x in row), "Cayley-Hamilton check failed"
    return cs, bs


def char_poly(m: Matrix) -> Poly:
    """Characteristic polynomial det(xI - m), monic with integer coefficients."""
    if not m.is_square:
        raise ShapeError("characteristic polynomial needs a square matrix")
    if m.nrows == 0:
        return Poly.from_coeffs([1])
    cs, _ = _faddeev_leverrier(m.to_int_rows())
    n = len(cs) - 1
    return Poly.from_coeffs([cs[n - i] for i in range(n + 1)])


def adjugate_xi_minus(m: Matrix) -> list[list[Poly]]:
    """Entries of adj(xI - m) as polynomials (degree <= n-1)."""
    if not m.is_square:
        raise ShapeError("adjugate needs a square matrix")
    n = m.nrows
    _, bs = _faddeev_leverrier(m.to_int_rows())
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            # ascending coefficients: x^(n-1-k) carries bs[k][i][j]
            row.append(Poly.from_coeffs([bs[n - 1 - d][i][j] for d in range(n)]))
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# Affine systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineSolution:
    """Solution set particular + span(basis) of a consistent system."""

    particular: Vector
    basis: tuple[Vector, ...]


@dataclass(frozen=True)
class AffineInfeasible:
    """Certificate of infeasibility: certificate @ A == 0, certificate . b == 1."""

    certificate: Vector


def solve_affine_exact(a: Matrix, b: Sequence[Rat]) -> AffineSolution | AffineInfeasible:
    """Solve a x = b exactly over the rationals.

    On success the particular solution has zeros in all free coordinates and
    the basis is the echelon nullspace of a.  On failure the returned
    certificate is an exact rational row combination proving inconsistency.
    """
    if len(b) != a.nrows:
        raise ShapeError("right-hand side length does not match row count")
    bb = [_frac(x) for x in b]
    aug = [list(row) + [bb[i]] for i, row in enumerate(a.rows)]
    if not aug:
        return AffineSolution(tuple(vector([0] * a.ncols)), tuple(nullspace(a)))
    reduced, transform, pivots = _rref(aug)
    ncols = a.ncols
    if pivots and pivots[-1] == ncols:
        # pivot in the augmented column: row r of the transform is the certificate
        r = len(pivots) - 1
        y = tuple(transform[r])
        return AffineInfeasible(y)
    particular = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        particular[p] = reduced[r][ncols]
    return AffineSolution(tuple(particular), tuple(nullspace(a)))


def intertwiner_space(a: Matrix, b: Matrix) -> list[Matrix]:
    """Deterministic basis of {U : U a == b U} over the rationals.

    a is n x n, b is m x m; the unknown U is m x n, flattened row-major when
    linearized.  The basis comes out of the echelon nullspace, so repeated
    calls agree entry for entry.
    """
    if not a.is_square or not b.is_square:
        raise ShapeError("intertwiner spaces need square matrices")
    n, m = a.nrows, b.nrows
    rows = []
    for i in range(m):
        for j in range(n):
            row = [Fraction(0)] * (m * n)
            for k in range(n):
                row[i * n + k] += a[k, j]
            for k in range(m):
                row[k * n + j] -= b[i, k]
            rows.append(row)
    basis = nullspace(Matrix.from_rows(rows)) if rows else []
    return [
        Matrix.from_rows([[v[i * n + j] for j in range(n)] for i in range(m)])
        for v in basis
    ]


def integer_points(
    particular: Vector,
    basis: Sequence[Vector],
    lo: int,
    hi: int,
    budget: int | None = None,
) -> Iterator[Vector]:
    """Integer vectors of particular + span(basis) with all entries in [lo, hi].

    The basis is re-echelonized so each direction owns a leading coordinate;
    any boxed solution then has integer leading coordinates in [lo, hi], so
    scanning those tuples lexicographically is complete within the box (as
    long as the budget, counted in scanned tuples, is not exhausted).
    Raises UndecidedError-free: on budget exhaustion the iterator just stops,
    so callers must treat exhaustion as "not found within bounds".
    """
    ncols = len(particular)
    if not basis:
        if all(x.denominator == 1 and lo <= x <= hi for x in particular):
            yield particular
        return
    reduced, pivots = rref(Matrix.from_rows(basis))
    ech = [reduced.row(r) for r in range(len(pivots))]
    # shift the particular point so its leading coordinates vanish
    part = list(particular)
    for r, p in enumerate(pivots):
        c = part[p]
        if c != 0:
            part = [x - c * y for x, y in zip(part, ech[r])]
    spent = 0
    for combo in itertools.product(range(lo, hi + 1), repeat=len(ech)):
        if budget is not None:
            spent += 1
            if spent > budget:
                return
        cand = part[:]
        for t, direction in zip(combo, ech):
            if t:
                cand = [x + t * y for x, y in zip(cand, direction)]
        if all(x.denominator == 1 and lo <= x <= hi for x in cand):
            yield tuple(cand)


# ---------------------------------------------------------------------------
# Irreducibility, periodicity, Perron data
# ---------------------------------------------------------------------------


def support_digraph(m: Matrix) -> list[list[int]]:
    """Adjacency lists of the digraph with an arc i -> j when m[i][j] > 0."""
    return [
        [j for j in range(m.ncols) if m[i, j] != 0] for i in range(m.nrows)
    ]


def is_irreducible_matrix(m: Matrix) -> bool:
    """Strong connectivity of the support digraph; a lone vertex needs a loop."""
    if not m.is_square:
        raise ShapeError("irreducibility needs a square matrix")
    n = m.nrows
    if n == 0:
        return False
    if n == 1:
        return m[0, 0] != 0
    adj = support_digraph(m)
    radj = [[] for _ in range(n)]
    for i, outs in enumerate(adj):
        for j in outs:
            radj[j].append(i)

    def reaches(start: int, nbrs: list[list[int]]) -> bool:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in nbrs[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    return reaches(0, adj) and reaches(0, radj)


def cyclic_structure(m: Matrix) -> tuple[int, list[list[int]]]:
    """Period p and the cyclic classes of an irreducible nonnegative matrix.

    Period is the gcd over all arcs (u, w) of level(u) + 1 - level(w) for BFS
    levels from vertex 0; classes collect indices by level mod p.
    """
    if not is_irreducible_matrix(m):
        raise NotIrreducible("cyclic structure needs an irreducible matrix")
    n = m.nrows
    adj = support_digraph(m)
    level = [-1] * n
    level[0] = 0
    queue = [0]
    while queue:
        v = queue.pop(0)
        for w in adj[v]:
            if level[w] < 0:
                level[w] = level[v] + 1
                queue.append(w)
    p = 0
    for u in range(n):
        for w in adj[u]:
            p = math.gcd(p, level[u] + 1 - level[w])
    p = abs(p) or 1
    classes = [[v for v in range(n) if level[v] % p == r] for r in range(p)]
    return p, classes


def is_primitive_matrix(m: Matrix) -> bool:
    return is_irreducible_matrix(m) and cyclic_structure(m)[0] == 1


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


@dataclass(frozen=True)
class PerronData:
    """Isolating interval (lo, hi] for the Perron root of an irreducible matrix.

    `poly` is the squarefree part of the characteristic polynomial; the
    interval contains exactly one of its roots, namely the spectral radius.
    """

    matrix: Matrix
    poly: Poly
    lo: Fraction
    hi: Fraction

    def refined(self, max_width: Rat) -> "PerronData":
        """Shrink the interval below max_width while keeping the root inside."""
        lo, hi = self.lo, self.hi
        chain = sturm_chain(self.poly)
        width = _frac(max_width)
        while hi - lo > width:
            mid = (lo + hi) / 2
            if count_roots(self.poly, mid, hi, chain) == 1:
                lo = mid
            else:
                hi = mid
        return PerronData(self.matrix, self.poly, lo, hi)


def isolate_perron_root(m: Matrix) -> PerronData:
    """Bracket the spectral radius of an irreducible nonnegative matrix.

    The Perron root is the rightmost real root of the characteristic
    polynomial, so bisect for the rightmost root starting from the row-sum
    bound.
    """
    if not m.is_integral() or not m.is_nonnegative():
        raise InvalidMatrix("Perron data needs a nonnegative integer matrix")
    if not is_irreducible_matrix(m):
        raise NotIrreducible("Perron data needs an irreducible matrix")
    p = squarefree_part(char_poly(m))
    chain = sturm_chain(p)
    hi = Fraction(max(sum(row) for row in m.rows) + 1)
    lo = -hi
    while count_roots(p, lo, hi, chain) > 1:
        mid = (lo + hi) / 2
        if count_roots(p, mid, hi, chain) >= 1:
            lo = mid
        else:
            hi = mid
    return PerronData(m, p, lo, hi)


def sign_at_perron_root(h: Poly, pd: PerronData) -> Sign:
    """Exact sign of h at the Perron root described by pd.

    Zero is certified through gcd(h, p); otherwise the isolating interval is
    refined until it is free of roots of h and the endpoint sign is the sign
    throughout.
    """
    if h.is_zero:
        return Sign.ZERO
    if h.degree == 0:
        return Sign.POSITIVE if h.coeffs[0] > 0 else Sign.NEGATIVE
    g = poly_gcd(h, pd.poly)
    if g.degree >= 1 and count_roots(g, pd.lo, pd.hi) >= 1:
        return Sign.ZERO
    lo, hi = pd.lo, pd.hi
    p_chain = sturm_chain(pd.poly)
    h_sf = squarefree_part(h)
    h_chain = sturm_chain(h_sf)
    while True:
        val = h(hi)
        if val != 0 and count_roots(h_sf, lo, hi, h_chain) == 0:
            return Sign.POSITIVE if val > 0 else Sign.NEGATIVE
        mid = (lo + hi) / 2
        if count_roots(pd.poly, mid, hi, p_chain) == 1:
            lo = mid
        else:
            hi = mid


def perron_pairing_sign(a: Matrix, v: Sequence[Rat]) -> Sign:
    """Exact sign of w . v for the strictly positive left Perron eigenvector w of a.

    a must be an irreducible nonnegative integer matrix.  The eigenvector is
    read off a column of adj(lambda I - a^T), whose entries at the Perron
    root lambda are all nonzero multiples of w, so only polynomial sign
    evaluations at lambda are needed: no eigenvector coordinates are ever
    approximated.
    """
    if not a.is_square:
        raise ShapeError("Perron pairing needs a square matrix")
    if len(v) != a.nrows:
        raise ShapeError("vector length does not match matrix size")
    if not a.is_integral() or not a.is_nonnegative():
        raise InvalidMatrix("Perron pairing needs a nonnegative integer matrix")
    if not is_irreducible_matrix(a):
        raise NotIrreducible("Perron pairing needs an irreducible matrix")
    pd = isolate_perron_root(a)
    adj = adjugate_xi_minus(a.transpose())
    n = a.nrows
    col = None
    col_sign = Sign.ZERO
    for c in range(n):
        s = sign_at_perron_root(adj[0][c], pd)
        if s != Sign.ZERO:
            col, col_sign = c, s
            break
    assert col is not None, "adjugate of an irreducible matrix cannot vanish at the Perron root"
    denom = math.lcm(*(_frac(x).denominator for x in v)) if v else 1
    h = Poly(())
    for j in range(n):
        coeff = _frac(v[j]) * denom
        if coeff != 0:
            h = h + adj[j][col] * coeff
    s = sign_at_perron_root(h, pd)
    return Sign(int(s) * int(col_sign))
