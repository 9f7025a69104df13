"""Shift equivalence and strong shift equivalence: witnesses, checks, searches.

An elementary strong shift equivalence (ESSE) from a to b is a pair of
nonnegative integer matrices with a = R S and b = S R.  Chains of such pairs
witness strong shift equivalence; a shift equivalence of lag l is (R, S) with

    a^l = R S,   b^l = S R,   a R = R b,   S a = b S.

Searches here are bounded and sound: any returned witness has been verified,
and a miss is reported as "not found within the bounds", never as a proof of
inequivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import InvalidWitness, ShapeError
from .invariants import bowen_franks, char_poly_away_from_zero
from .linalg import (
    AffineInfeasible,
    Matrix,
    integer_points,
    intertwiner_space,
    solve_affine_exact,
    vector,
)


@dataclass(frozen=True)
class SSEWitness:
    """Elementary strong shift equivalence pair (a = R S, b = S R)."""

    r: Matrix
    s: Matrix


@dataclass(frozen=True)
class SEWitness:
    """Shift equivalence witness of lag l >= 1."""

    r: Matrix
    s: Matrix
    lag: int


@dataclass(frozen=True)
class ChainLink:
    """One step of an SSE chain: the next matrix and the witness reaching it."""

    matrix: Matrix
    witness: SSEWitness


@dataclass(frozen=True)
class ChainWitness:
    links: tuple[ChainLink, ...]


def _check_pair_shapes(a: Matrix, b: Matrix, r: Matrix, s: Matrix) -> None:
    for m in (a, b):
        if not m.is_square:
            raise ShapeError("equivalence checks need square matrices")
    if r.shape() != (a.nrows, b.nrows) or s.shape() != (b.nrows, a.nrows):
        raise InvalidWitness(
            f"witness shapes {r.shape()}/{s.shape()} do not link "
            f"{a.nrows}x{a.nrows} to {b.nrows}x{b.nrows}"
        )
    for m in (r, s):
        if not m.is_integral() or not m.is_nonnegative():
            raise InvalidWitness("witness matrices must be nonnegative and integral")


def verify_esse(a: Matrix, b: Matrix, w: SSEWitness) -> bool:
    """Check a == R S and b == S R."""
    _check_pair_shapes(a, b, w.r, w.s)
    return w.r @ w.s == a and w.s @ w.r == b


def verify_chain(a: Matrix, b: Matrix, chain: ChainWitness) -> bool:
    """Check every link of an SSE chain and that it connects a to b."""
    cur = a
    for link in chain.links:
        if not verify_esse(cur, link.matrix, link.witness):
            return False
        cur = link.matrix
    return cur == b


def verify_se(a: Matrix, b: Matrix, w: SEWitness) -> bool:
    """Check all four lag-l shift equivalence identities."""
    if w.lag < 1:
        raise InvalidWitness("lag must be at least 1")
    _check_pair_shapes(a, b, w.r, w.s)
    return (
        w.r @ w.s == a**w.lag
        and w.s @ w.r == b**w.lag
        and a @ w.r == w.r @ b
        and w.s @ a == b @ w.s
    )


def transpose_witness(w: SEWitness) -> SEWitness:
    """Turn a witness for (a, b) into one for (a^T, b^T)."""
    return SEWitness(w.s.transpose(), w.r.transpose(), w.lag)


# ---------------------------------------------------------------------------
# Searches
# ---------------------------------------------------------------------------


def _prefilters_pass(a: Matrix, b: Matrix) -> bool:
    """Cheap necessary conditions shared by SE and SSE; False means no witness exists."""
    if char_poly_away_from_zero(a) != char_poly_away_from_zero(b):
        return False
    return bowen_franks(a) == bowen_franks(b)


def _candidate_matrices(
    space: Sequence[Matrix],
    shape: tuple[int, int],
    entry_bound: int,
    budget: int,
) -> Iterator[Matrix]:
    """Integer points of span(space) with entries in [0, entry_bound], lexicographic."""
    nrows, ncols = shape
    flat_basis = [
        vector(m[i, j] for i in range(nrows) for j in range(ncols)) for m in space
    ]
    origin = vector([0] * (nrows * ncols))
    for flat in integer_points(origin, flat_basis, 0, entry_bound, budget=budget):
        yield Matrix.from_rows(
            [[flat[i * ncols + j] for j in range(ncols)] for i in range(nrows)]
        )


def _solve_for_partner(
    a: Matrix, b: Matrix, r: Matrix, lag: int, entry_bound: int
) -> Matrix | None:
    """Find nonnegative integer S with S a = b S, R S = a^l, S R = b^l, if any.

    All three conditions are linear in S, so solve the combined system; when
    the solution space is positive-dimensional, scan its integer points in a
    small box.
    """
    n, m = a.nrows, b.nrows
    al = a**lag
    bl = b**lag
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def coeff_row() -> list[Fraction]:
        return [Fraction(0)] * (m * n)

    # S a - b S = 0   (S is m x n, flattened row-major)
    for i in range(m):
        for j in range(n):
            row = coeff_row()
            for k in range(n):
                row[i * n + k] += a[k, j]
            for k in range(m):
                row[k * n + j] -= b[i, k]
            rows.append(row)
            rhs.append(Fraction(0))
    # R S = a^l
    for i in range(n):
        for j in range(n):
            row = coeff_row()
            for k in range(m):
                row[k * n + j] += r[i, k]
            rows.append(row)
            rhs.append(al[i, j])
    # S R = b^l
    for i in range(m):
        for j in range(m):
            row = coeff_row()
            for k in range(n):
                row[i * n + k] += r[k, j]
            rows.append(row)
            rhs.append(bl[i, j])

    res = solve_affine_exact(Matrix.from_rows(rows), rhs)
    if isinstance(res, AffineInfeasible):
        return None
    box_hi = max(
        entry_bound,
        max((int(x) for row in al.rows for x in row), default=0),
        max((int(x) for row in bl.rows for x in row), default=0),
    )
    for flat in integer_points(res.particular, res.basis, 0, box_hi, budget=5000):
        s = Matrix.from_rows([[flat[i * n + j] for j in range(n)] for i in range(m)])
        if s.is_nonnegative():
            return s
    return None


def search_se(
    a: Matrix,
    b: Matrix,
    lag_max: int = 1,
    entry_bound: int = 3,
    candidate_budget: int = 200_000,
) -> SEWitness | None:
    """Bounded search for a shift equivalence witness; None means not found.

    Candidates R are the integer points of the rational intertwiner space
    {R : a R = R b} with entries in [0, entry_bound]; for each one, the
    partner S is solved for exactly.  The first verified witness (lags
    ascending, candidates lexicographic) is returned, so the search is
    deterministic and complete within its bounds up to the candidate budget.
    """
    if not _prefilters_pass(a, b):
        return None
    # {R : a R = R b} is the intertwiner space with the roles swapped
    space = intertwiner_space(b, a)
    for lag in range(1, lag_max + 1):
        for r in _candidate_matrices(
            space, (a.nrows, b.nrows), entry_bound, candidate_budget
        ):
            if r.is_zero():
                continue
            s = _solve_for_partner(a, b, r, lag, entry_bound)
            if s is None:
                continue
            w = SEWitness(r, s, lag)
            if verify_se(a, b, w):
                return w
    return None


def search_esse(
    a: Matrix,
    b: Matrix,
    inner_dim_max: int = 4,
    entry_bound: int = 3,
    candidate_budget: int = 200_000,
) -> SSEWitness | None:
    """Bounded search for an elementary SSE pair a = R S, b = S R.

    The inner dimension of the factorization is forced by b (R is n x m), so
    inner_dim_max acts as a refusal bound on the size of b.  Any witness
    satisfies a R = R b automatically (a R = R S R = R b), so candidates are
    drawn from the intertwiner space rather than the full entry box; this
    prunes hard while staying complete within the bounds.
    """
    if not a.is_square or not b.is_square:
        raise ShapeError("search needs square matrices")
    if b.nrows > inner_dim_max:
        return None
    if a.trace() != b.trace() or not _prefilters_pass(a, b):
        return None
    space = intertwiner_space(b, a)
    for r in _candidate_matrices(
        space, (a.nrows, b.nrows), entry_bound, candidate_budget
    ):
        if r.is_zero():
            continue
        s = _solve_for_partner(a, b, r, 1, entry_bound)
        if s is None:
            continue
        w = SSEWitness(r, s)
        if verify_esse(a, b, w):
            return w
    return None


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _matrix_to_json(m: Matrix) -> list[list[int]]:
    return m.to_int_rows()


def _matrix_from_json(rows) -> Matrix:
    return Matrix.from_rows(rows)


def sse_witness_to_json(w: SSEWitness) -> dict:
    return {"R": _matrix_to_json(w.r), "S": _matrix_to_json(w.s)}


def sse_witness_from_json(obj) -> SSEWitness:
    try:
        return SSEWitness(_matrix_from_json(obj["R"]), _matrix_from_json(obj["S"]))
    except (KeyError, TypeError) as exc:
        raise InvalidWitness(f"malformed SSE witness: {exc}") from exc


def se_witness_to_json(w: SEWitness) -> dict:
    return {"R": _matrix_to_json(w.r), "S": _matrix_to_json(w.s), "l": w.lag}


def se_witness_from_json(obj) -> SEWitness:
    try:
        return SEWitness(
            _matrix_from_json(obj["R"]), _matrix_from_json(obj["S"]), int(obj["l"])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidWitness(f"malformed SE witness: {exc}") from exc


def chain_to_json(chain: ChainWitness) -> dict:
    return {
        "links": [
            {
                "matrix": _matrix_to_json(link.matrix),
                "witness": sse_witness_to_json(link.witness),
            }
            for link in chain.links
        ]
    }


def chain_from_json(obj) -> ChainWitness:
    try:
        links = tuple(
            ChainLink(
                _matrix_from_json(entry["matrix"]),
                sse_witness_from_json(entry["witness"]),
            )
            for entry in obj["links"]
        )
    except (KeyError, TypeError) as exc:
        raise InvalidWitness(f"malformed chain: {exc}") from exc
    return ChainWitness(links)
