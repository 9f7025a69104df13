"""Exact matrix kernel: Smith form, characteristic polynomials, solvers,
bounded integer enumeration, and Perron sign arithmetic."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

from helpers import cofactor_det, det_oracle, random_int_matrix, rank_oracle

from sftkit.linalg import (
    Matrix,
    Sign,
    adjugate_xi_minus,
    char_poly,
    cyclic_structure,
    integer_points,
    intertwiner_space,
    is_irreducible_matrix,
    is_primitive_matrix,
    isolate_perron_root,
    nullspace,
    perron_pairing_sign,
    rref,
    sign_at_perron_root,
    smith_normal_form,
    solve_affine_exact,
    AffineInfeasible,
    AffineSolution,
    vector,
)


def _gcd_of_minors(m: Matrix, k: int) -> int:
    """gcd of all k x k minors, the classical invariant-factor oracle."""
    import math

    vals = []
    for rows in combinations(range(m.nrows), k):
        for cols in combinations(range(m.ncols), k):
            sub = [[Fraction(m[i, j]) for j in cols] for i in rows]
            vals.append(int(cofactor_det(sub)))
    return math.gcd(*vals) if vals else 0


# ---------------------------------------------------------------------------
# Matrix basics
# ---------------------------------------------------------------------------


def test_matmul_pow_and_trace():
    a = Matrix.from_rows([[1, 2], [1, 0]])
    assert a @ Matrix.identity(2) == a
    assert a**0 == Matrix.identity(2)
    assert a**3 == a @ a @ a
    assert a.trace() == 1


def test_kron_matches_oracle():
    from helpers import kron_oracle

    rng = random.Random(2)
    for _ in range(20):
        a = random_int_matrix(rng, rng.randrange(1, 4), -2, 2)
        b = random_int_matrix(rng, rng.randrange(1, 4), -2, 2)
        assert a.kron(b) == kron_oracle(a, b)


def test_det_matches_cofactor_oracle():
    rng = random.Random(3)
    for _ in range(40):
        m = random_int_matrix(rng, rng.randrange(1, 5), -4, 4)
        assert m.det() == det_oracle(m)


def test_inverse_random_nonsingular():
    rng = random.Random(4)
    found = 0
    while found < 20:
        m = random_int_matrix(rng, rng.randrange(1, 5), -3, 3)
        if m.det() == 0:
            continue
        found += 1
        assert m @ m.inverse() == Matrix.identity(m.nrows)


# ---------------------------------------------------------------------------
# Echelon forms
# ---------------------------------------------------------------------------


def test_rref_pivot_count_matches_rank_oracle():
    rng = random.Random(6)
    for _ in range(30):
        m = random_int_matrix(rng, rng.randrange(1, 5), -5, 5)
        reduced, pivots = rref(m)
        assert len(pivots) == rank_oracle([list(r) for r in m.rows])
        for k, col in enumerate(pivots):
            assert reduced[k, col] == 1
            assert all(reduced[i, col] == 0 for i in range(m.nrows) if i != k)


def test_nullspace_vectors_annihilate():
    rng = random.Random(7)
    for _ in range(30):
        m = random_int_matrix(rng, rng.randrange(1, 5), -3, 3)
        basis = nullspace(m)
        for v in basis:
            assert all(x == 0 for x in m.apply(v))
        assert len(basis) == m.ncols - rank_oracle([list(r) for r in m.rows])


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def test_smith_normal_form_known_values():
    m = Matrix.from_rows([[0, -2], [-1, 1]])  # I - [[1,2],[1,0]]
    u, d, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert [int(d[i, i]) for i in range(2)] == [1, 2]

    m2 = Matrix.from_rows([[-18, -5], [-4, 0]])  # I - [[19,5],[4,1]]
    _, d2, _ = smith_normal_form(m2)
    assert [int(d2[i, i]) for i in range(2)] == [1, 20]


def test_smith_normal_form_random_with_minor_gcd_oracle():
    rng = random.Random(8)
    for _ in range(40):
        n = rng.randrange(1, 5)
        m = random_int_matrix(rng, n, -5, 5)
        u, d, v = smith_normal_form(m)
        assert u @ m @ v == d
        assert abs(det_oracle(u)) == 1
        assert abs(det_oracle(v)) == 1
        diag = [int(d[i, i]) for i in range(n)]
        assert all(d[i, j] == 0 for i in range(n) for j in range(n) if i != j)
        assert all(x >= 0 for x in diag)
        for i in range(n - 1):
            if diag[i + 1] != 0:
                assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
        # classical oracle: product of the first k entries = gcd of k x k minors
        acc = 1
        for k in range(1, n + 1):
            acc *= diag[k - 1]
            assert abs(acc) == _gcd_of_minors(m, k)


# ---------------------------------------------------------------------------
# Characteristic polynomial and adjugate
# ---------------------------------------------------------------------------


def test_char_poly_matches_pointwise_determinants():
    rng = random.Random(9)
    for _ in range(25):
        n = rng.randrange(1, 5)
        m = random_int_matrix(rng, n, -4, 4)
        p = char_poly(m)
        assert p.degree == n
        for t in (-2, -1, 0, 1, 2, 5):
            shifted = Matrix.identity(n).scale(Fraction(t)) - m
            assert p(Fraction(t)) == det_oracle(shifted)


def test_cayley_hamilton():
    rng = random.Random(10)
    for _ in range(25):
        n = rng.randrange(1, 5)
        m = random_int_matrix(rng, n, -5, 5)
        p = char_poly(m)
        acc = Matrix.zeros(n, n)
        for c in reversed(p.coeffs):
            acc = acc @ m + Matrix.identity(n).scale(c)
        assert acc.is_zero()


def test_adjugate_identity():
    # (xI - m) adj(xI - m) = char_poly(m) I, checked at rational points
    rng = random.Random(12)
    for _ in range(10):
        n = rng.randrange(1, 4)
        m = random_int_matrix(rng, n, -3, 3)
        adj = adjugate_xi_minus(m)
        p = char_poly(m)
        for t in (Fraction(0), Fraction(1), Fraction(7, 2)):
            xi = Matrix.identity(n).scale(t) - m
            adj_t = Matrix.from_rows([[adj[i][j](t) for j in range(n)] for i in range(n)])
            prod_rows = xi @ adj_t
            assert prod_rows == Matrix.identity(n).scale(p(t))


# ---------------------------------------------------------------------------
# Intertwiners and affine solving
# ---------------------------------------------------------------------------


def test_intertwiner_space_commutant_shape():
    m = Matrix.from_rows([[1, 1], [2, 0]])
    basis = intertwiner_space(m, m)
    assert len(basis) == 2
    for u in basis:
        assert u @ m == m @ u
        # commutant of this matrix is {[[a, b], [2b, a-b]]}
        assert u[1, 0] == 2 * u[0, 1]
        assert u[1, 1] == u[0, 0] - u[0, 1]


def test_intertwiner_space_dimension_matches_rank_oracle():
    rng = random.Random(13)
    for _ in range(15):
        n = rng.randrange(1, 4)
        m_dim = rng.randrange(1, 4)
        a = random_int_matrix(rng, n, -2, 2)
        b = random_int_matrix(rng, m_dim, -2, 2)
        basis = intertwiner_space(a, b)
        for u in basis:
            assert u @ a == b @ u
        # linearize U a - b U = 0 independently and compare kernel dimensions
        rows = []
        for i in range(m_dim):
            for j in range(n):
                row = [Fraction(0)] * (m_dim * n)
                for k in range(n):
                    row[i * n + k] += a[k, j]
                for k in range(m_dim):
                    row[k * n + j] -= b[i, k]
                rows.append(row)
        assert len(basis) == m_dim * n - rank_oracle(rows)


def test_solve_affine_feasible_and_certificates():
    rng = random.Random(14)
    for _ in range(30):
        nrows = rng.randrange(1, 5)
        ncols = rng.randrange(1, 5)
        a = Matrix.from_rows(
            [[rng.randrange(-3, 4) for _ in range(ncols)] for _ in range(nrows)]
        )
        b = vector(rng.randrange(-3, 4) for _ in range(nrows))
        res = solve_affine_exact(a, b)
        if isinstance(res, AffineSolution):
            assert a.apply(res.particular) == b
            for direction in res.basis:
                assert all(x == 0 for x in a.apply(direction))
        else:
            assert isinstance(res, AffineInfeasible)
            y = res.certificate
            combo = [
                sum(y[i] * a[i, j] for i in range(nrows)) for j in range(ncols)
            ]
            assert all(x == 0 for x in combo)
            assert sum(yi * bi for yi, bi in zip(y, b)) == 1


def test_integer_points_complete_within_box():
    # one free direction: particular (1/2, 0), basis {(1/2, 1)}
    particular = vector([Fraction(1, 2), Fraction(0)])
    basis = [vector([Fraction(1, 2), Fraction(1)])]
    got = sorted(
        tuple(int(x) for x in p)
        for p in integer_points(particular, basis, 0, 4, budget=1000)
    )
    brute = []
    for t in range(-20, 21):
        x = (Fraction(1, 2) + Fraction(t, 2), Fraction(t))
        if all(v.denominator == 1 and 0 <= v <= 4 for v in x):
            brute.append(tuple(int(v) for v in x))
    assert got == sorted(brute)


# ---------------------------------------------------------------------------
# Irreducibility, periodicity, Perron data
# ---------------------------------------------------------------------------


def test_irreducible_and_primitive_flags():
    assert is_irreducible_matrix(Matrix.from_rows([[1, 2], [1, 0]]))
    assert not is_irreducible_matrix(Matrix.from_rows([[1, 1], [0, 1]]))
    assert not is_irreducible_matrix(Matrix.from_rows([[0]]))
    assert is_irreducible_matrix(Matrix.from_rows([[1]]))
    swap = Matrix.from_rows([[0, 1], [1, 0]])
    assert is_irreducible_matrix(swap)
    assert not is_primitive_matrix(swap)
    assert is_primitive_matrix(Matrix.from_rows([[1, 1], [2, 0]]))


def test_cyclic_structure_of_swap():
    period, classes = cyclic_structure(Matrix.from_rows([[0, 1], [1, 0]]))
    assert period == 2
    assert sorted(sorted(c) for c in classes) == [[0], [1]]


def test_cyclic_structure_of_three_cycle():
    m = Matrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    period, classes = cyclic_structure(m)
    assert period == 3
    assert sorted(len(c) for c in classes) == [1, 1, 1]


def test_isolate_perron_root_brackets_largest_root():
    m = Matrix.from_rows([[19, 5], [4, 1]])
    pd = isolate_perron_root(m)
    # x^2 - 20x - 1 has its largest root just above 20
    assert pd.lo < Fraction(201, 10) and pd.hi > Fraction(20)
    p = char_poly(m)
    assert p(pd.lo) * p(pd.hi) < 0


def test_sign_at_perron_root():
    from sftkit.polynomials import Poly

    m = Matrix.from_rows([[2]])
    pd = isolate_perron_root(m)
    x = Poly.x()
    one = Poly.constant(Fraction(1))
    assert sign_at_perron_root(x - one * Fraction(2), pd) == Sign.ZERO
    assert sign_at_perron_root(x - one, pd) == Sign.POSITIVE
    assert sign_at_perron_root(x - one * Fraction(3), pd) == Sign.NEGATIVE


def test_perron_pairing_sign_matches_functional():
    # left Perron vector of [[1,1],[2,0]] is proportional to (2, 1)
    m = Matrix.from_rows([[1, 1], [2, 0]])
    for v, expected in [
        ((1, 1), Sign.POSITIVE),
        ((2, 1), Sign.POSITIVE),
        ((1, -2), Sign.ZERO),
        ((-1, 2), Sign.ZERO),
        ((-1, -1), Sign.NEGATIVE),
        ((1, -3), Sign.NEGATIVE),
    ]:
        assert perron_pairing_sign(m, vector(Fraction(x) for x in v)) == expected


def test_positive_pairing_implies_eventual_nonnegativity():
    rng = random.Random(15)
    checked = 0
    while checked < 25:
        n = rng.randrange(1, 4)
        m = random_int_matrix(rng, n, 0, 3)
        if not is_primitive_matrix(m):
            continue
        v = vector(Fraction(rng.randrange(-3, 4)) for _ in range(n))
        if perron_pairing_sign(m, v) != Sign.POSITIVE:
            continue
        checked += 1
        cur = v
        for _ in range(60):
            if all(x >= 0 for x in cur):
                break
            cur = m.apply(cur)
        assert all(x >= 0 for x in cur)
