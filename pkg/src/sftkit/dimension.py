"""Dimension triples of edge shifts: the ordered group, its shift, and maps.

The triple attached to a graph with adjacency matrix A is the direct limit of
Z^n --M--> Z^n --M--> ... for M = A^T, with the positive cone of eventually
nonnegative vectors, the class of the all-ones vector as order unit, and the
automorphism induced by M.  Elements are pairs [a, k]: the vector a sitting
at stage k of the limit; [a, k] and [b, k'] agree iff they merge after
finitely many more applications of M, which stabilizes after n steps, so
equality is decidable.

Positivity of a class is decided exactly: iteration gives certificates, and
for irreducible M the sign of the pairing against the left Perron eigenvector
(computed exactly, see `linalg.perron_pairing_sign`) settles the rest.  For
reducible M beyond the iteration bound the honest answer is Unknown.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import HasSinks, ShapeError, UndecidedError
from .graphs import Graph
from .linalg import (
    AffineInfeasible,
    Matrix,
    Sign,
    Vector,
    cyclic_structure,
    is_irreducible_matrix,
    perron_pairing_sign,
    solve_affine_exact,
    vector,
)

DEFAULT_ITERATE_BOUND = 24
_CERTIFICATE_CAP = 500


@dataclass(frozen=True)
class DimensionTriple:
    """Acting matrix M = A^T of a dimension triple; M must be a nonnegative integer matrix."""

    matrix: Matrix

    def __post_init__(self) -> None:
        if not self.matrix.is_square:
            raise ShapeError("acting matrix must be square")
        if not self.matrix.is_integral() or not self.matrix.is_nonnegative():
            raise ShapeError("acting matrix must be a nonnegative integer matrix")

    @property
    def n(self) -> int:
        return self.matrix.nrows


@dataclass(frozen=True)
class DimElement:
    """Group element [a, k]: integer vector a at stage k of the limit."""

    a: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ShapeError("stage index must be nonnegative")


def from_graph(g: Graph) -> DimensionTriple:
    """Dimension triple of a graph without sinks."""
    if g.sinks():
        raise HasSinks(f"graph has sinks: {', '.join(g.sinks())}")
    return DimensionTriple(g.adjacency().transpose())


def from_matrix(a: Matrix) -> DimensionTriple:
    """Dimension triple of an adjacency matrix (acting matrix is its transpose)."""
    return DimensionTriple(a.transpose())


def zero(t: DimensionTriple) -> DimElement:
    return DimElement((0,) * t.n, 0)


def order_unit(t: DimensionTriple) -> DimElement:
    """Class of the all-ones vector at stage 0."""
    return DimElement((1,) * t.n, 0)


def _check_element(t: DimensionTriple, x: DimElement) -> None:
    if len(x.a) != t.n:
        raise ShapeError(f"element lives in Z^{len(x.a)}, triple needs Z^{t.n}")


def _apply_pow(t: DimensionTriple, p: int, a: Sequence[int]) -> tuple[int, ...]:
    v = vector(a)
    m = t.matrix**p
    return tuple(int(x) for x in m.apply(v))


def dg_equal(t: DimensionTriple, x: DimElement, y: DimElement) -> bool:
    """Exact equality in the limit: merge at stage max(k, k') + n.

    The kernel chain of M stabilizes after n steps, so if the two vectors
    ever merge they merge by then.
    """
    _check_element(t, x)
    _check_element(t, y)
    top = max(x.k, y.k)
    ex = _apply_pow(t, top - x.k, x.a)
    ey = _apply_pow(t, top - y.k, y.a)
    diff = tuple(p - q for p, q in zip(ex, ey))
    return all(v == 0 for v in _apply_pow(t, t.n, diff))


def dg_add(t: DimensionTriple, x: DimElement, y: DimElement) -> DimElement:
    """[a, k] + [b, k'] = [M^k' a + M^k b, k + k']."""
    _check_element(t, x)
    _check_element(t, y)
    ex = _apply_pow(t, y.k, x.a)
    ey = _apply_pow(t, x.k, y.a)
    return DimElement(tuple(p + q for p, q in zip(ex, ey)), x.k + y.k)


def dg_neg(t: DimensionTriple, x: DimElement) -> DimElement:
    return DimElement(tuple(-v for v in x.a), x.k)


def dg_scale(t: DimensionTriple, c: int, x: DimElement) -> DimElement:
    return DimElement(tuple(c * v for v in x.a), x.k)


def dg_shift(t: DimensionTriple, x: DimElement, power: int = 1) -> DimElement:
    """Apply the shift automorphism `power` times (negative powers allowed).

    Positive powers multiply the vector by M^p; negative powers move the
    element deeper into the limit, which inverts the automorphism.
    """
    _check_element(t, x)
    if power >= 0:
        return DimElement(_apply_pow(t, power, x.a), x.k)
    return DimElement(x.a, x.k - power)


# ---------------------------------------------------------------------------
# Positivity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InCone:
    """Positive decision; `power` is an iteration certificate (M^power a >= 0) when available."""

    power: int | None = None


@dataclass(frozen=True)
class NotInCone:
    reason: str = ""


@dataclass(frozen=True)
class Unknown:
    """No decision within the iteration bound (reducible acting matrix)."""

    bound: int


Positivity = InCone | NotInCone | Unknown


def _eventually_nonneg_primitive(block: Matrix, c: Vector) -> bool:
    """Does block^q c become entrywise nonnegative for a primitive block?"""
    if all(x == 0 for x in c):
        return True
    s = perron_pairing_sign(block, c)
    if s == Sign.POSITIVE:
        return True
    if s == Sign.NEGATIVE:
        return False
    # pairing zero: nonnegativity can only be reached through the zero vector
    cur = c
    for _ in range(block.nrows):
        cur = block.apply(cur)
    return all(x == 0 for x in cur)


def dg_positive(
    t: DimensionTriple, x: DimElement, iterate_bound: int = DEFAULT_ITERATE_BOUND
) -> Positivity:
    """Decide membership of [a, k] in the positive cone.

    The cone consists of classes whose vector becomes entrywise nonnegative
    under iteration of M (once nonnegative, always nonnegative).  Iteration
    up to the bound yields certificates; for irreducible M the Perron pairing
    sign finishes the decision, handling periodic matrices blockwise on the
    cyclic classes of M^p.  Reducible matrices past the bound report Unknown.
    """
    _check_element(t, x)
    bound = max(iterate_bound, t.n)
    m = t.matrix
    cur: Sequence[int] = x.a
    for power in range(bound + 1):
        if all(v >= 0 for v in cur):
            return InCone(power)
        cur = tuple(int(v) for v in m.apply(cur))
    if not is_irreducible_matrix(m):
        return Unknown(bound)
    s = perron_pairing_sign(m, vector(x.a))
    if s == Sign.NEGATIVE:
        return NotInCone("negative Perron pairing")
    if s == Sign.ZERO:
        if dg_equal(t, x, zero(t)):
            return InCone(None)
        return NotInCone("zero Perron pairing but nonzero class")
    period, classes = cyclic_structure(m)
    if period > 1:
        mp = m**period
        blocks = [
            Matrix.from_rows([[mp[i, j] for j in classes[ci]] for i in classes[ci]])
            for ci in range(period)
        ]
        shifted = vector(x.a)
        feasible = False
        for _ in range(period):
            if all(
                _eventually_nonneg_primitive(
                    blocks[ci], tuple(shifted[i] for i in classes[ci])
                )
                for ci in range(period)
            ):
                feasible = True
                break
            shifted = m.apply(shifted)
        if not feasible:
            return NotInCone("some cyclic class stays negative")
    # positive pairing and per-class feasibility: a certificate must appear
    for power in range(bound + 1, bound + 1 + _CERTIFICATE_CAP):
        if all(v >= 0 for v in cur):
            return InCone(power)
        cur = tuple(int(v) for v in m.apply(cur))
    raise UndecidedError(
        "certificate guaranteed but not reached within the safety cap"
    )


# ---------------------------------------------------------------------------
# Rational vectors as classes
# ---------------------------------------------------------------------------


def _fractional(v: Vector) -> tuple[Fraction, ...]:
    return tuple(x - (x.numerator // x.denominator) for x in v)


def lattice_level(t: DimensionTriple, v: Sequence[Fraction | int]) -> int | None:
    """Smallest k with M^k v integral, or None if no power ever lands in Z^n.

    Fractional parts evolve autonomously (frac(M v) depends only on frac(v))
    inside a finite set, so cycle detection on them decides membership.
    """
    if len(v) != t.n:
        raise ShapeError("vector length does not match the triple")
    f = _fractional(vector(v))
    k = 0
    seen: set[tuple[Fraction, ...]] = set()
    while any(x != 0 for x in f):
        if f in seen:
            return None
        seen.add(f)
        f = _fractional(t.matrix.apply(f))
        k += 1
    return k


def rational_to_element(
    t: DimensionTriple, v: Sequence[Fraction | int]
) -> DimElement | None:
    """The class [M^k v, k] of a rational vector, or None if it is not in the group."""
    k = lattice_level(t, v)
    if k is None:
        return None
    w = (t.matrix**k).apply(vector(v))
    return DimElement(tuple(int(x) for x in w), k)


# ---------------------------------------------------------------------------
# Module isomorphism candidates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleIsoCandidate:
    """Rational matrix inducing a candidate isomorphism of dimension triples."""

    matrix: Matrix
    pointed: bool = False


def verify_module_iso(
    t_a: DimensionTriple,
    t_b: DimensionTriple,
    cand: ModuleIsoCandidate,
    iterate_bound: int = DEFAULT_ITERATE_BOUND,
) -> bool:
    """Check that the candidate matrix induces an order isomorphism of triples.

    Five conditions: exact intertwining U M_A = M_B U; invertibility over Q;
    both U and U^{-1} map the integer lattices into the groups (decided
    through the fractional-part orbit); positivity of the images of the
    standard positive generators in both directions; and, for pointed
    candidates, that the order unit maps to the order unit as a class.

    Raises UndecidedError if a positivity subquestion comes back Unknown.
    """
    u = cand.matrix
    if t_a.n != t_b.n:
        raise ShapeError("triples of different rank cannot be compared by a square matrix")
    if u.shape() != (t_b.n, t_a.n):
        raise ShapeError(f"candidate shape {u.shape()} does not map rank {t_a.n} to rank {t_b.n}")
    if u @ t_a.matrix != t_b.matrix @ u:
        return False
    if u.det() == 0:
        return False
    uinv = u.inverse()

    def side_ok(src: DimensionTriple, dst: DimensionTriple, mat: Matrix) -> bool:
        for i in range(src.n):
            img = mat.col(i)
            elem = rational_to_element(dst, img)
            if elem is None:
                return False
            decision = dg_positive(dst, elem, iterate_bound)
            if isinstance(decision, Unknown):
                raise UndecidedError(
                    "positivity of a generator image undecided within the bound"
                )
            if isinstance(decision, NotInCone):
                return False
        return True

    if not side_ok(t_a, t_b, u) or not side_ok(t_b, t_a, uinv):
        return False
    if cand.pointed:
        img = u.apply([1] * t_a.n)
        elem = rational_to_element(t_b, img)
        if elem is None or not dg_equal(t_b, elem, order_unit(t_b)):
            return False
    return True


# ---------------------------------------------------------------------------
# Pointed intertwiner search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntertwinerSystem:
    """The affine system over the flattened candidate entries, with row labels."""

    coefficients: Matrix
    rhs: Vector
    labels: tuple[str, ...]


@dataclass(frozen=True)
class Infeasible:
    """No rational solution at all; certificate @ coefficients = 0, certificate . rhs = 1."""

    system: IntertwinerSystem
    certificate: Vector


@dataclass(frozen=True)
class Candidate:
    matrix: Matrix


@dataclass(frozen=True)
class NotFoundWithinBounds:
    tried: int


PointedSearchResult = Infeasible | Candidate | NotFoundWithinBounds


def _intertwiner_system(
    t_a: DimensionTriple, t_b: DimensionTriple, pointed: bool
) -> IntertwinerSystem:
    n, m = t_a.n, t_b.n
    ma, mb = t_a.matrix, t_b.matrix
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    labels: list[str] = []
    for i in range(m):
        for j in range(n):
            row = [Fraction(0)] * (m * n)
            for k in range(n):
                row[i * n + k] += ma[k, j]
            for k in range(m):
                row[k * n + j] -= mb[i, k]
            rows.append(row)
            rhs.append(Fraction(0))
            labels.append(f"intertwine[{i},{j}]")
    if pointed:
        for i in range(m):
            row = [Fraction(0)] * (m * n)
            for j in range(n):
                row[i * n + j] = Fraction(1)
            rows.append(row)
            rhs.append(Fraction(1))
            labels.append(f"unit[{i}]")
    return IntertwinerSystem(Matrix.from_rows(rows), tuple(rhs), tuple(labels))


def _grid_values(denominator_max: int, value_max: int) -> list[Fraction]:
    """Small rationals ordered by denominator, then magnitude, positives first."""
    out: list[Fraction] = [Fraction(0)]
    seen = {Fraction(0)}
    for q in range(1, denominator_max + 1):
        magnitudes = sorted(
            {Fraction(p, q) for p in range(1, value_max * q + 1)}
        )
        for mag in magnitudes:
            for val in (mag, -mag):
                if val not in seen:
                    seen.add(val)
                    out.append(val)
    return out


def search_module_iso(
    t_a: DimensionTriple,
    t_b: DimensionTriple,
    pointed: bool = True,
    denominator_max: int = 4,
    value_max: int = 2,
    candidate_budget: int = 4000,
    iterate_bound: int = DEFAULT_ITERATE_BOUND,
) -> PointedSearchResult:
    """Search for a matrix inducing a (pointed) order isomorphism of triples.

    The linear conditions (intertwining, and the unit equations when pointed)
    are solved exactly first; genuine inconsistency is returned as Infeasible
    with a rational certificate.  Otherwise the affine solution space is
    scanned over a grid of small rationals, each candidate checked with
    verify_module_iso, and the first verified one returned.
    """
    system = _intertwiner_system(t_a, t_b, pointed)
    res = solve_affine_exact(system.coefficients, system.rhs)
    if isinstance(res, AffineInfeasible):
        return Infeasible(system, res.certificate)
    n, m = t_a.n, t_b.n
    grid = _grid_values(denominator_max, value_max)
    tried = 0
    for combo in itertools.product(grid, repeat=len(res.basis)):
        tried += 1
        if tried > candidate_budget:
            return NotFoundWithinBounds(tried - 1)
        flat = list(res.particular)
        for t, direction in zip(combo, res.basis):
            if t:
                flat = [x + t * y for x, y in zip(flat, direction)]
        u = Matrix.from_rows([[flat[i * n + j] for j in range(n)] for i in range(m)])
        try:
            if n == m and verify_module_iso(
                t_a, t_b, ModuleIsoCandidate(u, pointed), iterate_bound
            ):
                return Candidate(u)
        except UndecidedError:
            continue
    return NotFoundWithinBounds(tried)


def search_pointed_intertwiner(
    t_a: DimensionTriple, t_b: DimensionTriple, **bounds
) -> PointedSearchResult:
    """Pointed variant of search_module_iso (the unit must map to the unit)."""
    return search_module_iso(t_a, t_b, pointed=True, **bounds)


# ---------------------------------------------------------------------------
# Tensor maps
# ---------------------------------------------------------------------------


def product_triple(t_a: DimensionTriple, t_b: DimensionTriple) -> DimensionTriple:
    """Triple acted on by the Kronecker product of the two acting matrices."""
    return DimensionTriple(t_a.matrix.kron(t_b.matrix))


def tensor_phi(
    t_a: DimensionTriple, t_b: DimensionTriple, x: DimElement, y: DimElement
) -> DimElement:
    """Image of [a, k] (x) [b, l] in the product triple: [M_A^l a (x) M_B^k b, k + l]."""
    _check_element(t_a, x)
    _check_element(t_b, y)
    ea = _apply_pow(t_a, y.k, x.a)
    eb = _apply_pow(t_b, x.k, y.a)
    return DimElement(tuple(p * q for p in ea for q in eb), x.k + y.k)


def tensor_psi(
    t_a: DimensionTriple, t_b: DimensionTriple, z: DimElement
) -> list[tuple[DimElement, DimElement]]:
    """Decompose a product-triple element into pure tensors at the same stage.

    Writing the vector of [c, k] as sum e_i (x) c_i over the standard basis
    of the first factor yields sum [e_i, k] (x) [c_i, k]; zero blocks are
    dropped.
    """
    n, m = t_a.n, t_b.n
    if len(z.a) != n * m:
        raise ShapeError("element does not live in the product triple")
    out: list[tuple[DimElement, DimElement]] = []
    for i in range(n):
        block = z.a[i * m : (i + 1) * m]
        if any(v != 0 for v in block):
            unit = tuple(int(i == j) for j in range(n))
            out.append((DimElement(unit, z.k), DimElement(tuple(block), z.k)))
    return out


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def element_to_json(x: DimElement) -> dict:
    return {"a": list(x.a), "k": x.k}


def element_from_json(obj) -> DimElement:
    try:
        return DimElement(tuple(int(v) for v in obj["a"]), int(obj["k"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed element payload: {exc}") from exc


def candidate_to_json(cand: ModuleIsoCandidate) -> dict:
    def fmt(x: Fraction) -> int | str:
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    return {
        "matrix": [[fmt(x) for x in row] for row in cand.matrix.rows],
        "pointed": cand.pointed,
    }


def candidate_from_json(obj) -> ModuleIsoCandidate:
    try:
        rows = [[Fraction(str(x)) for x in row] for row in obj["matrix"]]
        return ModuleIsoCandidate(Matrix.from_rows(rows), bool(obj.get("pointed", False)))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ShapeError(f"malformed candidate payload: {exc}") from exc
