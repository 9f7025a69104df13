"""Flow-equivalence invariants and Bratteli level data.

The Bowen-Franks group of a nonnegative integer matrix A is the cokernel
Z^n / (I - A) Z^n, read off the Smith normal form of I - A.  Together with
the sign of det(I - A) it classifies irreducible nontrivial edge shifts up
to flow equivalence, which is what `flow_equivalent` decides.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HasSinks, InvalidMatrix, NotIrreducibleNontrivial, ShapeError
from .graphs import Graph, classify
from .linalg import Matrix, char_poly, smith_normal_form
from .polynomials import Poly


@dataclass(frozen=True)
class AbelianGroupFP:
    """Finitely generated abelian group: torsion invariant factors and free rank.

    Invariant factors are the Smith diagonal entries greater than one, in
    divisibility order; equality of these tuples is group isomorphism.
    """

    factors: tuple[int, ...]
    free_rank: int

    def describe(self) -> str:
        parts = [f"Z/{f}" for f in self.factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def _check_adjacency(a: Matrix) -> None:
    if not a.is_square:
        raise ShapeError("adjacency matrix must be square")
    if not a.is_integral() or not a.is_nonnegative():
        raise InvalidMatrix("adjacency entries must be nonnegative integers")


def bowen_franks(a: Matrix) -> AbelianGroupFP:
    """Cokernel of I - a as an abstract abelian group."""
    _check_adjacency(a)
    n = a.nrows
    _, d, _ = smith_normal_form(Matrix.identity(n) - a)
    diag = [int(d[i, i]) for i in range(n)]
    return AbelianGroupFP(
        factors=tuple(x for x in diag if x > 1),
        free_rank=sum(1 for x in diag if x == 0),
    )


def det_i_minus_a(a: Matrix) -> int:
    _check_adjacency(a)
    return int((Matrix.identity(a.nrows) - a).det())


def char_poly_away_from_zero(a: Matrix) -> Poly:
    """Characteristic polynomial with every factor of x stripped."""
    _check_adjacency(a)
    p = char_poly(a)
    coeffs = list(p.coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    return Poly.from_coeffs(coeffs)


def flow_equivalent(g: Graph, h: Graph) -> bool:
    """Decide flow equivalence of two irreducible, nontrivial edge shifts.

    Requires both graphs irreducible and not single cycles; in that range the
    pair (Bowen-Franks group, sign of det(I - A)) is a complete invariant.
    Raises NotIrreducibleNontrivial outside that range rather than guessing.
    """
    for name, graph in (("first", g), ("second", h)):
        report = classify(graph)
        if not report.irreducible or report.trivial:
            raise NotIrreducibleNontrivial(
                f"{name} graph must be irreducible and not a single cycle"
            )
    a, b = g.adjacency(), h.adjacency()
    return bowen_franks(a) == bowen_franks(b) and det_i_minus_a(a) == det_i_minus_a(b)


# ---------------------------------------------------------------------------
# Bratteli levels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BratteliDiagram:
    """Level sizes k_0 = (1,...,1), k_{n+1} = A^T k_n, plus the step matrix."""

    levels: tuple[tuple[int, ...], ...]
    step: Matrix

    @property
    def depth(self) -> int:
        return len(self.levels) - 1


def bratteli(g: Graph, depth: int) -> BratteliDiagram:
    """Multiplicity data of the stationary tower of matrix algebras over g.

    The graph may not have sinks (every vertex must keep emitting); depth is
    the number of inclusion steps computed.
    """
    if depth < 0:
        raise ShapeError("depth must be nonnegative")
    if g.sinks():
        raise HasSinks(f"graph has sinks: {', '.join(g.sinks())}")
    at = g.adjacency().transpose()
    levels = [tuple(1 for _ in g.vertices)]
    for _ in range(depth):
        levels.append(tuple(int(x) for x in at.apply(levels[-1])))
    return BratteliDiagram(tuple(levels), at)


def bratteli_to_dot(g: Graph, diagram: BratteliDiagram) -> str:
    """DOT rendering with one row per level and A(i,j) parallel strands per step."""
    a = g.adjacency()
    lines = ["digraph {", "  rankdir=TB;"]
    for n, level in enumerate(diagram.levels):
        lines.append("  { rank=same; " + " ".join(
            f'"{v}@{n}" [label="{v}:{level[i]}"];' for i, v in enumerate(g.vertices)
        ) + " }")
    for n in range(diagram.depth):
        for i, vi in enumerate(g.vertices):
            for j, vj in enumerate(g.vertices):
                for _ in range(int(a[i, j])):
                    lines.append(f'  "{vi}@{n}" -> "{vj}@{n + 1}";')
    lines.append("}")
    return "\n".join(lines)


def invariants_report(a: Matrix) -> dict:
    """JSON-ready bundle of the flow invariants of one adjacency matrix."""
    bf = bowen_franks(a)
    cp = char_poly_away_from_zero(a)
    return {
        "bf": {"factors": list(bf.factors), "rank": bf.free_rank},
        "bf_description": bf.describe(),
        "det_i_minus_a": det_i_minus_a(a),
        "char_poly_away_from_zero": [str(c) for c in cp.coeffs],
        "char_poly_pretty": cp.pretty(),
    }
