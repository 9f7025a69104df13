"""Term calculus for path algebras with ghost edges.

Elements are rational linear combinations of words in vertices v, edges e and
ghost edges e*.  `reduce` rewrites words with the local relations only:
vertices are orthogonal idempotents absorbed by adjacent edges, non-composable
neighbors kill a word, and e* f collapses to its range vertex or zero.  Every
word then lands on a monomial (real path times ghost path) or vanishes; these
normal forms are canonical for the local relations, and the rewriting is
confluent, so the scan strategy does not matter.

The summation relation (vertex = sum of e e* over its outgoing edges) is not
applied by `reduce`.  Instead `equal_mod_ck2` decides equality modulo it by
expanding monomials to a common ghost depth: within one path-length degree the
expanded monomials of fixed shape are linearly independent, so an element is
zero exactly when all expanded coefficients cancel.  That is what the family
verifier uses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import ParseError, SinkVertex, UnknownGenerator
from .graphs import Edge, Graph

Atom = tuple[str, str]  # ("v", name) | ("e", edge id) | ("g", edge id)
Word = tuple[Atom, ...]

_KILL = "kill"


class AlgebraElement:
    """Formal rational combination of words; treat instances as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | None = None):
        clean = {w: c for w, c in (terms or {}).items() if c != 0}
        self.terms: dict[Word, Fraction] = clean

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"AlgebraElement({format_element(self)!r})"

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return AlgebraElement(out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(-1)

    def scale(self, c: Fraction | int) -> "AlgebraElement":
        c = Fraction(c)
        return AlgebraElement({w: c * v for w, v in self.terms.items()})


def zero_element() -> AlgebraElement:
    return AlgebraElement({})


def vertex_element(g: Graph, v: str) -> AlgebraElement:
    if not g.has_vertex(v):
        raise UnknownGenerator(f"vertex {v!r} not in graph")
    return AlgebraElement({(("v", v),): Fraction(1)})


def edge_element(g: Graph, e: str) -> AlgebraElement:
    if not g.has_edge(e):
        raise UnknownGenerator(f"edge {e!r} not in graph")
    return AlgebraElement({(("e", e),): Fraction(1)})


def ghost_element(g: Graph, e: str) -> AlgebraElement:
    if not g.has_edge(e):
        raise UnknownGenerator(f"edge {e!r} not in graph")
    return AlgebraElement({(("g", e),): Fraction(1)})


def word_element(g: Graph, atoms: Iterable[Atom]) -> AlgebraElement:
    word = tuple(atoms)
    for kind, name in word:
        if kind == "v" and not g.has_vertex(name):
            raise UnknownGenerator(f"vertex {name!r} not in graph")
        if kind in ("e", "g") and not g.has_edge(name):
            raise UnknownGenerator(f"edge {name!r} not in graph")
    return AlgebraElement({word: Fraction(1)})


def star(x: AlgebraElement) -> AlgebraElement:
    """Adjoint: reverse words, swap edges with ghosts, fix vertices."""
    flip = {"e": "g", "g": "e", "v": "v"}
    return AlgebraElement(
        {
            tuple((flip[k], n) for k, n in reversed(w)): c
            for w, c in x.terms.items()
        }
    )


# ---------------------------------------------------------------------------
# Rewriting
# ---------------------------------------------------------------------------


class _Ctx:
    """Per-call lookup tables so rewriting does not rescan the edge list."""

    def __init__(self, g: Graph):
        self.graph = g
        self.edge: dict[str, Edge] = {e.id: e for e in g.edges}
        self.out: dict[str, tuple[Edge, ...]] = {
            v: tuple(e for e in g.edges if e.src == v) for v in g.vertices
        }


def _rewrite_pair(ctx: _Ctx, x: Atom, y: Atom):
    """One local rewrite: list of atoms, the kill marker, or None when already valid."""
    (tx, ix), (ty, iy) = x, y
    if tx == "v":
        if ty == "v":
            return [x] if ix == iy else _KILL
        if ty == "e":
            return [y] if ctx.edge[iy].src == ix else _KILL
        return [y] if ctx.edge[iy].dst == ix else _KILL
    if tx == "e":
        e = ctx.edge[ix]
        if ty == "v":
            return [x] if e.dst == iy else _KILL
        if ty == "e":
            return None if e.dst == ctx.edge[iy].src else _KILL
        return None if e.dst == ctx.edge[iy].dst else _KILL
    # tx == "g"
    e = ctx.edge[ix]
    if ty == "v":
        return [x] if e.src == iy else _KILL
    if ty == "e":
        return [("v", e.dst)] if ix == iy else _KILL
    return None if e.src == ctx.edge[iy].dst else _KILL


def _reduce_word(ctx: _Ctx, word: Word, strategy: str) -> Word | None:
    w = list(word)
    while len(w) > 1:
        positions: Sequence[int] = range(len(w) - 1)
        if strategy == "rightmost":
            positions = range(len(w) - 2, -1, -1)
        for idx in positions:
            res = _rewrite_pair(ctx, w[idx], w[idx + 1])
            if res == _KILL:
                return None
            if res is not None:
                w[idx : idx + 2] = res
                break
        else:
            return tuple(w)
    return tuple(w)


def reduce(g: Graph, x: AlgebraElement, strategy: str = "leftmost") -> AlgebraElement:
    """Rewrite every word to its monomial normal form and collect like terms.

    strategy picks which reducible pair fires first ("leftmost" or
    "rightmost"); the result is the same either way, which the test suite
    exercises as a confluence check.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ParseError(f"unknown strategy {strategy!r}")
    ctx = _Ctx(g)
    out: dict[Word, Fraction] = {}
    for word, coeff in x.terms.items():
        nf = _reduce_word(ctx, word, strategy)
        if nf is not None:
            out[nf] = out.get(nf, Fraction(0)) + coeff
    return AlgebraElement(out)


def multiply(g: Graph, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Product, returned in reduced form."""
    out: dict[Word, Fraction] = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            w = w1 + w2
            out[w] = out.get(w, Fraction(0)) + c1 * c2
    return reduce(g, AlgebraElement(out))


# ---------------------------------------------------------------------------
# Monomials and grading
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """Normal-form word: real path mu, ghost path gamma, and their common range."""

    mu: tuple[str, ...]
    gamma: tuple[str, ...]
    base: str


def word_to_monomial(g: Graph, word: Word) -> Monomial:
    """Split a normal-form word into paths; raises if the word is not normal."""
    mu = [n for k, n in word if k == "e"]
    ghosts = [n for k, n in word if k == "g"]
    kinds = "".join(k for k, _ in word)
    if kinds == "v":
        return Monomial((), (), word[0][1])
    if re.fullmatch("e*g*", kinds) is None or not word:
        raise ParseError("word is not in normal form")
    gamma = tuple(reversed(ghosts))
    if mu:
        base = g.edge(mu[-1]).dst
    else:
        base = g.edge(gamma[-1]).dst
    return Monomial(tuple(mu), gamma, base)


@dataclass(frozen=True)
class WeightMap:
    """Rational weights on edges; ghost edges carry the negated weight."""

    weights: tuple[tuple[str, Fraction], ...]

    @classmethod
    def from_mapping(cls, g: Graph, mapping: Mapping[str, Fraction | int | str]) -> "WeightMap":
        table = {}
        for e, w in mapping.items():
            if not g.has_edge(e):
                raise UnknownGenerator(f"edge {e!r} not in graph")
            table[e] = Fraction(str(w))
        missing = [e.id for e in g.edges if e.id not in table]
        if missing:
            raise UnknownGenerator(f"weights missing for edges: {', '.join(missing)}")
        return cls(tuple(sorted(table.items())))

    @classmethod
    def uniform(cls, g: Graph, w: Fraction | int | str = 1) -> "WeightMap":
        w = Fraction(str(w))
        return cls(tuple((e.id, w) for e in g.edges))

    def weight(self, edge_id: str) -> Fraction:
        for e, w in self.weights:
            if e == edge_id:
                return w
        raise UnknownGenerator(f"edge {edge_id!r} has no weight")

    def degree_of_word(self, word: Word) -> Fraction:
        total = Fraction(0)
        table = dict(self.weights)
        for kind, name in word:
            if kind == "e":
                total += table[name]
            elif kind == "g":
                total -= table[name]
        return total


def graded_decompose(
    g: Graph, w: WeightMap, x: AlgebraElement
) -> dict[Fraction, AlgebraElement]:
    """Split a (reduced) element into its homogeneous components by degree."""
    x = reduce(g, x)
    buckets: dict[Fraction, dict[Word, Fraction]] = {}
    for word, coeff in x.terms.items():
        d = w.degree_of_word(word)
        buckets.setdefault(d, {})[word] = coeff
    return {d: AlgebraElement(t) for d, t in sorted(buckets.items())}


# ---------------------------------------------------------------------------
# The summation relation
# ---------------------------------------------------------------------------


def ck2_expand(g: Graph, x: AlgebraElement, v: str) -> AlgebraElement:
    """Replace the standalone vertex monomial v by the sum of e e* over its out-edges."""
    if not g.has_vertex(v):
        raise UnknownGenerator(f"vertex {v!r} not in graph")
    outs = g.out_edges(v)
    if not outs:
        raise SinkVertex(f"vertex {v!r} emits no edges")
    x = reduce(g, x)
    target: Word = (("v", v),)
    out: dict[Word, Fraction] = {}
    for word, coeff in x.terms.items():
        if word == target:
            for e in outs:
                w: Word = (("e", e.id), ("g", e.id))
                out[w] = out.get(w, Fraction(0)) + coeff
        else:
            out[word] = out.get(word, Fraction(0)) + coeff
    return AlgebraElement(out)


def _monomial_key(g: Graph, word: Word) -> tuple[tuple[str, ...], tuple[str, ...], str]:
    m = word_to_monomial(g, word)
    return (m.mu, m.gamma, m.base)


def equal_mod_ck2(g: Graph, x: AlgebraElement, y: AlgebraElement) -> bool:
    """Decide x == y modulo all relations, including the summation relation.

    Works degree by degree (path-length grading): each monomial is expanded
    through mu gamma* = sum over e at the base of (mu e)(gamma e)* until its
    ghost path reaches the maximal length in its degree class or its base is
    a sink.  Expanded monomials of a fixed shape are linearly independent, so
    the difference is zero exactly when everything cancels.
    """
    diff = reduce(g, x - y)
    if diff.is_zero():
        return True
    ctx = _Ctx(g)
    groups: dict[int, list[tuple[tuple[str, ...], tuple[str, ...], str, Fraction]]] = {}
    for word, coeff in diff.terms.items():
        mu, gamma, base = _monomial_key(g, word)
        groups.setdefault(len(mu) - len(gamma), []).append((mu, gamma, base, coeff))
    for monos in groups.values():
        depth = max(len(gamma) for _, gamma, _, _ in monos)
        bucket: dict[tuple, Fraction] = {}
        stack = list(monos)
        while stack:
            mu, gamma, base, coeff = stack.pop()
            outs = ctx.out[base]
            if len(gamma) >= depth or not outs:
                key = (mu, gamma, base)
                bucket[key] = bucket.get(key, Fraction(0)) + coeff
                continue
            for e in outs:
                stack.append((mu + (e.id,), gamma + (e.id,), e.dst, coeff))
        if any(c != 0 for c in bucket.values()):
            return False
    return True


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyAssignment:
    """Images of one graph's generators inside the term algebra of another."""

    target: Graph
    vertex_images: tuple[tuple[str, AlgebraElement], ...]
    edge_images: tuple[tuple[str, AlgebraElement], ...]
    ghost_images: tuple[tuple[str, AlgebraElement], ...]

    @classmethod
    def build(
        cls,
        target: Graph,
        vertex_images: Mapping[str, AlgebraElement],
        edge_images: Mapping[str, AlgebraElement],
        ghost_images: Mapping[str, AlgebraElement] | None = None,
    ) -> "FamilyAssignment":
        if ghost_images is None:
            ghost_images = {e: star(x) for e, x in edge_images.items()}
        return cls(
            target,
            tuple(sorted(vertex_images.items())),
            tuple(sorted(edge_images.items())),
            tuple(sorted(ghost_images.items())),
        )

    def q(self, v: str) -> AlgebraElement:
        for name, x in self.vertex_images:
            if name == v:
                return x
        raise UnknownGenerator(f"no image assigned to vertex {v!r}")

    def t(self, e: str) -> AlgebraElement:
        for name, x in self.edge_images:
            if name == e:
                return x
        raise UnknownGenerator(f"no image assigned to edge {e!r}")

    def tstar(self, e: str) -> AlgebraElement:
        for name, x in self.ghost_images:
            if name == e:
                return x
        raise UnknownGenerator(f"no ghost image assigned to edge {e!r}")


def verify_family(fa: FamilyAssignment, source: Graph) -> bool:
    """Check the defining relations of the source graph on the assigned images.

    Verifies, inside the target term algebra and modulo the summation
    relation: orthogonality of the vertex images, the source/range absorption
    laws, ghost-edge orthogonality, and (at every non-sink of the source) the
    summation identity itself.
    """
    tg = fa.target
    for v in source.vertices:
        fa.q(v)
    for e in source.edges:
        fa.t(e.id)
        fa.tstar(e.id)

    def eq(a: AlgebraElement, b: AlgebraElement) -> bool:
        return equal_mod_ck2(tg, a, b)

    zero = zero_element()
    for u in source.vertices:
        qu = fa.q(u)
        for v in source.vertices:
            want = qu if u == v else zero
            if not eq(multiply(tg, qu, fa.q(v)), want):
                return False
    for e in source.edges:
        te, tse = fa.t(e.id), fa.tstar(e.id)
        qs, qr = fa.q(e.src), fa.q(e.dst)
        if not eq(multiply(tg, qs, te), te) or not eq(multiply(tg, te, qr), te):
            return False
        if not eq(multiply(tg, qr, tse), tse) or not eq(multiply(tg, tse, qs), tse):
            return False
    for e in source.edges:
        for f in source.edges:
            want = fa.q(e.dst) if e.id == f.id else zero
            if not eq(multiply(tg, fa.tstar(e.id), fa.t(f.id)), want):
                return False
    for v in source.vertices:
        outs = source.out_edges(v)
        if not outs:
            continue
        total = zero_element()
        for e in outs:
            total = total + multiply(tg, fa.t(e.id), fa.tstar(e.id))
        if not eq(total, fa.q(v)):
            return False
    return True


# ---------------------------------------------------------------------------
# Canonical families for moves
# ---------------------------------------------------------------------------


def in_split_family(g: Graph, p) -> tuple[Graph, FamilyAssignment]:
    """The canonical generating family of an in-split inside the split algebra.

    Each vertex maps to its first copy; the edge e in block i at its range
    maps to the sum over edges f leaving that range of e.1 f.i f.1*.  The
    source graph must have no sinks for this to be a family.
    """
    from .moves import in_split

    h, _ = in_split(g, p)
    non_source = {v for v in g.vertices if g.in_edges(v)}

    def copy_name(v: str, i: int) -> str:
        return f"{v}.{i}" if v in non_source else v

    q = {v: vertex_element(h, copy_name(v, 1)) for v in g.vertices}
    t: dict[str, AlgebraElement] = {}
    for e in g.edges:
        v = e.dst
        blocks = p.blocks_at(v)
        i = next(idx + 1 for idx, b in enumerate(blocks) if e.id in b)
        total = zero_element()
        for f in g.out_edges(v):
            word: Word = (
                ("e", f"{e.id}.1"),
                ("e", f"{f.id}.{i}"),
                ("g", f"{f.id}.1"),
            )
            total = total + word_element(h, word)
        t[e.id] = total
    return h, FamilyAssignment.build(h, q, t)


def bridge_family(bg) -> FamilyAssignment:
    """The appendix-style family of a bridge: vertices stay, edges map to crossing paths."""
    t = {
        l: word_element(bg.graph, (("e", first), ("e", second)))
        for l, (first, second) in bg.theta1.items()
    }
    q = {v: vertex_element(bg.graph, v) for v in bg.e1.vertices}
    return FamilyAssignment.build(bg.graph, q, t)


# ---------------------------------------------------------------------------
# Parsing and printing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<op>[+-])|(?P<num>\d+(?:/\d+)?)|(?P<gen>[A-Za-z_][A-Za-z0-9_.|]*\*?))")


def parse_element(g: Graph, text: str) -> AlgebraElement:
    """Parse `3/2 e1 e2* + v1 - e3` style expressions over the graph's generators."""
    pos = 0
    tokens: list[tuple[str, str]] = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ParseError(f"cannot tokenize {rest[:20]!r}")
        pos = m.end()
        for kind in ("op", "num", "gen"):
            if m.group(kind) is not None:
                tokens.append((kind, m.group(kind)))
                break
    if not tokens:
        raise ParseError("empty expression")

    result = zero_element()
    idx = 0

    def parse_term(sign: int) -> AlgebraElement:
        nonlocal idx
        coeff = Fraction(sign)
        saw_number = False
        if idx < len(tokens) and tokens[idx][0] == "num":
            coeff *= Fraction(tokens[idx][1])
            saw_number = True
            idx += 1
        atoms: list[Atom] = []
        while idx < len(tokens) and tokens[idx][0] == "gen":
            tok = tokens[idx][1]
            idx += 1
            starred = tok.endswith("*")
            name = tok[:-1] if starred else tok
            if g.has_vertex(name):
                if starred:
                    raise ParseError(f"vertices are self-adjoint; write {name!r} without *")
                atoms.append(("v", name))
            elif g.has_edge(name):
                atoms.append(("g" if starred else "e", name))
            else:
                raise UnknownGenerator(f"{name!r} is neither a vertex nor an edge")
        if not atoms:
            if saw_number:
                # a bare scalar means that multiple of the unit, the sum of
                # all vertices; in particular "0" parses to the zero element
                unit = zero_element()
                for v in g.vertices:
                    unit = unit + vertex_element(g, v)
                return unit.scale(coeff)
            raise ParseError("term without generators")
        return word_element(g, atoms).scale(coeff)

    sign = 1
    if tokens[idx][0] == "op":
        sign = -1 if tokens[idx][1] == "-" else 1
        idx += 1
    result = result + parse_term(sign)
    while idx < len(tokens):
        kind, val = tokens[idx]
        if kind != "op":
            raise ParseError(f"expected + or - before {val!r}")
        idx += 1
        result = result + parse_term(-1 if val == "-" else 1)
    return result


def format_element(x: AlgebraElement) -> str:
    if x.is_zero():
        return "0"

    def word_str(word: Word) -> str:
        return " ".join(n if k != "g" else f"{n}*" for k, n in word)

    pieces = []
    for word in sorted(x.terms, key=lambda w: (len(w), w)):
        coeff = x.terms[word]
        mag = abs(coeff)
        body = word_str(word)
        if mag != 1:
            body = f"{mag} {body}"
        pieces.append((coeff < 0, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for negative, body in pieces[1:]:
        out += (" - " if negative else " + ") + body
    return out
