"""Generators of the four edge-ideal families and of the colon ideals."""
from __future__ import annotations

from enum import Enum
from itertools import combinations

from .errors import PreconditionViolated
from .graph import Graph
from .poly import FieldSpec, Polynomial, PolyRing, edge_generator


class IdealFamily(str, Enum):
    BINOMIAL_EDGE = "BinomialEdge"
    LSS = "LSS"
    PARITY = "Parity"
    PERMANENTAL = "Permanental"

    @property
    def kind(self) -> str:
        return _KIND[self]

    @property
    def letter(self) -> str:
        return _LETTER[self]

    @classmethod
    def parse(cls, text) -> "IdealFamily":
        if isinstance(text, IdealFamily):
            return text
        key = str(text).strip()
        for fam in cls:
            if key in (fam.value, fam.letter, fam.name):
                return fam
        lowered = key.lower()
        for fam in cls:
            if lowered in (fam.value.lower(), fam.letter.lower(), fam.name.lower()):
                return fam
        raise ValueError(f"unknown ideal family {text!r}")


_KIND = {
    IdealFamily.BINOMIAL_EDGE: "f",
    IdealFamily.LSS: "g",
    IdealFamily.PARITY: "gbar",
    IdealFamily.PERMANENTAL: "perm",
}
_LETTER = {
    IdealFamily.BINOMIAL_EDGE: "J",
    IdealFamily.LSS: "L",
    IdealFamily.PARITY: "I",
    IdealFamily.PERMANENTAL: "Pi",
}


def ideal_generators(fam, g: Graph, field: FieldSpec, ring: PolyRing | None = None) -> list[Polynomial]:
    """One generator per edge, in edge order."""
    fam = IdealFamily.parse(fam)
    ring = ring or PolyRing(g.n)
    return [edge_generator(fam.kind, e, field, ring) for e in g.edges]


def colon_generators(g: Graph, e, fam, field: FieldSpec | None = None) -> list[Polynomial]:
    """Generators of (ideal of G minus e) : (generator of e).

    Only the regime where G is non-bipartite and G minus e is bipartite is
    covered; there the colon adds f_{i,j} for pairs of neighbours of an
    endpoint of e.
    """
    fam = IdealFamily.parse(fam)
    if fam not in (IdealFamily.LSS, IdealFamily.PARITY):
        raise PreconditionViolated("colon generators are defined for LSS and Parity only")
    field = field or FieldSpec.of(0)
    u, v = sorted(e)
    if not g.has_edge(u, v):
        raise PreconditionViolated(f"{{{u},{v}}} is not an edge")
    if g.is_bipartite():
        raise PreconditionViolated("graph is bipartite")
    h = g.remove_edge((u, v))
    if not h.is_bipartite():
        raise PreconditionViolated("graph minus the edge is not bipartite")
    ring = PolyRing(g.n)
    out = ideal_generators(fam, h, field, ring)
    out.extend(edge_generator("f", pair, field, ring) for pair in colon_pairs(g, (u, v)))
    return out


def colon_pairs(g: Graph, e) -> list[tuple[int, int]]:
    """The (i, j) index pairs of the extra f generators, deduplicated."""
    u, v = sorted(e)
    h = g.remove_edge((u, v))
    extra: list[tuple[int, int]] = []
    for w in (u, v):
        for pair in combinations(sorted(h.neighbors(w)), 2):
            if pair not in extra:
                extra.append(pair)
    return extra
