"""Complete / almost complete intersection classification by graph shape."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import RegimeUnsupported
from .graph import Graph, GraphShape, recognize_shape
from .ideals import IdealFamily
from .poly import FieldSpec

CI = "CI"
ACI = "ACI"
NEITHER = "Neither"
UNKNOWN = "Unknown"

CHAR2_REASON = "theorems assume char != 2"
PERM_CHAR2_REASON = "char 2: Pi=J not covered"


@dataclass(frozen=True)
class ClassificationResult:
    status: str
    witness: str
    reason: str | None = None
    shape: GraphShape | None = None
    vertices: tuple[int, ...] = ()
    per_component: tuple["ClassificationResult", ...] = dc_field(default=())
    case: str = "union"

    @property
    def label(self) -> str:
        return f"Unknown({self.reason})" if self.status == UNKNOWN else self.status

    def to_json(self):
        out = {"status": self.status, "witness": self.witness, "case": self.case}
        if self.reason:
            out["reason"] = self.reason
        if self.shape is not None:
            out["shape"] = {"tag": self.shape.tag, "witness": self.shape.witness}
        if self.vertices:
            out["vertices"] = list(self.vertices)
        if self.per_component:
            out["per_component"] = [c.to_json() for c in self.per_component]
        return out


def _degrees(g: Graph) -> dict[int, int]:
    return {v: g.degree(v) for v in g.vertices}


def _deg3_ok(g: Graph, cubic: list[int]) -> bool:
    return len(cubic) <= 1 or (len(cubic) == 2 and g.has_edge(*cubic))


def _bipartite_status(g: Graph, shape: GraphShape):
    deg = _degrees(g)
    cubic = [v for v, d in deg.items() if d == 3]
    if shape.tag == "Path":
        return CI, "path", "path"
    if max(deg.values()) > 3 or not _deg3_ok(g, cubic):
        return NEITHER, "degree pattern excluded for bipartite graphs", "neither"
    if shape.tag == "Tree":
        return ACI, "edge added between two disjoint paths", "tree_aci"
    if shape.tag in ("EvenCycle", "EvenUnicyclic"):
        cyc = set(shape.witness["cycle"])
        if all(v in cyc for v in cubic):
            return ACI, "edge between two vertices of a path, even girth", "even_unicyclic_aci"
        return NEITHER, "degree-3 vertex off the even cycle", "neither"
    return NEITHER, "bipartite graph with two or more independent cycles", "neither"


def _odd_unicyclic_status(g: Graph, shape: GraphShape):
    deg = _degrees(g)
    cyc = shape.witness["cycle"]
    cubic = sorted(v for v, d in deg.items() if d == 3)
    if max(deg.values()) > 3:
        return NEITHER, "vertex of degree >= 4", "neither"
    if len(cubic) <= 2 and _deg3_ok(g, cubic):
        if len(cubic) == 2 and all(v in cyc for v in cubic):
            return ACI, "odd unicyclic type (2): edge between two vertices of a path, odd girth", "odd_unicyclic_2"
        return ACI, "odd unicyclic type (1): edge between an odd cycle and a path", "odd_unicyclic_1"
    if len(cyc) == 3 and sorted(cyc) == cubic:
        return ACI, "odd unicyclic type (3): path attached to each vertex of a triangle", "odd_unicyclic_3"
    return NEITHER, "degree-3 pattern excluded for odd unicyclic graphs", "neither"


def _is_path_hanging_at(h: Graph, cycle, i: int) -> bool:
    """H is the cycle plus one path attached at its endpoint to vertex i."""
    cyc = set(cycle)
    for v in h.vertices:
        d = h.degree(v)
        if v == i:
            if d != 3:
                return False
        elif v in cyc:
            if d != 2:
                return False
        elif d > 2:
            return False
    return True


def _chorded_status(g: Graph, shape: GraphShape):
    u, v = shape.witness["chord"]
    h = g.remove_edge((u, v))
    if h.degree(u) != 2 or h.degree(v) != 2:
        return None
    hshape = recognize_shape(h)
    cyc = hshape.witness["cycle"]
    if len(cyc) % 2 == 1:
        if hshape.tag == "OddCycle":
            return ACI, "chord added to an odd cycle", "chord_odd_cycle"
        return NEITHER, "chord added to an odd unicyclic graph that is not a cycle", "neither"
    if hshape.tag == "EvenCycle":
        return ACI, "chord added to an even cycle", "chord_even_cycle"
    common = [i for i in cyc if h.has_edge(u, i) and h.has_edge(v, i)]
    for i in common:
        if _is_path_hanging_at(h, cyc, i):
            return ACI, "chord added to an even cycle with a path at the common neighbour of the chord ends", "chord_even_path"
    return NEITHER, "chord added to an even unicyclic graph outside the covered types", "neither"


def _cactus_status(g: Graph, shape: GraphShape):
    c1, c2 = shape.witness["cycles"]
    bridge = shape.witness["bridge_path"]
    if (
        len(c1) % 2 == 1 and len(c2) % 2 == 1 and len(bridge) == 2
        and len(c1) + len(c2) == g.n
    ):
        return ACI, "edge added between two disjoint odd cycles", "cactus_aci"
    return NEITHER, "non-bipartite bicyclic cactus outside the covered type", "neither"


def _height_fallback(g: Graph, field: FieldSpec):
    """mu - height >= 2 rules out CI and ACI whenever the height is computable."""
    from .primes import ideal_height

    try:
        h = ideal_height(IdealFamily.PARITY, g, field)
    except RegimeUnsupported:
        return None
    if g.m - h >= 2:
        return NEITHER, f"height bound: mu - height = {g.m - h} >= 2", "height_bound"
    return None


def classify_connected(g: Graph, field: FieldSpec, vertices=()) -> ClassificationResult:
    shape = recognize_shape(g)
    char2 = field.characteristic == 2

    def result(status, witness, case, reason=None):
        return ClassificationResult(status, witness, reason, shape, tuple(vertices), case=case)

    if g.is_bipartite():
        return result(*_bipartite_status(g, shape))
    n, m = g.n, g.m
    if shape.tag == "OddCycle":
        return result(CI, "odd cycle", "odd_cycle")
    if m >= n + 2:
        return result(NEITHER, "non-bipartite with |E| >= n+2: height <= n", "dense")
    if char2:
        status = _height_fallback(g, field)
        if status is not None:
            return result(*status)
        return result(UNKNOWN, "not covered", "unknown", CHAR2_REASON)
    if shape.tag == "OddUnicyclic":
        return result(*_odd_unicyclic_status(g, shape))
    status = None
    if shape.tag == "BicyclicCactus":
        status = _cactus_status(g, shape)
    elif shape.tag == "ChordedCycle":
        status = _chorded_status(g, shape)
    if status is None:
        status = _height_fallback(g, field)
    if status is None:
        return result(UNKNOWN, "not covered", "unknown", "bicyclic shape outside the classified families")
    return result(*status)


def _combine(parts: list[ClassificationResult]) -> ClassificationResult:
    """A disjoint union is CI iff all parts are; ACI iff exactly one part is ACI, rest CI."""
    non_ci = [p for p in parts if p.status != CI]
    if not non_ci:
        return ClassificationResult(CI, "every component is CI", per_component=tuple(parts))
    if len(non_ci) >= 2:
        return ClassificationResult(
            NEITHER, "two or more components are not CI", per_component=tuple(parts)
        )
    (only,) = non_ci
    return ClassificationResult(
        only.status, f"one non-CI component: {only.witness}", only.reason, per_component=tuple(parts)
    )


def classify(fam, g: Graph, field: FieldSpec) -> ClassificationResult:
    fam = IdealFamily.parse(fam)
    if fam == IdealFamily.BINOMIAL_EDGE:
        raise RegimeUnsupported("classification covers LSS, Parity and Permanental")
    if fam == IdealFamily.PERMANENTAL and field.characteristic == 2:
        return ClassificationResult(UNKNOWN, "not covered", PERM_CHAR2_REASON, case="unknown")
    comps = g.components()
    if len(comps) <= 1:
        return classify_connected(g, field, tuple(g.vertices))
    parts = [classify_connected(g.induced(c), field, c) for c in comps]
    return _combine(parts)
