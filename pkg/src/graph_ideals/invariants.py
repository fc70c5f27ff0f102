"""Theorem-gated homological invariants of S/I for the edge-ideal families.

Nothing here is computed from a free resolution: every field is filled in
only when a structural theorem determines it, and each filled field carries
a provenance string.  Fields without a covering theorem stay ``None``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

from .classify import ACI, CI, classify
from .errors import NotSupported, RegimeUnsupported
from .graph import Graph, has_induced, recognize_shape
from .ideals import IdealFamily
from .poly import FieldSpec
from .primes import height_route, ideal_height

NOT_COVERED = "not covered"

P_AUSLANDER = "Auslander-Buchsbaum: depth = 2n - pd"
P_DIM = "dim S/I = 2n - height"
P_KOSZUL = "complete intersection: Koszul complex is a minimal resolution, pd = mu = height"
P_ODD_UNI = "connected odd unicyclic graph: pd(S/I) = n for the parity ideal"
P_EVEN_CM = "even unicyclic ACI: S/I is CM iff paths are attached to two adjacent vertices of C4"
P_EVEN_ACM = "even unicyclic ACI that is not CM: depth = n, S/I almost CM"
P_CHORD_ODD = "chord added to an odd cycle: pd = n+1 if C4-free, pd = n if C4 is induced"
P_CHORD_EVEN = "chord added to an even cycle (non-bipartite): pd = n+1"
P_KITE = "chord in an even cycle with a path at the common neighbour: pd = n+1 if Kite-free, n if Kite is induced"
P_TREE_ACM = "tree: ACI iff S/I is almost Cohen-Macaulay"
P_REES = "ACI ideal: gr_S(I) is CM iff depth >= dim - 1; Rees algebra CM iff also height > 0"
P_REES_CI = "complete intersection of positive height: Rees algebra and gr_S(I) are CM"
P_BETTI_EQ = "LSS and parity ideals have identical graded Betti numbers"
P_ETA = "permanental ideal is the image of the parity ideal under eta (char != 2)"


@dataclass
class InvariantReport:
    mu: int
    height: int | None = None
    dim_quotient: int | None = None
    pd: int | None = None
    depth: int | None = None
    beta2: int | None = None
    is_CM: bool | None = None
    is_almost_CM: bool | None = None
    rees_CM: bool | None = None
    assoc_gr_CM: bool | None = None
    provenance: dict = dc_field(default_factory=dict)

    FIELDS = (
        "mu", "height", "dim_quotient", "pd", "depth", "beta2",
        "is_CM", "is_almost_CM", "rees_CM", "assoc_gr_CM",
    )

    def set(self, name, value, why):
        setattr(self, name, value)
        self.provenance[name] = why

    def to_json(self):
        out = {}
        for name in self.FIELDS:
            value = getattr(self, name)
            out[name] = value
        out["provenance"] = {
            name: self.provenance.get(name, NOT_COVERED) for name in self.FIELDS
        }
        return out

    def check_identities(self, n: int) -> list[str]:
        errs = []
        if self.pd is not None and self.depth is not None and self.depth != 2 * n - self.pd:
            errs.append("depth != 2n - pd")
        if self.height is not None and self.dim_quotient is not None and self.dim_quotient != 2 * n - self.height:
            errs.append("dim != 2n - height")
        if self.is_almost_CM and self.depth is not None and self.dim_quotient is not None:
            if self.depth != self.dim_quotient - 1:
                errs.append("almost CM but depth != dim - 1")
        if self.is_CM and self.depth is not None and self.dim_quotient is not None:
            if self.depth != self.dim_quotient:
                errs.append("CM but depth != dim")
        return errs


def _shape_tag(g: Graph) -> str | None:
    if not g.is_connected():
        return None
    return recognize_shape(g).tag


def betti2(g: Graph, fam=IdealFamily.LSS) -> int:
    """beta_2 = beta_{2,4} for trees and odd unicyclic graphs."""
    fam = IdealFamily.parse(fam)
    if fam not in (IdealFamily.LSS, IdealFamily.PARITY):
        raise NotSupported(f"betti2 covers LSS and Parity, not {fam.value}")
    tag = _shape_tag(g)
    cubes = sum(comb(g.degree(v), 3) for v in g.vertices)
    if tag in ("Path", "Tree"):
        return comb(g.n - 1, 2) + cubes
    if tag in ("OddCycle", "OddUnicyclic"):
        return comb(g.n, 2) + cubes
    raise NotSupported(f"betti2 formula covers trees and odd unicyclic graphs, not {tag or 'disconnected'}")


def _parity_transport(fam: IdealFamily, field: FieldSpec) -> str | None:
    """Provenance when the parity report applies verbatim, None otherwise."""
    if fam == IdealFamily.PARITY:
        return ""
    if fam == IdealFamily.LSS:
        return P_BETTI_EQ
    if fam == IdealFamily.PERMANENTAL and field.characteristic != 2:
        return P_ETA
    return None


def homological_report(g: Graph, fam, field: FieldSpec) -> InvariantReport:
    fam = IdealFamily.parse(fam)
    n = g.n
    rep = InvariantReport(mu=g.m, provenance={"mu": "one generator per edge, all minimal"})
    try:
        h = ideal_height(fam, g, field)
        rep.set("height", h, f"minimal primes: {height_route(fam, g, field)}")
        rep.set("dim_quotient", 2 * n - h, P_DIM)
    except RegimeUnsupported:
        h = None
    via = _parity_transport(fam, field)
    if via is None or h is None:
        return rep

    def tag(text):
        return f"{text}; {via}" if via else text

    try:
        rep.set("beta2", betti2(g, IdealFamily.PARITY), tag("second Betti number formula"))
    except NotSupported:
        pass

    cls = classify(IdealFamily.PARITY, g, field)
    case = cls.case
    pd = None
    why = None
    if cls.status == CI:
        pd, why = g.m, P_KOSZUL
    elif case in ("odd_unicyclic_1", "odd_unicyclic_2", "odd_unicyclic_3") or (
        case in ("neither", "unknown") and _shape_tag(g) == "OddUnicyclic"
    ):
        pd, why = n, P_ODD_UNI
    elif case == "even_unicyclic_aci":
        if _even_unicyclic_cm(g):
            pd, why = n - 1, P_EVEN_CM
        else:
            pd, why = n, P_EVEN_ACM
    elif case == "chord_odd_cycle":
        pd, why = (n if has_induced(g, "C4") else n + 1), P_CHORD_ODD
    elif case == "chord_even_cycle":
        pd, why = n + 1, P_CHORD_EVEN
    elif case == "chord_even_path":
        pd, why = (n if has_induced(g, "Kite") else n + 1), P_KITE

    if pd is not None:
        rep.set("pd", pd, tag(why))
        rep.set("depth", 2 * n - pd, P_AUSLANDER)
        dim = rep.dim_quotient
        rep.set("is_CM", rep.depth == dim, tag("depth vs dim"))
        rep.set("is_almost_CM", rep.depth == dim - 1, tag("depth vs dim"))
    if _shape_tag(g) in ("Path", "Tree"):
        rep.set("is_almost_CM", cls.status == ACI, tag(P_TREE_ACM))

    if g.m and h > 0:
        if cls.status == CI:
            rep.set("rees_CM", True, tag(P_REES_CI))
            rep.set("assoc_gr_CM", True, tag(P_REES_CI))
        elif cls.status == ACI and (
            rep.is_almost_CM or rep.is_CM
            or (rep.depth is not None and rep.depth >= rep.dim_quotient - 1)
        ):
            rep.set("rees_CM", True, tag(P_REES))
            rep.set("assoc_gr_CM", True, tag(P_REES))
    return rep


def _even_unicyclic_cm(g: Graph) -> bool:
    """C4 with paths attached at exactly two adjacent cycle vertices."""
    shape = recognize_shape(g)
    cyc = shape.witness["cycle"]
    if len(cyc) != 4:
        return False
    cubic = [v for v in g.vertices if g.degree(v) == 3]
    return len(cubic) == 2 and all(v in cyc for v in cubic) and g.has_edge(*cubic)


# --- linear type -------------------------------------------------------------

P_DSEQ = "ACI LSS ideal over an infinite field, char != 2: generated by a d-sequence, hence of linear type"
P_DSEQ_FINITE = "generators form a d-sequence over any field of char != 2 (odd unicyclic types (1)/(2), bicyclic cactus)"
P_REGSEQ = "complete intersection: generated by a regular sequence, hence of linear type"
P_CONJ = "odd unicyclic LSS ideals are conjectured to be of linear type"
P_FIBER = "trees and odd unicyclic graphs: mu(L) = analytic spread, fiber cone is a polynomial ring"
P_K4 = "K4 induced: quadratic Pluecker relation in the Rees ideal, not of linear type"
P_K23 = "bipartite with K23 induced: cubic relation in the Rees ideal, not of linear type"
FINITE_CAVEAT = "d-sequence theorem assumes an infinite field; finite field not covered by it"


def linear_type_report(g: Graph, fam, field: FieldSpec) -> dict:
    fam = IdealFamily.parse(fam)
    out: dict = {"flags": {}, "provenance": {}}
    flags, prov = out["flags"], out["provenance"]

    def put(name, value, why):
        flags[name] = value
        prov[name] = why

    if fam == IdealFamily.LSS:
        tag = _shape_tag(g)
        cls = classify(IdealFamily.LSS, g, field)
        if cls.status == CI and g.m:
            put("linear_type", True, P_REGSEQ)
        elif cls.status == ACI and field.characteristic != 2:
            if not field.is_finite:
                put("linear_type", True, P_DSEQ)
            elif cls.case in ("odd_unicyclic_1", "odd_unicyclic_2", "cactus_aci"):
                put("linear_type", True, P_DSEQ_FINITE)
            else:
                put("linear_type", True, P_DSEQ)
                out["caveat"] = FINITE_CAVEAT
        elif tag in ("OddCycle", "OddUnicyclic"):
            put("linear_type", "conjectural", P_CONJ)
        if tag in ("Path", "Tree", "OddCycle", "OddUnicyclic"):
            put("fiber_cone_polynomial", True, P_FIBER)
            put("analytic_spread", g.m, P_FIBER)
        return out
    if fam == IdealFamily.BINOMIAL_EDGE:
        k4 = has_induced(g, "K4")
        k23 = has_induced(g, "K23")
        put("k23_free", not k23, "exhaustive induced-subgraph search")
        if k4:
            put("not_linear_type", True, P_K4)
        elif k23 and g.is_bipartite():
            put("not_linear_type", True, P_K23)
        return out
    raise NotSupported(f"linear-type report covers LSS and BinomialEdge, not {fam.value}")
