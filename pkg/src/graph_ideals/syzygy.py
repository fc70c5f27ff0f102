"""First syzygies of LSS / parity ideals of trees and odd unicyclic graphs.

Two kinds of generators:

* Koszul pairs:  gen(e1) * e_{e2} - gen(e2) * e_{e1}
* claw relations: for a K_{1,3} with center u and leaves a < b < c,
      f_{b,c} e_{u,a} - f_{a,c} e_{u,b} + f_{a,b} e_{u,c}

The claw signs alternate by leaf rank.  They agree with (-1)^{p_A(leaf)}
(p_A(i) = #{j in A : j <= i}) when the center is the smallest or largest
label; for a center between its leaves the p_A pattern is off by
(-1)^{[leaf < center]}, which ``claw_sign`` accounts for.  The literal
p_A pattern is kept in ``literal_claw_coeffs`` so tests can show its residual.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .errors import NotSupported
from .graph import Claw, Graph, claws, induced_claws, recognize_shape
from .ideals import IdealFamily, ideal_generators
from .poly import QQ, FieldSpec, Polynomial, PolyRing, RingMap, apply_map, edge_generator

SUPPORTED_SHAPES = ("Path", "Tree", "OddCycle", "OddUnicyclic")


def _edge(a, b):
    return (a, b) if a < b else (b, a)


def p_A(A, i: int) -> int:
    return sum(1 for j in A if j <= i)


def claw_sign(claw: Claw, leaf: int) -> int:
    """(-1)^(p_A(leaf) + [leaf < center]); equals (-1)^rank of the leaf."""
    A = claw.vertices
    return -1 if (p_A(A, leaf) + (leaf < claw.center)) % 2 else 1


@dataclass(frozen=True)
class SyzygyGenerator:
    kind: str  # TypeA | TypeB
    family: IdealFamily
    coeffs: dict  # edge -> Polynomial
    edges: tuple = ()  # TypeA: (e1, e2)
    claw: Claw | None = None
    p_values: dict = dc_field(default_factory=dict)  # TypeB: leaf -> p_A(leaf)

    def label(self) -> str:
        if self.kind == "TypeA":
            (i, j), (k, l) = self.edges
            return f"TypeA {{{i},{j}}} {{{k},{l}}}"
        return f"TypeB center {self.claw.center} leaves {list(self.claw.leaves)}"

    def render(self) -> str:
        parts = []
        for e in sorted(self.coeffs):
            parts.append(f"({self.coeffs[e]})*e{e[0]}_{e[1]}")
        return " + ".join(parts)

    def to_json(self):
        out = {
            "kind": self.kind,
            "coeffs": {f"{e[0]},{e[1]}": str(self.coeffs[e]) for e in sorted(self.coeffs)},
        }
        if self.kind == "TypeA":
            out["edges"] = [list(e) for e in self.edges]
        else:
            out["center"] = self.claw.center
            out["leaves"] = list(self.claw.leaves)
            out["p_A"] = {str(k): v for k, v in sorted(self.p_values.items())}
            out["signs"] = {str(v): claw_sign(self.claw, v) for v in self.claw.leaves}
        return out


def _check_supported(g: Graph) -> str:
    if not g.is_connected():
        raise NotSupported("first syzygy formulas need a connected graph")
    tag = recognize_shape(g).tag
    if tag not in SUPPORTED_SHAPES:
        raise NotSupported(f"first syzygy formulas cover trees and odd unicyclic graphs, not {tag}")
    return tag


def _claw_coeffs(claw: Claw, field, ring, literal=False) -> dict:
    u = claw.center
    A = claw.vertices
    out = {}
    for leaf in claw.leaves:
        a, b = [w for w in claw.leaves if w != leaf]
        f = edge_generator("f", (a, b), field, ring)
        if literal:
            sign = -1 if p_A(A, leaf) % 2 else 1
        else:
            sign = claw_sign(claw, leaf)
        out[_edge(u, leaf)] = f if sign > 0 else -f
    return out


def literal_claw_coeffs(claw: Claw, field=QQ, ring=None) -> dict:
    """Claw coefficients with the bare (-1)^{p_A(leaf)} signs."""
    ring = ring or PolyRing(max(claw.vertices))
    return _claw_coeffs(claw, field, ring, literal=True)


def first_syzygy(g: Graph, fam=IdealFamily.LSS, field: FieldSpec = QQ) -> list[SyzygyGenerator]:
    fam = IdealFamily.parse(fam)
    if fam not in (IdealFamily.LSS, IdealFamily.PARITY):
        raise NotSupported(f"first syzygy covers LSS and Parity, not {fam.value}")
    _check_supported(g)
    ring = PolyRing(g.n)
    gens = dict(zip(g.edges, ideal_generators(fam, g, field, ring)))
    out = []
    for e1, e2 in combinations(g.edges, 2):
        out.append(SyzygyGenerator("TypeA", fam, {e2: gens[e1], e1: -gens[e2]}, (e1, e2)))
    for claw in claws(g):
        out.append(
            SyzygyGenerator(
                "TypeB", fam, _claw_coeffs(claw, field, ring), claw=claw,
                p_values={v: p_A(claw.vertices, v) for v in claw.leaves},
            )
        )
    return out


def sym_ideal(g: Graph, fam=IdealFamily.LSS, field: FieldSpec = QQ) -> list[Polynomial]:
    """Entries of T*phi: each syzygy with e_{ij} replaced by T_{ij}."""
    syz = first_syzygy(g, fam, field)
    ring = PolyRing(g.n, tuple(g.edges))
    out = []
    for s in syz:
        total = Polynomial.zero(ring, field)
        for e, c in s.coeffs.items():
            total = total + c.lift(ring) * Polynomial.var(ring, field, ring.t(e))
        out.append(total)
    return out


def residual(g: Graph, fam, coeffs: dict, field: FieldSpec = QQ) -> Polynomial:
    """sum_e coeffs[e] * gen(e), exactly."""
    fam = IdealFamily.parse(fam)
    ring = PolyRing(g.n)
    total = Polynomial.zero(ring, field)
    for e, c in coeffs.items():
        total = total + c * edge_generator(fam.kind, e, field, ring)
    return total


def verify_syzygies(g: Graph, fam, gens: list[SyzygyGenerator]) -> dict:
    """Expand each generator over Q (integer coefficients) and list nonzero residuals.

    The report also carries both claw counts; ``claw_readings_differ`` marks
    graphs where counting only induced claws would give a different answer.
    """
    failures = []
    for idx, s in enumerate(gens):
        coeffs = {e: c.with_field(QQ) if c.field != QQ else c for e, c in s.coeffs.items()}
        r = residual(g, fam, coeffs, QQ)
        if not r.is_zero():
            failures.append({"index": idx, "generator": s.label(), "residual": str(r)})
    n_claws, n_induced = len(claws(g)), len(induced_claws(g))
    return {"checked": len(gens), "failures": failures, "ok": not failures,
            "claws": n_claws, "induced_claws": n_induced,
            "claw_readings_differ": n_claws != n_induced}


# --- identities -----------------------------------------------------------------

def _f(a, b, ring, field=QQ):
    """Literal f(a,b) = x_a y_b - x_b y_a (antisymmetric in a, b)."""
    x = lambda i: Polynomial.var(ring, field, ring.x(i))
    y = lambda i: Polynomial.var(ring, field, ring.y(i))
    return x(a) * y(b) - x(b) * y(a)


def _sym(kind, a, b, ring, field=QQ):
    return edge_generator(kind, _edge(a, b), field, ring)


def pluecker_k4(field=QQ) -> Polynomial:
    ring = PolyRing(4)
    f = lambda a, b: edge_generator("f", (a, b), field, ring)
    return f(1, 2) * f(3, 4) - f(1, 3) * f(2, 4) + f(1, 4) * f(2, 3)


K23_TERMS = ((3, (1, 4), (2, 5)), (4, (1, 3), (2, 5)), (3, (1, 5), (2, 4)),
             (5, (1, 3), (2, 4)), (4, (1, 5), (2, 3)), (5, (1, 4), (2, 3)))
# Laplace expansion of a 3x3 determinant with a repeated x-row:
# x3 (f14 f25 - f15 f24) - x4 (f13 f25 - f15 f23) + x5 (f13 f24 - f14 f23)
K23_SIGNS = (1, -1, -1, 1, 1, -1)
K23_LITERAL_SIGNS = (1, -1, 1, -1, -1, 1)


def k23_relation(field=QQ, signs=K23_SIGNS) -> Polynomial:
    """Cubic relation among the f's of K_{2,3} (parts {1,2} and {3,4,5})."""
    ring = PolyRing(5)
    f = lambda a, b: edge_generator("f", (a, b), field, ring)
    total = Polynomial.zero(ring, field)
    for s, (i, e1, e2) in zip(signs, K23_TERMS):
        term = Polynomial.var(ring, field, ring.x(i)) * f(*e1) * f(*e2)
        total = total + (term if s > 0 else -term)
    return total


def literal_k23_relation(field=QQ) -> Polynomial:
    return k23_relation(field, K23_LITERAL_SIGNS)


def mapping_cone_identity(center: int, u: int, k: int, l: int, kind="g", n=None, field=QQ) -> Polynomial:
    """f(k,l) g(u,v) - f(u,l) g(v,k) + f(u,k) g(v,l) for a claw with center v.

    Returns the residual; zero for every ordering of the leaves (u, k, l).
    """
    v = center
    ring = PolyRing(n or max(center, u, k, l))
    g = lambda a, b: _sym(kind, a, b, ring, field)
    return _f(k, l, ring, field) * g(u, v) - _f(u, l, ring, field) * g(v, k) + _f(u, k, ring, field) * g(v, l)


def literal_mapping_cone_identity(center: int, u: int, k: int, l: int, kind="g", sorted_f=False, field=QQ) -> Polynomial:
    """Residual of the p_A-signed form: s_k f_{u,l} g_{v,k} + s_l f_{u,k} g_{v,l} - f_{k,l} g_{u,v}."""
    v = center
    A = (v, u, k, l)
    ring = PolyRing(max(A))
    g = lambda a, b: _sym(kind, a, b, ring, field)
    f = (lambda a, b: edge_generator("f", _edge(a, b), field, ring)) if sorted_f else (
        lambda a, b: _f(a, b, ring, field)
    )
    sk = -1 if (p_A(A, k) + p_A(A, u) + 1) % 2 else 1
    sl = -1 if (p_A(A, l) + p_A(A, u) + 1) % 2 else 1
    return f(u, l) * g(v, k) * sk + f(u, k) * g(v, l) * sl - f(k, l) * g(u, v)


def _cycle_cofactors(n: int, ring, field):
    """b_k = Y/(y_k y_{k+1}) for k < n and b_n = Y/(y_1 y_n), Y = y_1...y_n."""
    def mono(skip):
        exp = [0] * ring.nvars
        for i in range(1, n + 1):
            if i not in skip:
                exp[ring.y(i)] = 1
        return Polynomial.monomial(ring, field, exp)

    return [mono({k, k + 1}) for k in range(1, n)] + [mono({1, n})]


def even_cycle_relation_j(n: int, field=QQ) -> Polynomial:
    """sum_{k<n} b_k f_{k,k+1} - b_n f_{1,n} (binomial edge ideal form)."""
    ring = PolyRing(n)
    b = _cycle_cofactors(n, ring, field)
    total = Polynomial.zero(ring, field)
    for k in range(1, n):
        total = total + b[k - 1] * edge_generator("f", (k, k + 1), field, ring)
    return total - b[n - 1] * edge_generator("f", (1, n), field, ring)


def _cycle_phi2(n: int) -> RingMap:
    return RingMap.phi2((tuple(range(1, n + 1, 2)), tuple(range(2, n + 1, 2))))


def even_cycle_relation(n: int, field=QQ) -> Polynomial:
    """Image of the J-form under Phi2, written with gbar and orientation signs.

    Phi2(f_{k,k+1}) = (-1)^{k+1} gbar_{k,k+1} for the odd/even bipartition, so
    sum_k (-1)^{k+1} Phi2(b_k) gbar_{k,k+1} - Phi2(b_n) gbar_{1,n} = 0.
    """
    if n % 2:
        raise ValueError("even-cycle relation needs an even n")
    ring = PolyRing(n)
    phi = _cycle_phi2(n)
    b = [apply_map(phi, c) for c in _cycle_cofactors(n, ring, field)]
    total = Polynomial.zero(ring, field)
    for k in range(1, n):
        term = b[k - 1] * edge_generator("gbar", (k, k + 1), field, ring)
        total = total + (term if k % 2 else -term)
    return total - b[n - 1] * edge_generator("gbar", (1, n), field, ring)


def literal_even_cycle_relation(n: int, field=QQ) -> Polynomial:
    """sum_k Phi2(b_k) gbar_{k,k+1} - Phi2(b_n) gbar_{1,n}, without orientation signs."""
    ring = PolyRing(n)
    phi = _cycle_phi2(n)
    b = [apply_map(phi, c) for c in _cycle_cofactors(n, ring, field)]
    total = Polynomial.zero(ring, field)
    for k in range(1, n):
        total = total + b[k - 1] * edge_generator("gbar", (k, k + 1), field, ring)
    return total - b[n - 1] * edge_generator("gbar", (1, n), field, ring)
