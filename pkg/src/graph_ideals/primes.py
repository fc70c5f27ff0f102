"""Minimal-prime data for LSS and parity binomial edge ideals.

LSS primes Q_T are built from complete (bipartite) graphs on the
components of G minus T.  Parity primes p_T^sigma use walk-parity blocks on
bipartite components and the linear ideals (x_i + y_i) or (x_i - y_i) on
non-bipartite components.  Heights of both equal n + |T| - b_G(T).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product

from .errors import RegimeUnsupported, ResourceLimit
from .graph import Component, Graph, _check_subset, component_profile, counts, cut_sets
from .ideals import IdealFamily
from .poly import FieldSpec, Polynomial, PolyRing, edge_generator

MAX_SIGN_COMPONENTS = 20

LSS_Q = "LSS-Q"
PARITY_P = "Parity-P"


@dataclass(frozen=True)
class PrimeBlock:
    vertices: tuple[int, ...]
    is_bipartite: bool
    parts: tuple[tuple[int, ...], tuple[int, ...]] | None
    sign: str | None  # "+" or "-" on non-bipartite parity blocks
    block: str  # vars | zero | I_K | I_Kmn | W | p+ | p-
    generators: tuple[tuple, ...]  # ("g", i, j), ("f", i, j), ("h", i), ("x+y", i), ...

    def to_json(self):
        out = {
            "vertices": list(self.vertices),
            "is_bipartite": self.is_bipartite,
            "block": self.block,
            "generators": [list(gen) for gen in self.generators],
        }
        if self.parts is not None:
            out["parts"] = [list(p) for p in self.parts]
        if self.sign is not None:
            out["sign"] = self.sign
        return out


@dataclass(frozen=True)
class PrimeComponent:
    family: str
    n: int
    T: tuple[int, ...]
    blocks: tuple[PrimeBlock, ...]
    height: int
    sigma: tuple[str, ...] = ()
    sign_split: bool | None = None
    note: str | None = dc_field(default=None, compare=False)

    @property
    def components(self) -> tuple[PrimeBlock, ...]:
        return tuple(b for b in self.blocks if b.block != "vars")

    @property
    def b(self) -> int:
        return sum(1 for c in self.components if c.is_bipartite)

    def recomputed_height(self) -> int:
        return self.n + len(self.T) - self.b

    def to_json(self):
        out = {
            "family": self.family,
            "T": list(self.T),
            "height": self.height,
            "components": [b.to_json() for b in self.blocks],
        }
        if self.family == PARITY_P:
            out["sigma"] = "".join(self.sigma)
            out["sign_split"] = self.sign_split
        if self.note:
            out["note"] = self.note
        return out


def _var_block(T) -> PrimeBlock:
    gens = tuple(g for i in T for g in (("x", i), ("y", i)))
    return PrimeBlock(tuple(T), False, None, None, "vars", gens)


def _cross(parts):
    a, b = parts
    return sorted(tuple(sorted(p)) for p in product(a, b))


def _within(parts):
    return sorted(p for part in parts for p in combinations(part, 2))


def _lss_block(comp: Component) -> PrimeBlock:
    verts = comp.vertices
    if len(verts) == 1:
        return PrimeBlock(verts, True, comp.parts, None, "zero", ())
    if comp.is_bipartite:
        gens = tuple(("g",) + p for p in _cross(comp.parts)) + tuple(
            ("f",) + p for p in _within(comp.parts)
        )
        return PrimeBlock(verts, True, comp.parts, None, "I_Kmn", gens)
    pairs = list(combinations(verts, 2))
    gens = (
        tuple(("g",) + p for p in pairs)
        + tuple(("f",) + p for p in pairs)
        + tuple(("h", i) for i in verts)
    )
    return PrimeBlock(verts, False, None, None, "I_K", gens)


def _parity_block(comp: Component, sign: str | None) -> PrimeBlock:
    verts = comp.vertices
    if comp.is_bipartite:
        if len(verts) == 1:
            return PrimeBlock(verts, True, comp.parts, None, "zero", ())
        gens = tuple(("gbar",) + p for p in _cross(comp.parts)) + tuple(
            ("f",) + p for p in _within(comp.parts)
        )
        return PrimeBlock(verts, True, comp.parts, None, "W", gens)
    kind = "x+y" if sign == "+" else "x-y"
    return PrimeBlock(verts, False, None, sign, "p" + sign, tuple((kind, i) for i in verts))


def lss_prime(g: Graph, T=()) -> PrimeComponent:
    prof = component_profile(g, T)
    blocks = (_var_block(prof.T),) + tuple(_lss_block(c) for c in prof.components)
    return PrimeComponent(LSS_Q, g.n, prof.T, blocks, g.n + len(prof.T) - prof.b)


# --- sign-split criterion --------------------------------------------------

def reattachable(g: Graph, T) -> tuple[int, ...]:
    """A_T: members t of T with b_G(T) = b_G(T minus t)."""
    T = _check_subset(g, T)
    _, b = counts(g, T)
    return tuple(t for t in T if counts(g, [v for v in T if v != t])[1] == b)


def joined_components(g: Graph, T, t: int, profile=None) -> tuple[int, ...]:
    """B_T(t): indices (into the profile) of components adjacent to t."""
    prof = profile or component_profile(g, T)
    nb = g.neighbors(t)
    return tuple(k for k, c in enumerate(prof.components) if nb.intersection(c.vertices))


def _split_constraints(g: Graph, T, prof) -> list[tuple[int, ...]]:
    """For each t in A_T, the positions (in sigma) of joined non-bipartite components."""
    nonbip = [k for k, c in enumerate(prof.components) if not c.is_bipartite]
    pos = {k: s for s, k in enumerate(nonbip)}
    out = []
    for t in reattachable(g, T):
        joined = joined_components(g, T, t, prof)
        out.append(tuple(pos[k] for k in joined if k in pos))
    return out


def _is_split(sigma, constraints) -> bool:
    return all(len({sigma[s] for s in cons}) >= 2 for cons in constraints)


def parity_primes(g: Graph, T=()) -> list[PrimeComponent]:
    """All p_T^sigma, sigma in lexicographic bit order (+ before -)."""
    prof = component_profile(g, T)
    k = prof.c - prof.b
    if k > MAX_SIGN_COMPONENTS:
        raise ResourceLimit(f"{k} non-bipartite components exceed the sign guard {MAX_SIGN_COMPONENTS}")
    cons = _split_constraints(g, prof.T, prof)
    height = g.n + len(prof.T) - prof.b
    out = []
    for sigma in product("+-", repeat=k):
        it = iter(sigma)
        blocks = [_var_block(prof.T)]
        for c in prof.components:
            blocks.append(_parity_block(c, None if c.is_bipartite else next(it)))
        out.append(
            PrimeComponent(PARITY_P, g.n, prof.T, tuple(blocks), height, sigma, _is_split(sigma, cons))
        )
    return out


def has_sign_split(g: Graph, T) -> bool:
    prof = component_profile(g, T)
    k = prof.c - prof.b
    if k > MAX_SIGN_COMPONENTS:
        raise ResourceLimit(f"{k} non-bipartite components exceed the sign guard {MAX_SIGN_COMPONENTS}")
    cons = _split_constraints(g, prof.T, prof)
    if not cons:
        return True
    return any(_is_split(s, cons) for s in product("+-", repeat=k))


# --- regimes and heights ---------------------------------------------------

def lss_regime(field: FieldSpec) -> str:
    """Which decomposition describes the LSS ideal over this field."""
    if field.characteristic == 2:
        return "parity-char2"
    if field.has_sqrt_minus_one:
        return "parity-transport"
    return "Q_T"


_REROUTE_NOTE = {
    "parity-char2": "char 2: the LSS ideal equals the parity ideal; parity primes shown",
    "parity-transport": (
        "sqrt(-1) in field: LSS primes are images of parity primes under Psi∘eta; "
        "shown in parity coordinates"
    ),
}


def minimal_primes(fam, g: Graph, field: FieldSpec) -> list[PrimeComponent]:
    fam = IdealFamily.parse(fam)
    if fam == IdealFamily.LSS:
        regime = lss_regime(field)
        if regime == "Q_T":
            return [lss_prime(g, T) for T in cut_sets(g)]
        note = _REROUTE_NOTE[regime]
        return [
            PrimeComponent(p.family, p.n, p.T, p.blocks, p.height, p.sigma, p.sign_split, note)
            for p in minimal_primes(IdealFamily.PARITY, g, field)
        ]
    if fam == IdealFamily.PARITY:
        out = []
        for T in cut_sets(g):
            out.extend(p for p in parity_primes(g, T) if p.sign_split)
        return out
    raise RegimeUnsupported(f"minimal primes are implemented for LSS and Parity, not {fam.value}")


def _parity_height(g: Graph) -> int:
    best = None
    for T in cut_sets(g):
        c, b = counts(g, T)
        h = g.n + len(T) - b
        if best is not None and h >= best:
            continue
        if has_sign_split(g, T):
            best = h
    return best


def _lss_q_height(g: Graph) -> int:
    return min(g.n + len(T) - counts(g, T)[1] for T in cut_sets(g))


def height_route(fam, g: Graph, field: FieldSpec) -> str:
    """Short description of how ideal_height is obtained."""
    fam = IdealFamily.parse(fam)
    p = field.characteristic
    if fam == IdealFamily.PARITY:
        return "parity primes"
    if fam == IdealFamily.LSS:
        return {"Q_T": "Q_T primes", "parity-char2": "parity primes (L = I in char 2)",
                "parity-transport": "parity primes via Psi∘eta"}[lss_regime(field)]
    if fam == IdealFamily.PERMANENTAL:
        if p == 2:
            raise RegimeUnsupported("char 2: the permanental ideal equals J_G, whose decomposition is not implemented")
        return "parity primes via eta"
    if g.is_bipartite():
        return "parity primes via Phi2"
    raise RegimeUnsupported("binomial edge ideal heights are covered only for bipartite graphs")


def ideal_height(fam, g: Graph, field: FieldSpec) -> int:
    fam = IdealFamily.parse(fam)
    route = height_route(fam, g, field)
    if g.m == 0:
        return 0
    if route == "Q_T primes":
        return _lss_q_height(g)
    return _parity_height(g)


# --- materialisation and brute-force helpers -------------------------------

def prime_polynomials(pc: PrimeComponent, field: FieldSpec, ring: PolyRing | None = None) -> list[Polynomial]:
    """The listed generators as explicit polynomials (linear and quadratic)."""
    ring = ring or PolyRing(pc.n)
    out = []
    for blk in pc.blocks:
        for gen in blk.generators:
            kind = gen[0]
            if kind in ("x", "y"):
                idx = ring.x(gen[1]) if kind == "x" else ring.y(gen[1])
                out.append(Polynomial.var(ring, field, idx))
            elif kind in ("x+y", "x-y"):
                x = Polynomial.var(ring, field, ring.x(gen[1]))
                y = Polynomial.var(ring, field, ring.y(gen[1]))
                out.append(x + y if kind == "x+y" else x - y)
            elif kind == "h":
                out.append(edge_generator("h", gen[1], field, ring))
            else:
                out.append(edge_generator(kind, gen[1:], field, ring))
    return out


def walk_parity_pairs(g: Graph, vertices) -> tuple[set, set]:
    """(odd, even) vertex pairs joined by walks of length <= 2|V| inside ``vertices``."""
    verts = sorted(vertices)
    idx = {v: k for k, v in enumerate(verts)}
    reach = {v: {v} for v in verts}  # endpoints of walks of the current length
    odd, even = set(), set()
    for length in range(1, 2 * len(verts) + 1):
        reach = {
            v: {w for u in ends for w in g.adjacency[u] if w in idx}
            for v, ends in reach.items()
        }
        target = odd if length % 2 else even
        for v, ends in reach.items():
            for w in ends:
                if v < w:
                    target.add((v, w))
    return odd, even
