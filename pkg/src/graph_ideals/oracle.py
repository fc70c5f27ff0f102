"""Brute-force linear-algebra oracles over F_p.

The degree-d piece of an ideal generated by quadrics is the row space of
the matrix whose rows are (monomial of degree d-2) * generator.  All the
edge ideals here are homogeneous for the Z^n grading that gives x_i and
y_i weight e_i, so the matrix splits into independent blocks, one per
vertex multidegree; ranks are summed over blocks.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import _kernels
from .classify import ACI, CI, classify
from .errors import LinearSyzygyPresent, ResourceLimit
from .graph import Graph, format_graph
from .ideals import IdealFamily, ideal_generators
from .invariants import betti2
from .poly import FieldSpec, Polynomial
from .primes import ideal_height
from .syzygy import first_syzygy, residual, verify_syzygies

MAX_ENTRIES = 10 ** 7
DEFAULT_SCAN_MAX_N = 7


def scan_max_n() -> int:
    raw = os.environ.get("GRAPH_IDEAL_MAX_N")
    return int(raw) if raw else DEFAULT_SCAN_MAX_N


@lru_cache(maxsize=None)
def monomials(nvars: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree d, in a fixed deterministic order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        exp = [0] * nvars
        for v in combo:
            exp[v] += 1
        out.append(tuple(exp))
    return tuple(out)


@dataclass(frozen=True)
class GradedMatrix:
    rows: tuple  # (generator index, row monomial)
    cols: tuple  # monomials of degree d
    entries: np.ndarray  # int64 residues mod p

    @property
    def shape(self):
        return self.entries.shape


def _residues(poly: Polynomial, p: int):
    field = FieldSpec.of(p)
    return [(e, field.coerce(c)) for e, c in poly.terms.items()]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def graded_matrix(gens, d: int, p: int) -> GradedMatrix:
    """The full (unblocked) matrix; rows ordered by generator then monomial."""
    if not gens:
        return GradedMatrix((), (), np.zeros((0, 0), dtype=np.int64))
    nvars = gens[0].ring.nvars
    shifts = monomials(nvars, d - 2)
    rows, data = [], []
    for gi, gen in enumerate(gens):
        terms = _residues(gen, p)
        for mono in shifts:
            rows.append((gi, mono))
            data.append({_add(e, mono): c for e, c in terms})
    cols = sorted({c for row in data for c in row}, reverse=True)
    if len(rows) * len(cols) > MAX_ENTRIES:
        raise ResourceLimit(f"graded matrix {len(rows)}x{len(cols)} exceeds {MAX_ENTRIES} entries")
    index = {c: k for k, c in enumerate(cols)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for r, row in enumerate(data):
        for c, v in row.items():
            mat[r, index[c]] = v
    return GradedMatrix(tuple(rows), tuple(cols), mat)


def _vertex_key(exp, n: int):
    return tuple(exp[i] + exp[n + i] for i in range(n))


def _multihomogeneous(gens) -> bool:
    for gen in gens:
        n = gen.ring.n
        if len({_vertex_key(e, n) for e in gen.terms}) > 1:
            return False
    return True


def _block_rank(rows: list[dict], p: int, backend=None) -> int:
    cols = sorted({c for row in rows for c in row})
    index = {c: k for k, c in enumerate(cols)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for r, row in enumerate(rows):
        for c, v in row.items():
            mat[r, index[c]] = v
    return _kernels.rank_mod_p(mat, p, backend)


def _blocked_rank(vectors, p: int, keyfn, backend=None) -> int:
    blocks: dict = {}
    for vec in vectors:
        if not vec:
            continue
        blocks.setdefault(keyfn(vec), []).append(vec)
    return sum(_block_rank(rows, p, backend) for _, rows in sorted(blocks.items()))


def graded_dim(gens, d: int, p: int, backend=None) -> int:
    """dim_K of the degree-d piece of the ideal, by rank over F_p."""
    if d < 2:
        raise ValueError("generators are quadrics; d must be >= 2")
    if not gens:
        return 0
    for gen in gens:
        if not (gen.is_homogeneous() and gen.degree() == 2):
            raise ValueError("graded_dim expects homogeneous quadrics")
    ring = gens[0].ring
    nvars, n = ring.nvars, ring.n
    shifts = monomials(nvars, d - 2)
    ncols = len(monomials(nvars, d))
    if len(gens) * len(shifts) * ncols > MAX_ENTRIES:
        raise ResourceLimit(
            f"graded matrix {len(gens) * len(shifts)}x{ncols} exceeds {MAX_ENTRIES} entries"
        )
    vectors = []
    for gen in gens:
        terms = _residues(gen, p)
        for mono in shifts:
            vectors.append({_add(e, mono): c for e, c in terms if c})
    if _multihomogeneous(gens) and n:
        keyfn = lambda vec: _vertex_key(next(iter(vec)), n)
    else:
        keyfn = lambda vec: 0
    return _blocked_rank(vectors, p, keyfn, backend)


def linear_syzygies(g: Graph, fam, p: int) -> int:
    """Dimension of the degree-3 syzygy space, m * 2n - dim I_3."""
    gens = ideal_generators(fam, g, FieldSpec.of(p))
    return g.m * 2 * g.n - graded_dim(gens, 3, p)


def beta24(g: Graph, fam, p: int) -> int:
    fam = IdealFamily.parse(fam)
    gens = ideal_generators(fam, g, FieldSpec.of(p))
    lin = g.m * 2 * g.n - graded_dim(gens, 3, p)
    if lin != 0:
        raise LinearSyzygyPresent(f"{lin} linear syzygies in degree 3")
    return g.m * comb(2 * g.n + 1, 2) - graded_dim(gens, 4, p)


def syzygy_vectors(g: Graph, fam, p: int):
    """First-syzygy generators as coordinate dicts over (edge, degree-2 monomial)."""
    field = FieldSpec.of(p)
    syz = first_syzygy(g, fam, field)
    out = []
    for s in syz:
        vec = {}
        for e, c in s.coeffs.items():
            for exp, v in c.terms.items():
                vec[(e, exp)] = v
        out.append(vec)
    return syz, out


def syzygy_completeness(g: Graph, fam, p: int, backend=None) -> bool:
    """True iff the generators lie in the degree-4 kernel, are independent, and span it."""
    fam = IdealFamily.parse(fam)
    field = FieldSpec.of(p)
    syz, vecs = syzygy_vectors(g, fam, p)
    for s in syz:
        if not residual(g, fam, s.coeffs, field).is_zero():
            return False
    b = beta24(g, fam, p)
    n = g.n

    def keyfn(vec):
        # coordinate (e, mono) sits in multidegree deg(gen_e) + deg(mono)
        e, exp = min(vec)
        key = list(_vertex_key(exp, n))
        for v in e:
            key[v - 1] += 1
        return tuple(key)

    rank = _blocked_rank(vecs, p, keyfn, backend)
    return rank == len(syz) == b


# --- corpora -------------------------------------------------------------------

def _connected_mask(n: int, adj: list[int]) -> bool:
    if n == 0:
        return True
    seen = 1
    frontier = 1
    full = (1 << n) - 1
    while frontier:
        nb = 0
        v = 0
        f = frontier
        while f:
            if f & 1:
                nb |= adj[v]
            f >>= 1
            v += 1
        frontier = nb & ~seen
        seen |= nb
    return seen == full


def labeled_connected_graphs(n: int, m: int | None = None):
    """All connected graphs on the labeled vertex set 1..n (edge subsets of K_n)."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    if m is None:
        subsets = (
            [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
            for mask in range(1 << len(pairs))
        )
    else:
        subsets = (list(c) for c in itertools.combinations(pairs, m))
    for edges in subsets:
        if len(edges) < n - 1:
            continue
        adj = [0] * n
        for i, j in edges:
            adj[i - 1] |= 1 << (j - 1)
            adj[j - 1] |= 1 << (i - 1)
        if _connected_mask(n, adj):
            yield Graph(n, tuple(edges))


def _from_nx(h) -> Graph:
    import networkx as nx

    h = nx.convert_node_labels_to_integers(h, first_label=1, ordering="sorted")
    return Graph.from_edges(h.number_of_nodes(), [tuple(sorted(e)) for e in h.edges()])


def trees_up_to_iso(n: int) -> list[Graph]:
    import networkx as nx

    if n == 1:
        return [Graph(1, ())]
    return sorted((_from_nx(t) for t in nx.nonisomorphic_trees(n)), key=lambda g: g.encode())


def odd_unicyclic_up_to_iso(n: int) -> list[Graph]:
    """Connected unicyclic graphs with an odd cycle, one per isomorphism class."""
    import networkx as nx

    found: dict[str, list] = {}
    for tree in trees_up_to_iso(n):
        t = nx.Graph(list(tree.edges))
        t.add_nodes_from(tree.vertices)
        dist = dict(nx.all_pairs_shortest_path_length(t))
        for u, v in itertools.combinations(tree.vertices, 2):
            if dist[u][v] >= 2 and dist[u][v] % 2 == 0:
                h = t.copy()
                h.add_edge(u, v)
                key = nx.weisfeiler_lehman_graph_hash(h)
                bucket = found.setdefault(key, [])
                if not any(nx.is_isomorphic(h, other) for other in bucket):
                    bucket.append(h)
    graphs = [_from_nx(h) for bucket in found.values() for h in bucket]
    return sorted(graphs, key=lambda g: g.encode())


def _labeled_family(n: int, kind: str):
    if kind == "trees":
        return labeled_connected_graphs(n, n - 1) if n >= 1 else iter(())
    if n < 3:
        return iter(())
    return (g for g in labeled_connected_graphs(n, n) if not g.is_bipartite())


def corpus(kind: str, n_max: int, n_min: int = 1, labeled: bool = False) -> list[Graph]:
    """kind: all | trees | odd-unicyclic.

    ``all`` is always labeled.  The other two are one graph per isomorphism
    class unless ``labeled`` asks for the |E|-filtered labeled enumeration.
    """
    out = []
    for n in range(n_min, n_max + 1):
        if kind == "all":
            out.extend(labeled_connected_graphs(n))
        elif kind not in ("trees", "odd-unicyclic"):
            raise ValueError(f"unknown corpus kind {kind!r}")
        elif labeled:
            out.extend(_labeled_family(n, kind))
        elif kind == "trees":
            out.extend(trees_up_to_iso(n))
        else:
            out.extend(odd_unicyclic_up_to_iso(n) if n >= 3 else [])
    return out


def relabel(g: Graph, perm) -> Graph:
    """Image of g under vertex i -> perm[i-1]."""
    return Graph.from_edges(g.n, [(perm[i - 1], perm[j - 1]) for i, j in g.edges])


def relabelings(g: Graph, k: int, seed: int = 0) -> list[Graph]:
    """g plus up to k seeded random relabelings (distinct edge sets)."""
    import random

    rng = random.Random(f"{seed}:{g.encode()}")
    out = {g.encode(): g}
    for _ in range(4 * k):
        if len(out) > k:
            break
        perm = list(g.vertices)
        rng.shuffle(perm)
        h = relabel(g, perm)
        out.setdefault(h.encode(), h)
    return list(out.values())


# --- scans -----------------------------------------------------------------------

CHECKS = ("ci-height", "aci-height", "family-eq", "betti", "syzygy-exact", "syzygy-completeness")
DEFAULT_PRIMES = (2, 3, 101)


def _check_graph(g: Graph, checks, chars, primes) -> list[dict]:
    viol = []
    enc = g.encode()

    def bad(check, **info):
        viol.append({"check": check, "graph": enc, **info})

    if {"ci-height", "aci-height", "family-eq"} & set(checks):
        for ch in chars:
            field = FieldSpec.of(ch)
            cls = classify(IdealFamily.PARITY, g, field)
            h = ideal_height(IdealFamily.PARITY, g, field)
            if "ci-height" in checks and (cls.status == CI) != (h == g.m):
                bad("ci-height", char=ch, status=cls.status, height=h, mu=g.m)
            if "aci-height" in checks and cls.status == ACI and h != g.m - 1:
                bad("aci-height", char=ch, status=cls.status, height=h, mu=g.m)
            if "family-eq" in checks and ch != 2:
                cl = classify(IdealFamily.LSS, g, field)
                hl = ideal_height(IdealFamily.LSS, g, field)
                if cl.label != cls.label or hl != h:
                    bad("family-eq", char=ch, lss=[cl.label, hl], parity=[cls.label, h])
    if "betti" in checks:
        for p in primes:
            for fam in (IdealFamily.LSS, IdealFamily.PARITY):
                try:
                    got = beta24(g, fam, p)
                except LinearSyzygyPresent as exc:
                    bad("betti", p=p, family=fam.value, error=str(exc))
                    continue
                want = betti2(g, fam)
                if got != want:
                    bad("betti", p=p, family=fam.value, beta24=got, formula=want)
    if "syzygy-exact" in checks:
        for fam in (IdealFamily.LSS, IdealFamily.PARITY):
            rep = verify_syzygies(g, fam, first_syzygy(g, fam))
            if not rep["ok"]:
                bad("syzygy-exact", family=fam.value, failures=rep["failures"])
    if "syzygy-completeness" in checks:
        for p in primes:
            for fam in (IdealFamily.LSS, IdealFamily.PARITY):
                if not syzygy_completeness(g, fam, p):
                    bad("syzygy-completeness", p=p, family=fam.value)
    return viol


def _check_chunk(args):
    texts, checks, chars, primes = args
    from .graph import parse_graph

    out = []
    for text in texts:
        out.extend(_check_graph(parse_graph(text), checks, chars, primes))
    return out


def corpus_scan(n_max: int, checks=("ci-height",), kind: str = "all", chars=(0,),
                primes=DEFAULT_PRIMES, workers: int = 1, n_min: int = 1,
                labeled: bool = True) -> dict:
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    checks = tuple(c for c in CHECKS if c in set(checks))
    limit = scan_max_n() + (1 if kind != "all" else 0)
    if n_max > limit:
        raise ResourceLimit(f"scan of {kind} graphs limited to n <= {limit}")
    graphs = corpus(kind, n_max, n_min, labeled)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        texts = [format_graph(g) for g in graphs]
        size = max(1, len(texts) // (workers * 8))
        chunks = [(texts[i:i + size], checks, tuple(chars), tuple(primes)) for i in range(0, len(texts), size)]
        with ProcessPoolExecutor(workers) as pool:
            violations = [v for part in pool.map(_check_chunk, chunks) for v in part]
    else:
        violations = [v for g in graphs for v in _check_graph(g, checks, chars, primes)]
    violations.sort(key=lambda v: (v["graph"], v["check"], str(sorted(v.items()))))
    return {
        "n_max": n_max,
        "kind": kind,
        "labeled": labeled or kind == "all",
        "checks": list(checks),
        "chars": list(chars),
        "primes": list(primes),
        "graphs": len(graphs),
        "violations": violations,
    }
