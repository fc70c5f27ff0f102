"""Simple graphs on vertices 1..n and the combinatorics the decompositions need."""
from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from . import _kernels
from .errors import (
    Disconnected,
    DuplicateEdge,
    LoopEdge,
    MalformedLine,
    ResourceLimit,
    VertexOutOfRange,
)

DEFAULT_MAX_N = 24


def max_n_guard(default: int = DEFAULT_MAX_N) -> int:
    value = os.environ.get("GRAPH_IDEAL_MAX_N")
    return int(value) if value else default


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        edges = tuple(tuple(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise VertexOutOfRange(f"edge {{{i},{j}}} outside 1..{self.n}")
            if i > j:
                raise ValueError(f"edge ({i},{j}) not stored as i<j")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge {{{i},{j}}}")
            seen.add((i, j))
        if list(edges) != sorted(edges):
            raise ValueError("edge list must be sorted")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Canonicalise an arbitrary iterable of pairs (orientation, order)."""
        norm = sorted((min(i, j), max(i, j)) for i, j in edges)
        return cls(n, tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        """``adjacency[v]`` for v in 1..n; index 0 is unused."""
        adj = [set() for _ in range(self.n + 1)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i - 1] |= 1 << (j - 1)
            masks[j - 1] |= 1 << (i - 1)
        return tuple(masks)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edge_set

    def remove_edge(self, e) -> "Graph":
        e = (min(e), max(e))
        if e not in self.edge_set:
            raise ValueError(f"{e} is not an edge")
        return Graph(self.n, tuple(x for x in self.edges if x != e))

    def add_edge(self, e) -> "Graph":
        return Graph.from_edges(self.n, self.edges + ((min(e), max(e)),))

    def components(self) -> list[tuple[int, ...]]:
        return [c.vertices for c in component_profile(self, ()).components]

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_bipartite(self) -> bool:
        prof = component_profile(self, ())
        return prof.b == prof.c

    def bipartition(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Parts (V1, V2) with each component's smallest vertex placed in V1."""
        v1, v2 = [], []
        for comp in component_profile(self, ()).components:
            if not comp.is_bipartite:
                raise ValueError("graph is not bipartite")
            v1.extend(comp.parts[0])
            v2.extend(comp.parts[1])
        return tuple(sorted(v1)), tuple(sorted(v2))

    def induced(self, keep) -> "Graph":
        """Induced subgraph relabelled 1..k in increasing order of ``keep``."""
        keep = sorted(keep)
        index = {v: k + 1 for k, v in enumerate(keep)}
        return Graph.from_edges(
            len(keep),
            [(index[i], index[j]) for i, j in self.edges if i in index and j in index],
        )

    def encode(self) -> str:
        return f"{self.n}:" + ",".join(f"{i}-{j}" for i, j in self.edges)


# --- parsing ---------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` + ``u v`` edge-list format (``#`` starts a comment)."""
    header = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise MalformedLine(lineno, f"expected integers, got {line!r}") from None
        if len(nums) != 2:
            raise MalformedLine(lineno, f"expected two integers, got {len(nums)}")
        if header is None:
            n, m = nums
            if n < 0 or m < 0:
                raise MalformedLine(lineno, "negative count in header")
            header = (n, m)
            continue
        u, v = nums
        n = header[0]
        if u == v:
            raise LoopEdge(lineno, f"loop at vertex {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise VertexOutOfRange(f"endpoint outside 1..{n}", line=lineno)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise DuplicateEdge(lineno, f"edge {{{e[0]},{e[1]}}} repeats line {seen[e]}")
        seen[e] = lineno
        edges.append(e)
    if header is None:
        raise MalformedLine(1, "missing 'n m' header")
    if len(edges) != header[1]:
        raise MalformedLine(
            lineno if text else 1, f"header declares {header[1]} edges, found {len(edges)}"
        )
    return Graph.from_edges(header[0], edges)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{i} {j}" for i, j in g.edges]
    return "\n".join(lines) + "\n"


# --- component profiles ------------------------------------------------------

@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    is_bipartite: bool
    parts: tuple[tuple[int, ...], tuple[int, ...]] | None = None


@dataclass(frozen=True)
class ComponentProfile:
    T: tuple[int, ...]
    components: tuple[Component, ...]
    c: int
    b: int


def _check_subset(g: Graph, T) -> tuple[int, ...]:
    T = tuple(sorted(set(T)))
    for v in T:
        if not 1 <= v <= g.n:
            raise VertexOutOfRange(f"vertex {v} outside 1..{g.n}")
    return T


def component_profile(g: Graph, T=()) -> ComponentProfile:
    """Components of G[[n] \\ T], 2-coloured by breadth-first search."""
    T = _check_subset(g, T)
    removed = set(T)
    color: dict[int, int] = {}
    comps = []
    for s in g.vertices:
        if s in removed or s in color:
            continue
        color[s] = 0
        order = [s]
        queue = deque([s])
        bipartite = True
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w in removed:
                    continue
                if w not in color:
                    color[w] = 1 - color[u]
                    order.append(w)
                    queue.append(w)
                elif color[w] == color[u]:
                    bipartite = False
        verts = tuple(sorted(order))
        parts = None
        if bipartite:
            parts = (
                tuple(v for v in verts if color[v] == 0),
                tuple(v for v in verts if color[v] == 1),
            )
        comps.append(Component(verts, bipartite, parts))
    b = sum(1 for c in comps if c.is_bipartite)
    return ComponentProfile(T, tuple(comps), len(comps), b)


@lru_cache(maxsize=2048)
def subset_counts(g: Graph):
    """(c, b) arrays over all removed-set bitmasks, via the compiled kernel."""
    return _kernels.subset_profiles(g.adj_masks, g.n)


def _mask(T) -> int:
    m = 0
    for v in T:
        m |= 1 << (v - 1)
    return m


def _unmask(mask: int) -> tuple[int, ...]:
    return tuple(v + 1 for v in range(mask.bit_length()) if (mask >> v) & 1)


def counts(g: Graph, T) -> tuple[int, int]:
    """(c_G(T), b_G(T))."""
    c, b = subset_counts(g)
    mask = _mask(T)
    return int(c[mask]), int(b[mask])


def cut_sets(g: Graph) -> list[tuple[int, ...]]:
    """Every T whose members are cut or bipartition vertices of G[T̄ ∪ {i}]."""
    limit = max_n_guard()
    if g.n > limit:
        raise ResourceLimit(f"cut_sets enumerates 2^n subsets; n={g.n} exceeds {limit}")
    c, b = subset_counts(g)
    out = []
    for mask in range(1 << g.n):
        ok = True
        rest = mask
        while rest:
            low = rest & -rest
            sub = mask ^ low
            if not (c[mask] > c[sub] or b[mask] > b[sub]):
                ok = False
                break
            rest ^= low
        if ok:
            out.append(_unmask(mask))
    out.sort()
    return out


def satisfies_cut_condition(g: Graph, T) -> bool:
    """Direct element-wise re-check of cut-set membership on induced subgraphs."""
    T = _check_subset(g, T)
    for i in T:
        keep = [v for v in g.vertices if v not in T or v == i]
        h = g.induced(keep)
        i_new = keep.index(i) + 1
        before = component_profile(h, ())
        after = component_profile(h, (i_new,))
        if not (after.c > before.c or after.b > before.b):
            return False
    return True


# --- claws ---------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Claw:
    center: int
    leaves: tuple[int, int, int]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted((self.center,) + self.leaves))


def claws(g: Graph) -> list[Claw]:
    """All K_{1,3} subgraphs (leaves may be adjacent)."""
    out = []
    for u in g.vertices:
        for trio in itertools.combinations(sorted(g.adjacency[u]), 3):
            out.append(Claw(u, trio))
    return out


def induced_claws(g: Graph) -> list[Claw]:
    return [
        c for c in claws(g)
        if not any(g.has_edge(a, b) for a, b in itertools.combinations(c.leaves, 2))
    ]


# --- fixed patterns ---------------------------------------------------------

PATTERNS: dict[str, Graph] = {
    "C4": Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)]),
    "K4": Graph.from_edges(4, list(itertools.combinations(range(1, 5), 2))),
    "K23": Graph.from_edges(5, [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]),
    "Kite": Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (1, 4), (2, 4), (3, 5)]),
}


def detect_induced(g: Graph, pattern: str | Graph):
    """First induced copy of ``pattern`` as {pattern vertex: graph vertex}, or None."""
    p = PATTERNS[pattern] if isinstance(pattern, str) else pattern
    k = p.n
    if k > g.n:
        return None
    pdeg = sorted(p.degree(v) for v in p.vertices)
    for subset in itertools.combinations(g.vertices, k):
        sub = set(subset)
        degs = sorted(len(g.adjacency[v] & sub) for v in subset)
        if degs != pdeg:
            continue
        for perm in itertools.permutations(subset):
            if all(
                g.has_edge(perm[a - 1], perm[b - 1]) == p.has_edge(a, b)
                for a, b in itertools.combinations(range(1, k + 1), 2)
            ):
                return {a + 1: perm[a] for a in range(k)}
    return None


def has_induced(g: Graph, pattern: str | Graph) -> bool:
    return detect_induced(g, pattern) is not None


# --- shape recognition ----------------------------------------------------------

SHAPE_TAGS = (
    "Path", "OddCycle", "EvenCycle", "Tree", "OddUnicyclic", "EvenUnicyclic",
    "BicyclicCactus", "ChordedCycle", "Other",
)


@dataclass(frozen=True)
class GraphShape:
    tag: str
    witness: dict = field(default_factory=dict, compare=False)


def normalize_cycle(cycle) -> tuple[int, ...]:
    cyc = list(cycle)
    k = cyc.index(min(cyc))
    cyc = cyc[k:] + cyc[:k]
    if len(cyc) > 2 and cyc[-1] < cyc[1]:
        cyc = [cyc[0]] + cyc[1:][::-1]
    return tuple(cyc)


def two_core(g: Graph) -> set[int]:
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    queue = deque(v for v in alive if deg[v] <= 1)
    while queue:
        v = queue.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        for w in g.adjacency[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    queue.append(w)
    return alive


def _walk_cycle(g: Graph, verts: set[int]) -> tuple[int, ...]:
    start = min(verts)
    order = [start]
    prev, cur = None, start
    while True:
        nxt = min(w for w in g.adjacency[cur] if w in verts and w != prev and w not in order[1:])
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
        if len(order) > len(verts):
            raise AssertionError("cycle walk overran")
    return normalize_cycle(order)


def _unique_cycle(g: Graph) -> tuple[int, ...]:
    return _walk_cycle(g, two_core(g))


def _branches(g: Graph, core: set[int], start: int, stops: set[int]):
    """Paths from ``start`` through core-degree-2 vertices until a stop vertex."""
    out = []
    for first in sorted(w for w in g.adjacency[start] if w in core):
        path = [start, first]
        prev, cur = start, first
        while cur not in stops:
            nxt = [w for w in g.adjacency[cur] if w in core and w != prev]
            prev, cur = cur, nxt[0]
            path.append(cur)
        out.append(path)
    return out


def recognize_shape(g: Graph) -> GraphShape:
    if not g.is_connected():
        raise Disconnected("recognize_shape needs a connected graph")
    n, m = g.n, g.m
    maxdeg = max((g.degree(v) for v in g.vertices), default=0)
    if m == n - 1:
        if maxdeg <= 2:
            ends = [v for v in g.vertices if g.degree(v) <= 1]
            order = [min(ends)]
            while len(order) < n:
                order.append(min(w for w in g.adjacency[order[-1]] if w not in order))
            return GraphShape("Path", {"order": order})
        return GraphShape("Tree", {"leaves": [v for v in g.vertices if g.degree(v) == 1]})
    if m == n:
        cycle = list(_unique_cycle(g))
        odd = len(cycle) % 2 == 1
        if maxdeg == 2:
            return GraphShape("OddCycle" if odd else "EvenCycle", {"cycle": cycle})
        return GraphShape("OddUnicyclic" if odd else "EvenUnicyclic", {"cycle": cycle})
    if m == n + 1:
        core = two_core(g)
        cdeg = {v: sum(1 for w in g.adjacency[v] if w in core) for v in core}
        hubs = sorted(v for v in core if cdeg[v] >= 3)
        if len(hubs) == 1:
            (v,) = hubs
            loops = _branches(g, core, v, {v})
            cycles = sorted(list(normalize_cycle(p[:-1])) for p in loops)
            cycles = [c for k, c in enumerate(cycles) if c not in cycles[:k]]
            return GraphShape("BicyclicCactus", {"cycles": cycles, "bridge_path": [v]})
        a, b = hubs
        branches = _branches(g, core, a, {a, b})
        if any(p[-1] == a for p in branches):
            loop_a = next(p for p in branches if p[-1] == a)
            bridge = next(p for p in branches if p[-1] == b)
            loop_b = next(p for p in _branches(g, core, b, {a, b}) if p[-1] == b)
            c1, c2 = normalize_cycle(loop_a[:-1]), normalize_cycle(loop_b[:-1])
            if c2 < c1:
                c1, c2 = c2, c1
                bridge = bridge[::-1]
            return GraphShape(
                "BicyclicCactus", {"cycles": [list(c1), list(c2)], "bridge_path": bridge}
            )
        chords = [p for p in branches if len(p) == 2]
        if chords:
            rest = [p for p in branches if len(p) > 2]
            cycle = rest[0] + rest[1][::-1][1:-1]
            return GraphShape(
                "ChordedCycle",
                {"chord": [a, b], "cycle": list(normalize_cycle(cycle))},
            )
        return GraphShape("Other", {"theta": branches})
    return GraphShape("Other", {})


def _is_cycle_of(g: Graph, cycle) -> bool:
    k = len(cycle)
    return k >= 3 and len(set(cycle)) == k and all(
        g.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)
    )


def verify_shape(g: Graph, shape: GraphShape) -> bool:
    """Re-check a witness against the graph independently of how it was found."""
    w = shape.witness
    n, m = g.n, g.m
    if not g.is_connected():
        return False
    tag = shape.tag
    if tag == "Path":
        order = w["order"]
        return (
            m == n - 1 and sorted(order) == list(g.vertices)
            and all(g.has_edge(order[i], order[i + 1]) for i in range(n - 1))
        )
    if tag == "Tree":
        return m == n - 1 and w["leaves"] == [v for v in g.vertices if g.degree(v) == 1] \
            and max(g.degree(v) for v in g.vertices) >= 3
    if tag in ("OddCycle", "EvenCycle", "OddUnicyclic", "EvenUnicyclic"):
        cyc = w["cycle"]
        if m != n or not _is_cycle_of(g, cyc):
            return False
        if (len(cyc) % 2 == 1) != tag.startswith("Odd"):
            return False
        return (len(cyc) == n) == tag.endswith("Cycle")
    if tag == "BicyclicCactus":
        c1, c2 = w["cycles"]
        path = w["bridge_path"]
        if m != n + 1 or not (_is_cycle_of(g, c1) and _is_cycle_of(g, c2)):
            return False
        if path[0] not in c1 or path[-1] not in c2:
            return False
        if len(path) == 1:
            return set(c1) & set(c2) == {path[0]}
        inner = set(path[1:-1])
        return (
            not (set(c1) & set(c2)) and not inner & (set(c1) | set(c2))
            and all(g.has_edge(path[i], path[i + 1]) for i in range(len(path) - 1))
        )
    if tag == "ChordedCycle":
        u, v = w["chord"]
        cyc = w["cycle"]
        if m != n + 1 or not g.has_edge(u, v):
            return False
        h = g.remove_edge((u, v))
        return (
            h.is_connected() and _is_cycle_of(h, cyc) and u in cyc and v in cyc
            and set(two_core(h)) == set(cyc)
        )
    return tag == "Other"
