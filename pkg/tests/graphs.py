"""Small named graphs shared by the test modules."""
from __future__ import annotations

from graph_ideals.graph import Graph


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def star(k):
    return Graph.from_edges(k + 1, [(1, j) for j in range(2, k + 2)])


def graph(n, edges):
    return Graph.from_edges(n, edges)


NET = graph(6, [(1, 2), (2, 3), (1, 3), (1, 4), (2, 5), (3, 6)])
TRIANGLE_PENDANT = graph(4, [(1, 2), (2, 3), (1, 3), (1, 4)])
KITE = graph(5, [(1, 2), (2, 3), (3, 4), (1, 4), (2, 4), (3, 5)])
TWO_TRIANGLES = graph(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4)])


def random_graphs(min_n=1, max_n=7, connected=False):
    """Hypothesis strategy: labeled simple graphs on 1..n."""
    import itertools

    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        if connected:
            # a random spanning tree keeps the graph connected
            for v in range(2, n + 1):
                u = draw(st.integers(1, v - 1))
                if (u, v) not in chosen:
                    chosen.append((u, v))
        return Graph.from_edges(n, chosen)

    return build()


def random_trees(min_n=2, max_n=8):
    """Hypothesis strategy: labeled trees (random parent pointers, shuffled labels)."""
    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        perm = draw(st.permutations(range(1, n + 1)))
        edges = [(perm[draw(st.integers(0, v - 1))], perm[v]) for v in range(1, n)]
        return Graph.from_edges(n, edges)

    return build()


def random_odd_unicyclic(min_n=3, max_n=8):
    """Hypothesis strategy: a random tree plus one edge closing an odd cycle."""
    from hypothesis import assume
    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        t = draw(random_trees(min_n, max_n))
        dist = _distances(t)
        pairs = [(u, v) for u in t.vertices for v in t.vertices if u < v and dist[u][v] >= 2 and dist[u][v] % 2 == 0]
        assume(pairs)
        return t.add_edge(draw(st.sampled_from(pairs)))

    return build()


def _distances(g):
    from collections import deque

    out = {}
    for s in g.vertices:
        d = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.adjacency[u]:
                if w not in d:
                    d[w] = d[u] + 1
                    q.append(w)
        out[s] = d
    return out
