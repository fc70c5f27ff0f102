"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_rank.py [--repeat 5]

Times rank mod p on dense matrices shaped like the degree-4 oracle matrices,
the subset-profile kernel used by cut_sets, and one full beta24 call. Each
pair of results is checked for equality before timings are printed.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from graph_ideals import _kernels
from graph_ideals.graph import Graph
from graph_ideals.oracle import beta24


def best_of(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not _kernels.USE_NUMBA:
        raise SystemExit("numba is unavailable or disabled (GRAPH_IDEAL_NUMBA=0); nothing to compare")

    rng = np.random.default_rng(args.seed)
    rows = []
    for shape, p in (((120, 300), 101), ((400, 900), 3), ((600, 1500), 101)):
        a = rng.integers(0, p, size=shape)
        a[::3] = 0  # sparse-ish rows like the oracle matrices
        _kernels.rank_mod_p(a[:4, :4], p, "numba")  # compile outside the timing
        r_nb, t_nb = best_of(lambda: _kernels.rank_mod_p(a, p, "numba"), args.repeat)
        r_np, t_np = best_of(lambda: _kernels.rank_mod_p(a, p, "numpy"), args.repeat)
        assert r_nb == r_np, (shape, p, r_nb, r_np)
        rows.append((f"rank_mod_p {shape[0]}x{shape[1]} p={p}", t_np, t_nb))

    for n in (12, 16):
        edges = [(i, i + 1) for i in range(1, n)] + [(1, n), (1, n // 2)]
        g = Graph.from_edges(n, edges)
        _kernels.subset_profiles(g.adj_masks, 3, "numba")
        (c1, b1), t_nb = best_of(lambda: _kernels.subset_profiles(g.adj_masks, n, "numba"), args.repeat)
        (c2, b2), t_np = best_of(lambda: _kernels.subset_profiles(g.adj_masks, n, "numpy"), 1)
        assert np.array_equal(c1, c2) and np.array_equal(b1, b2)
        rows.append((f"subset_profiles n={n}", t_np, t_nb))

    net = Graph.from_edges(8, [(1, 2), (2, 3), (1, 3), (1, 4), (2, 5), (3, 6), (6, 7), (7, 8)])
    v_nb, t_nb = best_of(lambda: beta24(net, "L", 101), args.repeat)
    saved = _kernels.BACKEND
    _kernels.BACKEND = "numpy"
    try:
        v_np, t_np = best_of(lambda: beta24(net, "L", 101), args.repeat)
    finally:
        _kernels.BACKEND = saved
    assert v_nb == v_np
    rows.append(("beta24 odd unicyclic n=8", t_np, t_nb))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numpy s':>10}  {'numba s':>10}  {'speedup':>8}")
    for name, t_np, t_nb in rows:
        print(f"{name:<{width}}  {t_np:10.4f}  {t_nb:10.4f}  {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
