"""Hot numeric kernels: subset component profiles and rank over F_p.

Each kernel exists as a plain Python/numpy function. When numba is
importable and ``GRAPH_IDEAL_NUMBA`` is not ``0`` the same bodies are
compiled with ``@njit`` and become the default entry points.

    GRAPH_IDEAL_NUMBA=0 pytest      # force the numpy path
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("GRAPH_IDEAL_NUMBA", "1") != "0"

# products of two residues must fit in int64
MAX_KERNEL_PRIME = 1 << 31


def _subset_profiles_py(adj, n):
    size = 1 << n
    full = size - 1
    comps = np.zeros(size, dtype=np.int32)
    bips = np.zeros(size, dtype=np.int32)
    for removed in range(size):
        rest = full & ~removed
        unseen = rest
        c = 0
        b = 0
        while unseen != 0:
            low = unseen & -unseen
            comp = low
            frontier = low
            even = low
            odd = 0
            layer = 0
            while frontier != 0:
                nb = 0
                for v in range(n):
                    if (frontier >> v) & 1:
                        nb |= adj[v]
                nb &= rest & ~comp
                comp |= nb
                layer += 1
                if layer & 1:
                    odd |= nb
                else:
                    even |= nb
                frontier = nb
            bipartite = 1
            for v in range(n):
                if (comp >> v) & 1:
                    side = even if (even >> v) & 1 else odd
                    if adj[v] & side:
                        bipartite = 0
                        break
            c += 1
            b += bipartite
            unseen &= ~comp
        comps[removed] = c
        bips[removed] = b
    return comps, bips


def _rank_mod_p_py(a, p):
    """Dense Gauss-Jordan rank over F_p with vectorised row updates."""
    a = np.array(a, dtype=np.int64) % p
    m, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        r += 1
    return r


def _inv_mod(a, p):
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if t < 0:
        t += p
    return t


def _rank_mod_p_loops(a, p):
    m, ncols = a.shape
    work = np.empty((m, ncols), dtype=np.int64)
    for i in range(m):
        for j in range(ncols):
            v = a[i, j] % p
            work[i, j] = v + p if v < 0 else v
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if work[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                tmp = work[r, j]
                work[r, j] = work[piv, j]
                work[piv, j] = tmp
        inv = _inv_mod(work[r, c], p)
        for j in range(c, ncols):
            work[r, j] = (work[r, j] * inv) % p
        for i in range(r + 1, m):
            f = work[i, c]
            if f != 0:
                for j in range(c, ncols):
                    v = (work[i, j] - f * work[r, j]) % p
                    work[i, j] = v
        r += 1
    return r


if USE_NUMBA:
    _inv_mod = njit(cache=True)(_inv_mod)
    _subset_profiles_nb = njit(cache=True)(_subset_profiles_py)
    _rank_mod_p_nb = njit(cache=True)(_rank_mod_p_loops)
else:
    _subset_profiles_nb = None
    _rank_mod_p_nb = None

BACKEND = "numba" if USE_NUMBA else "numpy"


def subset_profiles(adj_masks, n: int, backend: str | None = None):
    """Component and bipartite-component counts of G minus every vertex subset.

    ``adj_masks[v]`` is the neighbour bitmask of vertex ``v`` (0-based).
    Returns two int32 arrays indexed by the removed-set bitmask.
    """
    adj = np.asarray(adj_masks, dtype=np.int64)
    backend = backend or BACKEND
    if backend == "numba":
        if _subset_profiles_nb is None:
            raise RuntimeError("numba backend disabled")
        return _subset_profiles_nb(adj, n)
    return _subset_profiles_py([int(x) for x in adj], n)


def rank_mod_p(a, p: int, backend: str | None = None) -> int:
    """Rank of an integer matrix reduced modulo the prime ``p``."""
    if p >= MAX_KERNEL_PRIME:
        raise ValueError(f"kernel prime must be < 2^31, got {p}")
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2 or a.size == 0:
        return 0
    backend = backend or BACKEND
    if backend == "numba":
        if _rank_mod_p_nb is None:
            raise RuntimeError("numba backend disabled")
        return int(_rank_mod_p_nb(a, p))
    return int(_rank_mod_p_py(a, p))
