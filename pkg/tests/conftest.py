"""Shared fixtures: tiny reference graphs, random connected graphs, and an
independent all-pairs distance oracle used to cross-check BFS-based code."""

import numpy as np
import pytest

from spldest import Graph


def triangle() -> Graph:
    return Graph(3, [(0, 1), (1, 2), (0, 2)])


def path3() -> Graph:
    return Graph(3, [(0, 1), (1, 2)])


def cycle4() -> Graph:
    return Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def two_disjoint_edges() -> Graph:
    return Graph(4, [(0, 1), (2, 3)])


def random_connected_graph(rng: np.random.Generator, n: int, extra: float = 1.0) -> Graph:
    """Random connected graph: random tree plus ~extra*n extra edges."""
    edges = [(int(rng.integers(0, i)), i) for i in range(1, n)]
    n_extra = int(extra * n)
    for _ in range(n_extra):
        i, j = rng.integers(0, n, size=2)
        if i != j:
            edges.append((int(i), int(j)))
    return Graph(n, edges)


def apsp_matrix_power(g: Graph) -> np.ndarray:
    """All-pairs distances by repeated boolean matrix multiplication.

    Independent of any BFS code path: reach_k = reach_{k-1} @ A marks the
    pairs connected by a walk of length <= k; a pair's distance is the first
    k at which it becomes reachable.
    """
    n = g.n
    adj = np.zeros((n, n), dtype=bool)
    for i, j in g.edges():
        adj[i, j] = adj[j, i] = True
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    dist[adj] = 1.0
    reach = adj.copy()
    for k in range(2, n):
        reach = (reach.astype(np.int64) @ adj.astype(np.int64)) > 0
        newly = reach & np.isinf(dist)
        np.fill_diagonal(newly, False)
        if not newly.any():
            break
        dist[newly] = float(k)
    return dist


def spld_counts_from_matrix(dist: np.ndarray) -> dict:
    """SPL value -> dyad count from a full distance matrix (upper triangle)."""
    iu, ju = np.triu_indices(dist.shape[0], k=1)
    vals = dist[iu, ju]
    counts = {}
    for v in vals:
        l = int(v)
        counts[l] = counts.get(l, 0) + 1
    return counts


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
