"""Immutable undirected simple graph with BFS utilities and the exact
shortest-path-length distribution used as ground truth.

Nodes are integers ``0..n-1``. Adjacency lists are kept sorted so that any
seeded procedure iterating over neighbors is reproducible. Unreachable
distances are reported as ``inf`` in float arrays, never as a large integer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse import csgraph


class GraphError(ValueError):
    """Invalid graph input or argument."""


class DisconnectedGraphError(GraphError):
    """An operation requiring a connected graph received a disconnected one."""


class Graph:
    """Undirected simple graph stored as sorted adjacency lists.

    Self-loops and duplicate edges in the input are dropped at construction;
    the number of dropped items is recorded in ``dropped_self_loops`` and
    ``dropped_duplicate_edges``. Instances are treated as immutable after
    construction, so all read operations are safe to call concurrently.

    Parameters
    ----------
    n : int
        Number of nodes; nodes are labeled ``0..n-1``.
    edges : iterable of (int, int)
        Unordered node pairs. Order and duplication do not matter.
    """

    __slots__ = (
        "n",
        "m",
        "dropped_self_loops",
        "dropped_duplicate_edges",
        "_adj",
        "_degrees",
        "_csr",
        "_nbr_sets",
    )

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]]):
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise GraphError(f"node count must be a nonnegative integer, got {n!r}")
        n = int(n)
        adj: list[list[int]] = [[] for _ in range(n)]
        seen: set[Tuple[int, int]] = set()
        self_loops = 0
        duplicates = 0
        for i, j in edges:
            i = int(i)
            j = int(j)
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                self_loops += 1
                continue
            key = (i, j) if i < j else (j, i)
            if key in seen:
                duplicates += 1
                continue
            seen.add(key)
            adj[i].append(j)
            adj[j].append(i)
        self.n = n
        self.m = len(seen)
        self.dropped_self_loops = self_loops
        self.dropped_duplicate_edges = duplicates
        self._adj: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(sorted(neighbors)) for neighbors in adj
        )
        self._degrees: np.ndarray | None = None
        self._csr = None
        self._nbr_sets: Tuple[frozenset, ...] | None = None

    # -- basic accessors ---------------------------------------------------

    @property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        """Per-node sorted neighbor tuples."""
        return self._adj

    def neighbors(self, i: int) -> Tuple[int, ...]:
        return self._adj[i]

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    @property
    def degrees(self) -> np.ndarray:
        """Degree of every node as an int64 array."""
        if self._degrees is None:
            self._degrees = np.array([len(a) for a in self._adj], dtype=np.int64)
        return self._degrees

    def has_edge(self, i: int, j: int) -> bool:
        if self._nbr_sets is None:
            self._nbr_sets = tuple(frozenset(a) for a in self._adj)
        return j in self._nbr_sets[i]

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Yield each edge once as ``(i, j)`` with ``i < j``, sorted."""
        for i, neighbors in enumerate(self._adj):
            for j in neighbors:
                if j > i:
                    yield (i, j)

    def edge_array(self) -> np.ndarray:
        """All edges as an ``(m, 2)`` int64 array with ``i < j`` per row."""
        if self.m == 0:
            return np.empty((0, 2), dtype=np.int64)
        return np.array(list(self.edges()), dtype=np.int64)

    @property
    def csr(self) -> csr_matrix:
        """Symmetric CSR adjacency matrix (built lazily, cached)."""
        if self._csr is None:
            if self.m == 0:
                self._csr = csr_matrix((self.n, self.n), dtype=np.float64)
            else:
                e = self.edge_array()
                rows = np.concatenate([e[:, 0], e[:, 1]])
                cols = np.concatenate([e[:, 1], e[:, 0]])
                data = np.ones(2 * self.m, dtype=np.float64)
                self._csr = csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        return self._csr

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SpldHistogram:
    """Counts of dyads per shortest-path length.

    ``counts[l]`` is the number of unordered node pairs at distance ``l``;
    index 0 is always zero. ``total`` is the number of dyads covered, and
    ``fractions`` sum to one.
    """

    counts: np.ndarray
    total: int

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "counts", counts)
        if counts.ndim != 1 or len(counts) < 1:
            raise GraphError("counts must be a 1-d array indexed by SPL")
        if counts[0] != 0:
            raise GraphError("distance 0 is reserved for self-pairs and must be empty")
        if (counts < 0).any():
            raise GraphError("negative dyad count")
        if int(counts.sum()) != self.total:
            raise GraphError(
                f"counts sum to {int(counts.sum())} but total is {self.total}"
            )
        if self.total <= 0:
            raise GraphError("histogram must cover at least one dyad")

    @property
    def fractions(self) -> np.ndarray:
        """Fraction of dyads per SPL value, same indexing as ``counts``."""
        return self.counts / float(self.total)

    @property
    def max_length(self) -> int:
        """Largest SPL with a nonzero count."""
        nz = np.flatnonzero(self.counts)
        return int(nz[-1]) if len(nz) else 0

    @property
    def mean(self) -> float:
        """Mean shortest-path length over all covered dyads."""
        lengths = np.arange(len(self.counts))
        return float(np.dot(lengths, self.counts) / self.total)

    def as_dict(self) -> Dict[int, int]:
        return {int(l): int(c) for l, c in enumerate(self.counts) if c > 0}


# -- traversal -------------------------------------------------------------


def bfs_sssp(g: Graph, source: int) -> np.ndarray:
    """Breadth-first distances from ``source`` to every node.

    Returns a float array where entry ``v`` is the minimum number of edges
    on a path from ``source`` to ``v``; unreachable nodes get ``inf``.
    """
    if not (0 <= source < g.n):
        raise GraphError(f"source {source} out of range for n={g.n}")
    dist = np.full(g.n, np.inf)
    dist[source] = 0.0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1.0
        for v in adj[u]:
            if np.isinf(dist[v]):
                dist[v] = du
                queue.append(v)
    return dist


def bfs_distances(g: Graph, sources: Sequence[int]) -> np.ndarray:
    """Unweighted distances from each source to every node, one row per source.

    Bulk counterpart of :func:`bfs_sssp` backed by compiled shortest-path
    routines; used wherever many sources are needed at once.
    """
    idx = np.asarray(sources, dtype=np.int64)
    if idx.size == 0:
        return np.empty((0, g.n))
    if idx.min() < 0 or idx.max() >= g.n:
        raise GraphError("source index out of range")
    dist = csgraph.dijkstra(g.csr, directed=False, unweighted=True, indices=idx)
    return np.atleast_2d(dist)


def distance_matrix(g: Graph) -> np.ndarray:
    """Full ``(n, n)`` matrix of pairwise distances (``inf`` if unreachable).

    Materializes n^2 floats; intended for diagnostics on small and medium
    graphs. Use :func:`exact_spld` for distribution-only queries.
    """
    return bfs_distances(g, np.arange(g.n))


# -- whole-graph summaries -------------------------------------------------


def exact_spld(g: Graph, chunk_size: int = 256) -> SpldHistogram:
    """Exact shortest-path-length distribution over all ``n*(n-1)/2`` dyads.

    Runs one BFS per node (in chunks) and counts each unordered pair once.
    Raises :class:`DisconnectedGraphError` naming an unreachable pair if the
    graph is not connected.
    """
    if g.n < 2:
        raise GraphError("need at least 2 nodes for a dyad distribution")
    counts = np.zeros(g.n, dtype=np.int64)
    for start in range(0, g.n, chunk_size):
        sources = np.arange(start, min(start + chunk_size, g.n))
        block = bfs_distances(g, sources)
        for row, src in zip(block, sources):
            tail = row[src + 1 :]
            if len(tail) == 0:
                continue
            bad = np.isinf(tail)
            if bad.any():
                other = int(src + 1 + np.flatnonzero(bad)[0])
                raise DisconnectedGraphError(
                    f"graph is disconnected: no path between nodes {int(src)} and {other}"
                )
            lengths = tail.astype(np.int64)
            counts[: lengths.max() + 1] += np.bincount(lengths, minlength=1)[
                : len(counts)
            ]
    total = g.n * (g.n - 1) // 2
    last = int(np.flatnonzero(counts)[-1])
    return SpldHistogram(counts=counts[: last + 1], total=total)


def is_connected(g: Graph) -> bool:
    """True when every node is reachable from every other node."""
    if g.n <= 1:
        return True
    return bool(np.isfinite(bfs_sssp(g, 0)).all())


def has_triangle(g: Graph) -> bool:
    """True when some three nodes are mutually adjacent."""
    adj = g.adjacency
    for i in range(g.n):
        nbrs_i = adj[i]
        set_i = set(nbrs_i)
        for j in nbrs_i:
            if j <= i:
                continue
            # common neighbor of i and j closes a triangle
            for k in adj[j]:
                if k != i and k in set_i:
                    return True
    return False


def largest_connected_component(g: Graph) -> Tuple[Graph, Dict[int, int]]:
    """Extract the largest connected component, relabeled to ``0..n'-1``.

    Ties on size go to the component containing the smallest original node
    id. Returns the component graph and the old-id -> new-id map.
    """
    if g.n == 0:
        raise GraphError("empty graph has no components")
    labels = np.full(g.n, -1, dtype=np.int64)
    best_nodes: list[int] = []
    comp = 0
    for root in range(g.n):
        if labels[root] >= 0:
            continue
        members = [root]
        labels[root] = comp
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if labels[v] < 0:
                    labels[v] = comp
                    members.append(v)
                    queue.append(v)
        # roots are scanned in increasing id order, so a strict size
        # comparison implements the smallest-id tie-break
        if len(members) > len(best_nodes):
            best_nodes = members
        comp += 1
    nodes = sorted(best_nodes)
    mapping = {old: new for new, old in enumerate(nodes)}
    edges = [
        (mapping[i], mapping[j]) for i, j in g.edges() if i in mapping and j in mapping
    ]
    return Graph(len(nodes), edges), mapping


def mean_distance(g: Graph) -> float:
    """Average SPL over all dyads; requires a connected graph."""
    return exact_spld(g).mean


def diameter(g: Graph) -> int:
    """Longest SPL between any two nodes; requires a connected graph."""
    return exact_spld(g).max_length
