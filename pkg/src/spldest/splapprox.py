"""Approximate shortest-path lengths between sampled nodes.

Two regimes: for high degree-variability networks the SPL observed inside
the induced subgraph is used directly; for low variability, high-degree
sampled nodes become landmarks whose full-graph BFS rows give the classic
triangle-inequality bounds

    max_j |l_sj - l_jt|  <=  l_st  <=  min_j (l_sj + l_jt)

and the upper bound serves as the estimate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .graph import Graph, GraphError, bfs_distances
from .sampling import InducedSubgraph, WalkSample

OBSERVED = "observed"
LANDMARK = "landmark"
EXACT = "exact"


@dataclass(frozen=True)
class DyadSplTable:
    """Approximated SPL per sampled dyad.

    ``node_i``/``node_j`` hold original graph ids with ``node_i < node_j``;
    ``spl`` is the approximation (always >= 1). ``excluded_pairs`` counts
    sampled dyads left out because no path existed inside the induced
    subgraph.
    """

    node_i: np.ndarray
    node_j: np.ndarray
    spl: np.ndarray
    method: str
    excluded_pairs: int = 0

    def __post_init__(self):
        if not (len(self.node_i) == len(self.node_j) == len(self.spl)):
            raise GraphError("dyad table columns must have equal length")
        if len(self.spl) and self.spl.min() < 1:
            raise GraphError("dyad SPL below 1")

    def __len__(self) -> int:
        return len(self.spl)


@dataclass(frozen=True)
class LandmarkIndex:
    """Distances from each landmark to every node of the population graph."""

    landmarks: np.ndarray
    distances: np.ndarray  # shape (len(landmarks), n)

    @property
    def n(self) -> int:
        return self.distances.shape[1]


@dataclass(frozen=True)
class SplDifferenceReport:
    """Distribution of (approximated - true) SPL, grouped by the true value."""

    per_true_spl: Dict[int, np.ndarray]  # true l -> counts indexed by difference
    zero_fraction: float
    total_dyads: int


def _pair_block(sub_distances: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    k = sub_distances.shape[0]
    iu, ju = np.triu_indices(k, k=1)
    return iu, ju, sub_distances[iu, ju]


def observed_spls(sub: InducedSubgraph) -> DyadSplTable:
    """SPL of every dyad of visited nodes, measured inside the induced subgraph.

    Dyads disconnected within the subgraph are omitted; their count is
    reported in ``excluded_pairs``. Observed values can only exceed the true
    population SPL, never undershoot it.
    """
    if sub.subgraph.n == 0:
        raise GraphError("induced subgraph is empty")
    dist = bfs_distances(sub.subgraph, np.arange(sub.subgraph.n))
    iu, ju, vals = _pair_block(dist)
    finite = np.isfinite(vals)
    return DyadSplTable(
        node_i=sub.nodes[iu[finite]],
        node_j=sub.nodes[ju[finite]],
        spl=vals[finite].astype(np.int64),
        method=OBSERVED,
        excluded_pairs=int((~finite).sum()),
    )


def select_landmarks(ws: WalkSample, g: Graph, gamma: float) -> np.ndarray:
    """Pick the round(gamma * |s*|) visited nodes of highest population degree.

    At least one landmark is always selected. Ties on degree are broken
    toward the smaller node id. Returns landmark ids ordered by decreasing
    degree.
    """
    if not (0.0 < gamma <= 1.0):
        raise GraphError(f"landmark fraction must be in (0, 1], got {gamma}")
    visited = ws.distinct_nodes
    if visited.size == 0:
        raise GraphError("cannot select landmarks from an empty sample")
    count = max(1, round(gamma * len(visited)))
    order = np.lexsort((visited, -g.degrees[visited]))
    return visited[order[:count]]


def build_landmark_index(g: Graph, landmarks: Sequence[int]) -> LandmarkIndex:
    """Run one full-graph BFS per landmark and store the distance rows."""
    marks = np.asarray(landmarks, dtype=np.int64)
    if marks.size == 0:
        raise GraphError("need at least one landmark")
    if marks.min() < 0 or marks.max() >= g.n:
        raise GraphError("landmark id out of range")
    return LandmarkIndex(landmarks=marks, distances=bfs_distances(g, marks))


def landmark_spl(s: int, t: int, idx: LandmarkIndex) -> Tuple[int, int]:
    """Upper and lower SPL bounds for the dyad (s, t) from the landmark rows.

    The upper bound is exact whenever some landmark lies on a shortest path
    between s and t; in particular it is exact when s or t is a landmark.
    """
    if s == t:
        raise GraphError("dyad requires two distinct nodes")
    to_s = idx.distances[:, s]
    to_t = idx.distances[:, t]
    upper = int((to_s + to_t).min())
    lower = int(np.abs(to_s - to_t).max())
    return upper, lower


def landmark_bound_matrices(
    nodes: Sequence[int], idx: LandmarkIndex, with_lower: bool = False
) -> tuple[np.ndarray, Optional[np.ndarray]]:
    """Upper (and optionally lower) bound matrices for all pairs of ``nodes``.

    Entry [a, b] bounds the SPL between nodes[a] and nodes[b]; the diagonal
    is meaningless. Memory is O(len(nodes)^2); landmarks are folded in one
    at a time.
    """
    cols = np.asarray(nodes, dtype=np.int64)
    rows = idx.distances[:, cols]
    k = len(cols)
    upper = np.full((k, k), np.inf)
    lower = np.zeros((k, k)) if with_lower else None
    for r in rows:
        np.minimum(upper, r[:, None] + r[None, :], out=upper)
        if lower is not None:
            np.maximum(lower, np.abs(r[:, None] - r[None, :]), out=lower)
    return upper, lower


def landmark_spl_table(nodes: Sequence[int], idx: LandmarkIndex) -> DyadSplTable:
    """Landmark upper-bound SPL estimates for all dyads of ``nodes``."""
    cols = np.asarray(nodes, dtype=np.int64)
    upper, _ = landmark_bound_matrices(cols, idx)
    iu, ju, vals = _pair_block(upper)
    return DyadSplTable(
        node_i=cols[iu],
        node_j=cols[ju],
        spl=vals.astype(np.int64),
        method=LANDMARK,
    )


def exact_spl_table(g: Graph, nodes: Sequence[int]) -> DyadSplTable:
    """True population SPLs for all dyads of ``nodes`` (BFS per node)."""
    cols = np.asarray(nodes, dtype=np.int64)
    dist = bfs_distances(g, cols)[:, cols]
    iu, ju, vals = _pair_block(dist)
    if not np.isfinite(vals).all():
        raise GraphError("sampled nodes are not mutually reachable")
    return DyadSplTable(
        node_i=cols[iu],
        node_j=cols[ju],
        spl=vals.astype(np.int64),
        method=EXACT,
    )


def spl_difference_distribution(
    g: Graph, table: DyadSplTable, oracle: Optional[np.ndarray] = None
) -> SplDifferenceReport:
    """Distribution of (approximated - true) SPL per true SPL value.

    ``oracle`` may supply a precomputed full distance matrix; otherwise the
    needed BFS rows are computed from ``g``. The overall fraction of
    zero-difference dyads measures how well the sample uncovered true
    shortest paths.
    """
    if len(table) == 0:
        raise GraphError("empty dyad table")
    if oracle is not None:
        true_vals = oracle[table.node_i, table.node_j]
    else:
        sources = np.unique(table.node_i)
        rows = bfs_distances(g, sources)
        row_of = {int(s): k for k, s in enumerate(sources)}
        src_idx = np.array([row_of[int(i)] for i in table.node_i], dtype=np.int64)
        true_vals = rows[src_idx, table.node_j]
    if not np.isfinite(true_vals).all():
        raise GraphError("oracle does not cover every dyad in the table")
    true_vals = true_vals.astype(np.int64)
    diffs = table.spl - true_vals
    if diffs.min() < 0:
        raise GraphError("approximated SPL below the true SPL; oracle mismatch")
    per_true = {
        int(l): np.bincount(diffs[true_vals == l])
        for l in np.unique(true_vals)
    }
    return SplDifferenceReport(
        per_true_spl=per_true,
        zero_fraction=float((diffs == 0).mean()),
        total_dyads=len(table),
    )
