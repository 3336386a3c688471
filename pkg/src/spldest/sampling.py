"""Random-walk sampling of a graph and the induced subgraph it uncovers.

H walks start at distinct uniformly chosen nodes and move to a uniformly
random neighbor at every step. Each walk draws from its own random stream
derived from (seed, walk index), so results do not depend on execution
order and the walks may run in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .graph import DisconnectedGraphError, Graph, GraphError, is_connected


@dataclass(frozen=True)
class WalkSample:
    """Node sequences recorded by H random walks of B steps each.

    ``visit_counts[i]`` is the number of times node i appears across all
    recorded sequences (q_i). ``s_size`` is the with-duplicates sample size
    H*B and ``S_size`` the number of distinct-node dyad slots
    C(|s|, 2) - sum_i C(q_i, 2).
    """

    walks: Tuple[np.ndarray, ...]
    visit_counts: np.ndarray
    n: int
    num_walks: int
    steps_per_walk: int
    seed: int
    burn_in: int = 0

    @property
    def s_size(self) -> int:
        return self.num_walks * self.steps_per_walk

    @property
    def distinct_nodes(self) -> np.ndarray:
        """Sorted original ids of all visited nodes (s*)."""
        return np.flatnonzero(self.visit_counts > 0)

    @property
    def S_size(self) -> int:
        q = self.visit_counts
        s = self.s_size
        within = int(np.sum(q * (q - 1) // 2))
        return s * (s - 1) // 2 - within


@dataclass(frozen=True)
class InducedSubgraph:
    """Subgraph on the visited nodes with every parent edge between them."""

    subgraph: Graph
    nodes: np.ndarray  # new id -> original id (sorted)
    edge_fraction: float
    parent_edge_count: int = field(repr=False, default=0)

    def to_parent(self, sub_ids: np.ndarray) -> np.ndarray:
        return self.nodes[sub_ids]


def _single_walk(
    adjacency: Tuple[Tuple[int, ...], ...],
    start: int,
    steps: int,
    burn_in: int,
    rng: np.random.Generator,
) -> np.ndarray:
    total = burn_in + steps
    u = rng.random(total)
    out = np.empty(steps, dtype=np.int64)
    cur = start
    for step in range(total):
        nbrs = adjacency[cur]
        cur = nbrs[int(u[step] * len(nbrs))]
        if step >= burn_in:
            out[step - burn_in] = cur
    return out


def simulate_walk(
    g: Graph,
    steps: int,
    seed: int,
    burn_in: int = 0,
    start: int | None = None,
) -> np.ndarray:
    """Record ``steps`` nodes of one random walk, unconstrained by a budget.

    The budgeted sampler builds on this; it is exposed separately for
    diagnostics such as checking the stationary visit distribution, where
    walks far longer than the sampling budget are needed. ``burn_in``
    leading steps are simulated but not recorded.
    """
    if steps < 1:
        raise GraphError("need at least one step")
    if burn_in < 0:
        raise GraphError("burn_in must be nonnegative")
    rng = np.random.default_rng(seed)
    if start is None:
        start = int(rng.integers(g.n))
    elif not (0 <= start < g.n):
        raise GraphError(f"start node {start} out of range")
    if g.degree(start) == 0:
        raise GraphError(f"start node {start} has no neighbors")
    return _single_walk(g.adjacency, start, steps, burn_in, rng)


def run_walks(
    g: Graph,
    num_walks: int,
    beta: float,
    seed: int,
    burn_in: int = 0,
) -> WalkSample:
    """Run ``num_walks`` seeded random walks with total budget ``beta * n`` steps.

    Each walk records ``B = round(beta * n / num_walks)`` nodes; when
    ``burn_in > 0`` that many extra leading steps are taken and discarded,
    which approximates a stationary start without shrinking the sample.

    Starting nodes are a simple random sample of ``num_walks`` distinct
    nodes; every subsequent step moves to a uniformly random neighbor.
    """
    if not (0.0 < beta < 1.0):
        raise GraphError(f"sampling budget beta must be in (0, 1), got {beta}")
    if num_walks < 1:
        raise GraphError(f"need at least one walk, got {num_walks}")
    if num_walks > g.n:
        raise GraphError(f"cannot pick {num_walks} distinct starts from {g.n} nodes")
    if burn_in < 0:
        raise GraphError("burn_in must be nonnegative")
    per_walk = beta * g.n / num_walks
    if per_walk < 2:
        raise GraphError(
            f"budget too small: beta*n/H = {per_walk:.3f} < 2 steps per walk"
        )
    if not is_connected(g):
        raise DisconnectedGraphError("random walks require a connected graph")
    steps = int(round(per_walk))
    root = np.random.SeedSequence(seed)
    children = root.spawn(num_walks + 1)
    starts = np.random.default_rng(children[0]).choice(
        g.n, size=num_walks, replace=False
    )
    adjacency = g.adjacency
    walks = tuple(
        _single_walk(adjacency, int(starts[h]), steps, burn_in,
                     np.random.default_rng(children[h + 1]))
        for h in range(num_walks)
    )
    visits = np.bincount(np.concatenate(walks), minlength=g.n)
    return WalkSample(
        walks=walks,
        visit_counts=visits,
        n=g.n,
        num_walks=num_walks,
        steps_per_walk=steps,
        seed=seed,
        burn_in=burn_in,
    )


def induced_subgraph(g: Graph, ws: WalkSample) -> InducedSubgraph:
    """Build the subgraph induced by the visited nodes of ``ws``.

    Contains exactly the parent edges with both endpoints visited. The
    ``edge_fraction`` (E.f) is measured against the parent edge count.
    """
    if ws.n != g.n or len(ws.visit_counts) != g.n:
        raise GraphError(
            f"sample was drawn from a graph with {ws.n} nodes, parent has {g.n}"
        )
    nodes = ws.distinct_nodes
    if nodes.size and nodes[-1] >= g.n:
        raise GraphError("sample references node ids outside the parent graph")
    lookup = np.full(g.n, -1, dtype=np.int64)
    lookup[nodes] = np.arange(len(nodes))
    edges = []
    for new_i, old_i in enumerate(nodes):
        for old_j in g.adjacency[old_i]:
            if old_j > old_i and lookup[old_j] >= 0:
                edges.append((new_i, int(lookup[old_j])))
    sub = Graph(len(nodes), edges)
    fraction = sub.m / g.m if g.m else 0.0
    return InducedSubgraph(
        subgraph=sub,
        nodes=nodes,
        edge_fraction=fraction,
        parent_edge_count=g.m,
    )


def dyad_multiplicities(ws: WalkSample) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-dyad appearance counts Q_r = q_i * q_j over visited node pairs.

    Returns parallel arrays ``(node_i, node_j, q_product)`` covering every
    unordered pair of distinct visited nodes, with original node ids and
    ``node_i < node_j``. The products sum to ``ws.S_size`` exactly.
    """
    nodes = ws.distinct_nodes
    q = ws.visit_counts[nodes]
    iu, ju = np.triu_indices(len(nodes), k=1)
    products = q[iu] * q[ju]
    assert int(products.sum()) == ws.S_size
    return nodes[iu], nodes[ju], products
