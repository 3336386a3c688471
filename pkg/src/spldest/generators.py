"""Seeded random-network generators and degree-moment statistics.

Three families are provided: Erdős–Rényi G(n, p), preferential attachment,
and a configuration model wired from a rounded gamma degree sequence. All
generators are pure functions of (parameters, seed).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError, largest_connected_component


@dataclass(frozen=True)
class DegreeStats:
    """First and second degree moments plus their coefficient of variation."""

    mean: float
    second_moment: float
    cv: float


@dataclass(frozen=True)
class ConfigModelReport:
    """What happened while wiring a configuration-model graph."""

    requested_degree_sum: int
    erased_self_loops: int
    erased_duplicate_edges: int
    pre_component_nodes: int
    component_nodes: int

    @property
    def retained_fraction(self) -> float:
        return self.component_nodes / self.pre_component_nodes


def degree_moments(g: Graph) -> DegreeStats:
    """Exact population moments of the degree distribution."""
    if g.n < 1:
        raise GraphError("degree moments need at least one node")
    deg = g.degrees.astype(np.float64)
    mean = float(deg.mean())
    second = float((deg * deg).mean())
    variance = max(second - mean * mean, 0.0)
    cv = float(np.sqrt(variance) / mean) if mean > 0 else 0.0
    return DegreeStats(mean=mean, second_moment=second, cv=cv)


def gen_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): every one of the n-choose-2 dyads is an edge with probability p.

    Deterministic for a fixed seed. ``p`` must lie strictly inside (0, 1).
    """
    if n < 2:
        raise GraphError(f"need n >= 2, got {n}")
    if not (0.0 < p < 1.0):
        raise GraphError(f"edge probability must be in (0, 1), got {p}")
    rng = np.random.default_rng(seed)
    edges = []
    for i in range(n - 1):
        hits = np.flatnonzero(rng.random(n - 1 - i) < p)
        for off in hits:
            edges.append((i, i + 1 + int(off)))
    return Graph(n, edges)


def gen_preferential_attachment(
    n: int, m_attach: int, m0: int | None = None, seed: int = 0
) -> Graph:
    """Grow a scale-free graph by degree-proportional attachment.

    Starts from a ring of ``m0`` nodes (default ``m0 = m_attach``); each new
    node wires to ``m_attach`` distinct existing nodes picked with probability
    proportional to current degree. The result is connected and simple.
    """
    if m0 is None:
        m0 = m_attach
    if not (1 <= m_attach <= m0 < n):
        raise GraphError(
            f"need 1 <= m_attach <= m0 < n, got m_attach={m_attach}, m0={m0}, n={n}"
        )
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = []
    if m0 >= 3:
        edges.extend((i, (i + 1) % m0) for i in range(m0))
    elif m0 == 2:
        edges.append((0, 1))
    # one entry per unit of degree; uniform draws from it realize
    # degree-proportional selection
    repeated: list[int] = [v for e in edges for v in e]
    for source in range(m0, n):
        targets: set[int] = set()
        while len(targets) < m_attach:
            if repeated:
                pick = repeated[int(rng.random() * len(repeated))]
            else:
                # degenerate all-zero-degree seed (m0 == 1): fall back to uniform
                pick = int(rng.random() * source)
            targets.add(pick)
        for t in sorted(targets):
            edges.append((source, t))
            repeated.append(t)
        repeated.extend([source] * m_attach)
    return Graph(n, edges)


def gen_configuration_gamma(
    n: int,
    shape: float,
    scale: float,
    seed: int,
    return_report: bool = False,
) -> Graph | tuple[Graph, ConfigModelReport]:
    """Configuration-model graph with a ``Gamma(shape, scale) + 1`` degree sequence.

    Draws are rounded to the nearest integer with a floor of 1 and a cap of
    n-1. An odd degree sum is fixed by incrementing the lowest-id node of
    minimum degree. Stubs are matched uniformly at random; self-loops and
    duplicate edges are erased, and the largest connected component is
    returned. A warning is emitted when the component retains less than 90%
    of the nodes.
    """
    if n < 3:
        raise GraphError(f"need n >= 3, got {n}")
    if shape <= 0 or scale <= 0:
        raise GraphError("gamma shape and scale must be positive")
    rng = np.random.default_rng(seed)
    draws = rng.gamma(shape, scale, size=n) + 1.0
    degrees = np.clip(np.rint(draws).astype(np.int64), 1, n - 1)
    if degrees.sum() % 2 == 1:
        fix = int(np.flatnonzero(degrees == degrees.min())[0])
        degrees[fix] += 1
    stubs = np.repeat(np.arange(n, dtype=np.int64), degrees)
    rng.shuffle(stubs)
    pairs = stubs.reshape(-1, 2)
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    loops = int((lo == hi).sum())
    keep = lo != hi
    unordered = np.stack([lo[keep], hi[keep]], axis=1)
    unique_edges = np.unique(unordered, axis=0)
    duplicates = int(len(unordered) - len(unique_edges))
    full = Graph(n, map(tuple, unique_edges))
    component, _ = largest_connected_component(full)
    report = ConfigModelReport(
        requested_degree_sum=int(degrees.sum()),
        erased_self_loops=loops,
        erased_duplicate_edges=duplicates,
        pre_component_nodes=n,
        component_nodes=component.n,
    )
    if report.retained_fraction < 0.9:
        warnings.warn(
            f"largest component keeps only {report.retained_fraction:.1%} of nodes",
            stacklevel=2,
        )
    if return_report:
        return component, report
    return component
