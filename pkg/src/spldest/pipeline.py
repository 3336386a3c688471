"""Single-sample estimation pipeline: walk, approximate SPLs, estimate.

The SPL approximation regime follows the estimated coefficient of
variation: at or above the threshold the induced-subgraph SPLs are used
directly, below it landmark upper bounds take over. A threshold band around
2 is surfaced as a warning because the regime guidance is soft there.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

import numpy as np

from . import estimators as est
from .estimators import DyadWeightTable, EstimatorResult, MomentEstimates
from .graph import Graph, GraphError
from .sampling import InducedSubgraph, WalkSample, induced_subgraph, run_walks
from .splapprox import (
    EXACT,
    LANDMARK,
    OBSERVED,
    DyadSplTable,
    build_landmark_index,
    exact_spl_table,
    landmark_spl_table,
    observed_spls,
    select_landmarks,
)

AUTO = "auto"
SPL_METHODS = (AUTO, OBSERVED, LANDMARK, EXACT)
CV_WARN_BAND = (1.5, 2.5)


@dataclass(frozen=True)
class SamplingDesign:
    """Knobs of one estimation run (everything except the graph and seed)."""

    beta: float
    num_walks: int = 1
    gamma: float = 0.3
    estimators: Tuple[str, ...] = (est.GHH_RATIO,)
    spl_method: str = AUTO
    cv_threshold: float = 2.0
    burn_in: int = 0
    tau_method: str = est.APPROACH_1

    def __post_init__(self):
        if self.spl_method not in SPL_METHODS:
            raise GraphError(f"unknown SPL method {self.spl_method!r}")
        unknown = set(self.estimators) - set(est.ALL_KINDS)
        if unknown:
            raise GraphError(f"unknown estimator kinds: {sorted(unknown)}")

    def to_dict(self) -> Dict:
        return {
            "beta": self.beta,
            "num_walks": self.num_walks,
            "gamma": self.gamma,
            "estimators": list(self.estimators),
            "spl_method": self.spl_method,
            "cv_threshold": self.cv_threshold,
            "burn_in": self.burn_in,
            "tau_method": self.tau_method,
        }


@dataclass(frozen=True)
class SampleRun:
    """Everything produced by one sample: estimates plus diagnostics."""

    results: Dict[str, EstimatorResult]
    moments: MomentEstimates
    weights: DyadWeightTable
    method_used: str
    sample: WalkSample = field(repr=False)
    subgraph: InducedSubgraph = field(repr=False)
    table: DyadSplTable = field(repr=False)
    excluded_pairs: int = 0

    @property
    def beta_star(self) -> float:
        """Realized fraction of nodes in the induced subgraph, |s*| / n."""
        return len(self.sample.distinct_nodes) / self.sample.n

    @property
    def edge_fraction(self) -> float:
        return self.subgraph.edge_fraction


def choose_spl_method(cv_hat: float, threshold: float = 2.0) -> str:
    """Resolve the approximation regime from the estimated c.v."""
    method = OBSERVED if cv_hat >= threshold else LANDMARK
    lo, hi = CV_WARN_BAND
    if lo <= cv_hat <= hi:
        warnings.warn(
            f"estimated c.v. {cv_hat:.2f} sits in the ambiguous band "
            f"[{lo}, {hi}]; regime choice '{method}' may be unreliable",
            stacklevel=2,
        )
    return method


def build_spl_table(
    g: Graph,
    ws: WalkSample,
    sub: InducedSubgraph,
    method: str,
    gamma: float,
) -> DyadSplTable:
    """Dyad SPL approximations for the visited nodes, by the given method."""
    if method == OBSERVED:
        return observed_spls(sub)
    if method == LANDMARK:
        marks = select_landmarks(ws, g, gamma)
        idx = build_landmark_index(g, marks)
        return landmark_spl_table(ws.distinct_nodes, idx)
    if method == EXACT:
        return exact_spl_table(g, ws.distinct_nodes)
    raise GraphError(f"unknown SPL method {method!r}")


def run_sample_pipeline(g: Graph, design: SamplingDesign, seed: int) -> SampleRun:
    """Draw one random-walk sample from ``g`` and run the requested estimators."""
    ws = run_walks(g, design.num_walks, design.beta, seed, design.burn_in)
    sub = induced_subgraph(g, ws)
    visited = ws.distinct_nodes
    deg = g.degrees[visited]
    q = ws.visit_counts[visited]
    moments = est.estimate_moments(deg, q, g.n)

    method = design.spl_method
    if method == AUTO:
        method = choose_spl_method(moments.cv_hat, design.cv_threshold)

    table = build_spl_table(g, ws, sub, method, design.gamma)
    needs_ht = est.HT in design.estimators or est.HT_RATIO in design.estimators
    weights = est.estimate_weights(
        visited,
        deg,
        q,
        g.n,
        ws.s_size,
        tau_method=design.tau_method if needs_ht else est.APPROACH_1,
        moments=moments,
    )

    # the unweighted estimator is defined on the induced-subgraph SPLD, so
    # it keeps using the observed table even when the weighted estimators
    # run on landmark or exact SPLs
    uw_table = table if method == OBSERVED else None
    if est.UW in design.estimators and uw_table is None:
        uw_table = observed_spls(sub)

    n_dyads = g.n * (g.n - 1) // 2
    results: Dict[str, EstimatorResult] = {}
    for kind in design.estimators:
        if kind == est.UW:
            results[kind] = est.estimate_uw(uw_table)
        elif kind == est.GHH:
            results[kind] = est.estimate_ghh(
                table,
                weights.multiplicities(table),
                weights.psi_for(table),
                ws.S_size,
                n_dyads,
            )
        elif kind == est.GHH_RATIO:
            results[kind] = est.estimate_ghh_ratio(
                table,
                weights.multiplicities(table),
                weights.degree_products(table),
            )
        elif kind == est.HT:
            results[kind] = est.estimate_ht(table, weights.pi_for(table), n_dyads)
        elif kind == est.HT_RATIO:
            results[kind] = est.estimate_ht_ratio(table, weights.pi_for(table))
    return SampleRun(
        results=results,
        moments=moments,
        weights=weights,
        method_used=method,
        sample=ws,
        subgraph=sub,
        table=table,
        excluded_pairs=table.excluded_pairs,
    )


def with_estimators(design: SamplingDesign, kinds: Tuple[str, ...]) -> SamplingDesign:
    """Copy of ``design`` asking for a different estimator set."""
    return replace(design, estimators=kinds)
