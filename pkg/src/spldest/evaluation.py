"""Replication-based evaluation of SPLD estimates.

K independent samples are drawn, the estimators run on each, and the
estimates are scored against the exact distribution with three measures:
mean absolute difference, root mean square error (both per SPL value and
aggregated over the truth support), and the symmetrized Kullback-Leibler
divergence. Standard errors come from the replicate spread. Per-SPL
five-number summaries feed box-plot rendering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .estimators import RATIO_KINDS
from .graph import Graph, SpldHistogram, exact_spld
from .pipeline import SamplingDesign, run_sample_pipeline

KL_EPS = 1e-12


class EvaluationError(RuntimeError):
    """A replication run could not be completed."""


@dataclass(frozen=True)
class MetricSummary:
    """Per-SPL metric values plus the truth-support aggregate."""

    per_l: np.ndarray
    per_l_var: np.ndarray
    aggregate: float
    std_error: float


@dataclass(frozen=True)
class KlSummary:
    """Symmetrized KL divergence per replicate and its average."""

    per_replicate: np.ndarray
    aggregate: float
    std_error: float

    @property
    def scaled(self) -> float:
        """KL / 10, the paper's same-scale companion to MAD and RMSE."""
        return self.aggregate / 10.0


@dataclass(frozen=True)
class EstimatorEvaluation:
    kind: str
    mean_fractions: np.ndarray
    mad: MetricSummary
    rmse: MetricSummary
    kl: Optional[KlSummary]
    boxplot: Dict[str, np.ndarray]  # min/q1/median/q3/max/mean per SPL value


@dataclass(frozen=True)
class EvalReport:
    """Outcome of a K-replication evaluation run."""

    config: Dict
    n: int
    truth: np.ndarray
    truth_support: int
    num_replicates: int
    estimators: Dict[str, EstimatorEvaluation]
    diagnostics: Dict

    def to_dict(self) -> Dict:
        out = {
            "config": self.config,
            "n": self.n,
            "truth": self.truth.tolist(),
            "truth_support": self.truth_support,
            "num_replicates": self.num_replicates,
            "diagnostics": self.diagnostics,
            "estimators": {},
        }
        for kind, ev in self.estimators.items():
            entry = {
                "mean_fractions": ev.mean_fractions.tolist(),
                "mad_per_l": ev.mad.per_l.tolist(),
                "mad": ev.mad.aggregate,
                "mad_se": ev.mad.std_error,
                "rmse_per_l": ev.rmse.per_l.tolist(),
                "rmse": ev.rmse.aggregate,
                "rmse_se": ev.rmse.std_error,
                "boxplot": {k: v.tolist() for k, v in ev.boxplot.items()},
            }
            if ev.kl is not None:
                entry["kl"] = ev.kl.aggregate
                entry["kl_se"] = ev.kl.std_error
                entry["kl_over_10"] = ev.kl.scaled
            out["estimators"][kind] = entry
        return out


def _pad(vectors: Sequence[np.ndarray], width: int) -> np.ndarray:
    out = np.zeros((len(vectors), width))
    for k, v in enumerate(vectors):
        out[k, : len(v)] = v
    return out


def align_supports(
    estimates: Sequence[np.ndarray], truth: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Zero-pad estimate vectors and the truth onto their union support."""
    width = max(len(truth), max(len(v) for v in estimates))
    return _pad(estimates, width), _pad([truth], width)[0]


def mad(estimates: Sequence[np.ndarray], truth: np.ndarray) -> MetricSummary:
    """Mean absolute difference per SPL value and aggregated.

    MAD(l) averages |estimate_k(l) - truth(l)| over the K replicates; the
    aggregate divides the per-l sum by the number of truth-support bins.
    """
    mat, tr = align_supports(estimates, truth)
    k = mat.shape[0]
    abs_err = np.abs(mat - tr)
    per_l = abs_err.mean(axis=0)
    if k >= 2:
        per_l_var = ((abs_err - per_l) ** 2).sum(axis=0) / (k - 1) / k
    else:
        per_l_var = np.zeros_like(per_l)
    support = _truth_support(truth)
    aggregate = float(per_l[1:].sum() / support)
    std_error = float(np.sqrt(per_l_var[1:].sum()) / support)
    return MetricSummary(per_l, per_l_var, aggregate, std_error)


def rmse(estimates: Sequence[np.ndarray], truth: np.ndarray) -> MetricSummary:
    """Root mean square error per SPL value and aggregated."""
    mat, tr = align_supports(estimates, truth)
    k = mat.shape[0]
    abs_err = np.abs(mat - tr)
    per_l = np.sqrt((abs_err**2).mean(axis=0))
    if k >= 2:
        per_l_var = ((abs_err - per_l) ** 2).sum(axis=0) / (k - 1) / k
    else:
        per_l_var = np.zeros_like(per_l)
    support = _truth_support(truth)
    aggregate = float(per_l[1:].sum() / support)
    std_error = float(np.sqrt(per_l_var[1:].sum()) / support)
    return MetricSummary(per_l, per_l_var, aggregate, std_error)


def kl_sym(
    estimates: Sequence[np.ndarray], truth: np.ndarray, eps: float = KL_EPS
) -> KlSummary:
    """Symmetrized Kullback-Leibler divergence of each replicate from the truth.

    Both distributions are floored at ``eps`` on the union support and
    renormalized before taking natural logs. Only distributions that sum to
    one are accepted; original-form estimates should use their ratio
    counterparts here.
    """
    mat, tr = align_supports(estimates, truth)
    sums = mat.sum(axis=1)
    if not np.allclose(sums, 1.0, atol=1e-6):
        bad = int(np.argmax(np.abs(sums - 1.0)))
        raise EvaluationError(
            f"replicate {bad} sums to {sums[bad]:.6f}, not 1; KL needs "
            "probability vectors - use the ratio-form (or unweighted) estimators"
        )
    p = np.maximum(mat[:, 1:], eps)
    p = p / p.sum(axis=1, keepdims=True)
    q = np.maximum(tr[1:], eps)
    q = q / q.sum()
    per = (p * np.log(p / q)).sum(axis=1) + (q * np.log(q / p)).sum(axis=1)
    k = len(per)
    aggregate = float(per.mean())
    if k >= 2:
        std_error = float(np.sqrt(((per - aggregate) ** 2).sum() / (k - 1) / k))
    else:
        std_error = 0.0
    return KlSummary(per_replicate=per, aggregate=aggregate, std_error=std_error)


def _truth_support(truth: np.ndarray) -> int:
    support = int((np.asarray(truth)[1:] > 0).sum())
    if support == 0:
        raise EvaluationError("truth distribution has empty support")
    return support


def boxplot_summary(estimates: Sequence[np.ndarray], width: int) -> Dict[str, np.ndarray]:
    """Five-number summary plus mean of the replicate estimates, per SPL value."""
    mat = _pad(estimates, width)
    return {
        "min": mat.min(axis=0),
        "q1": np.percentile(mat, 25, axis=0),
        "median": np.percentile(mat, 50, axis=0),
        "q3": np.percentile(mat, 75, axis=0),
        "max": mat.max(axis=0),
        "mean": mat.mean(axis=0),
    }


def replicate_seed(seed: int, k: int) -> int:
    """Deterministic per-replicate seed derived from (seed, k)."""
    return int(np.random.SeedSequence((seed, k)).generate_state(1, np.uint64)[0])


def replicate(
    g: Graph,
    design: SamplingDesign,
    num_replicates: int,
    seed: int,
    truth: Optional[SpldHistogram] = None,
) -> EvalReport:
    """Run ``num_replicates`` independent pipelines and score every estimator.

    The exact SPLD is computed once (or passed in when already available).
    Replicate seeds derive from (seed, k), so the report is reproducible and
    the replicates could run in parallel.
    """
    if num_replicates < 1:
        raise EvaluationError("need at least one replicate")
    if truth is None:
        truth = exact_spld(g)
    truth_fractions = truth.fractions

    per_kind: Dict[str, List[np.ndarray]] = {k: [] for k in design.estimators}
    cv_hats: List[float] = []
    methods: Dict[str, int] = {}
    edge_fractions: List[float] = []
    beta_stars: List[float] = []
    excluded: List[int] = []
    for k in range(num_replicates):
        try:
            run = run_sample_pipeline(g, design, replicate_seed(seed, k))
        except Exception as exc:
            raise EvaluationError(f"replicate {k} failed: {exc}") from exc
        for kind, result in run.results.items():
            per_kind[kind].append(result.fractions)
        cv_hats.append(run.moments.cv_hat)
        methods[run.method_used] = methods.get(run.method_used, 0) + 1
        edge_fractions.append(run.edge_fraction)
        beta_stars.append(run.beta_star)
        excluded.append(run.excluded_pairs)

    evaluations: Dict[str, EstimatorEvaluation] = {}
    for kind, vectors in per_kind.items():
        mad_s = mad(vectors, truth_fractions)
        rmse_s = rmse(vectors, truth_fractions)
        kl_s = kl_sym(vectors, truth_fractions) if kind in RATIO_KINDS else None
        width = max(len(truth_fractions), max(len(v) for v in vectors))
        mean_frac = _pad(vectors, width).mean(axis=0)
        evaluations[kind] = EstimatorEvaluation(
            kind=kind,
            mean_fractions=mean_frac,
            mad=mad_s,
            rmse=rmse_s,
            kl=kl_s,
            boxplot=boxplot_summary(vectors, width),
        )
    diagnostics = {
        "mean_cv_hat": float(np.mean(cv_hats)),
        "methods_used": methods,
        "mean_edge_fraction": float(np.mean(edge_fractions)),
        "mean_beta_star": float(np.mean(beta_stars)),
        "mean_excluded_pairs": float(np.mean(excluded)),
        "truth_mean_spl": truth.mean,
        "truth_diameter": truth.max_length,
    }
    config = dict(design.to_dict(), seed=seed, num_replicates=num_replicates)
    return EvalReport(
        config=config,
        n=g.n,
        truth=truth_fractions,
        truth_support=_truth_support(truth_fractions),
        num_replicates=num_replicates,
        estimators=evaluations,
        diagnostics=diagnostics,
    )
