"""SPLD estimators for random-walk samples with unequal dyad probabilities.

Five estimators are implemented. The unweighted estimator is the empirical
fraction over observed dyads. The generalized Hansen-Hurwitz pair weights
dyads by their appearance counts against the long-run selection probability
psi_r = alpha * k_i * k_j (the walk's stationary distribution makes dyad
selection proportional to the degree product). The Horvitz-Thompson pair
weights each distinct dyad by an approximated inclusion probability
pi_r ~= tau_i * tau_j derived from a multinomial sampling model. Ratio forms
divide the estimated class total by the estimated grand total and therefore
sum to one.

Everything needed can be estimated from inside the sample: degree moments
via Hansen-Hurwitz ratio estimates over the visited multiset, and from them
the coefficient of variation, alpha, theta_i and tau_i.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .splapprox import DyadSplTable

UW = "UW"
GHH = "GHH"
GHH_RATIO = "GHH_ratio"
HT = "HT"
HT_RATIO = "HT_ratio"
ALL_KINDS = (UW, GHH, GHH_RATIO, HT, HT_RATIO)
RATIO_KINDS = (UW, GHH_RATIO, HT_RATIO)

APPROACH_1 = "approach1"
APPROACH_2 = "approach2"


class EstimationError(ValueError):
    """Estimator input is degenerate or inconsistent."""


class NoRootError(EstimationError):
    """The inclusion-probability calibration equation has no root."""


@dataclass(frozen=True)
class MomentEstimates:
    """Sample-side estimates of the degree-distribution moments.

    ``k1_hat``/``k2_hat`` are Hansen-Hurwitz ratio estimates of <k> and
    <k^2>; ``alpha_hat`` estimates the dyad-selection constant
    2 / ((n<k>)^2 - n<k^2>).
    """

    k1_hat: float
    k2_hat: float
    cv_hat: float
    alpha_hat: float


@dataclass(frozen=True)
class DyadWeightTable:
    """Per-node inclusion quantities for the sampled nodes (s*).

    Arrays are aligned with ``nodes``. ``psi_for``/``pi_for`` expand the
    node-level quantities to per-dyad weights for a dyad table.
    """

    nodes: np.ndarray
    degrees: np.ndarray
    visit_counts: np.ndarray
    phi_hat: np.ndarray
    theta_hat: np.ndarray
    tau_hat: np.ndarray
    moments: MomentEstimates
    total_steps: int
    tau_method: str
    t_star: Optional[float] = None

    def _positions(self, ids: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.nodes, ids)
        if (pos >= len(self.nodes)).any() or (self.nodes[pos] != ids).any():
            raise EstimationError("dyad references a node outside the sample")
        return pos

    def degree_products(self, table: DyadSplTable) -> np.ndarray:
        di = self.degrees[self._positions(table.node_i)]
        dj = self.degrees[self._positions(table.node_j)]
        return (di * dj).astype(np.float64)

    def multiplicities(self, table: DyadSplTable) -> np.ndarray:
        qi = self.visit_counts[self._positions(table.node_i)]
        qj = self.visit_counts[self._positions(table.node_j)]
        return (qi * qj).astype(np.float64)

    def psi_for(self, table: DyadSplTable) -> np.ndarray:
        return psi_hat_from_products(self.degree_products(table), self.moments)

    def pi_for(self, table: DyadSplTable) -> np.ndarray:
        ti = self.tau_hat[self._positions(table.node_i)]
        tj = self.tau_hat[self._positions(table.node_j)]
        return pi_hat(ti, tj)


@dataclass(frozen=True)
class EstimatorResult:
    """Estimated dyad fractions per SPL value; index 0 is unused."""

    kind: str
    fractions: np.ndarray

    @property
    def max_length(self) -> int:
        nz = np.flatnonzero(self.fractions)
        return int(nz[-1]) if len(nz) else 0

    @property
    def total(self) -> float:
        return float(self.fractions.sum())

    @property
    def mean_spl(self) -> float:
        """Mean SPL implied by the estimate (normalized if it does not sum to 1)."""
        weights = self.fractions
        s = weights.sum()
        if s <= 0:
            raise EstimationError("estimate has no mass")
        return float(np.dot(np.arange(len(weights)), weights) / s)


# -- sample-side moment and weight estimation -------------------------------


def estimate_moments(deg: np.ndarray, q: np.ndarray, n: int) -> MomentEstimates:
    """Estimate <k>, <k^2>, c.v. and alpha from the visited-node multiset.

    ``deg`` and ``q`` are aligned per visited node: its population degree
    and the number of times it appears in the sample. The estimates are
    Hansen-Hurwitz ratio estimates under the stationary visit distribution:
    k1 = |s| / sum(1/k), k2 = sum(k) / sum(1/k), with sums over the multiset.
    """
    deg = np.asarray(deg, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if deg.size == 0 or q.sum() <= 0:
        raise EstimationError("empty sample")
    if (deg < 1).any():
        raise EstimationError("sampled node with degree 0; graph must be connected")
    s_size = q.sum()
    harmonic = np.sum(q / deg)
    k1 = s_size / harmonic
    k2 = np.sum(q * deg) / harmonic
    spread = k2 - k1 * k1
    if spread < 0:
        warnings.warn(
            "second-moment estimate below squared mean (tiny sample); using c.v. = 0",
            stacklevel=2,
        )
        cv = 0.0
    else:
        cv = float(np.sqrt(spread) / k1)
    denom = (n * k1) ** 2 - n * k2
    if denom <= 0:
        raise EstimationError(
            f"degenerate selection-probability denominator {denom:.3g}; "
            "graph too small for the dyad weight model"
        )
    return MomentEstimates(
        k1_hat=float(k1),
        k2_hat=float(k2),
        cv_hat=cv,
        alpha_hat=float(2.0 / denom),
    )


def psi_hat(k_i, k_j, moments: MomentEstimates):
    """Estimated dyad selection probability alpha_hat * k_i * k_j."""
    return psi_hat_from_products(np.asarray(k_i, dtype=np.float64) * k_j, moments)


def psi_hat_from_products(products: np.ndarray, moments: MomentEstimates):
    if not np.isfinite(moments.alpha_hat) or moments.alpha_hat <= 0:
        raise EstimationError(f"invalid alpha estimate {moments.alpha_hat!r}")
    return moments.alpha_hat * products


def theta_hat(deg, k1_hat: float, n: int, t: int) -> np.ndarray:
    """Probability a node is ever drawn in t multinomial steps: 1 - (1 - p)^t.

    ``p`` is the estimated stationary probability k / (n * k1_hat).
    """
    p = np.asarray(deg, dtype=np.float64) / (n * k1_hat)
    if (p <= 0).any() or (p >= 1).any():
        raise EstimationError("stationary probability estimate outside (0, 1)")
    return -np.expm1(t * np.log1p(-p))


def theta_bar_hat(theta: np.ndarray, deg: np.ndarray, q: np.ndarray) -> float:
    """Hansen-Hurwitz ratio estimate of the population mean of theta."""
    deg = np.asarray(deg, dtype=np.float64)
    return float(np.sum(q * theta / deg) / np.sum(q / deg))


def tau_approach1(
    theta: np.ndarray,
    deg: np.ndarray,
    q: np.ndarray,
    s_star_size: int,
    n: int,
) -> np.ndarray:
    """Rescale theta so the estimated inclusion probabilities match |s*|.

    tau_i = |s*| / (n * theta_bar) * theta_i, clamped into (0, 1].
    """
    bar = theta_bar_hat(theta, deg, q)
    tau = s_star_size / (n * bar) * theta
    return np.minimum(tau, 1.0)


def tau_approach2(
    phi: np.ndarray, t: int, n: int, rel_tol: float = 1e-12
) -> tuple[np.ndarray, float]:
    """Calibrate an effective step count t* so that sum(1/tau) = n on s*.

    ``phi`` holds the estimated per-draw selection probabilities of the
    sampled nodes. h(x) = sum_i 1/(1 - (1 - phi_i)^x) - n is strictly
    decreasing, so the root in (0, t] is found by bisection; raises
    :class:`NoRootError` when h(t) > 0 (callers fall back to approach 1).

    Returns (tau, t_star).
    """
    phi = np.asarray(phi, dtype=np.float64)
    if (phi <= 0).any() or (phi >= 1).any():
        raise EstimationError("phi must lie strictly inside (0, 1)")
    if t < 1:
        raise EstimationError("need at least one step")
    log_miss = np.log1p(-phi)  # log(1 - phi) < 0

    def h(x: float) -> float:
        tau = -np.expm1(x * log_miss)
        return float(np.sum(1.0 / tau) - n)

    hi = float(t)
    if h(hi) > 0:
        raise NoRootError(
            "sum of inverse inclusion probabilities exceeds n even at t* = t"
        )
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if h(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rel_tol * hi:
            break
    t_star = hi
    tau = np.minimum(-np.expm1(t_star * log_miss), 1.0)
    return tau, t_star


def pair_inclusion_exact(p_i: float, p_j: float, t: int) -> float:
    """Exact joint inclusion probability under the multinomial model.

    theta_r = 1 - (1-p_i)^t - (1-p_j)^t + (1-p_i-p_j)^t. The product
    theta_i * theta_j used by the estimators differs from this by at most
    roughly t * p_i * p_j; exposed for diagnostics.
    """
    return float(
        1.0
        - (1.0 - p_i) ** t
        - (1.0 - p_j) ** t
        + (1.0 - p_i - p_j) ** t
    )


def pi_hat(tau_i, tau_j):
    """Approximate dyad inclusion probability tau_i * tau_j."""
    return np.asarray(tau_i, dtype=np.float64) * tau_j


def estimate_weights(
    ws_nodes: np.ndarray,
    deg: np.ndarray,
    q: np.ndarray,
    n: int,
    total_steps: int,
    tau_method: str = APPROACH_1,
    moments: Optional[MomentEstimates] = None,
) -> DyadWeightTable:
    """Estimate all node-level inclusion quantities for the sampled nodes.

    Falls back from approach 2 to approach 1 with a warning when the
    calibration equation has no root in (0, t].
    """
    if moments is None:
        moments = estimate_moments(deg, q, n)
    theta = theta_hat(deg, moments.k1_hat, n, total_steps)
    phi = np.asarray(deg, dtype=np.float64) / (n * moments.k1_hat)
    t_star: Optional[float] = None
    method = tau_method
    if tau_method == APPROACH_2:
        try:
            tau, t_star = tau_approach2(phi, total_steps, n)
        except NoRootError:
            warnings.warn(
                "tau calibration has no root in (0, t]; falling back to approach 1",
                stacklevel=2,
            )
            method = APPROACH_1
            tau = tau_approach1(theta, deg, q, len(ws_nodes), n)
    elif tau_method == APPROACH_1:
        tau = tau_approach1(theta, deg, q, len(ws_nodes), n)
    else:
        raise EstimationError(f"unknown tau method {tau_method!r}")
    return DyadWeightTable(
        nodes=np.asarray(ws_nodes, dtype=np.int64),
        degrees=np.asarray(deg, dtype=np.int64),
        visit_counts=np.asarray(q, dtype=np.int64),
        phi_hat=phi,
        theta_hat=theta,
        tau_hat=tau,
        moments=moments,
        total_steps=total_steps,
        tau_method=method,
        t_star=t_star,
    )


# -- the five estimators -----------------------------------------------------


def _class_sums(spl: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Sum ``weights`` per SPL value; index 0 stays zero."""
    return np.bincount(spl, weights=weights)


def estimate_uw(table: DyadSplTable) -> EstimatorResult:
    """Unweighted estimator: the empirical SPL fractions of the observed dyads."""
    if len(table) == 0:
        raise EstimationError("empty dyad table")
    counts = np.bincount(table.spl)
    return EstimatorResult(UW, counts / counts.sum())


def estimate_ghh(
    table: DyadSplTable,
    multiplicities: np.ndarray,
    psi: np.ndarray,
    S_size: int,
    n_dyads: int,
) -> EstimatorResult:
    """Generalized Hansen-Hurwitz estimator (original form).

    N_l = (1/|S|) * sum_r Q_r * y_r^l / psi_r, divided by the known dyad
    total N. The result need not sum to one.
    """
    _check_table(table, psi, "psi")
    if S_size <= 0 or n_dyads <= 0:
        raise EstimationError("need positive |S| and dyad total")
    sums = _class_sums(table.spl, multiplicities / psi)
    return EstimatorResult(GHH, sums / (S_size * float(n_dyads)))


def estimate_ghh_ratio(
    table: DyadSplTable,
    multiplicities: np.ndarray,
    degree_products: np.ndarray,
) -> EstimatorResult:
    """Generalized Hansen-Hurwitz ratio estimator.

    The selection constant alpha cancels, so only raw degree products are
    needed: f_l = sum_r(Q_r y_r^l / (k_i k_j)) / sum_r(Q_r / (k_i k_j)).
    """
    _check_table(table, degree_products, "degree product")
    weights = multiplicities / degree_products
    sums = _class_sums(table.spl, weights)
    return EstimatorResult(GHH_RATIO, sums / weights.sum())


def estimate_ht(table: DyadSplTable, pi: np.ndarray, n_dyads: int) -> EstimatorResult:
    """Horvitz-Thompson estimator over distinct dyads (original form)."""
    _check_table(table, pi, "pi")
    if n_dyads <= 0:
        raise EstimationError("need a positive dyad total")
    sums = _class_sums(table.spl, 1.0 / pi)
    return EstimatorResult(HT, sums / float(n_dyads))


def estimate_ht_ratio(table: DyadSplTable, pi: np.ndarray) -> EstimatorResult:
    """Horvitz-Thompson ratio estimator; sums to one by construction."""
    _check_table(table, pi, "pi")
    inv = 1.0 / pi
    sums = _class_sums(table.spl, inv)
    return EstimatorResult(HT_RATIO, sums / inv.sum())


def _check_table(table: DyadSplTable, weights: np.ndarray, label: str) -> None:
    if len(table) == 0:
        raise EstimationError("empty dyad table")
    if len(weights) != len(table):
        raise EstimationError(f"{label} weights misaligned with dyad table")
    bad = np.flatnonzero(weights <= 0)
    if bad.size:
        r = int(bad[0])
        raise EstimationError(
            f"nonpositive {label} weight for dyad "
            f"({int(table.node_i[r])}, {int(table.node_j[r])})"
        )
