"""Estimate a network's shortest-path-length distribution from random-walk
samples, correcting unequal dyad inclusion probabilities with generalized
Hansen-Hurwitz and Horvitz-Thompson estimators."""

from .graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    SpldHistogram,
    bfs_distances,
    bfs_sssp,
    diameter,
    distance_matrix,
    exact_spld,
    has_triangle,
    is_connected,
    largest_connected_component,
    mean_distance,
)
from .generators import (
    ConfigModelReport,
    DegreeStats,
    degree_moments,
    gen_configuration_gamma,
    gen_erdos_renyi,
    gen_preferential_attachment,
)
from .sampling import (
    InducedSubgraph,
    WalkSample,
    dyad_multiplicities,
    induced_subgraph,
    run_walks,
    simulate_walk,
)
from .splapprox import (
    DyadSplTable,
    LandmarkIndex,
    SplDifferenceReport,
    build_landmark_index,
    exact_spl_table,
    landmark_spl,
    landmark_spl_table,
    observed_spls,
    select_landmarks,
    spl_difference_distribution,
)
from .estimators import (
    EstimationError,
    EstimatorResult,
    MomentEstimates,
    NoRootError,
    estimate_ghh,
    estimate_ghh_ratio,
    estimate_ht,
    estimate_ht_ratio,
    estimate_moments,
    estimate_uw,
    estimate_weights,
    pair_inclusion_exact,
    pi_hat,
    psi_hat,
    tau_approach1,
    tau_approach2,
    theta_hat,
)
from .pipeline import SampleRun, SamplingDesign, choose_spl_method, run_sample_pipeline
from .evaluation import EvalReport, kl_sym, mad, replicate, rmse
from .io import ExperimentConfig, IngestReport, ingest_edge_list, parse_config, write_edge_list

__version__ = "0.1.0"

__all__ = [
    "ConfigModelReport",
    "DegreeStats",
    "DisconnectedGraphError",
    "DyadSplTable",
    "EstimationError",
    "EstimatorResult",
    "EvalReport",
    "ExperimentConfig",
    "Graph",
    "GraphError",
    "IngestReport",
    "InducedSubgraph",
    "LandmarkIndex",
    "MomentEstimates",
    "NoRootError",
    "SampleRun",
    "SamplingDesign",
    "SplDifferenceReport",
    "SpldHistogram",
    "WalkSample",
    "bfs_distances",
    "bfs_sssp",
    "build_landmark_index",
    "choose_spl_method",
    "degree_moments",
    "diameter",
    "distance_matrix",
    "dyad_multiplicities",
    "estimate_ghh",
    "estimate_ghh_ratio",
    "estimate_ht",
    "estimate_ht_ratio",
    "estimate_moments",
    "estimate_uw",
    "estimate_weights",
    "exact_spl_table",
    "exact_spld",
    "gen_configuration_gamma",
    "gen_erdos_renyi",
    "gen_preferential_attachment",
    "has_triangle",
    "induced_subgraph",
    "ingest_edge_list",
    "is_connected",
    "kl_sym",
    "landmark_spl",
    "landmark_spl_table",
    "largest_connected_component",
    "mad",
    "mean_distance",
    "observed_spls",
    "pair_inclusion_exact",
    "parse_config",
    "pi_hat",
    "psi_hat",
    "replicate",
    "rmse",
    "run_sample_pipeline",
    "run_walks",
    "select_landmarks",
    "simulate_walk",
    "spl_difference_distribution",
    "tau_approach1",
    "tau_approach2",
    "theta_hat",
    "write_edge_list",
]
