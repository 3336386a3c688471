"""File formats: SNAP-style edge lists, experiment configs, dyad tables.

Edge lists are ASCII with ``#`` comment lines and at least two
whitespace-separated integer tokens per data line (extra columns are
ignored). Configs are flat ``key = value`` text files; any key can be
overridden on the command line. Dyad tables travel as CSV with ``# key=value``
metadata lines so that estimation can resume from the file alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from . import estimators as est
from .graph import Graph, GraphError, largest_connected_component
from .pipeline import SPL_METHODS, SamplingDesign
from .splapprox import DyadSplTable


class EdgeListParseError(ValueError):
    """Malformed edge-list input."""


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class IngestReport:
    """Bookkeeping from turning a raw edge list into a clean component."""

    path: str
    raw_lines: int
    raw_nodes: int
    raw_edges: int
    self_loops_dropped: int
    duplicates_merged: int
    component_nodes: int
    component_edges: int

    def to_dict(self) -> Dict:
        return {
            "path": self.path,
            "raw_lines": self.raw_lines,
            "raw_nodes": self.raw_nodes,
            "raw_edges": self.raw_edges,
            "self_loops_dropped": self.self_loops_dropped,
            "duplicates_merged": self.duplicates_merged,
            "component_nodes": self.component_nodes,
            "component_edges": self.component_edges,
        }


def ingest_edge_list(path: str | Path) -> Tuple[Graph, IngestReport]:
    """Read an edge list and return its largest connected component.

    Directed duplicates are merged, self-loops dropped, node ids compacted
    to 0..n-1. Raises :class:`EdgeListParseError` with the offending line
    number on malformed input.
    """
    path = Path(path)
    raw_edges: list[Tuple[int, int]] = []
    node_ids: set[int] = set()
    self_loops = 0
    lines = 0
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            lines += 1
            tokens = text.split()
            if len(tokens) < 2:
                raise EdgeListParseError(
                    f"{path}:{lineno}: expected at least two integer tokens"
                )
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError as exc:
                raise EdgeListParseError(
                    f"{path}:{lineno}: non-integer node id in {text!r}"
                ) from exc
            node_ids.add(u)
            node_ids.add(v)
            if u == v:
                self_loops += 1
                continue
            raw_edges.append((u, v) if u < v else (v, u))
    if not node_ids:
        raise EdgeListParseError(f"{path}: no edges found")
    ordered = sorted(node_ids)
    compact = {old: new for new, old in enumerate(ordered)}
    unique_edges = {(compact[u], compact[v]) for u, v in raw_edges}
    duplicates = len(raw_edges) - len(unique_edges)
    full = Graph(len(ordered), unique_edges)
    component, _ = largest_connected_component(full)
    report = IngestReport(
        path=str(path),
        raw_lines=lines,
        raw_nodes=len(ordered),
        raw_edges=len(raw_edges) + self_loops,
        self_loops_dropped=self_loops,
        duplicates_merged=duplicates,
        component_nodes=component.n,
        component_edges=component.m,
    )
    return component, report


def write_edge_list(g: Graph, path: str | Path, comments: Sequence[str] = ()) -> None:
    """Write one ``i j`` line per edge, sorted, with optional ``#`` header lines."""
    with open(path, "w", encoding="ascii") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        for i, j in g.edges():
            fh.write(f"{i} {j}\n")


# -- experiment configuration -------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    """Inputs of a full evaluation run, as read from a config file."""

    input: str
    beta: float = 0.2
    gamma: float = 0.3
    num_walks: int = 1
    replicates: int = 100
    burn_in: int = 0
    estimators: Tuple[str, ...] = (est.UW, est.GHH_RATIO)
    spl_method: str = "auto"
    cv_threshold: float = 2.0
    tau_method: str = est.APPROACH_1
    seed: int = 0
    output_dir: str = "out"
    n: Optional[int] = None  # required when the input is a crawled edge list

    def __post_init__(self):
        if not self.input:
            raise ConfigError("config needs exactly one input source")
        if not (0.0 < self.beta < 1.0):
            raise ConfigError(f"beta must be in (0, 1), got {self.beta}")
        if not (0.0 < self.gamma <= 1.0):
            raise ConfigError(f"gamma must be in (0, 1], got {self.gamma}")
        if self.num_walks < 1:
            raise ConfigError("num_walks must be >= 1")
        if self.replicates < 1:
            raise ConfigError("replicates must be >= 1")
        if self.spl_method not in SPL_METHODS:
            raise ConfigError(f"unknown spl_method {self.spl_method!r}")
        bad = set(self.estimators) - set(est.ALL_KINDS)
        if bad:
            raise ConfigError(f"unknown estimators: {sorted(bad)}")

    def design(self) -> SamplingDesign:
        return SamplingDesign(
            beta=self.beta,
            num_walks=self.num_walks,
            gamma=self.gamma,
            estimators=self.estimators,
            spl_method=self.spl_method,
            cv_threshold=self.cv_threshold,
            burn_in=self.burn_in,
            tau_method=self.tau_method,
        )

    def to_dict(self) -> Dict:
        return {
            "input": self.input,
            "beta": self.beta,
            "gamma": self.gamma,
            "num_walks": self.num_walks,
            "replicates": self.replicates,
            "burn_in": self.burn_in,
            "estimators": list(self.estimators),
            "spl_method": self.spl_method,
            "cv_threshold": self.cv_threshold,
            "tau_method": self.tau_method,
            "seed": self.seed,
            "output_dir": self.output_dir,
            "n": self.n,
        }


_KIND_ALIASES = {k.lower(): k for k in est.ALL_KINDS}
_INT_KEYS = {"num_walks", "replicates", "burn_in", "seed", "n"}
_FLOAT_KEYS = {"beta", "gamma", "cv_threshold"}


def _coerce(key: str, value: str):
    if key in _INT_KEYS:
        return int(value)
    if key in _FLOAT_KEYS:
        return float(value)
    if key == "estimators":
        kinds = []
        for token in value.replace(",", " ").split():
            alias = token.strip().lower()
            if alias not in _KIND_ALIASES:
                raise ConfigError(f"unknown estimator {token!r}")
            kinds.append(_KIND_ALIASES[alias])
        return tuple(kinds)
    return value


def parse_config(path: str | Path, overrides: Sequence[str] = ()) -> ExperimentConfig:
    """Read a flat ``key = value`` config file, then apply ``key=value`` overrides."""
    values: Dict[str, object] = {}
    known = {f.name for f in fields(ExperimentConfig)}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if "=" not in text:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, _, raw = text.partition("=")
            key = key.strip()
            if key not in known:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _coerce(key, raw.strip())
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} must look like key=value")
        key, _, raw = item.partition("=")
        key = key.strip()
        if key not in known:
            raise ConfigError(f"unknown override key {key!r}")
        values[key] = _coerce(key, raw.strip())
    if "input" not in values:
        raise ConfigError("config needs exactly one input source ('input = ...')")
    return ExperimentConfig(**values)  # type: ignore[arg-type]


# -- graph input resolution ----------------------------------------------------


def resolve_input(spec: str, seed: int) -> Tuple[Graph, Dict]:
    """Turn an input spec into a graph.

    ``er:n=1000,p=0.006``, ``ba:n=1000,m_attach=3`` and
    ``gamma:n=5000,shape=0.125,scale=40`` call the generators with the given
    seed; anything else is treated as an edge-list path.
    """
    from . import generators as gen  # deferred; keeps io importable standalone

    kind, _, args = spec.partition(":")
    if kind in ("er", "ba", "gamma") and args:
        params: Dict[str, float] = {}
        for token in args.split(","):
            key, _, raw = token.partition("=")
            if not raw:
                raise ConfigError(f"bad generator parameter {token!r} in {spec!r}")
            params[key.strip()] = float(raw)
        try:
            if kind == "er":
                g = gen.gen_erdos_renyi(int(params["n"]), params["p"], seed)
            elif kind == "ba":
                g = gen.gen_preferential_attachment(
                    int(params["n"]),
                    int(params["m_attach"]),
                    int(params["m0"]) if "m0" in params else None,
                    seed,
                )
            else:
                g = gen.gen_configuration_gamma(
                    int(params["n"]), params["shape"], params["scale"], seed
                )
        except KeyError as exc:
            raise ConfigError(f"generator spec {spec!r} misses parameter {exc}") from exc
        return g, {"source": spec, "seed": seed, "n": g.n, "m": g.m}
    g, report = ingest_edge_list(spec)
    return g, {"source": spec, **report.to_dict()}


# -- dyad table CSV -------------------------------------------------------------

WEIGHT_PSI = "psi"
WEIGHT_PI = "pi"


def write_dyad_csv(
    path: str | Path,
    table: DyadSplTable,
    multiplicities: np.ndarray,
    weights: np.ndarray,
    metadata: Dict,
) -> None:
    """Write ``i,j,spl,multiplicity,weight`` rows with ``# key=value`` metadata."""
    with open(path, "w", encoding="ascii") as fh:
        for key in sorted(metadata):
            fh.write(f"# {key}={metadata[key]}\n")
        fh.write("i,j,spl,multiplicity,weight\n")
        for i, j, l, q, w in zip(
            table.node_i, table.node_j, table.spl, multiplicities, weights
        ):
            fh.write(f"{int(i)},{int(j)},{int(l)},{int(q)},{w!r}\n")


def read_dyad_csv(path: str | Path) -> Tuple[DyadSplTable, np.ndarray, np.ndarray, Dict]:
    """Read back a dyad table CSV; returns (table, multiplicities, weights, metadata)."""
    metadata: Dict[str, str] = {}
    rows_i: list[int] = []
    rows_j: list[int] = []
    rows_l: list[int] = []
    rows_q: list[int] = []
    rows_w: list[float] = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            if text.startswith("#"):
                key, _, raw = text[1:].strip().partition("=")
                metadata[key.strip()] = raw.strip()
                continue
            if text.startswith("i,"):
                continue
            parts = text.split(",")
            if len(parts) != 5:
                raise EdgeListParseError(f"{path}:{lineno}: expected 5 columns")
            rows_i.append(int(parts[0]))
            rows_j.append(int(parts[1]))
            rows_l.append(int(parts[2]))
            rows_q.append(int(parts[3]))
            rows_w.append(float(parts[4]))
    if not rows_i:
        raise EdgeListParseError(f"{path}: no dyad rows")
    table = DyadSplTable(
        node_i=np.array(rows_i, dtype=np.int64),
        node_j=np.array(rows_j, dtype=np.int64),
        spl=np.array(rows_l, dtype=np.int64),
        method=metadata.get("method", "observed"),
        excluded_pairs=int(metadata.get("excluded_pairs", 0)),
    )
    return table, np.array(rows_q, dtype=np.float64), np.array(rows_w), metadata


# -- JSON / CSV report output ----------------------------------------------------


def write_json(path: str | Path, payload: Dict) -> None:
    """Deterministic JSON: sorted keys, stable float repr, trailing newline."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_report_csv(path: str | Path, report, kind: str) -> None:
    """Per-SPL rows of one estimator's evaluation: truth, errors, box plot."""
    ev = report.estimators[kind]
    width = max(len(report.truth), len(ev.mad.per_l), len(ev.mean_fractions))
    truth = np.zeros(width)
    truth[: len(report.truth)] = report.truth
    cols = {
        "truth": truth,
        "mean_estimate": _fit(ev.mean_fractions, width),
        "mad": _fit(ev.mad.per_l, width),
        "rmse": _fit(ev.rmse.per_l, width),
        "box_min": _fit(ev.boxplot["min"], width),
        "box_q1": _fit(ev.boxplot["q1"], width),
        "box_median": _fit(ev.boxplot["median"], width),
        "box_q3": _fit(ev.boxplot["q3"], width),
        "box_max": _fit(ev.boxplot["max"], width),
        "box_mean": _fit(ev.boxplot["mean"], width),
    }
    with open(path, "w", encoding="ascii") as fh:
        fh.write("l," + ",".join(cols) + "\n")
        for l in range(1, width):
            fh.write(f"{l}," + ",".join(repr(float(c[l])) for c in cols.values()) + "\n")


def _fit(vec: np.ndarray, width: int) -> np.ndarray:
    out = np.zeros(width)
    out[: len(vec)] = vec[:width]
    return out


def write_spld_csv(path: str | Path, hist) -> None:
    """Exact SPLD as ``l,count,fraction`` rows."""
    fractions = hist.fractions
    with open(path, "w", encoding="ascii") as fh:
        fh.write("l,count,fraction\n")
        for l in range(1, len(hist.counts)):
            fh.write(f"{l},{int(hist.counts[l])},{fractions[l]!r}\n")
