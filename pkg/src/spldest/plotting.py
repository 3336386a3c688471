"""Render evaluation figures to files.

Used by the CLI report path: the truth SPLD is drawn as a histogram with a
box plot of the replicate estimates on each bar, matching how the estimates
are usually inspected. Rendering is file-only (Agg backend).
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_spld_boxplots(report, kind: str, path: str | Path) -> None:
    """Box plots of the K replicate estimates over the truth histogram."""
    ev = report.estimators[kind]
    box = ev.boxplot
    width = len(box["median"])
    ls = np.arange(1, width)
    truth = np.zeros(width)
    truth[: len(report.truth)] = report.truth

    fig, ax = plt.subplots(figsize=(7, 4.2))
    ax.bar(ls, truth[1:], color="0.85", edgecolor="0.6", label="population SPLD")
    stats = [
        {
            "med": box["median"][l],
            "q1": box["q1"][l],
            "q3": box["q3"][l],
            "whislo": box["min"][l],
            "whishi": box["max"][l],
            "label": str(l),
        }
        for l in ls
    ]
    ax.bxp(stats, positions=ls, showfliers=False, widths=0.35)
    ax.set_xlabel("shortest path length")
    ax.set_ylabel("fraction of dyads")
    ax.set_title(f"{kind} estimates over {report.num_replicates} samples")
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_metric_summary(report, path: str | Path) -> None:
    """Grouped bars of MAD / RMSE / KL/10 per estimator."""
    kinds = list(report.estimators)
    mads = [report.estimators[k].mad.aggregate for k in kinds]
    rmses = [report.estimators[k].rmse.aggregate for k in kinds]
    kls = [
        report.estimators[k].kl.scaled if report.estimators[k].kl else np.nan
        for k in kinds
    ]
    x = np.arange(len(kinds))
    fig, ax = plt.subplots(figsize=(6.5, 3.8))
    ax.bar(x - 0.25, mads, width=0.25, label="MAD")
    ax.bar(x, rmses, width=0.25, label="RMSE")
    ax.bar(x + 0.25, kls, width=0.25, label="KL/10")
    ax.set_xticks(x, kinds)
    ax.set_ylabel("error")
    ax.set_title("estimation error by estimator")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_spld_histogram(hist, path: str | Path, title: str = "exact SPLD") -> None:
    """Bar chart of an exact SPLD."""
    fractions = hist.fractions
    ls = np.arange(1, len(fractions))
    fig, ax = plt.subplots(figsize=(6.5, 3.8))
    ax.bar(ls, fractions[1:], color="0.7", edgecolor="0.4")
    ax.set_xlabel("shortest path length")
    ax.set_ylabel("fraction of dyads")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
