"""Figures written next to evaluation reports.

Uses the non-interactive Agg backend; every function saves to a file and
closes its figure.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .evaluation import logistic  # noqa: E402

RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "savefig.dpi": 150,
    "svg.hashsalt": "igstqa",
}


def plot_regression(report, path):
    """Scatter of objective score vs DMOS with the fitted logistic overlaid."""
    obj = np.array([r.objective for r in report.records])
    subj = np.array([r.subjective for r in report.records])
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(4.5, 3.4))
        ax.scatter(obj, subj, s=14, c="0.3", label="pairs")
        xs = np.linspace(obj.min(), obj.max(), 200)
        ax.plot(xs, logistic(xs, report.logistic_params), "C3", lw=1.5, label="logistic fit")
        ax.set_xlabel("IGSTQA score")
        ax.set_ylabel("DMOS")
        ax.set_title(f"PLCC {report.plcc:.3f}  SROCC {report.srocc:.3f}  RMSE {report.rmse:.3f}",
                     fontsize=9)
        ax.legend(loc="best", frameon=False)
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
    return path


def plot_severity_curves(severities, scores, path, labels=None):
    """One line per texture: score against distortion severity."""
    scores = np.atleast_2d(scores)
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(4.5, 3.4))
        for k, row in enumerate(scores):
            ax.plot(severities, row, marker="o", ms=3, lw=1,
                    label=labels[k] if labels else None)
        ax.plot(severities, scores.mean(axis=0), "k--", lw=2, label="mean")
        ax.set_xlabel("severity")
        ax.set_ylabel("IGSTQA score")
        if labels and len(labels) <= 8:
            ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
    return path
