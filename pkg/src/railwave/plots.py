"""Figure rendering for sweep results (headless, writes PNG files)."""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .experiments import ExperimentResult, rows_for_scheme

X_LABELS = {
    "blocked_count": "blocked MRs",
    "sinr_min": "SINR threshold",
    "slot_budget": "slots per superframe",
    "flow_count": "flows",
    "uav_position": "relay standoff ahead of train head (m)",
    "oracle_compare": "blocked MRs",
}

STYLES = {
    "UMRA": dict(color="tab:blue", marker="o"),
    "MRA": dict(color="tab:orange", marker="s"),
    "RA": dict(color="tab:green", marker="^"),
    "OS": dict(color="black", marker="x", linestyle="--"),
}


def _sem(values: list[float]) -> float:
    n = len(values)
    if n < 2:
        return 0.0
    return float(np.std(values, ddof=1) / math.sqrt(n))


def _plot_metric(
    result: ExperimentResult, metric: str, ylabel: str, path: str
) -> None:
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for scheme in result.spec.schemes:
        rows = rows_for_scheme(result, scheme)
        xs = [r.value for r in rows]
        if metric == "flows":
            ys = [r.mean_flows for r in rows]
        else:
            ys = [r.mean_throughput_bps for r in rows]
        errs = [_sem(result.samples[(scheme, r.value)][metric_key(metric)]) for r in rows]
        ax.errorbar(
            xs, ys, yerr=errs, label=scheme, capsize=3, **STYLES.get(scheme, {})
        )
    ax.set_xlabel(X_LABELS.get(result.spec.sweep, result.spec.sweep))
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def metric_key(metric: str) -> str:
    return "flows" if metric == "flows" else "throughput_bps"


def render_figures(result: ExperimentResult, out_dir: str) -> list[str]:
    """Write the completed-flow and goodput figures; return their paths."""
    os.makedirs(out_dir, exist_ok=True)
    flows_path = os.path.join(out_dir, "completed_flows.png")
    thr_path = os.path.join(out_dir, "throughput.png")
    _plot_metric(result, "flows", "mean completed flows", flows_path)
    _plot_metric(result, "throughput", "mean goodput (bit/s)", thr_path)
    return [flows_path, thr_path]
