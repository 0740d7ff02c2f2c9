"""Figure rendering for sweep and gain reports (headless, files only)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_MARKERS = ["o", "s", "^", "v", "D", "x", "*", "+"]


def _axes(xlabel: str, ylabel: str):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    return fig, ax


def save_m_sweep_figure(rows: list[dict], path: str | Path) -> None:
    """Achievable sum-DoF vs symmetric M, one curve per RIS budget."""
    fig, ax = _axes("M (transmit antennas, M1 = M2)", "achievable sum-DoF")
    r_values = sorted({row["r"] for row in rows})
    for idx, r in enumerate(r_values):
        pts = sorted((row["m1"], row["achievable"]) for row in rows if row["r"] == r)
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                marker=_MARKERS[idx % len(_MARKERS)], markersize=4, label=f"R = {r}")
    ax.legend(fontsize=8)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_r_sweep_figure(rows: list[dict], path: str | Path) -> None:
    """Achievable, baseline, and RIS gain vs the element budget."""
    fig, ax = _axes("R (RIS elements)", "sum-DoF")
    pts = sorted((row["r"], row["achievable"], row["baseline"], row["gain"]) for row in rows)
    r = [p[0] for p in pts]
    ax.plot(r, [p[1] for p in pts], marker="o", markersize=4, label="achievable")
    ax.plot(r, [p[2] for p in pts], linestyle="--", label="baseline (no RIS)")
    ax.plot(r, [p[3] for p in pts], marker="s", markersize=4, label="RIS gain")
    ax.legend(fontsize=8)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_gain_figure(rows: list[dict], m: int, n: int, path: str | Path) -> None:
    """Closed-form symmetric RIS gain vs budget, with the cross-check."""
    fig, ax = _axes("R (RIS elements)", "RIS gain")
    pts = sorted((row["r"], row["gain_closed_form"], row["gain_cross_check"]) for row in rows)
    r = [p[0] for p in pts]
    ax.plot(r, [p[1] for p in pts], marker="o", markersize=4, label="closed form")
    ax.plot(r, [p[2] for p in pts], linestyle=":", marker="x", markersize=5,
            label="achievable minus baseline")
    ax.set_title(f"M = {m}, N = {n}")
    ax.legend(fontsize=8)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
