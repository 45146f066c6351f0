"""Figure rendering for the report paths.

Each helper takes a computed result object and writes one PNG next to the
delimited output.  Figures are diagnostic companions, not publication
artwork; the CSV/JSON files remain the primary outputs.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_DPI = 150


def sums_figure(table, path, title="normalized partial sums") -> str:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.loglog(table.checkpoints, table.ratios, "o-", ms=3, label="s(N)/N")
    ax.loglog(table.checkpoints, table.running_sup, "--", lw=1, label="running sup")
    ax.set_xlabel("N")
    ax.set_ylabel("s(N)/N")
    ax.set_title(title)
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return str(path)


def scan_figure(grid, diag, path, title="boundary scan") -> str:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.5))
    for i, x in enumerate(grid.x_levels):
        flag = "" if grid.coupling_ok[i] else " (uncoupled)"
        ax1.plot(grid.y, np.abs(grid.values[i]), lw=0.8, label=f"x={x:.4f}{flag}")
    ax1.set_xlabel("y")
    ax1.set_ylabel("|field|")
    ax1.set_title(f"{title}: levels")
    ax1.legend(fontsize=7)
    ms = np.arange(-diag.m_max, diag.m_max + 1)
    for i, x in enumerate(grid.x_levels):
        ax2.semilogy(ms, np.abs(diag.coefficients[i]) + 1e-18, lw=0.8, label=f"x={x:.4f}")
    ax2.axvspan(diag.tail_start, diag.m_max, color="gray", alpha=0.15, label="tail band")
    ax2.axvspan(-diag.m_max, -diag.tail_start, color="gray", alpha=0.15)
    ax2.set_xlabel("m")
    ax2.set_ylabel("|c_m|")
    ax2.set_title(f"windowed coefficients [{diag.classification}]")
    ax2.legend(fontsize=7)
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return str(path)


def twin_figure(report, path) -> str:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    labels = ["pair count\nvs 2 C2 li2", "weighted count\nvs 2 C2 N"]
    ratios = [report.ratio_pi, report.ratio_psi]
    bars = ax.bar(labels, ratios, color=["tab:blue", "tab:orange"], width=0.5)
    ax.axhline(1.0, color="k", lw=1)
    for bar, r in zip(bars, ratios):
        ax.text(bar.get_x() + bar.get_width() / 2, r + 0.005, f"{r:.4f}", ha="center")
    ax.set_ylim(0.8, 1.2)
    ax.set_ylabel("ratio")
    flag = " [small N]" if report.small_n else ""
    ax.set_title(f"pair-count comparison at N={report.n}{flag}")
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return str(path)


def bound_chain_figure(reports, path) -> str:
    """One point per N: both chain ratios, which must stay at or below 1."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ns = [r.n for r in reports]
    left = [r.sigma_n / (np.e * r.f_at_xn) for r in reports]
    right = [r.s_n / (r.n * r.sigma_n) for r in reports]
    ax.semilogx(ns, left, "o-", label="sigma_N / (e f_N(x_N))")
    ax.semilogx(ns, right, "s-", label="s_N / (N sigma_N)")
    ax.axhline(1.0, color="k", lw=1)
    ax.set_xlabel("N")
    ax.set_ylabel("chain ratio")
    ax.set_title("order-log bound chain")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return str(path)
