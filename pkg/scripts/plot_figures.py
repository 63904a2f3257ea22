"""
Renders the CSVs written by `python manage.py bridge figures --out <dir>`.

    python scripts/plot_figures.py output/figures

Needs matplotlib (requirements-dev.txt). The service itself never plots.
"""

import sys
from pathlib import Path

import matplotlib.pyplot as plt
import pandas as pd


def plot_expected_future(directory: Path, ax):
    prefix = pd.read_csv(directory / "fig1_prefix.csv")
    curves = pd.read_csv(directory / "fig1.csv")

    ax.plot(prefix["t"], prefix["x"], color="black", linewidth=0.8, label="observed")
    for alpha, curve in curves.groupby("alpha"):
        ax.plot(curve["u"], curve["expectation"], label=f"α = {alpha:g}")
    ax.set_xlim(0.0, 1.0)
    ax.set_title("Expected future")
    ax.set_xlabel("t")
    ax.legend(fontsize="small")


def plot_bias_curves(directory: Path, ax):
    curves = pd.read_csv(directory / "fig2.csv")
    for T, curve in curves.groupby("T"):
        ax.plot(curve["alpha"], curve["bias"], label=f"T = {T:g}")
    ax.set_title("Bias of the MLE")
    ax.set_xlabel("α")
    ax.legend(fontsize="small")


def plot_half_bias(directory: Path, ax):
    curve = pd.read_csv(directory / "fig3.csv")
    ax.plot(curve["T"], curve["bias"])
    ax.axhline(0.5, color="grey", linestyle="--", linewidth=0.8)
    ax.set_title("Bias of the MLE at α = 1/2")
    ax.set_xlabel("T")


def plot_study(directory: Path, axes):
    summary = pd.read_csv(directory / "fig4.csv")
    for estimator, rows in summary.groupby("estimator"):
        axes[0].errorbar(rows["alpha"], rows["bias"], yerr=2 * rows["mc_se_bias"], label=estimator, capsize=2)
        axes[1].plot(rows["alpha"], rows["mse"], marker="o", markersize=3, label=estimator)
    axes[0].set_title("Monte Carlo bias")
    axes[1].set_title("Monte Carlo MSE")
    for ax in axes:
        ax.set_xlabel("α")
        ax.legend(fontsize="small")


def main(directory: Path):
    fig, axes = plt.subplots(2, 3, figsize=(15, 8))
    axes = axes.ravel()

    if (directory / "fig1.csv").exists():
        plot_expected_future(directory, axes[0])
    if (directory / "fig2.csv").exists():
        plot_bias_curves(directory, axes[1])
    if (directory / "fig3.csv").exists():
        plot_half_bias(directory, axes[2])
    if (directory / "fig4.csv").exists():
        plot_study(directory, axes[3:5])
    axes[5].axis("off")

    fig.tight_layout()
    fig.savefig(directory / "figures.png", dpi=150)
    plt.show()


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else "output"))
