"""
Data behind the figures, one CSV per figure.

    fig1.csv          expected future E[X_u | X_t] for several α from one path prefix
    fig1_prefix.csv   that prefix as `t,x`
    fig2.csv          expectation and bias of the MLE over α, per observation end
    fig3.csv          bias of the MLE at α = 1/2 over T
    fig4.csv          Monte Carlo bias and MSE of every estimator
"""

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from apps.bias_analytics.domain import QuadratureSpec
from apps.bias_analytics.logic.expectation import bias_curve, expected_mle_half
from apps.bridge_sim.domain import BridgeParams, RngSeed, TimeGrid
from apps.bridge_sim.logic.io import write_path_csv
from apps.bridge_sim.logic.simulate import simulate_exact
from apps.bridge_sim.logic.transitions import conditional_expectation
from apps.common.config import CLI_CONFIG
from apps.mc_harness.domain import ExperimentConfig
from apps.mc_harness.logic.experiment import run_experiment
from apps.mc_harness.logic.report import write_summary

logger = logging.getLogger(__name__)

FIGURES = (1, 2, 3, 4)

# fig1: the prefix is observed up to PREFIX_END, the curves run to FUTURE_END
PREFIX_END = 0.5
FUTURE_END = 0.99
PREFIX_ALPHA = 1.0


def _write(frame: pd.DataFrame, target: Path) -> Path:
    frame.to_csv(target, index=False, float_format=CLI_CONFIG["float_format"], lineterminator="\n")
    logger.info("Wrote %s (%d rows)", target, len(frame))
    return target


def figure1(out_dir: Path, seed: int, n_grid: int = 101) -> list[Path]:
    prefix = simulate_exact(
        BridgeParams(alpha=PREFIX_ALPHA),
        TimeGrid.uniform(PREFIX_END, n_grid),
        RngSeed(seed=seed),
    )
    prefix_target = out_dir / "fig1_prefix.csv"
    write_path_csv(prefix, prefix_target)

    start, value = prefix.observation_end, prefix.terminal_value
    future = np.linspace(start, FUTURE_END, n_grid)
    rows = [
        {"alpha": alpha, "u": u, "expectation": conditional_expectation(value, alpha, start, u)}
        for alpha in CLI_CONFIG["figure1_alphas"]
        for u in future
    ]

    return [_write(pd.DataFrame(rows, columns=["alpha", "u", "expectation"]), out_dir / "fig1.csv"), prefix_target]


def figure2(out_dir: Path, spec: QuadratureSpec, alpha_max: float = 10.0, alpha_step: float = 0.1) -> list[Path]:
    alphas = np.round(np.arange(0.0, alpha_max + 0.5 * alpha_step, alpha_step), 10)
    frames = []
    for T in CLI_CONFIG["figure_observation_ends"]:
        frame = pd.DataFrame(bias_curve(T, alphas, spec).rows())
        frame.insert(0, "T", T)
        frames.append(frame)

    return [_write(pd.concat(frames, ignore_index=True), out_dir / "fig2.csv")]


def figure3(out_dir: Path) -> list[Path]:
    observation_ends = np.round(np.arange(0.5, 0.9951, 0.005), 6)
    expectations = [expected_mle_half(T) for T in observation_ends]
    frame = pd.DataFrame(
        {"T": observation_ends, "expectation": expectations, "bias": np.asarray(expectations) - 0.5}
    )
    return [_write(frame, out_dir / "fig3.csv")]


def figure4(out_dir: Path, config: ExperimentConfig, spec: QuadratureSpec) -> list[Path]:
    result, _ = run_experiment(config, spec)
    target = out_dir / "fig4.csv"
    write_summary(result.rows, target)
    return [target]


def figures(
    which: list[int],
    out_dir: str | Path,
    seed: int,
    experiment: ExperimentConfig,
    spec: QuadratureSpec | None = None,
) -> list[Path]:
    """Writes the requested figure CSVs into `out_dir` and returns their paths."""

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    spec = spec if spec is not None else QuadratureSpec()

    written = []
    for number in sorted(set(which)):
        if number == 1:
            written += figure1(out_dir, seed)
        elif number == 2:
            written += figure2(out_dir, spec)
        elif number == 3:
            written += figure3(out_dir)
        elif number == 4:
            written += figure4(out_dir, experiment, spec)

    return written
