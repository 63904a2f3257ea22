"""
Monte Carlo study of the estimators of α.

Work is split in chunks of consecutive path indices per α. Chunks only
depend on the config, so they are mapped over a process pool in any order
and reassembled in task order before aggregation.
"""

import logging
import math
from multiprocessing import Pool

import numpy as np
import pandas as pd

from apps.bayes.domain import PriorSpec
from apps.bayes.logic.posterior import posterior_from_statistics
from apps.bias_analytics.domain import QuadratureSpec
from apps.bias_analytics.logic.inversion import correct_mle, forward_map, register_forward_map
from apps.bridge_sim.domain import RngSeed, TimeGrid
from apps.bridge_sim.logic.simulate import simulate_batch
from apps.common.config import EXPERIMENT_CONFIG
from apps.common.exceptions import DegenerateFractionExceeded, TailMassTooLarge
from apps.mc_harness.domain import ExperimentConfig, ExperimentResult, SummaryRow
from apps.path_statistics.domain import EnergyResult, SufficientStatistics
from apps.path_statistics.logic.mle import mle_from_arrays

logger = logging.getLogger(__name__)

RECORD_COLUMNS = ["alpha", "path_index", "stream_index", "i_t", "x_T", "degenerate", "tail_mass_exceeded"]
POSTERIOR_ESTIMATORS = ("jeffreys_mean", "jeffreys_median", "uniform_mean", "uniform_median")


def _tasks(config: ExperimentConfig) -> list[tuple[int, int, int]]:
    return [
        (alpha_index, start, min(start + config.chunk_size, config.n_paths))
        for alpha_index in range(len(config.alphas))
        for start in range(0, config.n_paths, config.chunk_size)
    ]


def _posterior_columns(
    config: ExperimentConfig, kind: str, upper: float, stats: list, exceeded: np.ndarray
) -> dict[str, np.ndarray]:
    """Posterior mean and median per path. Paths failing the truncation check are flagged in `exceeded`, left NaN."""

    spec = PriorSpec(kind=kind, observation_end=config.observation_end, support_upper=upper)
    means = np.full(len(stats), np.nan)
    medians = np.full(len(stats), np.nan)

    for row, item in enumerate(stats):
        if item is None:
            continue
        try:
            summary = posterior_from_statistics(spec, item, config.posterior_tol)
        except TailMassTooLarge as exc:
            logger.debug("Path %d: %s", row, exc.message)
            exceeded[row] = True
            continue
        means[row], medians[row] = summary.mean, summary.median

    return {f"{kind}_mean": means, f"{kind}_median": medians}


def run_chunk(
    config: ExperimentConfig, alpha_index: int, start: int, stop: int, spec: QuadratureSpec | None = None
) -> pd.DataFrame:
    """Per-path records of paths start..stop−1 of the α with index `alpha_index`."""

    alpha = config.alphas[alpha_index]
    T = config.observation_end
    times = TimeGrid.uniform(T, config.n_grid).as_array()
    seeds = [RngSeed(seed=config.seed, stream_index=config.stream_index(alpha_index, i)) for i in range(start, stop)]

    values = simulate_batch(alpha, times, seeds, generator=config.generator)
    estimates = mle_from_arrays(times, values, config.rule)
    degenerate = ~(estimates["i_t"] > 0.0)

    records = {
        "alpha": np.full(stop - start, alpha),
        "path_index": np.arange(start, stop),
        "stream_index": np.array([seed.stream_index for seed in seeds]),
        "i_t": estimates["i_t"],
        "x_T": estimates["x_t"],
        "degenerate": degenerate,
        "tail_mass_exceeded": np.zeros(stop - start, dtype=bool),
    }
    if "mle" in config.estimators:
        records["mle"] = estimates["alpha_hat"]

    if "cmle" in config.estimators:
        records["cmle"] = np.array(
            [
                np.nan if is_degenerate else correct_mle(alpha_hat, T, spec).alpha_cmle
                for alpha_hat, is_degenerate in zip(estimates["alpha_hat"], degenerate)
            ]
        )

    if config.wants(*POSTERIOR_ESTIMATORS):
        stats = [
            None
            if is_degenerate
            else SufficientStatistics(
                energy=EnergyResult(i_t=float(i_t), rule=config.rule),
                terminal_value=float(x_t),
                observation_end=T,
                n_points=times.size,
            )
            for i_t, x_t, is_degenerate in zip(estimates["i_t"], estimates["x_t"], degenerate)
        ]
        if config.wants("jeffreys_mean", "jeffreys_median"):
            records.update(
                _posterior_columns(config, "jeffreys", config.jeffreys_upper, stats, records["tail_mass_exceeded"])
            )
        if config.wants("uniform_mean", "uniform_median"):
            records.update(
                _posterior_columns(config, "uniform", config.uniform_upper, stats, records["tail_mass_exceeded"])
            )

    frame = pd.DataFrame(records)
    return frame[RECORD_COLUMNS + list(config.estimators)]


def _run_chunk_task(args) -> pd.DataFrame:
    return run_chunk(*args)


def _summarize(config: ExperimentConfig, records: pd.DataFrame) -> tuple[list[SummaryRow], list[int], list[int]]:
    rows, degenerate_counts, tail_mass_counts = [], [], []

    for alpha in config.alphas:
        group = records[records["alpha"] == alpha]
        n_degenerate = int(group["degenerate"].sum())
        degenerate_counts.append(n_degenerate)

        if n_degenerate > EXPERIMENT_CONFIG["max_degenerate_fraction"] * config.n_paths:
            raise DegenerateFractionExceeded(
                f"{n_degenerate} of {config.n_paths} paths at alpha={alpha} have zero weighted energy",
                alpha=alpha,
                n_degenerate=n_degenerate,
            )
        if n_degenerate:
            logger.warning("Excluded %d degenerate paths at alpha=%g", n_degenerate, alpha)

        exceeded = group["tail_mass_exceeded"].to_numpy()
        tail_mass_counts.append(int(exceeded.sum()))
        if exceeded.any():
            logger.warning(
                "Excluded %d paths from the posterior estimators at alpha=%g: tail mass above %g",
                int(exceeded.sum()),
                alpha,
                config.posterior_tol,
            )

        for estimator in config.estimators:
            kept = ~group["degenerate"].to_numpy()
            if estimator in POSTERIOR_ESTIMATORS:
                kept &= ~exceeded
            errors = group.loc[kept, estimator].to_numpy() - alpha
            errors = errors[np.isfinite(errors)]
            n = errors.size
            squared = errors**2

            rows.append(
                SummaryRow(
                    alpha_true=alpha,
                    estimator=estimator,
                    bias=float(errors.mean()) if n else math.nan,
                    mse=float(squared.mean()) if n else 0.0,
                    mc_se_bias=float(errors.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0,
                    mc_se_mse=float(squared.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0,
                    n_effective=n,
                )
            )

    return rows, degenerate_counts, tail_mass_counts


def run_experiment(
    config: ExperimentConfig, spec: QuadratureSpec | None = None
) -> tuple[ExperimentResult, pd.DataFrame]:
    """
    Runs the study. Returns the summary and the per-path records, sorted by
    (α, path index). Output is bit-identical for any `workers`.
    """

    tasks = [(config, *task, spec) for task in _tasks(config)]
    logger.info(
        "Running %d paths x %d alphas on %d worker(s), estimators %s",
        config.n_paths,
        len(config.alphas),
        config.workers,
        ",".join(config.estimators),
    )

    fmap = None
    if "cmle" in config.estimators:
        # verified once here, the workers receive the warmed copy
        fmap = forward_map(config.observation_end, spec)
        fmap.verify_monotone()

    if config.workers > 1:
        initializer = register_forward_map if fmap is not None else None
        initargs = (fmap,) if fmap is not None else ()
        with Pool(config.workers, initializer=initializer, initargs=initargs) as pool:
            chunks = list(pool.imap(_run_chunk_task, tasks))
    else:
        chunks = [_run_chunk_task(task) for task in tasks]

    records = pd.concat(chunks, ignore_index=True)
    rows, degenerate_counts, tail_mass_counts = _summarize(config, records)
    logger.info("Finished experiment with %d summary rows", len(rows))

    result = ExperimentResult(
        config=config,
        rows=tuple(rows),
        degenerate_counts=tuple(degenerate_counts),
        tail_mass_counts=tuple(tail_mass_counts),
    )
    return result, records
